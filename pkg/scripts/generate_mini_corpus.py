#!/usr/bin/env python3
"""Regenerates the bundled demo corpus at src/moviesim/data/mini_corpus/.

Twelve synthetic movies in four themes (space, crime, romance, war).
Each theme shares dialogue vocabulary, tags, metadata and audio-label
profiles, so every modality carries a recoverable cluster signal.  The
corpus also exercises awkward inputs on purpose: subtitle markup, one
malformed SRT block, non-ASCII dialogue, a movie with no audio at all
and a movie whose labels name no genres.
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "src" / "moviesim" / "data" / "mini_corpus"

THEMES = {
    "space": {
        "movies": [
            ("m01", "Silent Orbit"),
            ("m02", "The Last Beacon"),
            ("m03", "Red Horizon"),
        ],
        "words": """
            ship station orbit planet gravity engine fuel oxygen airlock
            comet asteroid module capsule countdown telescope transmission
            satellite cosmos galaxy nebula rocket thruster hull cargo dock
            beacon horizon commander navigator scanner reactor shield
            antenna vacuum eclipse starlight
        """.split(),
        "tags": ["space", "sci-fi", "astronaut", "future", "technology"],
        "meta_genres": ["science fiction", "adventure"],
        "cast": ["Alex Morgan", "Priya Shah"],
        "director": "Lena Voss",
        "labels": {
            "electronic": 0.35, "env_constant_high": 0.25, "speech": 0.20,
            "music": 0.15, "env_background": 0.05,
        },
    },
    "crime": {
        "movies": [
            ("m04", "Midnight Ledger"),
            ("m05", "The Velvet Heist"),
            ("m06", "Precinct Nine"),
        ],
        "words": """
            detective witness suspect robbery heist vault alibi fingerprint
            evidence precinct informant warrant stakeout ransom smuggler
            ledger bribe jury verdict prison parole interrogation badge
            revolver getaway forger syndicate racket homicide motive
            accomplice surveillance pawnshop
        """.split(),
        "tags": ["noir", "detective", "heist", "investigation", "urban"],
        "meta_genres": ["thriller", "noir"],
        "cast": ["Marco Reyes", "Ingrid Falk"],
        "director": "Samuel Okafor",
        "labels": {
            "jazz": 0.30, "env_background": 0.25, "screams": 0.15,
            "gunshots": 0.15, "speech": 0.15,
        },
    },
    "romance": {
        "movies": [
            ("m07", "Letters in June"),
            ("m08", "The Garden Waltz"),
            ("m09", "Harbor Lights"),
        ],
        "words": """
            love heart wedding letter dance kiss promise garden summer
            moonlight serenade bouquet proposal anniversary sweetheart
            embrace longing devotion courtship picnic sunset valentine
            violin poetry blush whisper tenderness affection vow honeymoon
            darling orchard
        """.split(),
        "tags": ["romance", "love", "relationship", "period-drama", "emotional"],
        "meta_genres": ["romance", "drama"],
        "cast": ["Elena Petrova", "Tomas Lindqvist"],
        "director": "Aiko Tanaka",
        "labels": {"classical": 0.40, "music": 0.30, "speech": 0.30},
    },
    "war": {
        "movies": [
            ("m10", "Winter Offensive"),
            ("m11", "The Brass Bugle"),
            ("m12", "Ashes of Verdun"),
        ],
        "words": """
            soldier battalion trench artillery grenade rifle bunker convoy
            regiment sergeant lieutenant battlefield ambush mortar shrapnel
            medic platoon frontline barricade siege armistice bayonet
            helmet ration courier offensive retreat fortress casualty
            uniform barracks foxhole
        """.split(),
        "tags": ["war", "battle", "historical", "military", "survival"],
        "meta_genres": ["war", "drama"],
        "cast": ["Viktor Hale", "Amara Diallo"],
        "director": "Ruth Bergman",
        "labels": {
            "gunshots": 0.30, "fights": 0.20, "env_abrupt": 0.20,
            "rock": 0.20, "speech": 0.10,
        },
    },
}

SHARED_TAGS = ["drama", "tension", "classic", "dialogue-driven"]

TEMPLATES = [
    "We must reach the {0} before the {1} fails.",
    "The {0} is hidden behind the {1}.",
    "I saw the {0} near the old {1} last night.",
    "Nobody talks about the {0} anymore.",
    "Hold the {0}! The {1} is coming.",
    "Did you check the {0} for the {1}?",
    "They found a {0} inside the {1}.",
    "Everything depends on the {0} now.",
    "You can't hide the {0} from me.",
    "Tell them the {0} is gone.",
    "That {0} belongs to the {1}.",
    "Without the {0} we lose the {1}.",
    "The {0} was never about the {1}.",
    "Keep the {0} away from the {1}.",
    "My father kept a {0} beside the {1}.",
]

MARKUP = ["<i>{}</i>", "<b>{}</b>", "{{\\an8}}{}", '<font color="#ffcc00">{}</font>']

FILLERS = [
    "Uh, okay.", "Hmm.", "Yeah, yeah.", "Hey! Over here.",
    "Wow.", "Oh no.", "Shh, quiet now.",
]


def fmt_ts(seconds: float) -> str:
    ms = round(seconds * 1000)
    h, rem = divmod(ms, 3_600_000)
    m, rem = divmod(rem, 60_000)
    s, ms = divmod(rem, 1000)
    return f"{h:02d}:{m:02d}:{s:02d},{ms:03d}"


def make_srt(rng: np.random.Generator, words: list[str], movie_id: str) -> str:
    blocks = ["1\n00:00:01,000 --> 00:00:03,500\nSubtitles by www.example.com\n"]
    n_cues = int(rng.integers(110, 140))
    t = 5.0
    for i in range(2, n_cues + 2):
        template = TEMPLATES[int(rng.integers(0, len(TEMPLATES)))]
        w0, w1 = (words[int(j)] for j in rng.integers(0, len(words), size=2))
        line = template.format(w0, w1)
        roll = rng.random()
        if roll < 0.15:
            line = MARKUP[int(rng.integers(0, len(MARKUP)))].format(line)
        elif roll < 0.25:
            line = line + "\n" + FILLERS[int(rng.integers(0, len(FILLERS)))]
        blocks.append(f"{i}\n{fmt_ts(t)} --> {fmt_ts(t + 3.0)}\n{line}\n")
        t += 4.0
    if movie_id == "m02":
        blocks.append(
            f"{n_cues + 2}\n{fmt_ts(t)} --> {fmt_ts(t + 3.0)}\n"
            "Это случилось в прошлом году.\n"
        )
    if movie_id == "m03":
        # deliberately malformed: no timestamp line
        blocks.append(f"{n_cues + 2}\nThis block has no timing and is dropped.\n")
    if movie_id == "m08":
        blocks.append(
            f"{n_cues + 2}\n{fmt_ts(t)} --> {fmt_ts(t + 3.0)}\n"
            "They met at the café, naïve and hopeful.\n"
        )
    return "\n".join(blocks) + "\n"


def make_labels(rng: np.random.Generator, profile: dict[str, float],
                events_only: bool) -> str:
    names = list(profile)
    probs = np.array([profile[n] for n in names])
    probs = probs / probs.sum()
    n_lines = int(rng.integers(50, 70))
    picks = rng.choice(len(names), size=n_lines, p=probs)
    chosen = [names[int(i)] for i in picks]
    if events_only:
        genre_free = {"music", "speech", "env_background", "env_abrupt",
                      "env_constant_high", "gunshots", "screams", "fights"}
        chosen = [c for c in chosen if c in genre_free] or ["speech"]
    return "\n".join(chosen) + "\n"


def main() -> None:
    rng = np.random.default_rng(20240817)
    if OUT.exists():
        shutil.rmtree(OUT)
    (OUT / "subtitles").mkdir(parents=True)
    (OUT / "audio").mkdir()

    movies = []
    subtitles = {}
    audio = {}
    tag_rows = []
    theme_names = list(THEMES)

    for theme_name, theme in THEMES.items():
        for idx, (movie_id, title) in enumerate(theme["movies"]):
            cast = set(theme["cast"])
            cast.add(f"{title.split()[0]} Lee")
            cast.add(f"Jordan {movie_id.upper()}")
            director = theme["director"] if idx < 2 else f"Casey {movie_id.upper()}"
            movies.append({
                "id": movie_id,
                "title": title,
                "cast": sorted(cast),
                "directors": [director],
                "genres": theme["meta_genres"],
            })

            srt = make_srt(rng, theme["words"], movie_id)
            (OUT / "subtitles" / f"{movie_id}.srt").write_text(srt, encoding="utf-8")
            subtitles[movie_id] = f"subtitles/{movie_id}.srt"

            if movie_id != "m05":  # m05 ships without audio on purpose
                labels = make_labels(rng, theme["labels"], events_only=movie_id == "m07")
                (OUT / "audio" / f"{movie_id}.labels").write_text(labels, encoding="utf-8")
                audio[movie_id] = {"kind": "labels", "path": f"audio/{movie_id}.labels"}

            for tag in theme["tags"]:
                tag_rows.append((movie_id, tag, round(float(rng.uniform(0.6, 1.0)), 3)))
            other = theme_names[(theme_names.index(theme_name) + 1) % len(theme_names)]
            for tag in THEMES[other]["tags"][:2]:
                tag_rows.append((movie_id, tag, round(float(rng.uniform(0.05, 0.3)), 3)))
            for tag in SHARED_TAGS:
                tag_rows.append((movie_id, tag, round(float(rng.uniform(0.2, 0.8)), 3)))

    manifest = {
        "movies": movies,
        "subtitles": subtitles,
        "audio": audio,
        "tags": "tags.csv",
    }
    (OUT / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )

    lines = ["movie_id,tag,relevance"]
    lines += [f"{m},{t},{r}" for m, t, r in tag_rows]
    (OUT / "tags.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    config = {
        "manifest": "manifest.json",
        "artifact_dir": "artifacts_mini",
        "n_topics": 8,
        "alpha": 0.5,
        "beta": 0.01,
        "iterations": 250,
        "seed": 42,
        "k": 6,
        "fusion_step": 0.05,
    }
    (OUT / "config_mini.json").write_text(
        json.dumps(config, indent=2) + "\n", encoding="utf-8"
    )

    n_subs = len(list((OUT / "subtitles").glob("*.srt")))
    n_audio = len(list((OUT / "audio").glob("*.labels")))
    print(f"{OUT}: {len(movies)} movies, {n_subs} srt, {n_audio} label files")
    return None


if __name__ == "__main__":
    sys.exit(main())
