"""Tokenization and case folding.

Tokens are runs of Unicode letters with word-internal apostrophes kept
("don't" stays one token), lowercased.  Digits, punctuation and markup
residue never survive; non-Latin letters pass through the lowercase fold
unchanged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# letters only (no digits, no underscore), apostrophes joining letter runs
_WORD_RE = re.compile(r"[^\W\d_]+(?:'[^\W\d_]+)*", re.UNICODE)


@dataclass
class TokenStream:
    movie_id: str
    tokens: list[str]


def normalize(text: str) -> list[str]:
    """Split raw text into lowercase tokens.  Total: never raises."""
    text = text.replace("’", "'")  # typographic apostrophe
    return [m.group(0).lower() for m in _WORD_RE.finditer(text)]
