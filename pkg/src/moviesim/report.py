"""Rendering of evaluation reports: aligned text, CSV, JSON and figures.

write_report() emits, into one directory:
    report.txt          aligned text table, one row per model
    report.csv          the same rows, machine-readable
    report_details.csv  per-movie first recommendations and their ranks
    report.json         full report structure
    median_rank.png     bar chart of median first-recommendation ranks
    top10_pct.png       bar chart of top-10 percentages
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .evaluation import EvalReport

_COLUMNS = ("model", "median_rank", "top10_pct", "evaluated", "excluded")
_HEADERS = ("Model", "Median 1st-rec rank", "Top-10 %", "Evaluated", "Excluded")


def report_as_dict(r: EvalReport) -> dict:
    return {
        "model": r.model,
        "median_first_rec_rank": r.median_first_rec_rank,
        "top10_pct": r.top10_pct,
        "details": [
            {"movie_id": d.movie_id, "first_rec": d.first_rec, "gt_rank": d.gt_rank}
            for d in r.details
        ],
        "excluded": list(r.excluded),
    }


def _rows(reports: list[EvalReport]) -> list[tuple[str, str, str, str, str]]:
    out = []
    for r in reports:
        out.append(
            (
                r.model,
                f"{r.median_first_rec_rank:g}",
                f"{r.top10_pct:.1f}",
                str(len(r.details)),
                str(len(r.excluded)),
            )
        )
    return out


def render_text(reports: list[EvalReport]) -> str:
    if not reports:
        return "no models evaluated\n"
    rows = _rows(reports)
    widths = [
        max(len(_HEADERS[i]), max(len(row[i]) for row in rows)) for i in range(len(_HEADERS))
    ]

    def fmt(cells):
        left = cells[0].ljust(widths[0])
        rest = [cells[i].rjust(widths[i]) for i in range(1, len(cells))]
        return "  ".join([left] + rest)

    lines = [fmt(_HEADERS), fmt(tuple("-" * w for w in widths))]
    lines += [fmt(row) for row in rows]
    return "\n".join(lines) + "\n"


def _save_bar_chart(path: Path, names: list[str], values: list[float],
                    title: str, xlabel: str) -> None:
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    fig = Figure(figsize=(8, 0.6 * max(4, len(names))))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    pos = range(len(names))
    ax.barh(pos, values, color="#4878a8")
    ax.set_yticks(pos, names)
    ax.invert_yaxis()
    ax.set_xlabel(xlabel)
    ax.set_title(title)
    for p, v in zip(pos, values):
        ax.text(v, p, f" {v:g}", va="center", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)


def write_report(reports: list[EvalReport], out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    text_path = out / "report.txt"
    text_path.write_text(render_text(reports), encoding="utf-8")
    written.append(text_path)

    csv_path = out / "report.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(_COLUMNS)
        for row in _rows(reports):
            writer.writerow(row)
    written.append(csv_path)

    details_path = out / "report_details.csv"
    with open(details_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("model", "movie_id", "first_rec", "gt_rank"))
        for r in reports:
            for d in r.details:
                writer.writerow((r.model, d.movie_id, d.first_rec, d.gt_rank))
    written.append(details_path)

    json_path = out / "report.json"
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump({"reports": [report_as_dict(r) for r in reports]}, fh, ensure_ascii=False, indent=2)
    written.append(json_path)

    if reports:
        names = [r.model for r in reports]
        median_path = out / "median_rank.png"
        _save_bar_chart(
            median_path,
            names,
            [r.median_first_rec_rank for r in reports],
            "Median rank of first recommendation (lower is better)",
            "median ground-truth rank",
        )
        written.append(median_path)

        top10_path = out / "top10_pct.png"
        _save_bar_chart(
            top10_path,
            names,
            [r.top10_pct for r in reports],
            "First recommendations inside the ground-truth top 10",
            "% of movies",
        )
        written.append(top10_path)

    return written
