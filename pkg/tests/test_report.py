"""Report rendering: text table, CSV, JSON and figure files."""

import csv
import json

from moviesim.evaluation import EvalReport, RecDetail
from moviesim.report import render_text, report_as_dict, write_report


def sample_reports():
    return [
        EvalReport(
            model="tfidf",
            median_first_rec_rank=1.5,
            top10_pct=91.7,
            details=[
                RecDetail(movie_id="m00", first_rec="m03", gt_rank=1),
                RecDetail(movie_id="m01", first_rec="m00", gt_rank=2),
            ],
            excluded=[],
        ),
        EvalReport(
            model="audio_event",
            median_first_rec_rank=3.0,
            top10_pct=75.0,
            details=[RecDetail(movie_id="m00", first_rec="m01", gt_rank=3)],
            excluded=["m05", "m07"],
        ),
    ]


class TestRenderText:
    def test_alignment_and_content(self):
        text = render_text(sample_reports())
        lines = text.splitlines()
        assert lines[0].startswith("Model")
        assert set(lines[1]) <= {"-", " "}
        assert all(len(line) == len(lines[0]) for line in lines[1:])
        assert "tfidf" in lines[2] and "1.5" in lines[2] and "91.7" in lines[2]
        assert "audio_event" in lines[3] and "2" in lines[3]  # excluded count

    def test_integral_median_has_no_trailing_zeros(self):
        rep = sample_reports()[0]
        rep.median_first_rec_rank = 2.0
        assert " 2 " in render_text([rep]) or " 2\n" in render_text([rep])

    def test_empty(self):
        assert render_text([]) == "no models evaluated\n"


class TestWriteReport:
    def test_all_files_written(self, tmp_path):
        written = write_report(sample_reports(), tmp_path / "out")
        names = [p.name for p in written]
        assert names == [
            "report.txt",
            "report.csv",
            "report_details.csv",
            "report.json",
            "median_rank.png",
            "top10_pct.png",
        ]
        for p in written:
            assert p.exists() and p.stat().st_size > 0

    def test_pngs_are_png(self, tmp_path):
        written = write_report(sample_reports(), tmp_path / "out")
        for p in written:
            if p.suffix == ".png":
                assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_csv_round_trip(self, tmp_path):
        write_report(sample_reports(), tmp_path)
        with open(tmp_path / "report.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["model", "median_rank", "top10_pct", "evaluated", "excluded"]
        assert rows[1] == ["tfidf", "1.5", "91.7", "2", "0"]
        assert rows[2] == ["audio_event", "3", "75.0", "1", "2"]

        with open(tmp_path / "report_details.csv", newline="") as fh:
            details = list(csv.reader(fh))
        assert details[0] == ["model", "movie_id", "first_rec", "gt_rank"]
        assert details[1] == ["tfidf", "m00", "m03", "1"]
        assert len(details) == 4  # header + 2 + 1

    def test_json_structure(self, tmp_path):
        write_report(sample_reports(), tmp_path)
        doc = json.loads((tmp_path / "report.json").read_text())
        assert [r["model"] for r in doc["reports"]] == ["tfidf", "audio_event"]
        assert doc["reports"][0] == report_as_dict(sample_reports()[0])
        assert doc["reports"][1]["excluded"] == ["m05", "m07"]

    def test_empty_reports_skip_figures(self, tmp_path):
        written = write_report([], tmp_path)
        names = [p.name for p in written]
        assert "median_rank.png" not in names
        assert (tmp_path / "report.txt").read_text() == "no models evaluated\n"
        with open(tmp_path / "report.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 1  # header only
