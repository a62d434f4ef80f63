"""SRT subtitle extraction.

Keeps only spoken cue text: cue indices, timestamp lines and markup are
removed, and cue texts are joined with single spaces in file order.  Real
subtitle files are dirty, so structurally malformed cue blocks are skipped
and counted instead of aborting the parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ValidationError

# HH:MM:SS,mmm --> HH:MM:SS,mmm  (period accepted for the millisecond
# separator; some tools emit it)
TIMESTAMP_RE = re.compile(
    r"\d{1,2}:\d{2}:\d{2}[,.]\d{1,3}\s*-->\s*\d{1,2}:\d{2}:\d{2}[,.]\d{1,3}"
)
_MARKUP_RE = re.compile(r"<[^>]*>|\{\\[^}]*\}|\{[a-zA-Z0-9\\]+\}")
_INDEX_RE = re.compile(r"^\d+$")


@dataclass
class SrtDocument:
    """Extracted cue text plus a count of malformed blocks that were skipped."""

    text: str
    skipped_blocks: int = 0


def parse_srt(data: bytes) -> SrtDocument:
    """Extract the spoken text from SRT file contents.

    Input must decode as UTF-8 (a BOM is tolerated).  Undecodable bytes
    raise ValidationError naming the byte offset.
    """
    try:
        raw = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ValidationError(
            f"subtitle bytes are not valid UTF-8 at offset {exc.start}"
        ) from exc

    pieces: list[str] = []
    skipped = 0
    for block in re.split(r"(?:\r?\n){2,}", raw):
        lines = [ln.strip() for ln in block.split("\n")]
        lines = [ln for ln in lines if ln]
        if not lines:
            continue
        # canonical block: [index] timestamp text+
        i = 0
        if _INDEX_RE.match(lines[i]):
            i += 1
        if i >= len(lines) or not TIMESTAMP_RE.search(lines[i]):
            skipped += 1
            continue
        i += 1
        text_lines = []
        for ln in lines[i:]:
            ln = _MARKUP_RE.sub("", ln).strip()
            # a stray timestamp inside cue text is noise, never output
            if not ln or TIMESTAMP_RE.search(ln):
                continue
            text_lines.append(ln)
        if text_lines:
            pieces.append(" ".join(text_lines))
    return SrtDocument(text=" ".join(pieces), skipped_blocks=skipped)
