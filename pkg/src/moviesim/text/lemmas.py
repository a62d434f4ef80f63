"""Dictionary-backed lemmatization with deterministic suffix fallback.

The bundled TSV table (``form<TAB>lemma``) carries irregular and
rule-hostile inflected forms; tokens not covered fall through to ordered
suffix rules.  Rules are applied until no rule fires, so the result is
always a fixed point: lemmatize(lemmatize(t)) == lemmatize(t).  Table
values are pinned to fixed points when the table is generated.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

_VOWELS = set("aeiouy")
# letters that double before -ing/-ed (ll/ss/ff are usually part of the base:
# fall, miss, stuff)
_DOUBLING = set("bdgmnprt")
_SIBILANT_ENDINGS = ("ss", "x", "z", "ch", "sh")


def _has_vowel(s: str) -> bool:
    return any(c in _VOWELS for c in s)


def _undouble(stem: str) -> str:
    if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] in _DOUBLING:
        return stem[:-1]
    return stem


def apply_suffix_rules(token: str) -> str:
    """One pass of the ordered suffix rules; returns the token unchanged
    when no rule fires."""
    if token.endswith("'s") and len(token) > 2:
        return token[:-2]
    if token.endswith("'"):
        return token[:-1]
    if token.endswith("ies") and len(token) >= 5:
        return token[:-3] + "y"
    if token.endswith("es") and len(token) >= 4 and token[:-2].endswith(_SIBILANT_ENDINGS):
        return token[:-2]
    if token.endswith("s") and not token.endswith("ss") and len(token) >= 3:
        return token[:-1]
    if token.endswith("ing") and len(token) >= 6 and _has_vowel(token[:-3]):
        return _undouble(token[:-3])
    if token.endswith("ed") and len(token) >= 5 and _has_vowel(token[:-2]):
        return _undouble(token[:-2])
    return token


class Lemmatizer:
    def __init__(self, table: dict[str, str]):
        self.table = dict(table)

    def lemma(self, token: str) -> str:
        cur = token
        for _ in range(16):  # rules strictly shorten; bound is generous
            mapped = self.table.get(cur)
            if mapped is not None:
                if mapped == cur:
                    return cur
                cur = mapped
                continue
            nxt = apply_suffix_rules(cur)
            if nxt == cur:
                return cur
            cur = nxt
        return cur

    def lemmatize_all(self, tokens: list[str]) -> list[str]:
        lem = self.lemma
        return [lem(t) for t in tokens]


def load_lemma_table(path: str | Path) -> dict[str, str]:
    table: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            form, _, lemma = line.partition("\t")
            if form and lemma:
                table[form] = lemma
    return table


_DEFAULT: Lemmatizer | None = None


def load_default_lemmatizer() -> Lemmatizer:
    """The bundled table, loaded once per process."""
    global _DEFAULT
    if _DEFAULT is None:
        ref = resources.files("moviesim.data").joinpath("lemmas.tsv")
        with resources.as_file(ref) as p:
            _DEFAULT = Lemmatizer(load_lemma_table(p))
    return _DEFAULT
