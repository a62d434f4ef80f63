"""Exhaustive fusion-weight search on a simplex grid.

Every weight combination whose entries are multiples of the step and sum
to 1 is evaluated against the ground truth.  The winner minimizes the
median first-recommendation rank, with ties broken by higher top-10
percentage and then by lexicographically smallest weight tuple (aligned
with sorted modality names).  Candidates are scored in vectorized batches
that replay fuse()'s exact summation order, so the reported metrics match
a plain evaluate run with the winning weights bit for bit.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .errors import ParameterError, ValidationError
from .evaluation import (
    EvalReport,
    GroundTruth,
    evaluate_model,
    gt_rank_table,
    lex_permutation,
)
from .similarity import FusionWeights, SimilarityMatrix, fuse


def simplex_units(n_modalities: int, step: float) -> tuple[int, Iterator[tuple[int, ...]]]:
    """All ways to distribute `round(1/step)` units over the modalities, in
    ascending lexicographic order.  Returns (n_units, iterator)."""
    if n_modalities < 1:
        raise ParameterError("need at least one modality")
    if not 0 < step <= 1:
        raise ParameterError(f"step must be in (0, 1], got {step}")
    n_units = round(1 / step)
    if abs(n_units * step - 1.0) > 1e-9:
        raise ParameterError(f"step {step} does not evenly divide 1")

    def gen(prefix: tuple[int, ...], remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield prefix + (remaining,)
            return
        for u in range(remaining + 1):
            yield from gen(prefix + (u,), remaining - u, slots - 1)

    return n_units, gen((), n_units, n_modalities)


def simplex_grid(n_modalities: int, step: float) -> list[tuple[float, ...]]:
    """Weight tuples (multiples of step, summing to 1) in ascending
    lexicographic order."""
    n_units, it = simplex_units(n_modalities, step)
    return [tuple(u / n_units for u in units) for units in it]


def search_weights(
    matrices: dict[str, SimilarityMatrix],
    gt: GroundTruth,
    step: float = 0.05,
) -> tuple[FusionWeights, EvalReport]:
    if not matrices:
        raise ParameterError("no similarity matrices to fuse")
    mods = sorted(matrices)
    order = gt.matrix.movie_order
    for mod in mods:
        if matrices[mod].movie_order != order:
            raise ValidationError(f"matrix {mod!r} has a different movie order than the ground truth")
    n = len(order)
    if n < 11:
        raise ParameterError("weight search needs a corpus of at least 11 movies")

    stack = np.stack([matrices[mod].values for mod in mods])
    mod_flag = np.zeros((len(mods), n), dtype=bool)
    for k, mod in enumerate(mods):
        for i, movie_id in enumerate(order):
            if movie_id in matrices[mod].flagged:
                mod_flag[k, i] = True

    lex_perm = lex_permutation(order)
    perm_pos = np.empty(n, dtype=np.int64)
    perm_pos[lex_perm] = np.arange(n)
    table = gt_rank_table(gt.matrix)

    grid = np.array(simplex_grid(len(mods), step))  # (candidates, modalities)
    n_cand = grid.shape[0]
    batch = max(1, min(n_cand, int(2e7 / (n * n))))

    best = None  # (median, -top10, candidate index)
    rows = np.arange(n)
    for start in range(0, n_cand, batch):
        w_batch = grid[start : start + batch]
        c = w_batch.shape[0]
        # same accumulation order as fuse(): zeros, then += w * values per
        # sorted modality
        fused = np.zeros((c, n, n))
        for k in range(len(mods)):
            fused += w_batch[:, k, None, None] * stack[k]

        shuffled = fused[:, :, lex_perm]
        shuffled[:, rows, perm_pos] = -np.inf
        recs = lex_perm[np.argmax(shuffled, axis=2)]  # (c, n)
        ranks = table[rows[None, :], recs].astype(np.float64)

        flagged = np.ones((c, n), dtype=bool)
        for k in range(len(mods)):
            pos = w_batch[:, k] > 0
            flagged[pos] &= mod_flag[k][None, :]
        ranks[flagged] = np.nan
        usable = ~np.all(flagged, axis=1)
        medians = np.full(c, np.inf)
        top10s = np.full(c, -np.inf)
        if usable.any():
            with np.errstate(all="ignore"):
                medians[usable] = np.nanmedian(ranks[usable], axis=1)
            hits = np.nansum((ranks[usable] <= 10), axis=1)
            counts = np.sum(~flagged[usable], axis=1)
            top10s[usable] = 100.0 * hits / counts

        for local in range(c):
            key = (medians[local], -top10s[local], start + local)
            if best is None or key < best:
                best = key
        del fused, shuffled

    assert best is not None
    if not np.isfinite(best[0]):
        raise ValidationError("every weight combination flags all movies")

    winner = grid[best[2]]
    weights = FusionWeights(weights={mod: float(w) for mod, w in zip(mods, winner)})
    weights.validate(set(matrices))
    report = evaluate_model("fusion", fuse(matrices, weights), gt.matrix)
    return weights, report
