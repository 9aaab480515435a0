"""Segment-score tie-breaking by system-level perturbation.

For every segment where two or more systems share a score, each tied
system's score becomes x + eps * S(sys), where S(sys) is that system's
total over all segments.  eps is chosen small enough that no perturbed
score can cross a pre-existing gap between distinct scores, so untied
orderings are preserved exactly.  Optional post-processing, not part of
any metric.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from discoeval.errors import DataError
from discoeval.scores import ScoreMatrix

FALLBACK_EPS = 1e-9


@dataclass(frozen=True)
class TieBreakReport:
    segments_touched: int
    eps_by_langpair: dict[str, float]
    collisions_after: int  # tied groups left among previously-tied scores


def _smallest_gap(values) -> float | None:
    distinct = sorted(set(values))
    if len(distinct) < 2:
        return None
    return min(b - a for a, b in zip(distinct, distinct[1:]))


def break_ties(matrix: ScoreMatrix, metric: str):
    """Return (perturbed copy of the matrix, report).  Scores of other
    metrics are untouched; a tie-free metric comes back bit-identical."""
    if metric not in matrix.metrics():
        raise DataError(f"unknown metric id {metric!r}")
    out = matrix.copy()
    touched: set[tuple[str, int]] = set()
    collisions = 0
    eps_by_lp: dict[str, float] = {}

    for lp in matrix.langpairs():
        systems = matrix.systems(metric, lp)
        segments = matrix.segments(metric, lp)
        if not systems:
            continue
        totals = {sys: sum(matrix.get(metric, lp, sys, seg) for seg in segments)
                  for sys in systems}
        gap = _smallest_gap([matrix.get(metric, lp, sys, seg)
                             for sys in systems for seg in segments])
        if gap is None:
            eps = FALLBACK_EPS
        else:
            eps = gap / (2.0 * (1.0 + max(abs(t) for t in totals.values())))
        eps_by_lp[lp] = eps

        for seg in segments:
            by_score: dict[float, list[str]] = defaultdict(list)
            for sys in systems:
                by_score[matrix.get(metric, lp, sys, seg)].append(sys)
            for score, tied in by_score.items():
                if len(tied) < 2:
                    continue
                touched.add((lp, seg))
                for sys in tied:
                    out.entries[(metric, lp, sys, seg)] = score + eps * totals[sys]
                new_values = {out.entries[(metric, lp, sys, seg)] for sys in tied}
                if len(new_values) < len(tied):  # equal system totals: irreducible
                    collisions += 1

    return out, TieBreakReport(segments_touched=len(touched),
                               eps_by_langpair=eps_by_lp,
                               collisions_after=collisions)
