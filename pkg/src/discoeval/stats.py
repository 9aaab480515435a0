"""Correlation statistics for metric evaluation.

Segment level uses the WMT flavor of Kendall's Tau over human pairwise
preferences: tau = (C - D) / (C + D) where C counts pairs on which the
metric strictly agrees with the human winner and D pairs on which it
strictly disagrees.  Metric ties either count as discordant (WMT14
convention, the default) or are excluded from the denominator (WMT12
style).  System level uses Pearson or Spearman correlation between a
metric's system scores and win-ratio human system scores.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict

from discoeval.errors import DataError, NoValueError


class TiePolicy(enum.Enum):
    DISCORDANT = "discordant"
    EXCLUDED = "excluded"


def kendall_tau(judgments, segment_scores, policy: TiePolicy = TiePolicy.DISCORDANT) -> float:
    """Tau of a metric against pairwise human judgments.

    segment_scores maps (langpair, system, segment) -> metric score; every
    judged pair must be covered.  Raises NoValueError if no pair survives
    the tie policy.
    """
    concordant = discordant = 0
    for j in judgments:
        try:
            win = segment_scores[(j.langpair, j.winner, j.segment)]
            lose = segment_scores[(j.langpair, j.loser, j.segment)]
        except KeyError as exc:
            raise DataError(f"missing metric score for {exc.args[0]} "
                            f"(langpair {j.langpair})") from None
        if win > lose:
            concordant += 1
        elif win < lose:
            discordant += 1
        elif policy is TiePolicy.DISCORDANT:
            discordant += 1
    total = concordant + discordant
    if total == 0:
        raise NoValueError("no evaluable pairs for Kendall's Tau")
    return (concordant - discordant) / total


def human_system_scores(judgments, langpair: str) -> dict[str, float]:
    """Win ratio wins/(wins+losses) per system over all pairwise judgments
    of the language pair.  Systems with zero comparisons are excluded."""
    wins: dict[str, int] = defaultdict(int)
    losses: dict[str, int] = defaultdict(int)
    seen = False
    for j in judgments:
        if j.langpair != langpair:
            continue
        seen = True
        wins[j.winner] += 1
        losses[j.loser] += 1
    if not seen:
        raise NoValueError(f"no judgments for language pair {langpair}")
    return {sys: wins[sys] / (wins[sys] + losses[sys])
            for sys in sorted(set(wins) | set(losses))}


def pearson(x, y) -> float:
    """Product-moment correlation.  Constant input has no defined value."""
    x = list(x)
    y = list(y)
    if len(x) != len(y):
        raise DataError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 2:
        raise DataError("need at least 2 points")
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    dx = [v - mean_x for v in x]
    dy = [v - mean_y for v in y]
    var_x = sum(v * v for v in dx)
    var_y = sum(v * v for v in dy)
    if var_x == 0.0 or var_y == 0.0:
        raise NoValueError("correlation undefined for constant input")
    return sum(a * b for a, b in zip(dx, dy)) / math.sqrt(var_x * var_y)


def fractional_ranks(values) -> list[float]:
    """1-based ranks; tied values share the average of their rank span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman(x, y) -> float:
    """Pearson correlation of fractional (average-tie) ranks."""
    return pearson(fractional_ranks(list(x)), fractional_ranks(list(y)))


def average_over_langpairs(values) -> float:
    """Unweighted mean of per-language-pair correlations."""
    values = list(values)
    if not values:
        raise DataError("no language pairs to average")
    return sum(values) / len(values)
