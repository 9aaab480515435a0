"""Convolution (subset-tree) kernel over representation trees.

Counts decay-weighted common tree fragments, where a fragment keeps all
or none of a node's children.  One modification for discourse trees: the
nuclearity suffix is ignored on the *root* label of each compared
fragment, so e.g. ``Attribution_Sat (...)`` and ``Attribution_Nuc (...)``
anchor matching fragments.  Scores are optionally cosine-normalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from discoeval.errors import DataError
from discoeval.represent import ReprNode, ReprTree, iter_repr_nodes

_NUC_SUFFIXES = ("_Nuc", "_Sat", "_ROOT")


@dataclass(frozen=True)
class KernelConfig:
    """decay is the usual per-production damping factor in (0, 1];
    1.0 makes the kernel a pure fragment-pair count."""

    decay: float = 1.0
    normalize: bool = True

    def __post_init__(self):
        if not 0.0 < self.decay <= 1.0:
            raise ValueError(f"decay must be in (0, 1], got {self.decay}")


@dataclass(frozen=True)
class KernelScore:
    raw: float
    normalized: float


def strip_nuc(label: str) -> str:
    """Drop a trailing nuclearity suffix; labels without one pass through."""
    for suffix in _NUC_SUFFIXES:
        if label.endswith(suffix):
            return label[: -len(suffix)]
    return label


def _production(node: ReprNode):
    return (strip_nuc(node.label), tuple(c.label for c in node.children))


def _raw_kernel(a: ReprNode, b: ReprNode, decay: float) -> float:
    a_nodes = [n for n in iter_repr_nodes(a) if n.children]
    b_nodes = [n for n in iter_repr_nodes(b) if n.children]

    by_production: dict[tuple, list[ReprNode]] = {}
    for n in b_nodes:
        by_production.setdefault(_production(n), []).append(n)

    memo: dict[tuple[int, int], float] = {}

    def delta(n1: ReprNode, n2: ReprNode) -> float:
        # only called with matching productions
        key = (id(n1), id(n2))
        cached = memo.get(key)
        if cached is not None:
            return cached
        value = decay
        for c1, c2 in zip(n1.children, n2.children):
            if c1.children and _production(c1) == _production(c2):
                value *= 1.0 + delta(c1, c2)
        memo[key] = value
        return value

    total = 0.0
    for n1 in a_nodes:
        for n2 in by_production.get(_production(n1), ()):
            total += delta(n1, n2)
    return total


def tree_kernel(a: ReprTree | None, b: ReprTree | None, cfg: KernelConfig = KernelConfig()) -> KernelScore:
    """Kernel score of two representation trees.

    A missing tree (None, from a blank input line) scores 0 against
    anything.  tree_kernel(a, b) == tree_kernel(b, a) exactly.
    """
    if a is None or b is None:
        return KernelScore(raw=0.0, normalized=0.0)
    raw = _raw_kernel(a.root, b.root, cfg.decay)
    self_a = _raw_kernel(a.root, a.root, cfg.decay)
    self_b = _raw_kernel(b.root, b.root, cfg.decay)
    if self_a > 0.0 and self_b > 0.0:
        normalized = raw / math.sqrt(self_a * self_b)
    else:
        normalized = 0.0
    return KernelScore(raw=raw, normalized=normalized)


def kernel_score_corpus(hyp, ref, cfg: KernelConfig = KernelConfig()):
    """Score aligned corpora pairwise; returns (segment scores, system score).

    The system score is the arithmetic mean of the segment scores.
    """
    if len(hyp) != len(ref):
        raise DataError(f"corpus length mismatch: {len(hyp)} hypothesis vs {len(ref)} reference trees")
    if not hyp:
        raise DataError("empty corpus")
    segment_scores = []
    for h, r in zip(hyp, ref):
        score = tree_kernel(h, r, cfg)
        segment_scores.append(score.normalized if cfg.normalize else score.raw)
    system_score = sum(segment_scores) / len(segment_scores)
    return segment_scores, system_score
