"""Human ranking judgments: ingestion, pairwise expansion, fold assignment.

Rankings arrive as TSV with no header:

    langpair<TAB>segment<TAB>document<TAB>judge<TAB>sysA=1,sysB=2,...

Each record ranks up to five system outputs of one segment (lower rank is
better, ties allowed).  Expansion turns a record into one pairwise
preference per strictly ordered system pair; a strict 5-way ranking gives
exactly 10 pairs.  Human ties are dropped, since downstream training and
Tau scoring consume strict preferences only.
"""

from __future__ import annotations

import itertools
import random
import warnings
from collections import defaultdict
from dataclasses import dataclass, field

from discoeval.errors import DataError


@dataclass(frozen=True)
class RankingRecord:
    langpair: str
    segment: int
    document: str
    judge: str
    items: tuple[tuple[str, int], ...]  # (system, rank), ranks 1-based

    def __post_init__(self):
        if len(self.items) < 2:
            raise DataError("ranking record needs at least 2 items")
        if len(self.items) > 5:
            raise DataError("ranking record holds at most 5 items")
        if any(rank < 1 for _, rank in self.items):
            raise DataError("ranks must be positive")


@dataclass(frozen=True)
class PairwiseJudgment:
    langpair: str
    segment: int
    winner: str
    loser: str

    def __post_init__(self):
        if self.winner == self.loser:
            raise DataError("winner and loser must differ")


def expand_pairs(record: RankingRecord) -> list[PairwiseJudgment]:
    """One judgment per unordered item pair with strictly different ranks;
    the lower rank wins.  Tied pairs are omitted.  Order-independent: any
    permutation of the items yields the same judgment set."""
    out = []
    for (sys_a, rank_a), (sys_b, rank_b) in itertools.combinations(record.items, 2):
        if rank_a == rank_b:
            continue
        winner, loser = (sys_a, sys_b) if rank_a < rank_b else (sys_b, sys_a)
        out.append(PairwiseJudgment(record.langpair, record.segment, winner, loser))
    return out


def expand_all(records) -> list[PairwiseJudgment]:
    pairs = []
    for record in records:
        pairs.extend(expand_pairs(record))
    return pairs


def read_rankings(path) -> list[RankingRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 5:
                raise DataError(f"{path}:{lineno}: expected 5 columns, got {len(cols)}")
            langpair, segment_s, document, judge, ranked = cols
            try:
                segment = int(segment_s)
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad segment id {segment_s!r}") from None
            if not document:
                # fall back to one document per segment
                warnings.warn(f"{path}:{lineno}: missing document id, using segment id")
                document = f"seg{segment}"
            items = []
            for part in ranked.split(","):
                if "=" not in part:
                    raise DataError(f"{path}:{lineno}: bad item {part!r}, want system=rank")
                system, _, rank_s = part.partition("=")
                try:
                    rank = int(rank_s)
                except ValueError:
                    raise DataError(f"{path}:{lineno}: bad rank {rank_s!r}") from None
                items.append((system, rank))
            try:
                records.append(RankingRecord(langpair, segment, document, judge, tuple(items)))
            except DataError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
    return records


@dataclass
class FoldAssignment:
    """Maps every document to exactly one fold, so no document's segments
    are ever split across folds."""

    k: int
    by_document: dict[str, int] = field(default_factory=dict)

    def fold_of(self, document: str) -> int:
        return self.by_document[document]


def make_folds(records, k: int, seed: int = 0) -> FoldAssignment:
    """Greedy largest-first bin packing of whole documents into k folds.

    Documents are sorted by decreasing segment count (seed shuffles only
    the order among equal-sized documents) and each goes to the currently
    smallest fold.  Deterministic given the seed.
    """
    if k < 2:
        raise DataError(f"need at least 2 folds, got {k}")
    doc_segments: dict[str, set[int]] = defaultdict(set)
    for record in records:
        doc_segments[record.document].add(record.segment)
    if len(doc_segments) < k:
        raise DataError(f"{len(doc_segments)} documents cannot fill {k} folds")

    docs = sorted(doc_segments)
    random.Random(seed).shuffle(docs)
    docs.sort(key=lambda d: -len(doc_segments[d]))  # stable: seed breaks ties

    assignment = FoldAssignment(k=k)
    fold_sizes = [0] * k
    for doc in docs:
        fold = min(range(k), key=lambda i: fold_sizes[i])
        assignment.by_document[doc] = fold
        fold_sizes[fold] += len(doc_segments[doc])
    return assignment
