"""Score matrices: ingestion, min-max normalization, uniform combination.

Segment scores are keyed by (metric, language pair, system, segment).
The segment score exchange format is TSV with no header:

    metric<TAB>langpair<TAB>testset<TAB>system<TAB>segment<TAB>score

System-level files use the same columns minus the segment one.  Language
pairs are written ``xx-yy`` (e.g. ``cs-en``), scores with ``.`` decimal
point; floats round-trip through files at 12 significant digits.
"""

from __future__ import annotations

from collections import defaultdict

from discoeval.errors import DataError

Key = tuple[str, str, str, int]  # metric, langpair, system, segment

DEFAULT_TESTSET = "test"


def format_score(x: float) -> str:
    return f"{x:.12g}"


class ScoreMatrix:
    """Mutable container of segment-level scores plus derived or ingested
    system-level scores."""

    def __init__(self):
        self.entries: dict[Key, float] = {}
        self.testset: str = DEFAULT_TESTSET
        # system-level scores ingested from a file override segment means
        self._system_overrides: dict[tuple[str, str, str], float] = {}

    # -- construction ----------------------------------------------------

    def add(self, metric: str, langpair: str, system: str, segment: int, score: float):
        key = (metric, langpair, system, segment)
        if key in self.entries:
            raise DataError(f"duplicate score for {key}")
        self.entries[key] = score

    def copy(self) -> "ScoreMatrix":
        out = ScoreMatrix()
        out.entries = dict(self.entries)
        out.testset = self.testset
        out._system_overrides = dict(self._system_overrides)
        return out

    # -- views -----------------------------------------------------------

    def metrics(self) -> list[str]:
        return sorted({k[0] for k in self.entries})

    def langpairs(self) -> list[str]:
        return sorted({k[1] for k in self.entries})

    def systems(self, metric: str, langpair: str) -> list[str]:
        return sorted({k[2] for k in self.entries if k[0] == metric and k[1] == langpair})

    def segments(self, metric: str, langpair: str) -> list[int]:
        return sorted({k[3] for k in self.entries if k[0] == metric and k[1] == langpair})

    def get(self, metric: str, langpair: str, system: str, segment: int) -> float:
        key = (metric, langpair, system, segment)
        try:
            return self.entries[key]
        except KeyError:
            raise DataError(f"missing score for metric={metric} langpair={langpair} "
                            f"system={system} segment={segment}") from None

    def system_score(self, metric: str, langpair: str, system: str) -> float:
        override = self._system_overrides.get((metric, langpair, system))
        if override is not None:
            return override
        values = [v for (m, lp, s, _), v in self.entries.items()
                  if m == metric and lp == langpair and s == system]
        if not values:
            raise DataError(f"no scores for metric={metric} langpair={langpair} system={system}")
        return sum(values) / len(values)

    def system_scores(self, metric: str, langpair: str) -> dict[str, float]:
        return {sys: self.system_score(metric, langpair, sys)
                for sys in self.systems(metric, langpair)}

    def check_coverage(self):
        """Within one (metric, langpair), every system must cover the same
        segment set.  Reports offending ids."""
        per_group: dict[tuple[str, str], dict[str, set[int]]] = defaultdict(dict)
        for (m, lp, sys, seg) in self.entries:
            per_group[(m, lp)].setdefault(sys, set()).add(seg)
        for (m, lp), by_sys in per_group.items():
            segment_sets = {frozenset(s) for s in by_sys.values()}
            if len(segment_sets) > 1:
                all_segs = set().union(*by_sys.values())
                gaps = {sys: sorted(all_segs - segs) for sys, segs in by_sys.items()
                        if all_segs - segs}
                raise DataError(f"coverage gap in metric={m} langpair={lp}: "
                                f"missing segments per system {gaps}")


# -- file I/O --------------------------------------------------------------


def ingest_segment_scores(path, matrix: ScoreMatrix | None = None) -> ScoreMatrix:
    """Read one segment-score TSV into a (possibly shared) matrix."""
    matrix = matrix if matrix is not None else ScoreMatrix()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 6:
                raise DataError(f"{path}:{lineno}: expected 6 columns, got {len(cols)}")
            metric, langpair, testset, system, segment_s, score_s = cols
            try:
                segment = int(segment_s)
                score = float(score_s)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
            try:
                matrix.add(metric, langpair, system, segment, score)
            except DataError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
            matrix.testset = testset
    matrix.check_coverage()
    return matrix


def ingest_system_scores(path, matrix: ScoreMatrix) -> ScoreMatrix:
    """Attach system-level scores from a file, overriding segment means."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 5:
                raise DataError(f"{path}:{lineno}: expected 5 columns, got {len(cols)}")
            metric, langpair, testset, system, score_s = cols
            try:
                score = float(score_s)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
            key = (metric, langpair, system)
            if key in matrix._system_overrides:
                raise DataError(f"{path}:{lineno}: duplicate system score for {key}")
            matrix._system_overrides[key] = score
            matrix.testset = testset
    return matrix


def write_segment_scores(matrix: ScoreMatrix, path, metrics=None):
    wanted = set(metrics) if metrics is not None else None
    with open(path, "w", encoding="utf-8") as fh:
        for (m, lp, sys, seg) in sorted(matrix.entries):
            if wanted is not None and m not in wanted:
                continue
            fh.write(f"{m}\t{lp}\t{matrix.testset}\t{sys}\t{seg}\t"
                     f"{format_score(matrix.entries[(m, lp, sys, seg)])}\n")


def write_system_scores(matrix: ScoreMatrix, path, metrics=None):
    wanted = set(metrics) if metrics is not None else None
    with open(path, "w", encoding="utf-8") as fh:
        for m in matrix.metrics():
            if wanted is not None and m not in wanted:
                continue
            for lp in matrix.langpairs():
                for sys, score in sorted(matrix.system_scores(m, lp).items()):
                    fh.write(f"{m}\t{lp}\t{matrix.testset}\t{sys}\t{format_score(score)}\n")


# -- transformations -------------------------------------------------------


def minmax_normalize(matrix: ScoreMatrix) -> ScoreMatrix:
    """Map every entry to (x - min) / (max - min), min and max taken over
    all systems and segments of the entry's (metric, langpair) group.
    A constant group maps to the uninformative midpoint 0.5."""
    groups: dict[tuple[str, str], list[float]] = defaultdict(list)
    for (m, lp, _, _), v in matrix.entries.items():
        groups[(m, lp)].append(v)
    bounds = {g: (min(vs), max(vs)) for g, vs in groups.items()}
    out = ScoreMatrix()
    out.testset = matrix.testset
    for (m, lp, sys, seg), v in matrix.entries.items():
        lo, hi = bounds[(m, lp)]
        out.entries[(m, lp, sys, seg)] = 0.5 if hi == lo else (v - lo) / (hi - lo)
    return out


def combine_uniform(matrix: ScoreMatrix, metrics, combined_id: str = "combined") -> ScoreMatrix:
    """Synthesize one metric as the per-segment arithmetic mean of the
    selected metrics.  System-level scores of the synthetic metric follow
    as segment means."""
    metrics = list(metrics)
    known = set(matrix.metrics())
    for m in metrics:
        if m not in known:
            raise DataError(f"unknown metric id {m!r}")
    out = ScoreMatrix()
    out.testset = matrix.testset
    first = metrics[0]
    for lp in matrix.langpairs():
        for sys in matrix.systems(first, lp):
            for seg in matrix.segments(first, lp):
                values = [matrix.get(m, lp, sys, seg) for m in metrics]
                out.entries[(combined_id, lp, sys, seg)] = sum(values) / len(values)
    return out
