import random

import pytest

from discoeval.errors import DataError
from discoeval.scores import (ScoreMatrix, combine_uniform, format_score,
                              ingest_segment_scores, ingest_system_scores,
                              minmax_normalize, write_segment_scores)


def make_matrix(rows):
    m = ScoreMatrix()
    for metric, lp, system, segment, score in rows:
        m.add(metric, lp, system, segment, score)
    return m


def write_tsv(path, rows):
    path.write_text("".join(f"{m}\t{lp}\tnews\t{s}\t{seg}\t{v}\n"
                            for m, lp, s, seg, v in rows), encoding="utf-8")


def test_ingest_counts(tmp_path):
    path = tmp_path / "scores.tsv"
    rows = [("m1", "cs-en", sys, seg, 0.1 * seg)
            for sys in ("sysA", "sysB") for seg in (1, 2, 3)]
    write_tsv(path, rows)
    matrix = ingest_segment_scores(path)
    assert len(matrix.entries) == 6
    assert matrix.metrics() == ["m1"]
    assert matrix.systems("m1", "cs-en") == ["sysA", "sysB"]


def test_duplicate_key_rejected(tmp_path):
    path = tmp_path / "scores.tsv"
    write_tsv(path, [("m1", "cs-en", "sysA", 1, 0.5), ("m1", "cs-en", "sysA", 1, 0.6)])
    with pytest.raises(DataError, match="duplicate"):
        ingest_segment_scores(path)


def test_malformed_rows_rejected(tmp_path):
    path = tmp_path / "scores.tsv"
    path.write_text("m1\tcs-en\tnews\tsysA\t1\n", encoding="utf-8")  # 5 cols
    with pytest.raises(DataError, match="columns"):
        ingest_segment_scores(path)
    path.write_text("m1\tcs-en\tnews\tsysA\t1\tnotanumber\n", encoding="utf-8")
    with pytest.raises(DataError):
        ingest_segment_scores(path)


def test_coverage_gap_reported(tmp_path):
    path = tmp_path / "scores.tsv"
    write_tsv(path, [("m1", "cs-en", "sysA", 1, 0.5), ("m1", "cs-en", "sysA", 2, 0.6),
                     ("m1", "cs-en", "sysB", 1, 0.4)])
    with pytest.raises(DataError, match="sysB"):
        ingest_segment_scores(path)


def test_system_score_is_segment_mean():
    m = make_matrix([("m1", "cs-en", "sysA", i, v)
                     for i, v in enumerate([0.1, 0.5, 0.9], start=1)])
    assert m.system_score("m1", "cs-en", "sysA") == pytest.approx(0.5)


def test_system_override(tmp_path):
    m = make_matrix([("m1", "cs-en", "sysA", 1, 0.1)])
    path = tmp_path / "sys.tsv"
    path.write_text("m1\tcs-en\tnews\tsysA\t0.77\n", encoding="utf-8")
    ingest_system_scores(path, m)
    assert m.system_score("m1", "cs-en", "sysA") == 0.77


@pytest.mark.parametrize("values,expected", [
    ([2.0, 4.0, 6.0], [0.0, 0.5, 1.0]),
    ([5.0, 5.0, 5.0], [0.5, 0.5, 0.5]),   # constant group: midpoint
    ([-1.0, 0.0, 1.0], [0.0, 0.5, 1.0]),
])
def test_minmax_examples(values, expected):
    m = make_matrix([("m1", "cs-en", "sysA", i, v) for i, v in enumerate(values, start=1)])
    normalized = minmax_normalize(m)
    got = [normalized.get("m1", "cs-en", "sysA", i) for i in range(1, len(values) + 1)]
    assert got == pytest.approx(expected)


def test_minmax_scope_is_metric_langpair():
    # pools across systems of one language pair, keeps language pairs apart
    m = make_matrix([
        ("m1", "cs-en", "sysA", 1, 0.0), ("m1", "cs-en", "sysB", 1, 10.0),
        ("m1", "de-en", "sysA", 1, 100.0), ("m1", "de-en", "sysB", 1, 300.0),
    ])
    n = minmax_normalize(m)
    assert n.get("m1", "cs-en", "sysA", 1) == 0.0
    assert n.get("m1", "cs-en", "sysB", 1) == 1.0
    assert n.get("m1", "de-en", "sysA", 1) == 0.0
    assert n.get("m1", "de-en", "sysB", 1) == 1.0


def test_minmax_monotone_and_argmax_invariant():
    rng = random.Random(4)
    m = ScoreMatrix()
    for sys in ("s1", "s2", "s3"):
        for seg in range(1, 21):
            m.add("m1", "cs-en", sys, seg, rng.uniform(-5, 5))
    n = minmax_normalize(m)
    values = sorted(m.entries.items())
    normalized = [n.entries[k] for k, _ in values]
    raw = [v for _, v in values]
    for i in range(len(raw)):
        for j in range(len(raw)):
            if raw[i] <= raw[j]:
                assert normalized[i] <= normalized[j]
    best_raw = max(m.system_scores("m1", "cs-en"), key=lambda s: m.system_score("m1", "cs-en", s))
    best_norm = max(n.system_scores("m1", "cs-en"), key=lambda s: n.system_score("m1", "cs-en", s))
    assert best_raw == best_norm


def test_combine_uniform():
    m = make_matrix([("m1", "cs-en", "sysA", 1, 0.2), ("m2", "cs-en", "sysA", 1, 0.8)])
    combined = combine_uniform(m, ["m1", "m2"], combined_id="mix")
    assert combined.get("mix", "cs-en", "sysA", 1) == pytest.approx(0.5)


def test_combine_single_metric_is_identity():
    m = make_matrix([("m1", "cs-en", "sysA", i, 0.3 * i) for i in (1, 2, 3)])
    combined = combine_uniform(m, ["m1"], combined_id="m1x")
    for i in (1, 2, 3):
        assert combined.get("m1x", "cs-en", "sysA", i) == m.get("m1", "cs-en", "sysA", i)


def test_combine_unknown_metric():
    m = make_matrix([("m1", "cs-en", "sysA", 1, 0.2)])
    with pytest.raises(DataError, match="nope"):
        combine_uniform(m, ["nope"])


def test_combine_commutes_with_aggregation():
    rng = random.Random(8)
    m = ScoreMatrix()
    for metric in ("m1", "m2", "m3"):
        for seg in range(1, 31):
            m.add(metric, "cs-en", "sysA", seg, rng.random())
    combined = combine_uniform(m, ["m1", "m2", "m3"], combined_id="mix")
    direct = combined.system_score("mix", "cs-en", "sysA")
    via_system = sum(m.system_score(x, "cs-en", "sysA") for x in ("m1", "m2", "m3")) / 3
    assert direct == pytest.approx(via_system, abs=1e-12)


def test_score_file_roundtrip_12_digits(tmp_path):
    m = make_matrix([("m1", "cs-en", "sysA", 1, 0.123456789012345)])
    path = tmp_path / "out.tsv"
    write_segment_scores(m, path)
    back = ingest_segment_scores(path)
    assert back.get("m1", "cs-en", "sysA", 1) == float(format_score(0.123456789012345))
