"""Command-line pipeline: score, combine, tune, eval.

Every command is a pure function of its input files and flags.  A JSON
run manifest (command, config, SHA-256 digests of the inputs, tool
version) is written next to each output file, so identical manifests
imply bit-identical outputs.

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from discoeval import __version__
from discoeval.dtree import read_tree_file
from discoeval.errors import DiscoEvalError, NoValueError
from discoeval.judgments import expand_all, make_folds, read_rankings
from discoeval.kernel import KernelConfig, kernel_score_corpus
from discoeval.represent import ReprKind, to_repr
from discoeval.scores import (ScoreMatrix, combine_uniform, format_score,
                              ingest_segment_scores, minmax_normalize,
                              write_segment_scores, write_system_scores)
from discoeval.stats import (TiePolicy, average_over_langpairs,
                             human_system_scores, kendall_tau, pearson, spearman)
from discoeval.tiebreak import break_ties
from discoeval.tuning import (TrainConfig, build_instances, crossval_tau,
                              feature_vector, read_weights, train, write_weights)

NA = "NA"


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(output_path, command: str, inputs, config: dict):
    manifest = {
        "command": command,
        "config": config,
        "inputs": {str(p): _digest(p) for p in inputs},
        "version": __version__,
    }
    with open(f"{output_path}.manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- score -------------------------------------------------------------------

REPR_CHOICES = [k.value for k in ReprKind] + ["all"]


def cmd_score(args) -> int:
    hyp = read_tree_file(args.hyp)
    ref = read_tree_file(args.ref)
    if len(hyp) != len(ref):
        raise DiscoEvalError(f"line count mismatch: {len(hyp)} hypothesis vs "
                             f"{len(ref)} reference trees")
    kinds = list(ReprKind) if args.repr == "all" else [ReprKind(args.repr)]
    cfg = KernelConfig(decay=args.decay, normalize=not args.raw)

    matrix = ScoreMatrix()
    matrix.testset = args.testset
    for kind in kinds:
        hyp_reprs = [to_repr(t, kind) if t is not None else None for t in hyp]
        ref_reprs = [to_repr(t, kind) if t is not None else None for t in ref]
        segment_scores, _ = kernel_score_corpus(hyp_reprs, ref_reprs, cfg)
        metric = f"{args.metric_id_prefix}.{kind.value}"
        for i, score in enumerate(segment_scores, start=1):
            matrix.add(metric, args.langpair, args.system, i, score)

    config = {"repr": args.repr, "lambda": args.decay, "normalize": not args.raw,
              "metric_id_prefix": args.metric_id_prefix, "langpair": args.langpair,
              "system": args.system, "testset": args.testset}
    write_segment_scores(matrix, args.seg_out)
    write_manifest(args.seg_out, "score", [args.hyp, args.ref], config)
    if args.sys_out:
        write_system_scores(matrix, args.sys_out)
        write_manifest(args.sys_out, "score", [args.hyp, args.ref], config)
    return 0


# -- combine -----------------------------------------------------------------


def _load_matrices(paths) -> ScoreMatrix:
    matrix = ScoreMatrix()
    for path in paths:
        ingest_segment_scores(path, matrix)
    return matrix


def cmd_combine(args) -> int:
    if bool(args.metrics) == bool(args.weights):
        raise DiscoEvalError("exactly one of --metrics or --weights is required")
    matrix = _load_matrices(args.scores)
    if args.normalize:
        matrix = minmax_normalize(matrix)

    out = ScoreMatrix()
    out.testset = matrix.testset
    if args.metrics:
        metrics = args.metrics.split(",")
        out = combine_uniform(matrix, metrics, combined_id=args.metric_id)
        config_sel = {"metrics": metrics}
    else:
        w = read_weights(args.weights)
        for m in w.schema:
            if m not in matrix.metrics():
                raise DiscoEvalError(f"weight file names unknown metric {m!r}")
        from discoeval.tuning import predict_segment, predict_system
        first = w.schema[0]
        for lp in matrix.langpairs():
            for system in matrix.systems(first, lp):
                segments = matrix.segments(first, lp)
                feats = [feature_vector(matrix, w.schema, lp, system, seg)
                         for seg in segments]
                for seg, f in zip(segments, feats):
                    out.entries[(args.metric_id, lp, system, seg)] = predict_segment(w, f)
                out._system_overrides[(args.metric_id, lp, system)] = predict_system(w, feats)
        config_sel = {"weights_file": str(args.weights)}

    config = {"normalize": args.normalize, "metric_id": args.metric_id, **config_sel}
    inputs = list(args.scores) + ([args.weights] if args.weights else [])
    write_segment_scores(out, args.seg_out)
    write_manifest(args.seg_out, "combine", inputs, config)
    if args.sys_out:
        write_system_scores(out, args.sys_out)
        write_manifest(args.sys_out, "combine", inputs, config)
    return 0


# -- tune --------------------------------------------------------------------


def cmd_tune(args) -> int:
    matrix = minmax_normalize(_load_matrices(args.scores))
    records = read_rankings(args.rankings)
    schema = matrix.metrics()
    cfg = TrainConfig(l2=args.l2, seed=args.seed)

    pairs = expand_all(records)
    w = train(build_instances(pairs, matrix, schema), cfg)
    write_weights(w, args.weights_out)
    config = {"l2": args.l2, "seed": args.seed, "folds": args.folds, "schema": schema}
    inputs = list(args.scores) + [args.rankings]
    write_manifest(args.weights_out, "tune", inputs, config)

    if args.folds:
        folds = make_folds(records, args.folds, seed=args.seed)
        result = crossval_tau(matrix, records, folds, cfg, schema=schema)
        with open(args.report_out, "w", encoding="utf-8") as fh:
            for i, tau in enumerate(result.per_fold_tau):
                fh.write(f"fold\t{i}\ttau\t{format_score(tau)}\n")
            fh.write(f"pooled\t-\ttau\t{format_score(result.pooled_tau)}\n")
        write_manifest(args.report_out, "tune", inputs, config)
    return 0


# -- eval --------------------------------------------------------------------


def cmd_eval(args) -> int:
    matrix = _load_matrices(args.scores)
    records = read_rankings(args.rankings)
    judgments = expand_all(records)
    policy = TiePolicy(args.tie_policy)

    rows = []
    for metric in matrix.metrics():
        work = matrix
        if args.tiebreak:
            work, _ = break_ties(matrix, metric)
        per_lp = []
        for lp in work.langpairs():
            lp_judgments = [j for j in judgments if j.langpair == lp]
            if not lp_judgments:
                continue
            try:
                if args.stat == "tau":
                    scores = {(lp, sys, seg): work.get(metric, lp, sys, seg)
                              for sys in work.systems(metric, lp)
                              for seg in work.segments(metric, lp)}
                    value = kendall_tau(lp_judgments, scores, policy)
                else:
                    human = human_system_scores(judgments, lp)
                    systems = [s for s in sorted(human) if s in work.systems(metric, lp)]
                    if len(systems) < 2:
                        raise NoValueError(f"fewer than 2 scored systems for {lp}")
                    x = [work.system_score(metric, lp, s) for s in systems]
                    y = [human[s] for s in systems]
                    value = pearson(x, y) if args.stat == "pearson" else spearman(x, y)
            except NoValueError:
                rows.append((metric, lp, args.stat, NA))
                continue
            per_lp.append(value)
            rows.append((metric, lp, args.stat, format_score(value)))
        if per_lp:
            rows.append((metric, "avg", args.stat, format_score(average_over_langpairs(per_lp))))
        else:
            rows.append((metric, "avg", args.stat, NA))

    with open(args.out, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write("\t".join(row) + "\n")
    config = {"stat": args.stat, "tie_policy": args.tie_policy, "tiebreak": args.tiebreak}
    write_manifest(args.out, "eval", list(args.scores) + [args.rankings], config)
    return 0


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discoeval",
        description="Discourse-tree similarity metrics for MT evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="kernel-score aligned tree files",
                       description="Score line-aligned hypothesis/reference tree files "
                                   "(one serialized tree per line, blank = missing) with "
                                   "the subset-tree kernel under one or all representations.")
    p.add_argument("hyp", help="hypothesis tree file")
    p.add_argument("ref", help="reference tree file")
    p.add_argument("--repr", default="all", choices=REPR_CHOICES)
    p.add_argument("--lambda", dest="decay", type=float, default=1.0,
                   help="kernel decay in (0,1], default 1.0")
    p.add_argument("--raw", action="store_true", help="skip cosine normalization")
    p.add_argument("--metric-id-prefix", default="dtk")
    p.add_argument("--langpair", default="xx-en")
    p.add_argument("--system", default="system")
    p.add_argument("--testset", default="test")
    p.add_argument("--seg-out", required=True, help="segment score TSV output")
    p.add_argument("--sys-out", help="system score TSV output")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("combine", help="combine metrics uniformly or with weights",
                       description="Uniform mean over --metrics, or weighted w.f with "
                                   "sigmoid at segment level and raw mean at system level "
                                   "with --weights.")
    p.add_argument("scores", nargs="+", help="segment score TSV inputs")
    p.add_argument("--metrics", help="comma-separated metric ids for the uniform mean")
    p.add_argument("--weights", help="weight file (metric<TAB>weight)")
    p.add_argument("--normalize", action="store_true",
                   help="min-max normalize per metric and language pair first")
    p.add_argument("--metric-id", default="combined")
    p.add_argument("--seg-out", required=True)
    p.add_argument("--sys-out")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("tune", help="learn combination weights from rankings",
                       description="Pairwise learning-to-rank over min-max normalized "
                                   "scores; optionally document-stratified cross-validation.")
    p.add_argument("scores", nargs="+")
    p.add_argument("rankings", help="rankings TSV: langpair, segment, document, judge, "
                                    "sys=rank list")
    p.add_argument("--l2", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--folds", type=int)
    p.add_argument("--weights-out", required=True)
    p.add_argument("--report-out", help="per-fold Tau report (needs --folds)")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("eval", help="correlate metric scores with human judgments",
                       description="Per-language-pair report rows plus an `avg` row; "
                                   "tau at segment level, pearson/spearman on system "
                                   "scores vs win-ratio human scores.")
    p.add_argument("scores", nargs="+")
    p.add_argument("rankings")
    p.add_argument("--stat", required=True, choices=["tau", "pearson", "spearman"])
    p.add_argument("--tie-policy", default="discordant", choices=["discordant", "excluded"])
    p.add_argument("--tiebreak", action="store_true",
                   help="apply the tie-breaking perturbation pass before Tau")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "tune" and args.folds and not args.report_out:
        parser.error("--folds requires --report-out")
    try:
        return args.func(args)
    except DiscoEvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
