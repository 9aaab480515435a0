"""Score the bundled toy corpus under all five representations and combine.

Run from the repository root:  python3 demos/02_corpus_scoring.py
"""

from pathlib import Path

from discoeval import (KernelConfig, ReprKind, ScoreMatrix, combine_uniform,
                       kernel_score_corpus, minmax_normalize, read_tree_file, to_repr)

DATA = Path(__file__).resolve().parent.parent / "data" / "toy"

hyp_trees = read_tree_file(DATA / "hyp.trees")
ref_trees = read_tree_file(DATA / "ref.trees")
print(f"{len(hyp_trees)} segments "
      f"({sum(t is None for t in hyp_trees)} hypothesis tree(s) missing)")

matrix = ScoreMatrix()
metrics = []
for kind in ReprKind:
    hyp_r = [t and to_repr(t, kind) for t in hyp_trees]
    ref_r = [t and to_repr(t, kind) for t in ref_trees]
    seg_scores, sys_score = kernel_score_corpus(hyp_r, ref_r, KernelConfig())
    metric = f"dtk.{kind.value}"
    metrics.append(metric)
    for i, s in enumerate(seg_scores, start=1):
        matrix.add(metric, "xx-en", "system", i, s)
    print(f"{metric:12s} system-level score {sys_score:.4f}")

# Uniform combination of the min-max-normalized columns: every
# representation gets equal say regardless of its raw score range.
normalized = minmax_normalize(matrix)
combined = combine_uniform(normalized, metrics, "dtk.light")
print(f"\ndtk.light    system-level score "
      f"{combined.system_score('dtk.light', 'xx-en', 'system'):.4f}")
first = [combined.get("dtk.light", "xx-en", "system", i) for i in range(1, 6)]
print("first five combined segment scores:", [round(v, 3) for v in first])
