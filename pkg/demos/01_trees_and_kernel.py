"""Parse a discourse tree, build its five representations, compare with the kernel.

Run from the repository root:  python3 demos/01_trees_and_kernel.py
"""

from discoeval import KernelConfig, ReprKind, parse_dtree, serialize_dtree, to_repr, tree_kernel

HYP = "(Elaboration:R (EDU:N the cat sat) (EDU:S on the mat))"
REF = "(Elaboration:R (EDU:N the cat sat) (EDU:S on a mat))"

hyp = parse_dtree(HYP)
ref = parse_dtree(REF)
print("hypothesis:", serialize_dtree(hyp))
print("reference: ", serialize_dtree(ref))
print()

# Each representation exposes a different mix of structure and lexicon,
# so the same tree pair gets five similarity scores.
for kind in ReprKind:
    rh, rr = to_repr(hyp, kind), to_repr(ref, kind)
    score = tree_kernel(rh, rr, KernelConfig(decay=1.0))
    print(f"{kind.value:8s}  nodes {rh.node_count():3d}/{rr.node_count():3d}  "
          f"raw {score.raw:8.1f}  normalized {score.normalized:.4f}")

print()
print("A decaying lambda down-weights large fragments:")
for decay in (1.0, 0.5, 0.1):
    s = tree_kernel(to_repr(hyp, ReprKind.LEX1), to_repr(ref, ReprKind.LEX1),
                    KernelConfig(decay=decay))
    print(f"  lambda={decay}: normalized {s.normalized:.4f}")
