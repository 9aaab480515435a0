"""Shared test utilities: random tree generators and the brute-force
subset-tree fragment oracle the kernel is checked against."""

from __future__ import annotations

import itertools
import random
from collections import Counter

from discoeval.dtree import DiscourseTree, DTNode, Nuclearity
from discoeval.kernel import strip_nuc
from discoeval.represent import ReprNode, ReprTree

RELATIONS = ["Elaboration", "Attribution", "Contrast", "Joint", "Background", "Cause"]
WORDS = ["the", "cat", "sat", "he", "said", "works", "on", "a", "mat", "today"]


def random_dtree(rng: random.Random, max_depth: int = 3, max_children: int = 3,
                 words=WORDS) -> DiscourseTree:
    def leaf(nuc):
        tokens = tuple(rng.choice(words) for _ in range(rng.randint(1, 3)))
        return DTNode("EDU", nuc, tokens=tokens)

    def node(depth, nuc):
        if depth >= max_depth or rng.random() < 0.4:
            return leaf(nuc)
        n_children = rng.randint(2, max_children)
        children = tuple(
            node(depth + 1, rng.choice([Nuclearity.NUCLEUS, Nuclearity.SATELLITE]))
            for _ in range(n_children))
        return DTNode(rng.choice(RELATIONS), nuc, children=children)

    return DiscourseTree(root=node(0, Nuclearity.ROOT))


def random_repr_tree(rng: random.Random, max_nodes: int = 10) -> ReprTree:
    """Random labeled tree with <= max_nodes nodes; labels come from a
    6-symbol alphabet, mostly carrying a nuclearity suffix."""
    alphabet = "ABCDEF"
    suffixes = ["_Nuc", "_Sat", "_ROOT", ""]

    def label():
        return rng.choice(alphabet) + rng.choice(suffixes)

    budget = rng.randint(1, max_nodes)

    def node(remaining):
        # remaining includes this node
        n_children = rng.randint(0, min(3, remaining - 1))
        children = []
        left = remaining - 1
        for i in range(n_children):
            share = left // (n_children - i)
            if share < 1:
                break
            size = rng.randint(1, share)
            children.append(node(size))
            left -= size
        return ReprNode(label(), tuple(children))

    return ReprTree(node(budget))


# -- brute-force fragment enumeration ----------------------------------------


def _expansions(node: ReprNode):
    """All subset-tree shapes rooted at this node when it appears *inside*
    a fragment: either stop at the label, or take all children and recurse."""
    shapes = [("stop", node.label)]
    if node.children:
        child_options = [_expansions(c) for c in node.children]
        for combo in itertools.product(*child_options):
            shapes.append(("exp", node.label, combo))
    return shapes


def enumerate_fragments(tree: ReprTree) -> Counter:
    """Multiset of all subset-tree fragments of the tree, each keyed with
    its root label stripped of any nuclearity suffix (inner labels kept)."""
    frags: Counter = Counter()
    def visit(node: ReprNode):
        if node.children:
            child_options = [_expansions(c) for c in node.children]
            for combo in itertools.product(*child_options):
                frags[(strip_nuc(node.label), combo)] += 1
        for c in node.children:
            visit(c)
    visit(tree.root)
    return frags


def fragment_pair_count(a: ReprTree, b: ReprTree) -> int:
    """Number of matching fragment pairs; equals the raw kernel at decay 1."""
    fa = enumerate_fragments(a)
    fb = enumerate_fragments(b)
    return sum(count * fb[frag] for frag, count in fa.items())


# -- synthetic ranking data for tuner tests -----------------------------------


def synthetic_judged_corpus(rng: random.Random, w_star, n_segments: int,
                            n_systems: int = 5, langpairs=("cs-en",),
                            noise: float = 0.0, doc_size: int = 10):
    """Feature matrix plus 5-way rankings induced by a planted weight vector.

    Features are uniform in [0,1] per (metric, system, segment).  Each
    segment gets one ranking record ordering the systems by the planted
    linear score; with probability `noise` a record's ranking is replaced
    by a random permutation.  Documents group `doc_size` consecutive
    segments so fold assignment has something to stratify on.
    """
    from discoeval.judgments import RankingRecord
    from discoeval.scores import ScoreMatrix

    d = len(w_star)
    metrics = [f"m{i}" for i in range(d)]
    matrix = ScoreMatrix()
    records = []
    for lp in langpairs:
        for seg in range(1, n_segments + 1):
            feats = {}
            for s in range(n_systems):
                sys_id = f"sys{s}"
                f = [rng.random() for _ in range(d)]
                feats[sys_id] = f
                for m_id, v in zip(metrics, f):
                    matrix.add(m_id, lp, sys_id, seg, v)
            true = {sys_id: sum(w * v for w, v in zip(w_star, f))
                    for sys_id, f in feats.items()}
            ordered = sorted(true, key=true.get, reverse=True)
            if noise > 0.0 and rng.random() < noise:
                rng.shuffle(ordered)
            items = tuple((sys_id, rank) for rank, sys_id in enumerate(ordered, start=1))
            records.append(RankingRecord(lp, seg, f"doc{(seg - 1) // doc_size}",
                                         "judge", items))
    return metrics, matrix, records
