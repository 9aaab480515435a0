"""The five kernel-input representations of a discourse tree.

Every representation maps a DiscourseTree to a plain labeled ordered tree
(ReprTree), the only input type of the kernel:

* ``LEX1``    -- relation_nuclearity labels, words as preterminals.
* ``NOLEX``   -- LEX1 with the lexical layer removed.
* ``LEX2``    -- skeleton of SPAN/EDU tags; nuclearity and relation become
                 property children, words grouped under NGRAM.
* ``LEX1_1``  -- LEX1 plus, per EDU, three extra word groups that propagate
                 the nuclearity and the parent relation down to the words.
* ``LEX2_1``  -- LEX2 with the same three extra word groups.

Words are always preterminals over the dummy leaf label ``*`` so the
kernel can match at the word level.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from discoeval.dtree import DiscourseTree, DTNode, Nuclearity

DUMMY_LEAF = "*"

_NUC_SPELLING = {
    Nuclearity.NUCLEUS: "Nuc",
    Nuclearity.SATELLITE: "Sat",
    Nuclearity.ROOT: "ROOT",
}

ROOT_RELATION = "ROOT"


class ReprKind(enum.Enum):
    NOLEX = "nolex"
    LEX1 = "lex1"
    LEX1_1 = "lex1.1"
    LEX2 = "lex2"
    LEX2_1 = "lex2.1"


@dataclass(frozen=True)
class ReprNode:
    label: str
    children: tuple[ReprNode, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class ReprTree:
    root: ReprNode

    def node_count(self) -> int:
        return sum(1 for _ in iter_repr_nodes(self.root))


def iter_repr_nodes(node: ReprNode):
    yield node
    for child in node.children:
        yield from iter_repr_nodes(child)


def repr_to_text(node: ReprNode) -> str:
    """Canonical flattening, labels as-is: ``label (child)(child)``."""
    if node.is_leaf:
        return node.label
    return node.label + " " + "".join(f"({repr_to_text(c)})" for c in node.children)


def _word_preterminals(tokens) -> tuple[ReprNode, ...]:
    return tuple(ReprNode(word, (ReprNode(DUMMY_LEAF),)) for word in tokens)


def _extra_word_groups(node: DTNode, parent_rel: str) -> tuple[ReprNode, ...]:
    """Three propagated copies of the EDU's words, tagged with the EDU's
    nuclearity, the parent relation, and both combined."""
    nuc = _NUC_SPELLING[node.nuclearity]
    return (
        ReprNode(f"W-NUC:{nuc}", _word_preterminals(node.tokens)),
        ReprNode(f"W-REL:{parent_rel}", _word_preterminals(node.tokens)),
        ReprNode(f"W-RELNUC:{parent_rel}_{nuc}", _word_preterminals(node.tokens)),
    )


def _lex1(node: DTNode, parent_rel: str, lexical: bool, propagate: bool) -> ReprNode:
    nuc = _NUC_SPELLING[node.nuclearity]
    label = f"{node.label}_{nuc}"
    if node.is_leaf:
        if not lexical:
            return ReprNode(label)
        children = _word_preterminals(node.tokens)
        if propagate:
            children += _extra_word_groups(node, parent_rel)
        return ReprNode(label, children)
    return ReprNode(label, tuple(_lex1(c, node.label, lexical, propagate) for c in node.children))


def _lex2(node: DTNode, parent_rel: str, propagate: bool) -> ReprNode:
    nuc_prop = ReprNode(f"NUC:{_NUC_SPELLING[node.nuclearity]}")
    if node.is_leaf:
        children = (nuc_prop, ReprNode("NGRAM", _word_preterminals(node.tokens)))
        if propagate:
            children += _extra_word_groups(node, parent_rel)
        return ReprNode("EDU", children)
    rel_prop = ReprNode(f"REL:{node.label}")
    structural = tuple(_lex2(c, node.label, propagate) for c in node.children)
    return ReprNode("SPAN", (nuc_prop, rel_prop) + structural)


def to_repr(tree: DiscourseTree, kind: ReprKind) -> ReprTree:
    """Transform a discourse tree into the given representation.

    Total on valid trees; deterministic; preserves left-to-right word
    order in all lexicalized kinds.
    """
    if kind is ReprKind.NOLEX:
        root = _lex1(tree.root, ROOT_RELATION, lexical=False, propagate=False)
    elif kind is ReprKind.LEX1:
        root = _lex1(tree.root, ROOT_RELATION, lexical=True, propagate=False)
    elif kind is ReprKind.LEX1_1:
        root = _lex1(tree.root, ROOT_RELATION, lexical=True, propagate=True)
    elif kind is ReprKind.LEX2:
        root = _lex2(tree.root, ROOT_RELATION, propagate=False)
    elif kind is ReprKind.LEX2_1:
        root = _lex2(tree.root, ROOT_RELATION, propagate=True)
    else:
        raise ValueError(f"unknown representation kind: {kind!r}")
    return ReprTree(root)
