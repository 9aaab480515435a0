"""Sentence-level RST discourse trees with a bit-exact text serialization.

A tree is written on one line as nested nodes ``(LABEL:NUC child ...)``
where NUC is one of ``N`` (nucleus), ``S`` (satellite), ``R`` (root).
A node whose children are bare word tokens is an elementary discourse
unit (EDU) and must carry the label ``EDU``.  Inside tokens, backslash
escapes ``(``, ``)``, ``:``, space and backslash itself.

Tree files hold one tree per line (UTF-8); line i is segment i (1-based)
and a blank line marks a missing tree for that segment.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

from discoeval.errors import ParseError

# 18 coarse-grained relation labels plus the leaf tag; unknown labels are
# accepted with a warning since parser vocabularies drift.
KNOWN_RELATIONS = frozenset({
    "Attribution", "Background", "Cause", "Comparison", "Condition",
    "Contrast", "Elaboration", "Enablement", "Evaluation", "Explanation",
    "Joint", "Manner-Means", "Same-Unit", "Summary", "Temporal",
    "Textual-Organization", "Topic-Change", "Topic-Comment",
    "SPAN", "EDU",
})

EDU_LABEL = "EDU"

_ESCAPABLE = "():\\ "


class Nuclearity(enum.Enum):
    NUCLEUS = "N"
    SATELLITE = "S"
    ROOT = "R"


@dataclass(frozen=True)
class DTNode:
    """Either an internal relation node (has children) or an EDU leaf
    (has tokens); never both."""

    label: str
    nuclearity: Nuclearity
    children: tuple[DTNode, ...] = ()
    tokens: tuple[str, ...] = ()

    def __post_init__(self):
        if bool(self.children) == bool(self.tokens):
            raise ValueError("a node has children or tokens, never both (and at least one)")
        if self.tokens and self.label != EDU_LABEL:
            raise ValueError(f"leaf with tokens must be labeled {EDU_LABEL!r}, got {self.label!r}")
        for tok in self.tokens:
            if not tok:
                raise ValueError("empty token")

    @property
    def is_leaf(self) -> bool:
        return bool(self.tokens)


@dataclass(frozen=True)
class DiscourseTree:
    root: DTNode

    def edu_count(self) -> int:
        return sum(1 for n in iter_nodes(self.root) if n.is_leaf)

    def words(self) -> list[str]:
        out = []
        for n in iter_nodes(self.root):
            out.extend(n.tokens)
        return out


def iter_nodes(node: DTNode):
    """Pre-order traversal."""
    yield node
    for child in node.children:
        yield from iter_nodes(child)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, offset=_byte_offset(self.text, self.pos))

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}, found {self.peek()!r}")
        self.pos += 1

    def read_label(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in "(): \t":
            if self.text[self.pos] == "\\":
                raise self.error("backslash not allowed in relation label")
            self.pos += 1
        if self.pos == start:
            raise self.error("empty relation label")
        return self.text[start:self.pos]

    def read_token(self) -> str:
        chars = []
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "\\":
                if self.pos + 1 >= len(self.text) or self.text[self.pos + 1] not in _ESCAPABLE:
                    raise self.error("bad escape sequence")
                chars.append(self.text[self.pos + 1])
                self.pos += 2
            elif c in "() \t":
                break
            elif c == ":":
                chars.append(c)
                self.pos += 1
            else:
                chars.append(c)
                self.pos += 1
        if not chars:
            raise self.error("empty token")
        return "".join(chars)

    def read_node(self, is_root: bool) -> DTNode:
        self.expect("(")
        label = self.read_label()
        self.expect(":")
        nuc_ch = self.peek()
        try:
            nuc = Nuclearity(nuc_ch)
        except ValueError:
            raise self.error(f"bad nuclearity letter {nuc_ch!r}, want N, S or R") from None
        self.pos += 1
        if nuc is Nuclearity.ROOT and not is_root:
            raise self.error("nuclearity R below the tree root")
        if label not in KNOWN_RELATIONS:
            warnings.warn(f"unknown relation label {label!r}", stacklevel=4)

        nodes: list[DTNode] = []
        tokens: list[str] = []
        while True:
            self.skip_ws()
            c = self.peek()
            if c == ")":
                self.pos += 1
                break
            if c == "":
                raise self.error("unexpected end of input, unbalanced parentheses")
            if c == "(":
                nodes.append(self.read_node(is_root=False))
            else:
                tokens.append(self.read_token())
        if nodes and tokens:
            raise self.error("node mixes subtrees and bare tokens")
        if not nodes and not tokens:
            raise self.error("empty node (an EDU needs at least one token)")
        if tokens:
            if label != EDU_LABEL:
                raise self.error(f"token-bearing node must be labeled {EDU_LABEL!r}, got {label!r}")
            return DTNode(label=label, nuclearity=nuc, tokens=tuple(tokens))
        if label == EDU_LABEL:
            raise self.error(f"{EDU_LABEL!r} node must contain tokens only")
        return DTNode(label=label, nuclearity=nuc, children=tuple(nodes))


def parse_dtree(text: str) -> DiscourseTree:
    """Parse one serialized tree.  Raises ParseError (with byte offset) on
    any input that does not match the grammar; never returns a partial tree."""
    parser = _Parser(text)
    parser.skip_ws()
    if parser.peek() != "(":
        raise parser.error("tree must start with '('")
    root = parser.read_node(is_root=True)
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise parser.error("trailing characters after tree")
    return DiscourseTree(root=root)


def escape_token(token: str) -> str:
    return "".join("\\" + c if c in _ESCAPABLE else c for c in token)


def _serialize_node(node: DTNode, parts: list[str]):
    parts.append(f"({node.label}:{node.nuclearity.value}")
    if node.is_leaf:
        for tok in node.tokens:
            parts.append(" " + escape_token(tok))
    else:
        for child in node.children:
            parts.append(" ")
            _serialize_node(child, parts)
    parts.append(")")


def serialize_dtree(tree: DiscourseTree) -> str:
    """Canonical one-line form: single spaces between siblings, no trailing
    whitespace.  parse_dtree(serialize_dtree(t)) structurally equals t."""
    parts: list[str] = []
    _serialize_node(tree.root, parts)
    return "".join(parts)


def read_tree_file(path) -> list[DiscourseTree | None]:
    """Read a tree file; blank lines come back as None (missing tree)."""
    trees: list[DiscourseTree | None] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                trees.append(None)
                continue
            try:
                trees.append(parse_dtree(line))
            except ParseError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return trees
