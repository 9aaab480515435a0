import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discoeval.dtree import (DiscourseTree, DTNode, Nuclearity, parse_dtree,
                             read_tree_file, serialize_dtree)
from discoeval.errors import ParseError
from helpers import random_dtree

EXAMPLE = "(Elaboration:R (EDU:N the cat sat) (Attribution:S (EDU:S he said) (EDU:N it works)))"


def test_parse_example():
    tree = parse_dtree(EXAMPLE)
    assert tree.root.label == "Elaboration"
    assert tree.root.nuclearity is Nuclearity.ROOT
    assert tree.edu_count() == 3
    assert tree.words() == ["the", "cat", "sat", "he", "said", "it", "works"]


def test_roundtrip_example():
    assert serialize_dtree(parse_dtree(EXAMPLE)) == EXAMPLE


def test_single_edu_tree():
    tree = parse_dtree("(EDU:R hello)")
    assert tree.root.is_leaf
    assert tree.root.tokens == ("hello",)
    assert serialize_dtree(tree) == "(EDU:R hello)"


def test_nary_node_accepted():
    tree = parse_dtree("(Elaboration:R (EDU:N a) (EDU:N b) (EDU:S c))")
    assert len(tree.root.children) == 3


def test_escaped_token_roundtrip():
    tree = DiscourseTree(DTNode("EDU", Nuclearity.ROOT, tokens=("a(b",)))
    text = serialize_dtree(tree)
    assert "\\(" in text
    assert parse_dtree(text).root.tokens == ("a(b",)


def test_whitespace_canonicalized():
    sloppy = "(Elaboration:R   (EDU:N a)    (EDU:S b) )"
    assert serialize_dtree(parse_dtree(sloppy)) == "(Elaboration:R (EDU:N a) (EDU:S b))"


@pytest.mark.parametrize("bad", [
    "",
    "hello",
    "(EDU:R hello",                      # unbalanced
    "(EDU:R hello)) ",                   # trailing garbage
    "(EDU:R)",                           # empty EDU
    "(EDU:X hello)",                     # bad nuclearity letter
    "(Elaboration:R (EDU:R a) (EDU:S b))",  # Root below root
    "(Span hello)",                      # missing nuclearity
    "(Elaboration:R (EDU:N a) b)",       # mixed subtree and bare token
    "(Elaboration:R hello)",             # tokens under non-EDU label
    "(EDU:R (EDU:N a))",                 # EDU with subtree children
])
def test_rejection_is_total(bad):
    with pytest.raises(ParseError):
        parse_dtree(bad)


def test_parse_error_carries_byte_offset():
    with pytest.raises(ParseError) as exc_info:
        parse_dtree("(Elaboration:R (EDU:R a) (EDU:S b))")
    assert exc_info.value.offset is not None
    assert "byte" in str(exc_info.value)


def test_unknown_label_warns_but_parses():
    with pytest.warns(UserWarning, match="Frobnication"):
        tree = parse_dtree("(Frobnication:R (EDU:N a) (EDU:S b))")
    assert tree.root.label == "Frobnication"


@pytest.mark.parametrize("seed", range(30))
def test_roundtrip_random_trees(seed):
    tree = random_dtree(random.Random(seed))
    assert parse_dtree(serialize_dtree(tree)) == tree


@given(st.lists(st.text(alphabet="ab():\\ x", min_size=1), min_size=1, max_size=5))
@settings(max_examples=200)
def test_token_escaping_roundtrip(tokens):
    tree = DiscourseTree(DTNode("EDU", Nuclearity.ROOT, tokens=tuple(tokens)))
    assert parse_dtree(serialize_dtree(tree)) == tree


def test_edu_count_matches_canonical_form():
    for seed in range(20):
        tree = random_dtree(random.Random(seed))
        canonical = serialize_dtree(tree)
        assert tree.edu_count() == canonical.count("(EDU")


def test_read_tree_file_blank_is_missing(tmp_path):
    path = tmp_path / "trees.txt"
    path.write_text("(EDU:R hello)\n\n(EDU:R world)\n", encoding="utf-8")
    trees = read_tree_file(path)
    assert len(trees) == 3
    assert trees[1] is None
    assert trees[0].root.tokens == ("hello",)


def test_read_tree_file_reports_line(tmp_path):
    path = tmp_path / "trees.txt"
    path.write_text("(EDU:R hello)\n(EDU:R\n", encoding="utf-8")
    with pytest.raises(ParseError, match=":2:"):
        read_tree_file(path)
