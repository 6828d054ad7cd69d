"""Shared algebra fixtures, named by their quiver shapes."""

from __future__ import annotations

import pytest

from quivermoduli import QQ, Element, Field, build_algebra, make_quiver, path_from_labels
from quivermoduli.quiver import PathWord


def rel(quiver, *terms):
    """Relation from (coeff, [labels right-to-left]) pairs."""
    out = Element()
    for coeff, labels in terms:
        p = path_from_labels(quiver, labels)
        out.terms[p] = out.terms.get(p, 0) + coeff
    out.terms = {p: c for p, c in out.terms.items() if c != 0}
    return out


def monomials(quiver, words):
    return [rel(quiver, (1, list(w))) for w in words]


def all_paths_of_length(quiver, k):
    """Label words (right-to-left) of every length-k path."""
    frontier = [((), v) for v in quiver.vertices]
    for _ in range(k):
        nxt = []
        for labels, at in frontier:
            for a in quiver.arrows:
                if a.start == at:
                    nxt.append(((a.label,) + labels, a.end))
        frontier = nxt
    return [list(labels) for labels, _ in frontier]


@pytest.fixture
def kronecker():
    q = make_quiver(2, [("a1", 1, 2), ("a2", 1, 2)])
    return build_algebra(q, [], QQ, 2)


@pytest.fixture
def kronecker_f2():
    q = make_quiver(2, [("a1", 1, 2), ("a2", 1, 2)])
    return build_algebra(q, [], Field(2), 2)


@pytest.fixture
def kronecker_f3():
    q = make_quiver(2, [("a1", 1, 2), ("a2", 1, 2)])
    return build_algebra(q, [], Field(3), 2)


@pytest.fixture
def loop_bridge():
    """Loop a at vertex 1 with a^2 = 0, bridge b: 1 -> 2."""
    q = make_quiver(2, [("a", 1, 1), ("b", 1, 2)])
    return build_algebra(q, monomials(q, [("a", "a")]), QQ, 3)


def loop_bridge_over(field):
    q = make_quiver(2, [("a", 1, 1), ("b", 1, 2)])
    return build_algebra(q, monomials(q, [("a", "a")]), field, 3)


@pytest.fixture
def star3():
    """Two arrows 1->2 and one arrow 1->3, radical square zero."""
    q = make_quiver(3, [("a1", 1, 2), ("a2", 1, 2), ("b", 1, 3)])
    return build_algebra(q, [], QQ, 2)


@pytest.fixture
def cycle_flag():
    """Four parallel arrows 1->2, then 2->3, then 3->1; all length-4 paths zero."""
    q = make_quiver(
        3,
        [("a1", 1, 2), ("a2", 1, 2), ("a3", 1, 2), ("a4", 1, 2), ("b", 2, 3), ("c", 3, 1)],
    )
    rels = monomials(q, all_paths_of_length(q, 4))
    return build_algebra(q, rels, QQ, 4)


def double_loop_algebra(field):
    """Four loops w1..w4 at vertex 1 with all products zero, arrows a, b: 1 -> 2."""
    q = make_quiver(
        2,
        [
            ("w1", 1, 1),
            ("w2", 1, 1),
            ("w3", 1, 1),
            ("w4", 1, 1),
            ("a", 1, 2),
            ("b", 1, 2),
        ],
    )
    words = [(f"w{i}", f"w{j}") for i in range(1, 5) for j in range(1, 5)]
    words += [("a", f"w{i}") for i in (3, 4)]
    words += [("b", f"w{i}") for i in (1, 2)]
    rels = monomials(q, words)
    return build_algebra(q, rels, field, 3)


@pytest.fixture
def double_loop():
    return double_loop_algebra(QQ)


def two_loop_two_arrow_algebra(field):
    """Loops w1, w2 at vertex 1, arrows a, b: 1 -> 2; cube of the radical zero
    plus the mixing relations of the two-generator-tops example family."""
    q = make_quiver(2, [("w1", 1, 1), ("w2", 1, 1), ("a", 1, 2), ("b", 1, 2)])
    words = [("w1", "w1"), ("w2", "w2"), ("w1", "w2"), ("w2", "w1"), ("b", "w1"), ("a", "w2")]
    rels = monomials(q, words)
    return build_algebra(q, rels, field, 3)


@pytest.fixture
def two_loop_two_arrow():
    return two_loop_two_arrow_algebra(QQ)


def path_word(quiver, labels_rtl, start=None):
    if not labels_rtl:
        return PathWord(start, (), start)
    return path_from_labels(quiver, labels_rtl)
