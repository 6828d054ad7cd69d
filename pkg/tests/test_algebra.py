"""Bound quiver algebra construction, checked against naive walk oracles."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivermoduli import BadRelation, Element, Field, NotAdmissible, QQ, build_algebra, make_quiver
from quivermoduli.quiver import deglex_key, idempotent, path_from_labels

from conftest import all_paths_of_length, monomials, rel
from oracles import count_walks

CYCLE_ARROWS = [("a1", 1, 2), ("a2", 1, 2), ("a3", 1, 2), ("a4", 1, 2), ("b", 2, 3), ("c", 3, 1)]


def test_kronecker_counts(kronecker):
    assert kronecker.dim == 4
    assert kronecker.loewy == 2
    assert sorted(str(p) for p in kronecker.basis) == ["a1", "a2", "e1", "e2"]
    assert [str(p) for p in kronecker.basis_at(2)] == ["e2"]


def test_cycle_flag_dims_match_walk_oracle(cycle_flag):
    # killing exactly the length-4 paths leaves the shorter walks as a basis
    for v in (1, 2, 3):
        walks = [w for k in range(4) for w in count_walks(CYCLE_ARROWS, v, k)]
        assert len(cycle_flag.basis_at(v)) == len(walks)
    assert len(cycle_flag.basis_at(1)) == 13
    assert cycle_flag.dim == 30
    assert cycle_flag.loewy == 4


def test_dimension_partitions_by_start(cycle_flag):
    assert cycle_flag.dim == sum(len(cycle_flag.basis_at(v)) for v in cycle_flag.quiver.vertices)


def test_double_loop_counts(double_loop):
    assert double_loop.dim == 12
    assert [len(double_loop.basis_at(v)) for v in (1, 2)] == [11, 1]
    assert double_loop.loewy == 3
    assert double_loop.is_homogeneous_ideal() is True


def test_two_loop_two_arrow_counts(two_loop_two_arrow):
    assert two_loop_two_arrow.dim == 8
    assert [len(two_loop_two_arrow.basis_at(v)) for v in (1, 2)] == [7, 1]


def test_loop_without_relations_is_rejected():
    q = make_quiver(1, [("a", 1, 1)])
    with pytest.raises(NotAdmissible):
        build_algebra(q, [], QQ, 4)


def test_radical_idempotent_relation_is_rejected():
    # a^3 = a^2 makes the class of a^2 a nonzero idempotent inside the radical
    q = make_quiver(1, [("a", 1, 1)])
    r = rel(q, (1, ["a", "a", "a"]), (-1, ["a", "a"]))
    with pytest.raises(NotAdmissible):
        build_algebra(q, [r], QQ, 6)


def test_bad_relations_rejected():
    q = make_quiver(3, [("a", 1, 2), ("b", 1, 2), ("c", 2, 3), ("d", 2, 1)])
    with pytest.raises(BadRelation):
        build_algebra(q, [rel(q, (1, ["a"]))], QQ, 3)
    with pytest.raises(BadRelation):
        build_algebra(q, [rel(q, (1, ["c", "a"]), (1, ["d", "a"]))], QQ, 3)
    with pytest.raises(BadRelation):
        build_algebra(q, [Element()], QQ, 3)


def test_relation_vanishing_mod_p_rejected():
    q = make_quiver(1, [("a", 1, 1)])
    with pytest.raises(BadRelation):
        build_algebra(q, [rel(q, (3, ["a", "a"]))], Field(3), 4)


def test_relation_coefficients_canonicalized_mod_p():
    # over F_3 the generator collapses to a^2 alone; without reduction the
    # length-3 term would be taken as the pivot
    q = make_quiver(1, [("a", 1, 1)])
    r = rel(q, (1, ["a", "a"]), (3, ["a", "a", "a"]))
    alg = build_algebra(q, [r], Field(3), 4)
    assert alg.dim == 2
    assert alg.loewy == 2


def test_deglex_rewrite_prefers_later_declared_arrows():
    # declaration order puts g, d first, so b*a is the pivot of b*a - d*g
    q = make_quiver(4, [("g", 1, 4), ("d", 4, 3), ("a", 1, 2), ("b", 2, 3)])
    r = rel(q, (1, ["b", "a"]), (-1, ["d", "g"]))
    alg = build_algebra(q, [r], QQ, 3)
    ba = path_from_labels(q, ["b", "a"])
    dg = path_from_labels(q, ["d", "g"])
    assert alg.nf_path(ba) == {dg: QQ.one()}
    assert alg.nf_path(dg) == {dg: QQ.one()}
    assert alg.dim == 9
    assert ba not in set(alg.basis)
    assert dg in set(alg.basis)


def test_component_wise_homogeneous_generator():
    # b*a*l - b*a generates the same ideal as {l*l, b*a}, so every length
    # component of the generator reduces to zero on its own
    q = make_quiver(3, [("l", 1, 1), ("a", 1, 2), ("b", 2, 3)])
    rels = [rel(q, (1, ["l", "l"])), rel(q, (1, ["b", "a", "l"]), (-1, ["b", "a"]))]
    alg = build_algebra(q, rels, QQ, 4)
    assert alg.dim == 7
    assert alg.loewy == 3
    assert alg.is_homogeneous_ideal() is True
    assert alg.nf_path(path_from_labels(q, ["b", "a"])) == {}


def test_genuinely_inhomogeneous_ideal():
    # c*b*a = c*d identifies a length-3 path with a length-2 one
    q = make_quiver(4, [("a", 1, 2), ("b", 2, 3), ("c", 3, 4), ("d", 1, 3)])
    r = rel(q, (1, ["c", "b", "a"]), (-1, ["c", "d"]))
    alg = build_algebra(q, [r], QQ, 4)
    assert alg.dim == 11
    assert alg.loewy == 4
    assert alg.is_homogeneous_ideal() is False
    cba = path_from_labels(q, ["c", "b", "a"])
    cd = path_from_labels(q, ["c", "d"])
    assert alg.nf_path(cba) == {cd: QQ.one()}
    # the identified class sits in the cube of the radical although the
    # surviving basis word has length 2
    assert max(p.length for p in alg.basis) == 2


def test_window_size_does_not_change_the_algebra():
    q = make_quiver(2, [("a", 1, 1), ("b", 1, 2)])
    small = build_algebra(q, monomials(q, [("a", "a")]), QQ, 3)
    large = build_algebra(q, monomials(q, [("a", "a")]), QQ, 6)
    assert small.basis == large.basis
    assert small.loewy == large.loewy


def test_basis_closed_under_initial_subpaths(cycle_flag):
    basis = set(cycle_flag.basis)
    for p in basis:
        for m in range(p.length):
            assert p.initial(m, cycle_flag.quiver) in basis


def test_mul_respects_relations(cycle_flag):
    q = cycle_flag.quiver
    b = rel(q, (1, ["b"]))
    a1 = rel(q, (1, ["a1"]))
    assert cycle_flag.mul(b, a1).terms == rel(q, (1, ["b", "a1"])).terms
    cba = rel(q, (1, ["c", "b", "a1"]))
    a2 = rel(q, (1, ["a2"]))
    assert cycle_flag.mul(a2, cba).is_zero()  # length 4 dies
    assert cycle_flag.mul(a2, a1).is_zero()  # not composable


def test_projective_layers_kronecker(kronecker):
    assert kronecker.projective_layer_dims(1) == ((1, 0), (0, 2))
    assert kronecker.projective_layer_dims(2) == ((0, 1),)


def test_projective_layers_loop_bridge(loop_bridge):
    assert loop_bridge.projective_layer_dims(1) == ((1, 0), (1, 1), (0, 1))
    assert loop_bridge.projective_layer_dims(2) == ((0, 1),)


def test_projective_layers_cycle_flag(cycle_flag):
    assert cycle_flag.projective_layer_dims(1) == ((1, 0, 0), (0, 4, 0), (0, 0, 4), (4, 0, 0))


def test_projective_layers_star3(star3):
    assert star3.projective_layer_dims(1) == ((1, 0, 0), (0, 2, 1))


def test_nakayama_recognition():
    line = make_quiver(3, [("a", 1, 2), ("b", 2, 3)])
    assert build_algebra(line, [], QQ, 3).is_nakayama() is True
    kron = make_quiver(2, [("a", 1, 2), ("b", 1, 2)])
    assert build_algebra(kron, [], QQ, 2).is_nakayama() is False


# -- normal form properties on a fixed algebra -----------------------------

_Q = make_quiver(3, CYCLE_ARROWS)
_ALG = build_algebra(_Q, monomials(_Q, all_paths_of_length(_Q, 4)), QQ, 4)
_PATHS = [idempotent(v) for v in _Q.vertices] + [
    path_from_labels(_Q, w) for k in (1, 2, 3, 4) for w in all_paths_of_length(_Q, k)
]


@st.composite
def elements(draw):
    out = Element()
    for _ in range(draw(st.integers(1, 4))):
        p = draw(st.sampled_from(_PATHS))
        c = QQ.of_int(draw(st.integers(-4, 4)))
        out = out.add(Element.from_path(p, c), QQ)
    return out


@given(x=elements(), y=elements())
def test_normal_form_is_a_linear_projection(x, y):
    nx = _ALG.normal_form(x)
    assert _ALG.normal_form(nx).terms == nx.terms
    lhs = _ALG.normal_form(x.add(y, QQ))
    rhs = nx.add(_ALG.normal_form(y), QQ)
    assert lhs.terms == rhs.terms


@given(x=elements(), y=elements())
def test_multiplication_descends_to_the_quotient(x, y):
    direct = _ALG.mul(x, y)
    reduced = _ALG.mul(_ALG.normal_form(x), _ALG.normal_form(y))
    assert direct.terms == reduced.terms


@given(p=st.sampled_from([w for w in _PATHS if w.length >= 1]))
def test_reduction_never_increases_deglex(p):
    nf = _ALG.nf_path(p)
    if p in _ALG.basis_index:
        assert nf == {p: QQ.one()}
    else:
        for b in nf:
            assert deglex_key(_Q, b) < deglex_key(_Q, p)
