"""Grassmannians of submodules with fixed top.

A semisimple top T pins a projective cover P = (+)_r Lambda*z_r; the variety
of interest is the set of submodules C <= JP with dim P/C = d, acted on by
Aut(P). Everything here is coordinatized over the path basis of P: points
are RREF row spans, skeleta are subpath-closed sets of (path, copy) pairs,
and each skeleton carries an affine chart whose coordinates are the
congruence coefficients of arrow-images off the skeleton.

The chart machinery requires basis-path lengths to induce the radical
filtration of the projectives (true whenever the reduction never rewrites a
path into shorter ones); projective_cover refuses otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import Algebra
from .config import DEFAULT_LIMITS, SearchLimits
from .errors import (
    EquationsViolated,
    IdealNotGraded,
    NotInvertible,
    NotOnChart,
    UnsupportedAlgebra,
)
from .fields import Scalar
from .linalg import (
    Matrix,
    Vector,
    in_span,
    is_invertible,
    is_zero_vec,
    kernel_basis,
    mat_vec,
    rank,
    reduce_mod,
    solve,
    span_rref,
    transpose,
)
from .polys import Poly, PolyRing
from .quiver import Element, PathWord, compose, deglex_key, extend, idempotent
from .reps import (
    Rep,
    SemisimpleSequence,
    _vertex_dims,
    direct_sum,
    is_arrow_stable,
    quotient_rep,
    radical_layering,
    rep_of_projective,
)

#: A basis element p*z_r of P: the path p together with the copy index r.
BElem = tuple[PathWord, int]


@dataclass(frozen=True)
class TopSpec:
    """Multiplicities (t_1, ..., t_n) of the simples in a semisimple top."""

    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(t < 0 for t in self.mult):
            raise ValueError("top multiplicities must be non-negative")
        if not any(self.mult):
            raise ValueError("top must be nonzero")

    @property
    def total(self) -> int:
        return sum(self.mult)

    @property
    def squarefree(self) -> bool:
        return all(t <= 1 for t in self.mult)

    @property
    def simple(self) -> bool:
        return self.total == 1

    def __str__(self) -> str:
        parts = []
        for v, t in enumerate(self.mult, start=1):
            if t == 1:
                parts.append(f"S{v}")
            elif t > 1:
                parts.append(f"S{v}^{t}")
        return " + ".join(parts)


def top_spec(alg: Algebra, mult: tuple[int, ...] | list[int]) -> TopSpec:
    t = TopSpec(tuple(mult))
    if len(t.mult) != alg.quiver.n:
        raise ValueError("top multiplicity vector has wrong length")
    return t


class ProjectiveCover:
    """P = (+)_r Lambda*z_r with z_r normed by the idempotent at gens[r].

    Coordinates are the path basis elements p*z_r, listed in the same order
    as the flattened space of the underlying Rep (vertex blocks, copies in
    order inside each block).
    """

    __slots__ = ("alg", "top", "gens", "rep", "belems", "index")

    def __init__(self, alg: Algebra, top: TopSpec):
        self.alg = alg
        self.top = top
        gens = []
        for v in alg.quiver.vertices:
            gens.extend([v] * top.mult[v - 1])
        self.gens = tuple(gens)
        for v in sorted(set(gens)):
            if _trim(alg.projective_layer_dims(v)) != _trim(
                radical_layering(alg, rep_of_projective(alg, v))
            ):
                raise UnsupportedAlgebra(
                    f"path lengths do not grade the radical filtration of "
                    f"Lambda*e{v}; charts are unavailable for this algebra"
                )
        rep = rep_of_projective(alg, self.gens[0])
        for v in self.gens[1:]:
            rep = direct_sum(rep, rep_of_projective(alg, v))
        self.rep = rep
        belems: list[BElem] = []
        for v in alg.quiver.vertices:
            for r, gv in enumerate(self.gens):
                belems.extend((p, r) for p in alg.basis_at(gv) if p.end == v)
        self.belems = tuple(belems)
        self.index = {b: i for i, b in enumerate(belems)}

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rep.d

    @property
    def total(self) -> int:
        return self.rep.total

    def unit(self, b: BElem) -> Vector:
        f = self.alg.field
        v = [f.zero()] * self.total
        v[self.index[b]] = f.one()
        return v

    def generator_elems(self) -> list[BElem]:
        return [(idempotent(v), r) for r, v in enumerate(self.gens)]

    def element_vector(self, x: Element, r: int) -> Vector:
        """Global coordinates of x*z_r (x is reduced to normal form first)."""
        f = self.alg.field
        v = [f.zero()] * self.total
        for p, c in self.alg.normal_form(x).terms.items():
            if p.start != self.gens[r]:
                raise ValueError(f"element does not start at the vertex of z{r + 1}")
            v[self.index[(p, r)]] = c
        return v

    def describe(self, b: BElem) -> str:
        p, r = b
        if p.length == 0:
            return f"z{r + 1}"
        return f"{p}*z{r + 1}"

    def belem_key(self, b: BElem) -> tuple:
        return (deglex_key(self.alg.quiver, b[0]), b[1])

    def __repr__(self) -> str:
        return f"ProjectiveCover(top={self.top}, dims={self.dims})"


def projective_cover(alg: Algebra, top: TopSpec | tuple[int, ...]) -> ProjectiveCover:
    if not isinstance(top, TopSpec):
        top = top_spec(alg, top)
    elif len(top.mult) != alg.quiver.n:
        raise ValueError("top multiplicity vector has wrong length")
    return ProjectiveCover(alg, top)


def _trim(rows: SemisimpleSequence) -> tuple[tuple[int, ...], ...]:
    out = list(rows)
    while out and not any(out[-1]):
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class SubmodulePoint:
    """A submodule C <= JP as an RREF row span, plus the dims of P/C."""

    rows: tuple[tuple[Scalar, ...], ...]
    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def row_lists(self) -> list[Vector]:
        return [list(r) for r in self.rows]


def submodule_point(P: ProjectiveCover, vectors: list[Vector]) -> SubmodulePoint:
    red = span_rref(P.alg.field, [list(v) for v in vectors])
    dims = tuple(
        a - b for a, b in zip(P.rep.d, _vertex_dims(P.rep, red))
    )
    return SubmodulePoint(tuple(tuple(r) for r in red), dims)


def point_from_generators(P: ProjectiveCover, gens) -> SubmodulePoint:
    """The submodule generated by the given elements (closed under arrows).

    Each generator is an (Element, copy) pair or a list of such pairs; lists
    are summed, so generators may mix copies (e.g. a1*z1 - a2*b*z2).
    """
    f = P.alg.field
    vecs = []
    for g in gens:
        terms = [g] if isinstance(g, tuple) else list(g)
        v = [f.zero()] * P.total
        for x, r in terms:
            for i, c in enumerate(P.element_vector(x, r)):
                v[i] = f.add(v[i], c)
        vecs.append(v)
    span = span_rref(f, vecs)
    while True:
        imgs = []
        for w in span:
            for a in P.alg.quiver.arrows:
                blk = P.rep.block(w, a.start)
                if is_zero_vec(f, blk):
                    continue
                img = mat_vec(f, P.rep.mats[a.label], blk)
                if is_zero_vec(f, img):
                    continue
                v = [f.zero()] * P.total
                o = P.rep.offset(a.end)
                for i, x in enumerate(img):
                    v[o + i] = x
                imgs.append(v)
        bigger = span_rref(f, span + imgs)
        if len(bigger) == len(span):
            return submodule_point(P, span)
        span = bigger


def is_grass_point(
    P: ProjectiveCover, C: SubmodulePoint, d: tuple[int, ...]
) -> bool:
    """Is C a submodule of JP with dim P/C = d?"""
    f = P.alg.field
    rows = C.row_lists()
    zpos = [P.index[b] for b in P.generator_elems()]
    for row in rows:
        if any(not f.is_zero(row[j]) for j in zpos):
            return False
    # vertex grading (idempotent stability)
    for row in rows:
        for v in P.alg.quiver.vertices:
            o, n = P.rep.offset(v), P.rep.dim_at(v)
            proj = [f.zero()] * P.total
            proj[o : o + n] = row[o : o + n]
            if not in_span(f, rows, proj):
                return False
    if not is_arrow_stable(P.rep, rows):
        return False
    return C.dims == tuple(d)


def coker_rep(P: ProjectiveCover, C: SubmodulePoint) -> Rep:
    return quotient_rep(P.rep, C.row_lists())


@dataclass(frozen=True)
class Skeleton:
    """A subpath-closed set of basis elements p*z_r containing every z_r.

    The derived layering counts, per path length l and end vertex, how many
    members sit at that spot; on a chart every quotient has this radical
    layering.
    """

    elems: tuple[BElem, ...]
    layering: SemisimpleSequence

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, b: BElem) -> bool:
        return b in self.elems

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sum(row[i] for row in self.layering) for i in range(len(self.layering[0])))


def make_skeleton(P: ProjectiveCover, elems) -> Skeleton:
    elems = sorted(set(elems), key=P.belem_key)
    have = set(elems)
    for p, r in elems:
        if (p, r) not in P.index:
            raise ValueError(f"{P.describe((p, r))} is not a basis element of P")
        if p.length and (p.initial(p.length - 1, P.alg.quiver), r) not in have:
            raise ValueError(f"skeleton is not closed under initial subpaths at {P.describe((p, r))}")
    for b in P.generator_elems():
        if b not in have:
            raise ValueError(f"skeleton is missing the generator {P.describe(b)}")
    n = P.alg.quiver.n
    top = max(p.length for p, _ in elems)
    rows = [[0] * n for _ in range(top + 1)]
    for p, _ in elems:
        rows[p.length][p.end - 1] += 1
    return Skeleton(tuple(elems), tuple(tuple(r) for r in rows))


def enumerate_skeleta(P: ProjectiveCover, S: SemisimpleSequence) -> list[Skeleton]:
    """All skeleta of P whose layering is S, in deglex order."""
    quiver = P.alg.quiver
    n = quiver.n
    S = _trim(tuple(tuple(row) for row in S))
    if not S:
        return []
    tops = tuple(sum(1 for v in P.gens if v == w) for w in quiver.vertices)
    if S[0] != tops:
        return []
    zrow = P.generator_elems()
    found: list[Skeleton] = []

    def grow(chosen: list[BElem], frontier: list[BElem], layer: int) -> None:
        if layer == len(S):
            found.append(make_skeleton(P, chosen))
            return
        cands: dict[int, list[BElem]] = {v: [] for v in quiver.vertices}
        for p, r in frontier:
            for a in quiver.arrows_out(p.end):
                q = extend(p, a)
                if q in P.alg.basis_index:
                    cands[q.end].append((q, r))
        for v in quiver.vertices:
            cands[v].sort(key=P.belem_key)
        pools = []
        for v in quiver.vertices:
            need = S[layer][v - 1]
            if need > len(cands[v]):
                return
            pools.append(list(itertools.combinations(cands[v], need)))
        for picks in itertools.product(*pools):
            step = [b for group in picks for b in group]
            grow(chosen + step, step, layer + 1)

    grow(list(zrow), list(zrow), 1)
    found.sort(key=lambda s: tuple(P.belem_key(b) for b in s.elems))
    return found


def skeleta_with_dims(P: ProjectiveCover, d: tuple[int, ...]) -> list[Skeleton]:
    """All skeleta of P with per-vertex member counts d, in deglex order."""
    quiver = P.alg.quiver
    tops = tuple(sum(1 for v in P.gens if v == w) for w in quiver.vertices)
    if any(t > dv for t, dv in zip(tops, d)):
        return []
    left0 = tuple(dv - t for dv, t in zip(d, tops))
    zrow = P.generator_elems()
    found: list[Skeleton] = []

    def grow(chosen: list[BElem], frontier: list[BElem], left: tuple[int, ...]) -> None:
        if not any(left):
            found.append(make_skeleton(P, chosen))
            return
        cands: dict[int, list[BElem]] = {v: [] for v in quiver.vertices}
        for p, r in frontier:
            for a in quiver.arrows_out(p.end):
                q = extend(p, a)
                if q in P.alg.basis_index:
                    cands[q.end].append((q, r))
        if not any(cands.values()):
            return
        for v in quiver.vertices:
            cands[v].sort(key=P.belem_key)
        pools = []
        for v in quiver.vertices:
            top_k = min(left[v - 1], len(cands[v]))
            pools.append(
                [c for k in range(top_k + 1) for c in itertools.combinations(cands[v], k)]
            )
        for picks in itertools.product(*pools):
            step = [b for group in picks for b in group]
            if not step:
                continue
            nxt = tuple(
                left[v - 1] - sum(1 for p, _ in step if p.end == v)
                for v in quiver.vertices
            )
            grow(chosen + step, step, nxt)

    grow(list(zrow), list(zrow), left0)
    found.sort(key=lambda s: tuple(P.belem_key(b) for b in s.elems))
    return found


def skeleta_of_point(P: ProjectiveCover, C: SubmodulePoint) -> list[Skeleton]:
    """The skeleta sigma with P = C (+) span(sigma) and matching layering."""
    f = P.alg.field
    S = radical_layering(P.alg, coker_rep(P, C))
    rows = C.row_lists()
    res: dict[BElem, Vector] = {}

    def residue(b: BElem) -> Vector:
        if b not in res:
            res[b] = reduce_mod(f, rows, P.unit(b))
        return res[b]

    out = []
    for sig in enumerate_skeleta(P, S):
        vecs = [residue(b) for b in sig.elems]
        if len(span_rref(f, vecs)) == len(sig):
            out.append(sig)
    return out


@dataclass(eq=False)
class ChartPresentation:
    """The affine chart of a skeleton: coordinates and defining equations.

    variables[k] = (arrow label, b, b') indexes the coefficient of b' in the
    congruence for the arrow-image of b; generators lists, per off-skeleton
    arrow-image, the generic generator alpha*b - sum c_{b'} b' of the point.
    residues maps every basis element of P to its generic expansion over the
    skeleton, so points are recovered by pure evaluation.
    """

    cover: ProjectiveCover
    sigma: Skeleton
    ring: PolyRing
    variables: tuple[tuple[str, BElem, BElem], ...]
    equations: tuple[Poly, ...]
    generators: tuple[tuple[str, BElem, tuple[tuple[BElem, int], ...]], ...]
    residues: dict[BElem, list[Poly]]

    @property
    def dims(self) -> tuple[int, ...]:
        return self.sigma.dims


def chart_equations(P: ProjectiveCover, sigma: Skeleton) -> ChartPresentation:
    alg = P.alg
    quiver = alg.quiver
    f = alg.field
    sig_list = list(sigma.elems)
    sig_pos = {b: i for i, b in enumerate(sig_list)}

    variables: list[tuple[str, BElem, BElem]] = []
    var_of: dict[tuple[str, BElem], list[tuple[BElem, int]]] = {}
    generators: list[tuple[str, BElem, tuple[tuple[BElem, int], ...]]] = []
    for b in sig_list:
        p, r = b
        for a in quiver.arrows_out(p.end):
            q = extend(p, a)
            if q not in alg.basis_index or (q, r) in sig_pos:
                continue
            targets = [
                b2
                for b2 in sig_list
                if b2[0].end == a.end and b2[0].length >= p.length + 1
            ]
            entry = []
            for b2 in targets:
                entry.append((b2, len(variables)))
                variables.append((a.label, b, b2))
            var_of[(a.label, b)] = entry
            generators.append((a.label, b, tuple(entry)))

    ring = PolyRing(f, [f"c{k + 1}" for k in range(len(variables))])

    def unit_vec(b: BElem) -> list[Poly]:
        vec = [ring.zero() for _ in sig_list]
        vec[sig_pos[b]] = ring.one()
        return vec

    col_memo: dict[tuple[str, BElem], list[Poly]] = {}
    rho_memo: dict[BElem, list[Poly]] = {}
    busy: set[tuple] = set()

    def rho(b: BElem) -> list[Poly]:
        if b in sig_pos:
            return unit_vec(b)
        if b in rho_memo:
            return rho_memo[b]
        key = ("rho", b)
        if key in busy:
            raise UnsupportedAlgebra("cyclic reduction while expanding chart residues")
        busy.add(key)
        p, r = b
        parent = (p.initial(p.length - 1, quiver), r)
        a = quiver.arrow(p.last_arrow())
        if parent in sig_pos:
            out = column(a.label, parent)
        else:
            out = apply_column(a.label, rho(parent))
        busy.discard(key)
        rho_memo[b] = out
        return out

    def column(label: str, b: BElem) -> list[Poly]:
        """Generic action of one arrow on a skeleton element, over sigma."""
        key = (label, b)
        if key in col_memo:
            return col_memo[key]
        guard = ("col", label, b)
        if guard in busy:
            raise UnsupportedAlgebra("cyclic reduction while expanding chart residues")
        busy.add(guard)
        p, r = b
        q = extend(p, quiver.arrow(label))
        out = [ring.zero() for _ in sig_list]
        if q in alg.basis_index:
            if (q, r) in sig_pos:
                out[sig_pos[(q, r)]] = ring.one()
            else:
                for b2, k in var_of[(label, b)]:
                    out[sig_pos[b2]] = out[sig_pos[b2]] + ring.var(k)
        else:
            for w, c in alg.nf_path(q).items():
                vec = rho((w, r))
                for i, entry in enumerate(vec):
                    out[i] = out[i] + entry.scale(c)
        busy.discard(guard)
        col_memo[key] = out
        return out

    def apply_column(label: str, vec: list[Poly]) -> list[Poly]:
        out = [ring.zero() for _ in sig_list]
        arrow = quiver.arrow(label)
        for j, coeff in enumerate(vec):
            if coeff.is_zero():
                continue
            bj = sig_list[j]
            if bj[0].end != arrow.start:
                continue
            cvec = column(label, bj)
            for i, entry in enumerate(cvec):
                if not entry.is_zero():
                    out[i] = out[i] + entry * coeff
        return out

    residues: dict[BElem, list[Poly]] = {}
    for b in sorted(P.belems, key=lambda t: t[0].length):
        residues[b] = rho(b)

    arrow_mats: dict[str, list[list[Poly]]] = {}
    for a in quiver.arrows:
        cols = []
        for b in sig_list:
            if b[0].end == a.start:
                cols.append(column(a.label, b))
            else:
                cols.append([ring.zero() for _ in sig_list])
        arrow_mats[a.label] = [[cols[j][i] for j in range(len(sig_list))] for i in range(len(sig_list))]

    def word_action(p: PathWord) -> list[list[Poly]]:
        size = len(sig_list)
        mat = [[ring.one() if i == j else ring.zero() for j in range(size)] for i in range(size)]
        for label in p.arrows:
            step = arrow_mats[label]
            mat = [
                [
                    sum((step[i][k] * mat[k][j] for k in range(size)), ring.zero())
                    for j in range(size)
                ]
                for i in range(size)
            ]
        return mat

    equations: list[Poly] = []
    seen = set()
    for rel in alg.relations:
        size = len(sig_list)
        total = [[ring.zero() for _ in range(size)] for _ in range(size)]
        for p, c in rel.terms.items():
            mat = word_action(p)
            for i in range(size):
                for j in range(size):
                    total[i][j] = total[i][j] + mat[i][j].scale(c)
        for j in range(size):
            for i in range(size):
                e = total[i][j]
                if e.is_zero():
                    continue
                key = e.monic_key()
                if key not in seen:
                    seen.add(key)
                    equations.append(e)

    return ChartPresentation(
        cover=P,
        sigma=sigma,
        ring=ring,
        variables=tuple(variables),
        equations=tuple(equations),
        generators=tuple(generators),
        residues=residues,
    )


def _canon_values(pres: ChartPresentation, values) -> list[Scalar]:
    f = pres.cover.alg.field
    vals = [f.of_int(v) if isinstance(v, int) else v for v in values]
    if len(vals) != len(pres.variables):
        raise ValueError(
            f"chart has {len(pres.variables)} coordinates, got {len(vals)}"
        )
    return vals


def coords_to_point(pres: ChartPresentation, values) -> SubmodulePoint:
    """The point of the chart with the given coordinate values."""
    P = pres.cover
    f = P.alg.field
    vals = _canon_values(pres, values)
    for eq in pres.equations:
        if not f.is_zero(eq.eval(vals)):
            raise EquationsViolated(f"chart equation {eq.format()} = 0 fails")
    sig_set = set(pres.sigma.elems)
    rows = []
    for b in P.belems:
        if b in sig_set:
            continue
        vec = P.unit(b)
        for i, b2 in enumerate(pres.sigma.elems):
            c = pres.residues[b][i].eval(vals)
            if not f.is_zero(c):
                vec[P.index[b2]] = f.sub(vec[P.index[b2]], c)
        rows.append(vec)
    return submodule_point(P, rows)


def point_to_coords(
    P: ProjectiveCover,
    sigma: Skeleton,
    C: SubmodulePoint,
    pres: ChartPresentation | None = None,
) -> list[Scalar]:
    """Coordinates of C on the chart of sigma (inverse of coords_to_point)."""
    if pres is None:
        pres = chart_equations(P, sigma)
    f = P.alg.field
    rows = C.row_lists()
    if len(rows) + len(sigma) != P.total:
        raise NotOnChart("dim C + |sigma| != dim P")
    stack = rows + [P.unit(b) for b in sigma.elems]
    if rank(f, [r[:] for r in stack]) != P.total:
        raise NotOnChart("P is not the direct sum of C and the span of sigma")
    cols = transpose(stack)

    def sigma_coords(v: Vector) -> list[Scalar]:
        sol = solve(f, [row[:] for row in cols], v)
        if sol is None:
            raise NotOnChart("vector outside C + span(sigma)")
        return sol[len(rows):]

    values = [f.zero()] * len(pres.variables)
    for label, b, entry in pres.generators:
        p, r = b
        q = extend(p, P.alg.quiver.arrow(label))
        coords = sigma_coords(P.unit((q, r)))
        allowed = {b2: k for b2, k in entry}
        for i, b2 in enumerate(pres.sigma.elems):
            c = coords[i]
            if f.is_zero(c):
                continue
            if b2 not in allowed:
                raise NotOnChart(
                    f"residue of {P.describe((q, r))} meets {P.describe(b2)}, "
                    f"which the layering of sigma forbids"
                )
            values[allowed[b2]] = c
    return values


@dataclass(eq=False)
class EndoSpace:
    """Basis of End(P): elems[j] = (r, s, u) is the map z_r -> u*z_s, zero on
    the other generators. unipotent/degree0/torus list the indices of the
    strictly-length-raising, the length-zero, and the diagonal length-zero
    basis elements."""

    cover: ProjectiveCover
    elems: tuple[tuple[int, int, PathWord], ...]
    mats: list[Matrix]
    unipotent: tuple[int, ...]
    degree0: tuple[int, ...]
    torus: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.elems)

    def describe(self, j: int) -> str:
        r, s, u = self.elems[j]
        rhs = f"z{s + 1}" if u.length == 0 else f"{u}*z{s + 1}"
        return f"z{r + 1} -> {rhs}"

    def identity_coords(self) -> list[Scalar]:
        f = self.cover.alg.field
        out = [f.zero()] * self.dim
        for j in self.torus:
            out[j] = f.one()
        return out

    def coeff_index(self, r: int, s: int, u: PathWord) -> int:
        return self.elems.index((r, s, u))


def endo_space(P: ProjectiveCover) -> EndoSpace:
    alg = P.alg
    f = alg.field
    elems: list[tuple[int, int, PathWord]] = []
    for r, vr in enumerate(P.gens):
        for s, vs in enumerate(P.gens):
            for u in alg.basis_at(vs):
                if u.end == vr:
                    elems.append((r, s, u))
    elems.sort(key=lambda t: (t[0], t[1], deglex_key(alg.quiver, t[2])))
    mats = []
    for r, s, u in elems:
        m = [[f.zero()] * P.total for _ in range(P.total)]
        for p, r2 in P.belems:
            if r2 != r:
                continue
            col = P.index[(p, r2)]
            word = compose(alg.quiver, p, u)
            for w, c in alg.nf_path(word).items():
                m[P.index[(w, s)]][col] = c
        mats.append(m)
    unip = tuple(j for j, (_, _, u) in enumerate(elems) if u.length >= 1)
    deg0 = tuple(j for j, (_, _, u) in enumerate(elems) if u.length == 0)
    torus = tuple(j for j in deg0 if elems[j][0] == elems[j][1])
    return EndoSpace(P, tuple(elems), mats, unip, deg0, torus)


def _assemble(endo: EndoSpace, coeffs: list[Scalar]) -> Matrix:
    f = endo.cover.alg.field
    n = endo.cover.total
    out = [[f.zero()] * n for _ in range(n)]
    for c, m in zip(coeffs, endo.mats):
        if f.is_zero(c):
            continue
        for i in range(n):
            row = m[i]
            for j in range(n):
                if not f.is_zero(row[j]):
                    out[i][j] = f.add(out[i][j], f.mul(c, row[j]))
    return out


def apply_auto(
    P: ProjectiveCover,
    coeffs,
    C: SubmodulePoint,
    endo: EndoSpace | None = None,
) -> SubmodulePoint:
    """Image f(C) of a point under an automorphism given by endo coordinates.

    f must be invertible on P/JP (block per vertex over the generators);
    otherwise NotInvertible is raised.
    """
    if endo is None:
        endo = endo_space(P)
    f = P.alg.field
    coeffs = [f.of_int(c) if isinstance(c, int) else c for c in coeffs]
    if len(coeffs) != endo.dim:
        raise ValueError(f"End(P) has dimension {endo.dim}, got {len(coeffs)}")
    for v in sorted(set(P.gens)):
        copies = [r for r, gv in enumerate(P.gens) if gv == v]
        blk = [[f.zero()] * len(copies) for _ in copies]
        for j in endo.degree0:
            r, s, _ = endo.elems[j]
            if P.gens[r] != v:
                continue
            blk[copies.index(s)][copies.index(r)] = coeffs[j]
        if copies and not is_invertible(f, blk):
            raise NotInvertible(f"degree-0 block at vertex {v} is singular")
    F = _assemble(endo, coeffs)
    return submodule_point(P, [mat_vec(f, F, row) for row in C.row_lists()])


@dataclass(frozen=True)
class OrbitDims:
    aut: int
    unipotent: int
    graded: int


def _stab_rank(
    P: ProjectiveCover, C: SubmodulePoint, endo: EndoSpace, subset: tuple[int, ...]
) -> int:
    """Orbit dimension of the subgroup spanned by the given endo indices:
    the rank of coefficient -> (residues of images of C mod C)."""
    f = P.alg.field
    rows = C.row_lists()
    cols = []
    for j in subset:
        col: list[Scalar] = []
        for v in rows:
            col.extend(reduce_mod(f, rows, mat_vec(f, endo.mats[j], v)))
        cols.append(col)
    return rank(f, transpose(cols)) if cols else 0


def orbit_dims(
    P: ProjectiveCover, C: SubmodulePoint, endo: EndoSpace | None = None
) -> OrbitDims:
    if endo is None:
        endo = endo_space(P)
    all_idx = tuple(range(endo.dim))
    return OrbitDims(
        aut=_stab_rank(P, C, endo, all_idx),
        unipotent=_stab_rank(P, C, endo, endo.unipotent),
        graded=_stab_rank(P, C, endo, endo.degree0),
    )


def endo_invariant(
    P: ProjectiveCover, C: SubmodulePoint, endo: EndoSpace | None = None
) -> tuple[bool, tuple[int, int, PathWord] | None]:
    """Is C stable under every endomorphism of P? On failure the second
    component is a violating basis endomorphism (r, s, u): z_r -> u*z_s."""
    if endo is None:
        endo = endo_space(P)
    f = P.alg.field
    rows = C.row_lists()
    for j, elem in enumerate(endo.elems):
        for v in rows:
            if not in_span(f, rows, mat_vec(f, endo.mats[j], v)):
                return False, elem
    return True, None


def is_homogeneous_point(P: ProjectiveCover, C: SubmodulePoint) -> bool:
    """Is C spanned by path-length-homogeneous vectors? Requires the ideal
    itself to be length-graded (IdealNotGraded otherwise)."""
    if not P.alg.is_homogeneous_ideal():
        raise IdealNotGraded("the defining ideal is not length-graded")
    f = P.alg.field
    rows = C.row_lists()
    lengths = sorted({p.length for p, _ in P.belems})
    for row in rows:
        for l in lengths:
            comp = [
                row[i] if P.belems[i][0].length == l else f.zero()
                for i in range(P.total)
            ]
            if not in_span(f, rows, comp):
                return False
    return True


@dataclass(frozen=True)
class ModuliVerdict:
    """Outcome of the fine-moduli decision for (top, dimension).

    kind is one of Fine, GradedFine, NoCoarse, Unknown; witness/witness_endo
    carry a non-invariant point and the endomorphism moving it when kind is
    NoCoarse; exhaustive records whether the sweep covered every point."""

    kind: str
    reason: str
    witness: SubmodulePoint | None = None
    witness_endo: tuple[int, int, PathWord] | None = None
    exhaustive: bool = False


def _socle_dims(P: ProjectiveCover) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Dimension vectors of JP and of soc(JP) inside P."""
    f = P.alg.field
    jp = span_rref(f, [P.unit(b) for b in P.belems if b[0].length >= 1])
    n = len(jp)
    rows: list[list[Scalar]] = []
    for a in P.alg.quiver.arrows:
        imgs = []
        for w in jp:
            img = [f.zero()] * P.total
            o = P.rep.offset(a.end)
            for i, x in enumerate(mat_vec(f, P.rep.mats[a.label], P.rep.block(w, a.start))):
                img[o + i] = x
            imgs.append(img)
        rows.extend([imgs[j][i] for j in range(n)] for i in range(P.total))
    ker = kernel_basis(f, rows, ncols=n) if rows else []
    soc_vecs = []
    for k in ker:
        v = [f.zero()] * P.total
        for j in range(n):
            if f.is_zero(k[j]):
                continue
            for i in range(P.total):
                v[i] = f.add(v[i], f.mul(k[j], jp[j][i]))
        soc_vecs.append(v)
    return _vertex_dims(P.rep, jp), _vertex_dims(P.rep, span_rref(f, soc_vecs))


def _chart_points(
    pres: ChartPresentation, limits: SearchLimits, rng: random.Random
) -> tuple[list[list[Scalar]], bool]:
    """Equation-satisfying coordinate tuples of a chart, and whether the
    list is exhaustive. Finite fields are swept completely within budget;
    the rationals are sampled (zeros, units, then seeded small randoms)."""
    f = pres.cover.alg.field
    nvars = len(pres.variables)

    def ok(vals: list[Scalar]) -> bool:
        return all(f.is_zero(eq.eval(vals)) for eq in pres.equations)

    if nvars == 0:
        vals: list[Scalar] = []
        return ([vals] if ok(vals) else []), True
    if f.is_finite and f.order**nvars <= limits.chart_sweep:
        pts = [list(v) for v in itertools.product(f.elements(), repeat=nvars) if ok(list(v))]
        return pts, True
    cands = [[f.zero()] * nvars]
    for k in range(nvars):
        unit = [f.zero()] * nvars
        unit[k] = f.one()
        cands.append(unit)
    for _ in range(limits.iso_tries):
        cands.append([f.random(rng) for _ in range(nvars)])
    seen = set()
    pts = []
    for v in cands:
        key = tuple(f.format(x) for x in v)
        if key in seen:
            continue
        seen.add(key)
        if ok(v):
            pts.append(v)
    return pts, False


def moduli_report(
    alg: Algebra,
    top: TopSpec | tuple[int, ...],
    d: tuple[int, ...] | int,
    limits: SearchLimits = DEFAULT_LIMITS,
) -> ModuliVerdict:
    """Decide whether the modules with top T and dimension (vector) d admit
    a fine moduli space, with certificates.

    Fine comes from either the socle criterion for a simple top (valid for
    every d at once) or an exhaustive endo-invariance sweep for a squarefree
    top; NoCoarse returns a witness point moved off itself by an
    endomorphism; GradedFine asserts a fine moduli space for the
    graded-submodule variety when the ideal is length-graded and the top is
    simple; everything else is Unknown.
    """
    P = projective_cover(alg, top)
    top = P.top
    if top.simple:
        jp_dims, soc_dims = _socle_dims(P)
        v = P.gens[0]
        if jp_dims[v - 1] == soc_dims[v - 1]:
            return ModuliVerdict(
                kind="Fine",
                reason=(
                    f"top S{v} meets the radical of P only in its socle "
                    f"(dim {jp_dims[v - 1]} = {soc_dims[v - 1]} at vertex {v}), "
                    f"so every point is an isolated orbit"
                ),
                exhaustive=True,
            )
    endo = endo_space(P)
    rng = random.Random(limits.seed)
    if isinstance(d, int):
        dvecs = [
            dv
            for dv in itertools.product(*(range(m + 1) for m in P.dims))
            if sum(dv) == d
        ]
    else:
        dvecs = [tuple(d)]
    swept_all = True
    any_chart = False
    for dvec in dvecs:
        for sigma in skeleta_with_dims(P, dvec):
            pres = chart_equations(P, sigma)
            pts, exhaustive = _chart_points(pres, limits, rng)
            any_chart = True
            if not exhaustive:
                swept_all = False
            for vals in pts:
                C = coords_to_point(pres, vals)
                ok, g = endo_invariant(P, C, endo)
                if not ok:
                    labels = ", ".join(
                        f"{name}={alg.field.format(v)}"
                        for name, v in zip(pres.ring.names, vals)
                    )
                    where = "{" + ", ".join(P.describe(b) for b in sigma.elems) + "}"
                    return ModuliVerdict(
                        kind="NoCoarse",
                        reason=(
                            f"point on chart {where} at ({labels or 'origin'}) is moved "
                            f"by the endomorphism {endo.describe(endo.elems.index(g))}"
                        ),
                        witness=C,
                        witness_endo=g,
                        exhaustive=False,
                    )
    if top.squarefree and swept_all:
        return ModuliVerdict(
            kind="Fine",
            reason="every point of every chart is stable under End(P) "
            "(exhaustive sweep)",
            exhaustive=True,
        )
    if top.simple and alg.is_homogeneous_ideal():
        return ModuliVerdict(
            kind="GradedFine",
            reason="the ideal is length-graded and the top is simple, so the "
            "graded-point locus carries a fine moduli space",
            exhaustive=False,
        )
    return ModuliVerdict(
        kind="Unknown",
        reason=(
            "sampled points were all invariant but the sweep was not exhaustive"
            if any_chart and not swept_all
            else "no decision criterion applies"
        ),
        exhaustive=False,
    )
