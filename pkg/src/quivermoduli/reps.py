"""Modules as arrow-matrix tuples: validation, layerings, Hom spaces,
isomorphism testing, submodule enumeration, and local decompositions.

A Rep assigns to each arrow a d_end x d_start matrix. Vectors of the module
live in the flattened space K^|d| with vertex blocks in vertex order; every
submodule is graded by vertices (idempotents act), so per-vertex dimensions
of subspaces are read off block projections.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import Algebra
from .config import DEFAULT_LIMITS, SearchLimits
from .errors import (
    FieldNotFinite,
    NotInvertible,
    NotSubmodule,
    NotSumOfLocals,
    SearchTooLarge,
    ShapeMismatch,
    Unknown,
)
from .fields import Field, Scalar
from .linalg import (
    Matrix,
    Vector,
    identity,
    in_span,
    is_invertible,
    is_zero_vec,
    inverse,
    kernel_basis,
    mat_mul,
    mat_pow,
    mat_vec,
    rank,
    reduce_mod,
    solve,
    space_key,
    span_rref,
    sparse_kernel_basis,
    transpose,
    zeros,
)
from .quiver import Element, PathWord

SemisimpleSequence = tuple[tuple[int, ...], ...]


class Rep:
    __slots__ = ("alg", "d", "mats")

    def __init__(self, alg: Algebra, d: tuple[int, ...], mats: dict[str, Matrix]):
        self.alg = alg
        self.d = tuple(d)
        self.mats = {k: [row[:] for row in m] for k, m in mats.items()}

    @property
    def field(self) -> Field:
        return self.alg.field

    @property
    def total(self) -> int:
        return sum(self.d)

    def offset(self, v: int) -> int:
        return sum(self.d[: v - 1])

    def block(self, vec: Vector, v: int) -> Vector:
        o = self.offset(v)
        return vec[o : o + self.d[v - 1]]

    def dim_at(self, v: int) -> int:
        return self.d[v - 1]

    def __repr__(self) -> str:
        return f"Rep(d={self.d}, field={self.field})"


@dataclass
class GroupElement:
    blocks: dict[int, Matrix]


def zero_rep(alg: Algebra, d: tuple[int, ...]) -> Rep:
    mats = {}
    for a in alg.quiver.arrows:
        mats[a.label] = zeros(alg.field, d[a.end - 1], d[a.start - 1])
    return Rep(alg, d, mats)


def simple_rep(alg: Algebra, v: int) -> Rep:
    d = tuple(1 if i == v else 0 for i in alg.quiver.vertices)
    return zero_rep(alg, d)


def rep_of_projective(alg: Algebra, v: int) -> Rep:
    """The left module Lambda*e_v on its path basis."""
    cols = alg.basis_at(v)
    col_index = {p: i for i, p in enumerate(cols)}
    d = tuple(sum(1 for p in cols if p.end == j) for j in alg.quiver.vertices)
    # local index of each basis path inside its vertex block
    local = {}
    counters = {j: 0 for j in alg.quiver.vertices}
    for p in cols:
        local[p] = counters[p.end]
        counters[p.end] += 1
    f = alg.field
    mats = {}
    for a in alg.quiver.arrows:
        m = zeros(f, d[a.end - 1], d[a.start - 1])
        for p in cols:
            if p.end != a.start:
                continue
            for b, c in alg.arrow_act(a.label, p).items():
                m[local[b]][local[p]] = c
        mats[a.label] = m
    return Rep(alg, d, mats)


def direct_sum(M: Rep, N: Rep) -> Rep:
    f = M.field
    d = tuple(x + y for x, y in zip(M.d, N.d))
    mats = {}
    for a in M.alg.quiver.arrows:
        am, an = M.mats[a.label], N.mats[a.label]
        rm, cm = M.dim_at(a.end), M.dim_at(a.start)
        rn, cn = N.dim_at(a.end), N.dim_at(a.start)
        m = zeros(f, rm + rn, cm + cn)
        for i in range(rm):
            for j in range(cm):
                m[i][j] = am[i][j]
        for i in range(rn):
            for j in range(cn):
                m[rm + i][cm + j] = an[i][j]
        mats[a.label] = m
    return Rep(M.alg, d, mats)


def path_matrix(M: Rep, p: PathWord) -> Matrix:
    """Evaluation of a path on M: a d_end x d_start matrix."""
    f = M.field
    if p.length == 0:
        return identity(f, M.dim_at(p.start))
    m = None
    for lbl in p.arrows:
        step = M.mats[lbl]
        m = step if m is None else mat_mul(f, step, m)
    return m


def element_matrix(M: Rep, x: Element) -> Matrix:
    """Evaluation of a parallel linear combination of paths."""
    f = M.field
    terms = list(x.terms.items())
    s, e = terms[0][0].start, terms[0][0].end
    out = zeros(f, M.dim_at(e), M.dim_at(s))
    for p, c in terms:
        pm = path_matrix(M, p)
        for i in range(len(out)):
            for j in range(len(out[0]) if out else 0):
                out[i][j] = f.add(out[i][j], f.mul(c, pm[i][j]))
    return out


def global_matrix(M: Rep, x: Element) -> Matrix:
    """Action of any algebra element on the flattened space K^|d|."""
    f = M.field
    n = M.total
    out = zeros(f, n, n)
    for p, c in x.terms.items():
        pm = path_matrix(M, p)
        ro, co = M.offset(p.end), M.offset(p.start)
        for i in range(M.dim_at(p.end)):
            for j in range(M.dim_at(p.start)):
                out[ro + i][co + j] = f.add(out[ro + i][co + j], f.mul(c, pm[i][j]))
    return out


def rep_validate(alg: Algebra, M: Rep) -> bool:
    for a in alg.quiver.arrows:
        m = M.mats.get(a.label)
        if m is None:
            raise ShapeMismatch(f"missing matrix for arrow {a.label}")
        r, c = M.dim_at(a.end), M.dim_at(a.start)
        if len(m) != r or any(len(row) != c for row in m):
            raise ShapeMismatch(
                f"arrow {a.label}: expected {r}x{c}, got {len(m)}x{len(m[0]) if m else 0}"
            )
    f = alg.field
    for rel in alg.relations:
        mat = element_matrix(M, rel)
        if any(not f.is_zero(x) for row in mat for x in row):
            return False
    return True


def base_change(M: Rep, g: GroupElement) -> Rep:
    f = M.field
    for v in M.alg.quiver.vertices:
        blk = g.blocks.get(v)
        if blk is None or len(blk) != M.dim_at(v) or any(len(r) != M.dim_at(v) for r in blk):
            raise ShapeMismatch(f"group element block at vertex {v} has wrong shape")
    inv = {}
    for v in M.alg.quiver.vertices:
        if M.dim_at(v) == 0:
            inv[v] = []
            continue
        try:
            inv[v] = inverse(f, g.blocks[v])
        except NotInvertible:
            raise NotInvertible(f"group element block at vertex {v} is singular") from None
    mats = {}
    for a in M.alg.quiver.arrows:
        mats[a.label] = mat_mul(f, mat_mul(f, g.blocks[a.end], M.mats[a.label]), inv[a.start])
    return Rep(M.alg, M.d, mats)


def random_group_element(field: Field, d: tuple[int, ...], rng: random.Random) -> GroupElement:
    blocks = {}
    for v, n in enumerate(d, start=1):
        while True:
            m = [[field.random(rng) for _ in range(n)] for _ in range(n)]
            if n == 0 or is_invertible(field, m):
                blocks[v] = m
                break
    return GroupElement(blocks)


def arrow_images_span(M: Rep, space: list[Vector]) -> list[Vector]:
    """RREF span of the arrow images of the given global vectors."""
    f = M.field
    vecs = []
    for w in space:
        for a in M.alg.quiver.arrows:
            blk = M.block(w, a.start)
            if is_zero_vec(f, blk):
                continue
            img = mat_vec(f, M.mats[a.label], blk)
            if is_zero_vec(f, img):
                continue
            v = [f.zero()] * M.total
            o = M.offset(a.end)
            for i, x in enumerate(img):
                v[o + i] = x
            vecs.append(v)
    return span_rref(f, vecs)


def _vertex_dims(M: Rep, space: list[Vector]) -> tuple[int, ...]:
    f = M.field
    dims = []
    for v in M.alg.quiver.vertices:
        o, n = M.offset(v), M.dim_at(v)
        proj = [w[o : o + n] for w in space]
        dims.append(rank(f, proj) if proj and n else 0)
    return tuple(dims)


def radical_layering(alg: Algebra, M: Rep) -> SemisimpleSequence:
    """Per-layer dimension vectors of J^l M / J^{l+1} M, l = 0..loewy-1."""
    f = alg.field
    n = M.total
    current = span_rref(f, identity(f, n)) if n else []
    prev = _vertex_dims(M, current)
    rows = []
    for _ in range(alg.loewy):
        nxt = arrow_images_span(M, current)
        nd = _vertex_dims(M, nxt)
        rows.append(tuple(x - y for x, y in zip(prev, nd)))
        current, prev = nxt, nd
    return tuple(rows)


def top_dims(alg: Algebra, M: Rep) -> tuple[int, ...]:
    return radical_layering(alg, M)[0] if alg.loewy else M.d


def hom_basis(M: Rep, N: Rep) -> list[dict[int, Matrix]]:
    """Basis of the intertwiner space {f_i} with f_end x^M_a = x^N_a f_start."""
    f = M.field
    verts = list(M.alg.quiver.vertices)
    voff = {}
    total = 0
    for v in verts:
        voff[v] = total
        total += N.dim_at(v) * M.dim_at(v)

    def var(v: int, a: int, b: int) -> int:
        return voff[v] + a * M.dim_at(v) + b

    rows = []
    for arr in M.alg.quiver.arrows:
        s, e = arr.start, arr.end
        xm, xn = M.mats[arr.label], N.mats[arr.label]
        for a in range(N.dim_at(e)):
            for b in range(M.dim_at(s)):
                row: dict[int, Scalar] = {}
                for k in range(M.dim_at(e)):
                    c = xm[k][b]
                    if not f.is_zero(c):
                        idx = var(e, a, k)
                        nv = f.add(row.get(idx, f.zero()), c)
                        if f.is_zero(nv):
                            row.pop(idx, None)
                        else:
                            row[idx] = nv
                for k in range(N.dim_at(s)):
                    c = xn[a][k]
                    if not f.is_zero(c):
                        idx = var(s, k, b)
                        nv = f.sub(row.get(idx, f.zero()), c)
                        if f.is_zero(nv):
                            row.pop(idx, None)
                        else:
                            row[idx] = nv
                if row:
                    rows.append(row)
    ker = sparse_kernel_basis(f, rows, total)
    out = []
    for vec in ker:
        blocks = {}
        for v in verts:
            r, c = N.dim_at(v), M.dim_at(v)
            blocks[v] = [[vec[voff[v] + i * c + j] for j in range(c)] for i in range(r)]
        out.append(blocks)
    return out


def hom_dim(M: Rep, N: Rep) -> int:
    return len(hom_basis(M, N))


def hom_global_matrix(M: Rep, N: Rep, blocks: dict[int, Matrix]) -> Matrix:
    """Flattened N.total x M.total matrix of a hom given by vertex blocks."""
    f = M.field
    out = zeros(f, N.total, M.total)
    for v in M.alg.quiver.vertices:
        ro, co = N.offset(v), M.offset(v)
        blk = blocks[v]
        for i in range(N.dim_at(v)):
            for j in range(M.dim_at(v)):
                out[ro + i][co + j] = blk[i][j]
    return out


def _blocks_invertible(M: Rep, blocks: dict[int, Matrix]) -> bool:
    f = M.field
    for v in M.alg.quiver.vertices:
        n = M.dim_at(v)
        if n and not is_invertible(f, blocks[v]):
            return False
    return True


def _combine_blocks(M: Rep, N: Rep, basis: list[dict[int, Matrix]], coeffs: list[Scalar]) -> dict[int, Matrix]:
    f = M.field
    out = {}
    for v in M.alg.quiver.vertices:
        r, c = N.dim_at(v), M.dim_at(v)
        blk = zeros(f, r, c)
        for t, h in zip(coeffs, basis):
            if f.is_zero(t):
                continue
            hb = h[v]
            for i in range(r):
                for j in range(c):
                    blk[i][j] = f.add(blk[i][j], f.mul(t, hb[i][j]))
        out[v] = blk
    return out


def is_isomorphic(M: Rep, N: Rep, limits: SearchLimits = DEFAULT_LIMITS, seed: int | None = None):
    """True / False / Unknown. Exact wherever a witness or an obstruction
    exists; Unknown only when the randomized search is inconclusive and the
    symbolic fallback exceeds the configured size."""
    if M.d != N.d:
        return False
    if M.total == 0:
        return True
    if radical_layering(M.alg, M) != radical_layering(M.alg, N):
        return False
    basis = hom_basis(M, N)
    k = len(basis)
    if k != hom_dim(N, M) or hom_dim(M, M) != hom_dim(N, N):
        return False
    if k == 0:
        return False
    f = M.field

    def check(coeffs: list[Scalar]):
        blocks = _combine_blocks(M, N, basis, coeffs)
        return blocks if _blocks_invertible(M, blocks) else None

    if f.is_finite:
        q = f.order
        if q**k <= limits.iso_enum:
            for coeffs in itertools.product(f.elements(), repeat=k):
                if any(not f.is_zero(c) for c in coeffs) and check(list(coeffs)):
                    return True
            return False
        rng = random.Random(limits.seed if seed is None else seed)
        for _ in range(limits.iso_tries):
            if check([f.random(rng) for _ in range(k)]):
                return True
        return Unknown

    # Rationals: deterministic small tries first.
    for i in range(k):
        coeffs = [f.one() if j == i else f.zero() for j in range(k)]
        if check(coeffs):
            return True
    rng = random.Random(limits.seed if seed is None else seed)
    for _ in range(limits.iso_tries):
        if check([f.of_int(rng.randint(-3, 3)) for _ in range(k)]):
            return True
    # Symbolic fallback: a generic combination is invertible iff every
    # vertex-block generic determinant is a nonzero polynomial.
    if k <= limits.sym_vars and max(M.d) <= limits.sym_dim:
        from .polys import PolyRing, poly_det

        ring = PolyRing(f, [f"t{i}" for i in range(k)])
        for v in M.alg.quiver.vertices:
            n = M.dim_at(v)
            if n == 0:
                continue
            generic = [
                [
                    sum(
                        (ring.var(t).scale(basis[t][v][i][j]) for t in range(k)),
                        ring.zero(),
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ]
            if poly_det(generic).is_zero():
                return False
        # All generic determinants nonzero: an invertible combination exists;
        # search expanding integer boxes until one is found.
        bound = 1
        while True:
            for coeffs in itertools.product(range(-bound, bound + 1), repeat=k):
                if check([f.of_int(c) for c in coeffs]):
                    return True
            bound += 1
    return Unknown


# -- submodule enumeration (finite fields) -----------------------------------


def _cyclic_span(M: Rep, v: Vector) -> list[Vector]:
    """RREF basis of the submodule generated by one vector."""
    f = M.field
    span: list[Vector] = []
    queue: list[Vector] = []

    def push(w: Vector) -> None:
        res = reduce_mod(f, span, w)
        if not is_zero_vec(f, res):
            lead = next(i for i, x in enumerate(res) if not f.is_zero(x))
            inv = f.inv(res[lead])
            res = [f.mul(inv, x) for x in res]
            # keep span fully reduced
            for r in span:
                c = r[lead]
                if not f.is_zero(c):
                    for j in range(len(r)):
                        if not f.is_zero(res[j]):
                            r[j] = f.sub(r[j], f.mul(c, res[j]))
            span.append(res)
            span.sort(key=lambda r: next(i for i, x in enumerate(r) if not f.is_zero(x)))
            queue.append(res)

    # idempotent components generate the same submodule as v itself
    for vert in M.alg.quiver.vertices:
        o, n = M.offset(vert), M.dim_at(vert)
        blk = v[o : o + n]
        if not is_zero_vec(f, blk):
            w = [f.zero()] * M.total
            for i, x in enumerate(blk):
                w[o + i] = x
            push(w)
    while queue:
        w = queue.pop()
        for a in M.alg.quiver.arrows:
            blk = M.block(w, a.start)
            if is_zero_vec(f, blk):
                continue
            img = mat_vec(f, M.mats[a.label], blk)
            if is_zero_vec(f, img):
                continue
            nw = [f.zero()] * M.total
            o = M.offset(a.end)
            for i, x in enumerate(img):
                nw[o + i] = x
            push(nw)
    return span


def submodule_spans(M: Rep, limits: SearchLimits = DEFAULT_LIMITS) -> list[list[Vector]]:
    """All submodules as RREF row lists: cyclic spans closed under sums."""
    f = M.field
    if not f.is_finite:
        raise FieldNotFinite("submodule enumeration requires a finite field")
    n = M.total
    q = f.order
    if q**n > limits.submodule_vectors:
        raise SearchTooLarge(f"would sweep {q**n} generator vectors (budget {limits.submodule_vectors})")
    elements = f.elements()
    seen: dict[tuple, list[Vector]] = {(): []}
    for coeffs in itertools.product(elements, repeat=n):
        vec = list(coeffs)
        # scale-normalize: first nonzero coordinate = 1
        lead = next((i for i, x in enumerate(vec) if not f.is_zero(x)), None)
        if lead is None or not f.is_one(vec[lead]):
            continue
        sp = _cyclic_span(M, vec)
        seen.setdefault(space_key(sp), sp)
        if len(seen) > limits.submodule_spaces:
            raise SearchTooLarge("submodule count exceeds budget")
    # close under pairwise sums to a fixpoint
    work = list(seen.values())
    while work:
        w = work.pop()
        for other in list(seen.values()):
            s = span_rref(f, [r[:] for r in w] + [r[:] for r in other])
            key = space_key(s)
            if key not in seen:
                seen[key] = s
                work.append(s)
                if len(seen) > limits.submodule_spaces:
                    raise SearchTooLarge("submodule count exceeds budget")
    return list(seen.values())


def submodule_dim_vectors(M: Rep, limits: SearchLimits = DEFAULT_LIMITS) -> set[tuple[int, ...]]:
    return {_vertex_dims(M, sp) for sp in submodule_spans(M, limits)}


def is_arrow_stable(M: Rep, space: list[Vector]) -> bool:
    f = M.field
    for w in space:
        for a in M.alg.quiver.arrows:
            blk = M.block(w, a.start)
            if is_zero_vec(f, blk):
                continue
            img = mat_vec(f, M.mats[a.label], blk)
            v = [f.zero()] * M.total
            o = M.offset(a.end)
            for i, x in enumerate(img):
                v[o + i] = x
            if not in_span(f, space, v):
                return False
    return True


# -- annihilators -------------------------------------------------------------


def ideal_span(alg: Algebra, gens: list[Element]) -> list[Element]:
    """Spanning set (a basis) of the two-sided ideal generated by gens,
    as normal-formed elements; closed under arrow and idempotent actions."""
    from .quiver import idempotent

    f = alg.field
    dim = alg.dim
    index = {p: i for i, p in enumerate(alg.basis)}

    def coords(x: Element) -> Vector:
        v = [f.zero()] * dim
        for p, c in x.terms.items():
            v[index[p]] = c
        return v

    span: list[Vector] = []
    basis_elems: list[Element] = []
    queue: list[Element] = []

    def push(x: Element) -> None:
        x = alg.normal_form(x)
        if x.is_zero():
            return
        res = reduce_mod(f, span, coords(x))
        if is_zero_vec(f, res):
            return
        lead = next(i for i, c in enumerate(res) if not f.is_zero(c))
        inv = f.inv(res[lead])
        res = [f.mul(inv, c) for c in res]
        for r in span:
            c = r[lead]
            if not f.is_zero(c):
                for j in range(dim):
                    if not f.is_zero(res[j]):
                        r[j] = f.sub(r[j], f.mul(c, res[j]))
        span.append(res)
        el = Element({alg.basis[i]: c for i, c in enumerate(res) if not f.is_zero(c)})
        basis_elems.append(el)
        queue.append(el)

    for g in gens:
        push(g)
    multipliers = [Element.from_path(idempotent(v), f.one()) for v in alg.quiver.vertices]
    from .quiver import PathWord as _PW

    for a in alg.quiver.arrows:
        multipliers.append(Element.from_path(_PW(a.start, (a.label,), a.end), f.one()))
    while queue:
        x = queue.pop()
        for m in multipliers:
            push(alg.mul(m, x))
            push(alg.mul(x, m))
    return basis_elems


def annihilator_dim(alg: Algebra, M: Rep, ideal_gens: list[Element]) -> int:
    """dim {m in M : l.m = 0 for all l in the two-sided ideal <ideal_gens>}."""
    f = alg.field
    span = ideal_span(alg, ideal_gens)
    if not span:
        return M.total
    stacked: list[Vector] = []
    for el in span:
        stacked.extend(global_matrix(M, el))
    return M.total - rank(f, stacked)


# -- subquotients -------------------------------------------------------------


def _graded_basis(M: Rep, space: list[Vector]) -> dict[int, list[Vector]]:
    """Per-vertex bases (block coordinates) of a vertex-graded subspace."""
    f = M.field
    out = {}
    for v in M.alg.quiver.vertices:
        o, n = M.offset(v), M.dim_at(v)
        proj = [w[o : o + n] for w in space]
        out[v] = span_rref(f, proj) if n else []
    return out


def sub_rep(M: Rep, space: list[Vector]) -> Rep:
    """The submodule on the given arrow-stable graded subspace, as a Rep on
    per-vertex RREF bases. Raises NotSubmodule when not arrow-stable."""
    f = M.field
    if not is_arrow_stable(M, space):
        raise NotSubmodule("subspace is not stable under the arrow action")
    bases = _graded_basis(M, space)
    d = tuple(len(bases[v]) for v in M.alg.quiver.vertices)
    mats = {}
    for a in M.alg.quiver.arrows:
        cols = []
        for w in bases[a.start]:
            img = mat_vec(f, M.mats[a.label], w)
            if not bases[a.end]:
                if not is_zero_vec(f, img):
                    raise NotSubmodule("arrow image leaves the subspace")
                cols.append([])
                continue
            sol = solve(f, transpose(bases[a.end]), img)
            if sol is None:
                raise NotSubmodule("arrow image leaves the subspace")
            cols.append(sol)
        mats[a.label] = [list(row) for row in zip(*cols)] if cols and bases[a.end] else zeros(f, d[a.end - 1], d[a.start - 1])
    return Rep(M.alg, d, mats)


def quotient_rep(M: Rep, space: list[Vector]) -> Rep:
    """M / (arrow-stable graded subspace), on coset bases of non-pivot
    coordinates per vertex block."""
    f = M.field
    if not is_arrow_stable(M, space):
        raise NotSubmodule("subspace is not stable under the arrow action")
    bases = _graded_basis(M, space)
    keep: dict[int, list[int]] = {}
    for v in M.alg.quiver.vertices:
        n = M.dim_at(v)
        pivots = set()
        for row in bases[v]:
            pivots.add(next(i for i, x in enumerate(row) if not f.is_zero(x)))
        keep[v] = [i for i in range(n) if i not in pivots]
    d = tuple(len(keep[v]) for v in M.alg.quiver.vertices)

    def project(v: int, blockvec: Vector) -> Vector:
        res = reduce_mod(f, bases[v], blockvec)
        return [res[i] for i in keep[v]]

    mats = {}
    for a in M.alg.quiver.arrows:
        cols = []
        for i in keep[a.start]:
            unit = [f.zero()] * M.dim_at(a.start)
            unit[i] = f.one()
            img = mat_vec(f, M.mats[a.label], unit)
            cols.append(project(a.end, img))
        mats[a.label] = [list(row) for row in zip(*cols)] if cols and d[a.end - 1] else zeros(f, d[a.end - 1], d[a.start - 1])
    return Rep(M.alg, d, mats)


# -- local decomposition ------------------------------------------------------


def _column_space(f: Field, m: Matrix) -> list[Vector]:
    return span_rref(f, [list(col) for col in zip(*m)]) if m and m[0] else []


def _mat_trace(f: Field, m: Matrix) -> Scalar:
    t = f.zero()
    for i in range(len(m)):
        t = f.add(t, m[i][i])
    return t


def _split_once(M: Rep, blocks: dict[int, Matrix]):
    """Fitting split along an endomorphism: (ker f^n, im f^n) when proper."""
    f = M.field
    n = M.total
    F = hom_global_matrix(M, M, blocks)
    Fn = mat_pow(f, F, n)
    r = rank(f, Fn)
    if r == 0 or r == n:
        return None
    ker = span_rref(f, kernel_basis(f, Fn, n))
    img = _column_space(f, Fn)
    return ker, img


def _indecomposables(M: Rep, limits: SearchLimits, seed: int):
    """Split M into indecomposables; None when inconclusive."""
    if M.total == 0:
        return []
    f = M.field
    basis = hom_basis(M, M)
    k = len(basis)
    if k == 1:
        return [M]

    def recurse(space_pair):
        ker, img = space_pair
        left = _indecomposables(sub_rep(M, ker), limits, seed)
        if left is None:
            return None
        right = _indecomposables(sub_rep(M, img), limits, seed)
        if right is None:
            return None
        return left + right

    if f.is_finite and f.order**k <= limits.endo_enum:
        for coeffs in itertools.product(f.elements(), repeat=k):
            if all(f.is_zero(c) for c in coeffs):
                continue
            blocks = _combine_blocks(M, M, basis, list(coeffs))
            hit = _split_once(M, blocks)
            if hit is not None:
                return recurse(hit)
        # every endomorphism is invertible or nilpotent: End is local
        return [M]

    # randomized + shifted attempts, sound but incomplete
    rng = random.Random(seed)
    shifts = f.elements() if f.is_finite else [f.of_int(c) for c in (0, 1, -1, 2, -2, 3)]
    candidates: list[list[Scalar]] = []
    for i in range(k):
        candidates.append([f.one() if j == i else f.zero() for j in range(k)])
    for _ in range(limits.split_tries):
        candidates.append([f.random(rng) for _ in range(k)])
    for coeffs in candidates:
        blocks = _combine_blocks(M, M, basis, coeffs)
        for c in shifts:
            shifted = {
                v: [
                    [f.sub(blocks[v][i][j], c if i == j else f.zero()) for j in range(M.dim_at(v))]
                    for i in range(M.dim_at(v))
                ]
                for v in M.alg.quiver.vertices
            }
            hit = _split_once(M, shifted)
            if hit is not None:
                return recurse(hit)

    if not f.is_finite:
        # In characteristic zero the radical of the trace form on a faithful
        # module equals the Jacobson radical of End(M), so a rank-one Gram
        # matrix certifies that End(M) is local, i.e. M is indecomposable.
        mats = [hom_global_matrix(M, M, b) for b in basis]
        gram = [
            [_mat_trace(f, mat_mul(f, a, b)) for b in mats] for a in mats
        ]
        if rank(f, gram) == 1:
            return [M]
    return None


def decompose_local(alg: Algebra, M: Rep, limits: SearchLimits = DEFAULT_LIMITS, seed: int | None = None):
    """list of local summands | NotSumOfLocals | Unknown."""
    pieces = _indecomposables(M, limits, limits.seed if seed is None else seed)
    if pieces is None:
        return Unknown
    for piece in pieces:
        if sum(top_dims(alg, piece)) != 1:
            return NotSumOfLocals
    return pieces
