"""Top-stable degenerations of a module with fixed projective cover.

A degeneration of M that keeps the top fixed lives inside the same
Grassmannian of submodules of the cover P: it is the quotient at a point in
the closure of the orbit of C under the unipotent part of Aut(P).  This
module answers three questions about that picture.

* ``no_proper_topstable_deg`` decides whether the orbit of C is already
  closed, i.e. whether M = P/C admits no proper top-stable degeneration.
  The criterion is structural: M must split into local summands whose
  presentation kernels at each top vertex form a chain, and the radical JM
  must receive exactly as many homomorphisms from M as from P.

* ``one_param_limit`` degenerates C explicitly along a one-parameter
  subgroup 1 + tau*h built from a nilpotent endomorphism h of P, returning
  the limit point as tau goes to infinity.

* ``maximal_topdeg_candidates`` sweeps a whole Grassmannian stratum over a
  finite field and keeps the points whose orbits are closed, optionally
  filtered against a start module by the hom-order.

All arithmetic is exact; verdicts marked Unknown mean a search budget was
exhausted, never a numerical failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import Algebra
from .config import DEFAULT_LIMITS, SearchLimits
from .errors import (
    DimensionMismatch,
    NotNilpotentDirection,
    NotSubmodule,
    NotSumOfLocals,
    SearchTooLarge,
    TopMismatch,
    Unknown,
)
from .fields import Scalar
from .grass import (
    EndoSpace,
    ProjectiveCover,
    SubmodulePoint,
    _assemble,
    _chart_points,
    chart_equations,
    coker_rep,
    coords_to_point,
    endo_space,
    is_grass_point,
    skeleta_with_dims,
    submodule_point,
)
from .linalg import (
    Vector,
    in_span,
    is_zero_vec,
    kernel_basis,
    mat_vec,
    space_contains,
    span_rref,
    transpose,
)
from .reps import (
    Rep,
    arrow_images_span,
    decompose_local,
    hom_basis,
    hom_dim,
    hom_global_matrix,
    path_matrix,
    rep_of_projective,
    sub_rep,
    top_dims,
)


# -- closed-orbit test -------------------------------------------------------


@dataclass(frozen=True)
class DegenerationVerdict:
    """Outcome of the closed-orbit test, with the evidence that decided it.

    ``holds`` is True, False, or the Unknown sentinel.  ``kernel_dims``
    records, per top vertex, the kernel dimensions of the local summands in
    chain order; ``hom_dims`` records (dim Hom(P, JM), dim Hom(M, JM)) when
    that comparison was reached.
    """

    holds: object
    reason: str
    kernel_dims: tuple[tuple[int, tuple[int, ...]], ...] = ()
    hom_dims: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds is True


def _radical_span(M: Rep) -> list[Vector]:
    f = M.field
    units = []
    for i in range(M.total):
        v = [f.zero()] * M.total
        v[i] = f.one()
        units.append(v)
    return arrow_images_span(M, units)


def _local_generator(piece: Rep, v: int) -> Vector:
    """A vector of the local module ``piece`` generating it, normed to v."""
    f = piece.field
    rad = _radical_span(piece)
    o, n = piece.offset(v), piece.dim_at(v)
    for i in range(n):
        unit = [f.zero()] * piece.total
        unit[o + i] = f.one()
        if not in_span(f, rad, unit):
            return unit
    raise TopMismatch(f"local summand has no top class at vertex {v}")


def _presentation_kernel(alg: Algebra, v: int, piece: Rep, gen: Vector) -> list[Vector]:
    """Kernel of the cover map from the indecomposable projective at v.

    Coordinates are indices into ``alg.basis_at(v)``, so kernels of
    different pieces over the same vertex are directly comparable.
    """
    f = alg.field
    paths = alg.basis_at(v)
    cols = [path_act(piece, p, gen) for p in paths]
    return span_rref(f, kernel_basis(f, transpose(cols), ncols=len(paths)))


def path_act(M: Rep, p, vec: Vector) -> Vector:
    """Image of a global vector under the action of a basis path."""
    f = M.field
    blk = mat_vec(f, path_matrix(M, p), M.block(vec, p.start))
    out = [f.zero()] * M.total
    o = M.offset(p.end)
    for i, x in enumerate(blk):
        out[o + i] = x
    return out


def _top_epi_exists(a: Rep, b: Rep, v: int) -> bool:
    """Is there a top-preserving epimorphism a -> b between local modules?

    For local b it suffices that some homomorphism carries the generator of
    a outside the radical of b: the image then generates b.
    """
    f = a.field
    gen = _local_generator(a, v)
    rad_b = _radical_span(b)
    for blocks in hom_basis(a, b):
        mat = hom_global_matrix(a, b, blocks)
        w = mat_vec(f, mat, gen)
        if not in_span(f, rad_b, w):
            return True
    return False


def no_proper_topstable_deg(
    alg: Algebra,
    P: ProjectiveCover,
    C: SubmodulePoint,
    limits: SearchLimits = DEFAULT_LIMITS,
    seed: int | None = None,
) -> DegenerationVerdict:
    """Decide whether M = P/C admits no proper top-stable degeneration.

    The orbit of C under the unipotent automorphisms of P is closed exactly
    when (i) M is a direct sum of local modules that, grouped by top vertex,
    are linearly ordered by top-preserving epimorphisms, and (ii) the
    radical JM satisfies dim Hom(P, JM) = dim Hom(M, JM).

    Requires a finite base field for the summand search; returns a verdict
    carrying the Unknown sentinel when that search is inconclusive.
    """
    M = coker_rep(P, C)
    if top_dims(alg, M) != P.top.mult:
        raise TopMismatch(
            f"quotient has top {top_dims(alg, M)}, cover was built for {P.top.mult}"
        )
    pieces = decompose_local(alg, M, limits, seed)
    if pieces is NotSumOfLocals:
        return DegenerationVerdict(
            False, "module is not a direct sum of local modules"
        )
    if pieces is Unknown:
        return DegenerationVerdict(
            Unknown, "splitting search budget exhausted before a decision"
        )

    by_vertex: dict[int, list[Rep]] = {}
    for piece in pieces:
        t = top_dims(alg, piece)
        v = next(vv for vv, x in zip(alg.quiver.vertices, t) if x)
        by_vertex.setdefault(v, []).append(piece)

    f = alg.field
    kernel_dims = []
    for v in sorted(by_vertex):
        group = sorted(by_vertex[v], key=lambda r: -r.total)
        kernels = []
        for piece in group:
            gen = _local_generator(piece, v)
            kernels.append(_presentation_kernel(alg, v, piece, gen))
        kernel_dims.append((v, tuple(len(k) for k in kernels)))
        for big, small, kb, ks in zip(group, group[1:], kernels, kernels[1:]):
            if space_contains(f, ks, kb):
                continue
            # Kernels of the canonical presentations are incomparable, but a
            # different norming of the generators might still chain them; an
            # epimorphism big -> small is the generator-independent test.
            if not _top_epi_exists(big, small, v):
                return DegenerationVerdict(
                    False,
                    f"presentation kernels at vertex {v} are not comparable: "
                    f"no top-preserving epimorphism chains the summands",
                    tuple(kernel_dims),
                )

    units = []
    for i in range(M.total):
        u = [f.zero()] * M.total
        u[i] = f.one()
        units.append(u)
    JM = sub_rep(M, arrow_images_span(M, units))
    hp = hom_dim(P.rep, JM)
    hm = hom_dim(M, JM)
    if hp != hm:
        return DegenerationVerdict(
            False,
            f"radical receives {hp} independent homomorphisms from the cover "
            f"but only {hm} from the module",
            tuple(kernel_dims),
            (hp, hm),
        )
    return DegenerationVerdict(
        True,
        "local summands chain under top-preserving epimorphisms and the "
        "radical hom-dimensions agree",
        tuple(kernel_dims),
        (hp, hm),
    )


# -- one-parameter limits ----------------------------------------------------


def one_param_limit(
    P: ProjectiveCover,
    C: SubmodulePoint,
    coeffs: list[Scalar],
    endo: EndoSpace | None = None,
) -> SubmodulePoint:
    """Limit of (1 + tau*h)(C) as tau grows without bound.

    ``coeffs`` expands the endomorphism h in ``endo.elems``; h must be
    nilpotent, i.e. supported on the radical-degree-raising part of End(P),
    otherwise NotNilpotentDirection is raised.  The result is a point of the
    same Grassmannian, found by clearing denominators in tau and saturating
    the row module at tau infinite.
    """
    if endo is None:
        endo = endo_space(P)
    f = P.alg.field
    if len(coeffs) != len(endo.elems):
        raise DimensionMismatch(
            f"expected {len(endo.elems)} coefficients, got {len(coeffs)}"
        )
    coeffs = [f.of_int(c) if isinstance(c, int) else c for c in coeffs]
    for j in endo.degree0:
        if not f.is_zero(coeffs[j]):
            raise NotNilpotentDirection(
                f"direction has degree-zero component {endo.describe(j)}"
            )
    H = _assemble(endo, coeffs)

    # Substituting s = 1/tau and scaling each row by s turns the moving
    # subspace span{r + tau*H(r)} into span{H(r) + s*r}; the limit is the
    # fibre at s = 0 of the saturated family.
    pairs: list[tuple[Vector, Vector]] = [
        (mat_vec(f, H, r), list(r)) for r in C.row_lists()
    ]
    zero = [f.zero()] * P.total
    while True:
        const = [a for a, _ in pairs]
        deps = kernel_basis(f, transpose(const), ncols=len(pairs))
        if not deps:
            break
        a = deps[0]
        combo = list(zero)
        support = [i for i, x in enumerate(a) if not f.is_zero(x)]
        for i in support:
            for k in range(P.total):
                combo[k] = f.add(combo[k], f.mul(a[i], pairs[i][1][k]))
        pivot = None
        for i in reversed(support):
            if not is_zero_vec(f, pairs[i][1]):
                pivot = i
                break
        if pivot is None or is_zero_vec(f, combo):
            raise NotSubmodule("row family degenerated; C was not a point")
        pairs[pivot] = (combo, list(zero))

    limit = submodule_point(P, [a for a, _ in pairs])
    if limit.dim != C.dim or not is_grass_point(P, limit, C.dims):
        raise NotSubmodule("limit rows do not span a submodule point")
    return limit


# -- hom-order and maximality sweeps -----------------------------------------


def hom_order_leq(M: Rep, N: Rep, tests: list[Rep] | None = None) -> bool:
    """Does dim Hom(X, M) <= dim Hom(X, N) hold for every test module X?

    Degeneration implies this order.  By default X ranges over the
    indecomposable projectives, the simples, and M and N themselves.
    """
    if M.d != N.d:
        raise DimensionMismatch(f"dimension vectors differ: {M.d} vs {N.d}")
    if tests is None:
        from .reps import simple_rep

        alg = M.alg
        tests = [rep_of_projective(alg, v) for v in alg.quiver.vertices]
        tests += [simple_rep(alg, v) for v in alg.quiver.vertices]
        tests += [M, N]
    return all(hom_dim(x, M) <= hom_dim(x, N) for x in tests)


@dataclass(frozen=True)
class MaxDegCandidate:
    """A Grassmannian point with closed orbit, plus how it was certified.

    ``witness`` names the nilpotent direction whose one-parameter limit
    lands on this point from the supplied base point, when one was found.
    """

    point: SubmodulePoint
    verdict: DegenerationVerdict
    witness: str | None = None


def maximal_topdeg_candidates(
    alg: Algebra,
    P: ProjectiveCover,
    d: tuple[int, ...],
    M: Rep | None = None,
    candidates: list[SubmodulePoint] | None = None,
    base: SubmodulePoint | None = None,
    limits: SearchLimits = DEFAULT_LIMITS,
) -> list[MaxDegCandidate]:
    """Points of the dimension-d stratum admitting no proper top-stable
    degeneration.

    Without an explicit candidate list the whole stratum is swept chart by
    chart, which requires a finite base field and charts within the sweep
    budget; the returned list is then exhaustive.  Passing ``M`` keeps only
    points whose quotient dominates M in the hom-order, and passing ``base``
    additionally searches single nilpotent directions for a one-parameter
    limit landing on each survivor.
    """
    if candidates is None:
        f = alg.field
        if not f.is_finite:
            raise SearchTooLarge(
                "cannot sweep a stratum over an infinite field; "
                "supply explicit candidate points"
            )
        rng = random.Random(limits.seed)
        seen: dict[tuple, SubmodulePoint] = {}
        for sigma in skeleta_with_dims(P, tuple(d)):
            pres = chart_equations(P, sigma)
            values, exhaustive = _chart_points(pres, limits, rng)
            if not exhaustive:
                raise SearchTooLarge(
                    f"chart with {len(pres.variables)} variables exceeds "
                    f"the sweep budget {limits.chart_sweep}"
                )
            for vals in values:
                pt = coords_to_point(pres, vals)
                seen.setdefault(pt.rows, pt)
        points = list(seen.values())
    else:
        points = list(candidates)

    endo = endo_space(P) if base is not None else None
    out = []
    for pt in points:
        verdict = no_proper_topstable_deg(alg, P, pt, limits)
        if verdict.holds is not True:
            continue
        if M is not None and not hom_order_leq(M, coker_rep(P, pt)):
            continue
        witness = None
        if base is not None and pt.rows != base.rows:
            for j in endo.unipotent:
                coeffs: list[Scalar] = [0] * len(endo.elems)
                coeffs[j] = 1
                lim = one_param_limit(P, base, coeffs, endo)
                if lim.rows == pt.rows:
                    witness = endo.describe(j)
                    break
        out.append(MaxDegCandidate(pt, verdict, witness))
    return out
