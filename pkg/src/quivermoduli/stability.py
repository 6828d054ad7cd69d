"""Weight stability for modules over a path algebra.

A weight assigns an integer to every vertex and extends additively to
dimension vectors. A module M is semistable when its own weight vanishes
and no submodule has negative weight, stable when every proper nonzero
submodule is strictly positive. Verdicts are decided from the exact set
of submodule dimension vectors, so they are only offered over finite
fields; the rationals would force sampling and a missed submodule could
silently flip a verdict.

Semistable modules factor through chains of stable ones. stable_factors
extracts such a chain greedily (smallest zero-weight submodule first),
and two semistable modules are S-equivalent exactly when the resulting
multisets match up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .config import DEFAULT_LIMITS, SearchLimits
from .errors import DimensionMismatch, NotSemistable, SingularBlock, Unknown
from .fields import Field, Scalar
from .linalg import det
from .reps import (
    GroupElement,
    Rep,
    _vertex_dims,
    is_isomorphic,
    quotient_rep,
    sub_rep,
    submodule_dim_vectors,
    submodule_spans,
)


@dataclass(frozen=True)
class Weight:
    """Integers theta(1)..theta(n), one per vertex."""

    theta: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", tuple(int(t) for t in self.theta))

    def __len__(self) -> int:
        return len(self.theta)

    def scaled(self, c: int) -> "Weight":
        return Weight(tuple(c * t for t in self.theta))

    def __str__(self) -> str:
        return "(" + ", ".join(str(t) for t in self.theta) + ")"


def theta_of(theta: Weight, d: tuple[int, ...]) -> int:
    """The additive extension: sum of theta(i) * d_i."""
    if len(theta.theta) != len(d):
        raise DimensionMismatch(f"weight has {len(theta.theta)} entries, dimension vector {len(d)}")
    return sum(t * x for t, x in zip(theta.theta, d))


def character_value(field: Field, theta: Weight, g: GroupElement) -> Scalar:
    """The character chi(g) = prod over vertices of det(g_v)^theta(v)."""
    out = field.one()
    for v, block in sorted(g.blocks.items()):
        e = theta.theta[v - 1]
        if not block:
            continue
        dv = det(field, block)
        if field.is_zero(dv):
            raise SingularBlock(f"block at vertex {v} is singular")
        if e >= 0:
            out = field.mul(out, _ipow(field, dv, e))
        else:
            out = field.mul(out, _ipow(field, field.inv(dv), -e))
    return out


def _ipow(field: Field, a: Scalar, e: int) -> Scalar:
    out = field.one()
    for _ in range(e):
        out = field.mul(out, a)
    return out


def local_top_weight(i: int, d: tuple[int, ...]) -> Weight:
    """The weight vanishing on d that rewards every vertex except i.

    theta(j) = 1 for j != i and theta(i) = -sum of the other coordinates,
    so theta(d) = 0 whenever d_i = 1. Local modules with top S_i and
    dimension vector d are exactly the stable ones for this weight.
    """
    rest = sum(x for j, x in enumerate(d, start=1) if j != i)
    return Weight(tuple(-rest if j == i else 1 for j in range(1, len(d) + 1)))


class StabilityClass(Enum):
    STABLE = "Stable"
    SEMISTABLE_NOT_STABLE = "SemistableNotStable"
    UNSTABLE = "Unstable"

    def __str__(self) -> str:
        return self.value


def classify_stability(M: Rep, theta: Weight, limits: SearchLimits = DEFAULT_LIMITS) -> StabilityClass:
    """Stability type of M from its exact submodule dimension-vector set."""
    if M.total == 0:
        raise ValueError("the zero module has no stability type")
    if theta_of(theta, M.d) != 0:
        return StabilityClass.UNSTABLE
    proper = {e for e in submodule_dim_vectors(M, limits) if any(e) and e != M.d}
    values = {theta_of(theta, e) for e in proper}
    if any(v < 0 for v in values):
        return StabilityClass.UNSTABLE
    if 0 in values:
        return StabilityClass.SEMISTABLE_NOT_STABLE
    return StabilityClass.STABLE


def stable_factors(M: Rep, theta: Weight, limits: SearchLimits = DEFAULT_LIMITS) -> list[Rep]:
    """A stable composition chain of a semistable module.

    Repeatedly splits off the smallest zero-weight proper submodule (ties
    broken lexicographically on dimension vectors, then on row spans) and
    recurses on the quotient. The multiset of factors is independent of
    the extraction order; the fixed order just makes output deterministic.
    """
    if classify_stability(M, theta, limits) is StabilityClass.UNSTABLE:
        raise NotSemistable(f"module with dimension vector {M.d} is unstable for {theta}")
    factors: list[Rep] = []
    current = M
    while current.total:
        pick = _minimal_zero_weight_submodule(current, theta, limits)
        if pick is None:
            factors.append(current)
            break
        factors.append(sub_rep(current, pick))
        current = quotient_rep(current, pick)
    return factors


def _minimal_zero_weight_submodule(M: Rep, theta: Weight, limits: SearchLimits):
    best = None
    best_key = None
    for sp in submodule_spans(M, limits):
        if not sp or len(sp) == M.total:
            continue
        dims = _vertex_dims(M, sp)
        if theta_of(theta, dims) != 0:
            continue
        key = (len(sp), dims, tuple(tuple(r) for r in sp))
        if best_key is None or key < best_key:
            best, best_key = sp, key
    return best


def s_equivalent(M: Rep, N: Rep, theta: Weight, limits: SearchLimits = DEFAULT_LIMITS):
    """True / False / Unknown: do the stable factor multisets match?"""
    if M.d != N.d:
        return False
    fm = stable_factors(M, theta, limits)
    fn = stable_factors(N, theta, limits)
    if len(fm) != len(fn):
        return False
    remaining = list(fn)
    saw_unknown = False
    for f in fm:
        hit = None
        for i, g in enumerate(remaining):
            res = is_isomorphic(f, g, limits)
            if res is True:
                hit = i
                break
            if res is Unknown:
                saw_unknown = True
        if hit is None:
            return Unknown if saw_unknown else False
        remaining.pop(hit)
    return True
