"""Finite-dimensional path algebra quotients KQ/I with exact normal forms.

build_algebra eliminates the span of all bounded-length products p*r*q of the
relation generators, with pivots chosen deglex-descending (longer paths first,
then lexicographically larger in declaration order). The surviving paths form
the monomial basis; every eliminated path gets a fully reduced normal form.

Admissibility is certified inside the length window: the Loewy length is the
smallest m such that every path of length m reduces to zero, and products of
relations are only used when all their terms fit under max_len, so every
zero reduction is an honest ideal-membership certificate.
"""

from __future__ import annotations

from .errors import NotAdmissible, SearchTooLarge
from .fields import Field, Scalar
from .quiver import (
    Element,
    PathWord,
    Quiver,
    compose,
    deglex_key,
    extend,
    idempotent,
    validate_relation,
)

PATH_BUDGET = 500_000


def enumerate_paths(quiver: Quiver, max_len: int, budget: int = PATH_BUDGET) -> list[list[PathWord]]:
    """Paths grouped by length, 0..max_len."""
    by_len: list[list[PathWord]] = [[idempotent(v) for v in quiver.vertices]]
    total = quiver.n
    for _ in range(max_len):
        nxt: list[PathWord] = []
        for p in by_len[-1]:
            for a in quiver.arrows_out(p.end):
                q = extend(p, a)
                if q is not None:
                    nxt.append(q)
        total += len(nxt)
        if total > budget:
            raise SearchTooLarge(f"more than {budget} paths of length <= {max_len}")
        by_len.append(nxt)
    return by_len


class Algebra:
    """KQ/I with a fixed monomial basis and reduction table. Construct via
    build_algebra, not directly."""

    def __init__(
        self,
        quiver: Quiver,
        field: Field,
        relations: tuple[Element, ...],
        max_len: int,
        basis: tuple[PathWord, ...],
        nf_table: dict[PathWord, dict[PathWord, Scalar]],
        loewy: int,
    ):
        self.quiver = quiver
        self.field = field
        self.relations = relations
        self.max_len = max_len
        self.basis = basis
        self.basis_index = {p: i for i, p in enumerate(basis)}
        self._nf_table = nf_table
        self.loewy = loewy
        self._arrow_left_cache: dict[tuple[str, PathWord], dict[PathWord, Scalar]] = {}

    # -- structure ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_at(self, start: int) -> list[PathWord]:
        """Basis paths of the projective Lambda*e_start, deglex ascending."""
        return [p for p in self.basis if p.start == start]

    def loewy_length(self) -> int:
        return self.loewy

    # -- normal forms and multiplication --------------------------------

    def nf_path(self, p: PathWord) -> dict[PathWord, Scalar]:
        """Normal form of a single path as a basis-supported coefficient dict."""
        if p in self.basis_index:
            return {p: self.field.one()}
        if p.length >= self.loewy:
            return {}
        hit = self._nf_table.get(p)
        if hit is None:
            raise KeyError(f"path {p} not covered by the reduction table")
        return hit

    def normal_form(self, x: Element) -> Element:
        f = self.field
        out: dict[PathWord, Scalar] = {}
        for p, c in x.terms.items():
            for b, d in self.nf_path(p).items():
                s = f.add(out.get(b, f.zero()), f.mul(c, d))
                if f.is_zero(s):
                    out.pop(b, None)
                else:
                    out[b] = s
        return Element(out)

    def mul(self, later: Element, earlier: Element) -> Element:
        """Product later*earlier ("first earlier, then later"), normal formed."""
        f = self.field
        out: dict[PathWord, Scalar] = {}
        for p, cp in later.terms.items():
            for q, cq in earlier.terms.items():
                pq = compose(self.quiver, p, q)
                if pq is None:
                    continue
                c = f.mul(cp, cq)
                for b, d in self.nf_path(pq).items():
                    s = f.add(out.get(b, f.zero()), f.mul(c, d))
                    if f.is_zero(s):
                        out.pop(b, None)
                    else:
                        out[b] = s
        return Element(out)

    def arrow_act(self, label: str, b: PathWord) -> dict[PathWord, Scalar]:
        """Normal form of (arrow * basis path), cached; {} when not composable."""
        key = (label, b)
        hit = self._arrow_left_cache.get(key)
        if hit is None:
            a = self.quiver.arrow(label)
            q = extend(b, a)
            hit = {} if q is None else self.nf_path(q)
            self._arrow_left_cache[key] = hit
        return hit

    # -- derived invariants ----------------------------------------------

    def projective_layer_dims(self, v: int) -> tuple[tuple[int, ...], ...]:
        """Length layering of Lambda*e_v: row l counts the basis paths of
        length exactly l starting at v, bucketed by end vertex.  Trailing
        all-zero rows are dropped."""
        top = max(p.length for p in self.basis_at(v))
        layers = [[0] * self.quiver.n for _ in range(top + 1)]
        for p in self.basis_at(v):
            layers[p.length][p.end - 1] += 1
        return tuple(tuple(row) for row in layers)

    def is_nakayama(self) -> bool:
        """True iff every indecomposable projective and injective is uniserial,
        which for a connected bound quiver algebra means in- and out-degree at
        most one at every vertex."""
        for v in self.quiver.vertices:
            if len(self.quiver.arrows_out(v)) > 1 or len(self.quiver.arrows_in(v)) > 1:
                return False
        return True

    def is_homogeneous_ideal(self) -> bool:
        """True iff the relation ideal is generated by length-homogeneous
        elements: every length component of every generator must itself reduce
        to zero."""
        for rel in self.relations:
            by_len: dict[int, Element] = {}
            for p, c in rel.terms.items():
                by_len.setdefault(p.length, Element()).terms[p] = c
            if len(by_len) == 1:
                continue
            for part in by_len.values():
                if not self.normal_form(part).is_zero():
                    return False
        return True

    def element_from_coords(self, coords: dict[PathWord, Scalar]) -> Element:
        return Element(dict(coords))

    def __repr__(self) -> str:
        return (
            f"Algebra(n={self.quiver.n}, arrows={len(self.quiver.arrows)}, "
            f"dim={self.dim}, loewy={self.loewy}, field={self.field})"
        )


def build_algebra(
    quiver: Quiver,
    relations: list[Element],
    field: Field,
    max_len: int,
) -> Algebra:
    """Construct KQ/I, certifying admissibility within the length window.

    Raises BadRelation for malformed generators and NotAdmissible when no
    m <= max_len has all length-m paths reducing to zero.
    """
    canon: list[Element] = []
    for rel in relations:
        validate_relation(rel, field)
        terms = {}
        for p, c in rel.terms.items():
            c = field.of_int(c) if isinstance(c, int) else field.of_fraction(c)
            if not field.is_zero(c):
                terms[p] = c
        canon.append(Element(terms))
        validate_relation(canon[-1], field)
    relations = canon

    by_len = enumerate_paths(quiver, max_len)
    all_paths = [p for lst in by_len for p in lst]
    all_paths.sort(key=lambda p: deglex_key(quiver, p))
    rank_of = {p: i for i, p in enumerate(all_paths)}
    path_of = {i: p for p, i in rank_of.items()}

    # Span of the ideal inside the length window: all products p*r*q whose
    # every term still fits, converted to sparse rows over path ranks.
    rows: list[dict[int, Scalar]] = []
    for rel in relations:
        lens = rel.lengths()
        lmax = max(lens)
        r_start = next(iter(rel.terms)).start
        r_end = next(iter(rel.terms)).end
        rights = [q for lst in by_len[: max_len - lmax + 1] for q in lst if q.end == r_start]
        lefts = [p for lst in by_len[: max_len - lmax + 1] for p in lst if p.start == r_end]
        for q in rights:
            for p in lefts:
                if p.length + lmax + q.length > max_len:
                    continue
                row: dict[int, Scalar] = {}
                for w, c in rel.terms.items():
                    pwq = compose(quiver, p, compose(quiver, w, q))
                    r = rank_of[pwq]
                    s = field.add(row.get(r, field.zero()), c)
                    if field.is_zero(s):
                        row.pop(r, None)
                    else:
                        row[r] = s
                if row:
                    rows.append(row)

    # Eliminate with pivot = deglex-largest surviving rank.
    pivots: dict[int, dict[int, Scalar]] = {}
    for row in rows:
        row = dict(row)
        while row:
            m = max(row)
            if m in pivots:
                coeff = row.pop(m)
                for k, v in pivots[m].items():
                    if k == m:
                        continue
                    nv = field.sub(row.get(k, field.zero()), field.mul(coeff, v))
                    if field.is_zero(nv):
                        row.pop(k, None)
                    else:
                        row[k] = nv
            else:
                inv = field.inv(row[m])
                pivots[m] = {k: field.mul(inv, v) for k, v in row.items()}
                break

    basis_ranks = [i for i in range(len(all_paths)) if i not in pivots]
    basis = tuple(path_of[i] for i in basis_ranks)

    # Fully reduced normal forms, pivots processed in ascending rank order so
    # every smaller pivot is already resolved.
    nf_ranks: dict[int, dict[int, Scalar]] = {}
    for pr in sorted(pivots):
        acc: dict[int, Scalar] = {}
        for k, v in pivots[pr].items():
            if k == pr:
                continue
            neg = field.neg(v)
            if k in pivots:
                for kk, vv in nf_ranks[k].items():
                    s = field.add(acc.get(kk, field.zero()), field.mul(neg, vv))
                    if field.is_zero(s):
                        acc.pop(kk, None)
                    else:
                        acc[kk] = s
            else:
                s = field.add(acc.get(k, field.zero()), neg)
                if field.is_zero(s):
                    acc.pop(k, None)
                else:
                    acc[k] = s
        nf_ranks[pr] = acc

    nf_table = {
        path_of[pr]: {path_of[k]: v for k, v in acc.items()} for pr, acc in nf_ranks.items()
    }

    # Loewy certificate: smallest m with every length-m path reducing to zero.
    loewy = None
    for m in range(1, max_len + 1):
        ok = True
        for p in by_len[m]:
            if p in rank_of and rank_of[p] not in pivots:
                ok = False
                break
            if p in nf_table and nf_table[p]:
                ok = False
                break
        if ok:
            loewy = m
            break
    if loewy is None:
        raise NotAdmissible(
            f"no m <= {max_len} has all length-m paths reducing to zero; "
            "the ideal may not be admissible or max_len is too small"
        )

    # Inside the certified window the basis must be closed under initial
    # subpaths; deglex multiplicativity guarantees it, so just double-check.
    bset = set(basis)
    for p in basis:
        for m in range(p.length):
            if p.initial(m, quiver) not in bset:
                raise NotAdmissible("internal: basis not closed under initial subpaths")

    return Algebra(quiver, field, tuple(relations), max_len, basis, nf_table, loewy)
