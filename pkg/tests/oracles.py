"""Independent oracles used to freeze expected values in the tests.

Everything here is deliberately naive: plain walks on the quiver, exhaustive
subspace sweeps, brute-force skeleton counting. The point is that none of it
shares code with the package internals.
"""

from __future__ import annotations

import itertools

from quivermoduli.fields import Field
from quivermoduli.linalg import in_span, is_zero_vec, mat_vec, span_rref


def count_walks(arrows: list[tuple[str, int, int]], start: int, length: int) -> list[tuple[str, ...]]:
    """All label sequences (application order) of walks of given length."""
    if length == 0:
        return [()]
    walks = [((), start)]
    for _ in range(length):
        nxt = []
        for labels, at in walks:
            for lbl, s, e in arrows:
                if s == at:
                    nxt.append((labels + (lbl,), e))
        walks = nxt
    return [w[0] for w in walks]


def walk_end(arrows: list[tuple[str, int, int]], start: int, labels: tuple[str, ...]) -> int:
    at = start
    lookup = {lbl: (s, e) for lbl, s, e in arrows}
    for lbl in labels:
        s, e = lookup[lbl]
        assert s == at
        at = e
    return at


def all_rref_matrices(field: Field, ncols: int):
    """Every RREF matrix with ncols columns over a finite field: one
    representative per subspace of K^ncols."""
    elements = field.elements()
    for r in range(ncols + 1):
        for pivots in itertools.combinations(range(ncols), r):
            free_positions = [
                (i, j)
                for i in range(r)
                for j in range(pivots[i] + 1, ncols)
                if j not in pivots
            ]
            for values in itertools.product(elements, repeat=len(free_positions)):
                rows = [[field.zero()] * ncols for _ in range(r)]
                for i, p in enumerate(pivots):
                    rows[i][p] = field.one()
                for (i, j), val in zip(free_positions, values):
                    rows[i][j] = val
                yield rows


def brute_force_submodule_dims(M) -> set[tuple[int, ...]]:
    """All-subspace sweep: dimension vector of every arrow-stable subspace."""
    f = M.field
    n = M.total
    out = set()
    for rows in all_rref_matrices(f, n):
        stable = True
        for w in rows:
            for a in M.alg.quiver.arrows:
                blk = M.block(w, a.start)
                if is_zero_vec(f, blk):
                    continue
                img = mat_vec(f, M.mats[a.label], blk)
                v = [f.zero()] * n
                o = M.offset(a.end)
                for i, x in enumerate(img):
                    v[o + i] = x
                if not in_span(f, rows, v):
                    stable = False
                    break
            if not stable:
                break
        if not stable:
            continue
        # idempotent stability: one projection must stay inside as well
        for w in rows:
            for vert in M.alg.quiver.vertices:
                o, k = M.offset(vert), M.dim_at(vert)
                v = [f.zero()] * n
                for i in range(k):
                    v[o + i] = w[o + i]
                if not in_span(f, rows, v):
                    stable = False
                    break
            if not stable:
                break
        if not stable:
            continue
        dims = []
        for vert in M.alg.quiver.vertices:
            o, k = M.offset(vert), M.dim_at(vert)
            proj = [w[o : o + k] for w in rows]
            dims.append(len(span_rref(f, proj)) if proj and k else 0)
        out.add(tuple(dims))
    return out
