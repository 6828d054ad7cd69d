"""Budgets and knobs for enumerations and randomized searches."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class SearchLimits:
    """Caps on the exhaustive and randomized searches.

    submodule_vectors: max number of generator vectors swept (q^|d|).
    submodule_spaces: max number of distinct submodules tracked.
    iso_enum: max size q^k of a hom space enumerated exhaustively.
    iso_tries: randomized witness attempts before giving up.
    sym_vars / sym_dim: symbolic-determinant fallback bounds (variables, block size).
    endo_enum: max size q^k of an endomorphism algebra enumerated for splitting.
    split_tries: randomized endomorphism candidates for splitting attempts.
    chart_sweep: max number of chart coordinate tuples enumerated (q^N).
    seed: default RNG seed for all randomized subroutines.
    """

    submodule_vectors: int = 1 << 17
    submodule_spaces: int = 1 << 15
    iso_enum: int = 4096
    iso_tries: int = 64
    sym_vars: int = 10
    sym_dim: int = 8
    endo_enum: int = 4096
    split_tries: int = 64
    chart_sweep: int = 1 << 17
    seed: int = 0

    def with_seed(self, seed: int) -> "SearchLimits":
        return replace(self, seed=seed)

    def with_sweep(self, budget: int) -> "SearchLimits":
        return replace(self, chart_sweep=budget, submodule_vectors=budget)


DEFAULT_LIMITS = SearchLimits()
