"""Exact coefficient fields: the rationals and prime fields F_p.

Elements are plain values (fractions.Fraction for Q, ints in [0, p) for F_p);
the Field object carries the arithmetic. Everything downstream threads a Field
explicitly, which keeps matrices as ordinary lists of scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Union

Scalar = Union[Fraction, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (p is None) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"field order must be prime, got {self.p}")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int:
        if self.p is None:
            raise ValueError("the rationals are not finite")
        return self.p

    # -- construction -------------------------------------------------

    def zero(self) -> Scalar:
        return 0 if self.p is not None else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.p is not None else Fraction(1)

    def of_int(self, n: int) -> Scalar:
        return n % self.p if self.p is not None else Fraction(n)

    def of_fraction(self, q: Fraction) -> Scalar:
        if self.p is None:
            return q
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator {q.denominator} vanishes in F_{self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    # -- arithmetic ---------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(a, -1, self.p)
        return Fraction(1) / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def is_one(self, a: Scalar) -> bool:
        return a == self.one()

    # -- enumeration and formatting ------------------------------------

    def elements(self) -> list[Scalar]:
        if self.p is None:
            raise ValueError("cannot enumerate the rationals")
        return list(range(self.p))

    def random(self, rng: Random, span: int = 10) -> Scalar:
        """A random scalar; over Q an integer in [-span, span]."""
        if self.p is not None:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-span, span))

    def parse(self, text: str) -> Scalar:
        """Parse "n" or "n/m" into a scalar of this field."""
        text = text.strip()
        return self.of_fraction(Fraction(text))

    def format(self, a: Scalar) -> str:
        if self.p is not None:
            return str(a % self.p)
        return str(a)  # Fraction renders as "p/q" or "p"

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field(None)


def parse_field_name(name: str) -> Field:
    """"Q" -> rationals, "F<p>" -> prime field."""
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return Field(int(name[1:]))
    raise ValueError(f"unknown field {name!r} (expected Q or F<p>)")
