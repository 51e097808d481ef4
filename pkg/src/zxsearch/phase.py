"""Exact spider phases, stored as reduced rational multiples of pi in [0, 2)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True, slots=True, order=True)
class Phase:
    """A phase ``numerator/denominator * pi``.

    Instances are always reduced and normalized modulo 2*pi; use
    :meth:`of` to build one from an arbitrary rational.
    """

    numerator: int = 0
    denominator: int = 1

    def __post_init__(self) -> None:
        if self.denominator <= 0:
            raise ValueError("phase denominator must be positive")
        if gcd(self.numerator, self.denominator) != 1 and not (
            self.numerator == 0 and self.denominator == 1
        ):
            raise ValueError(f"phase not reduced: {self.numerator}/{self.denominator}")
        if not 0 <= self.numerator < 2 * self.denominator:
            raise ValueError(f"phase not normalized to [0, 2): {self.numerator}/{self.denominator}")

    @classmethod
    def of(cls, value: Fraction | int | str) -> Phase:
        f = Fraction(value) % 2
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, text: str) -> Phase:
        """Parse ``"n/d"`` strictly: the text must already be reduced and normalized."""
        num, sep, den = text.strip().partition("/")
        if not sep:
            raise ValueError(f"malformed phase {text!r}")
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"malformed phase {text!r}") from None
        return cls(n, d)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __add__(self, other: Phase) -> Phase:
        return phase_add(self, other)

    def __neg__(self) -> Phase:
        return Phase.of(-self.as_fraction())

    def __sub__(self, other: Phase) -> Phase:
        return phase_add(self, -other)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    @property
    def is_pauli(self) -> bool:
        """0 or pi."""
        return self.denominator == 1

    @property
    def is_proper_clifford(self) -> bool:
        """pi/2 or 3pi/2."""
        return self.denominator == 2

    @property
    def is_t_like(self) -> bool:
        """Odd multiple of pi/4."""
        return self.denominator == 4


ZERO = Phase(0, 1)
PI = Phase(1, 1)
HALF_PI = Phase(1, 2)


def phase_add(a: Phase, b: Phase) -> Phase:
    return Phase.of(a.as_fraction() + b.as_fraction())
