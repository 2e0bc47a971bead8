"""Divisor classes on the blow-up of P^3 at r points and virtual dimensions.

A system L_3(d; m_1, ..., m_r) is encoded on the blow-up X as the class
d*H - sum m_i*E_i.  Intersection numbers use H^3 = 1, E_i^3 = 1 and zero
for every mixed monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class InvalidInputError(ValueError):
    """Raised when an operation's precondition on its arguments fails."""


def binom(a: int, k: int) -> int:
    """Binomial coefficient with the convention binom(a, k) = 0 for a < k."""
    if k < 0 or a < k:
        return 0
    return math.comb(a, k)


@dataclass(frozen=True)
class LinearSystem:
    """Degree-``degree`` surfaces with multiplicity ``mults[i]`` at point i."""

    degree: int
    mults: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    @classmethod
    def homogeneous(cls, degree: int, mult: int, r: int) -> LinearSystem:
        return cls(degree, (mult,) * r)

    @property
    def r(self) -> int:
        return len(self.mults)

    def sorted(self) -> LinearSystem:
        return LinearSystem(self.degree, tuple(sorted(self.mults, reverse=True)))

    def clamped(self) -> LinearSystem:
        return LinearSystem(self.degree, tuple(max(m, 0) for m in self.mults))

    def canonical(self) -> LinearSystem:
        """Clamp negative multiplicities and sort non-increasing."""
        return self.clamped().sorted()

    def without_zeros(self) -> LinearSystem:
        return LinearSystem(self.degree, tuple(m for m in self.mults if m != 0))

    def padded(self, r: int) -> LinearSystem:
        if r <= self.r:
            return self
        return LinearSystem(self.degree, self.mults + (0,) * (r - self.r))

    def is_canonical(self) -> bool:
        ms = self.mults
        return all(m >= 0 for m in ms) and all(a >= b for a, b in zip(ms, ms[1:]))

    def to_class(self) -> DivisorClass:
        return DivisorClass(self.degree, self.mults)

    def __str__(self) -> str:
        return f"L({self.degree}; {format_mults(self.mults)})"


def format_mults(mults: Sequence[int]) -> str:
    """Render multiplicities with exponent shorthand, e.g. ``5, 2^9``."""
    parts = []
    i = 0
    while i < len(mults):
        j = i
        while j < len(mults) and mults[j] == mults[i]:
            j += 1
        n = j - i
        parts.append(f"{mults[i]}^{n}" if n > 1 else str(mults[i]))
        i = j
    return ", ".join(parts)


@dataclass(frozen=True)
class DivisorClass:
    """The class ``h*H - sum e[i]*E_i`` on the blow-up."""

    h: int
    e: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", tuple(int(b) for b in self.e))

    @property
    def r(self) -> int:
        return len(self.e)

    def _aligned(self, other: DivisorClass) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if self.r != other.r:
            raise InvalidInputError(f"classes on different blow-ups: r={self.r} vs r={other.r}")
        return self.e, other.e

    def __add__(self, other: DivisorClass) -> DivisorClass:
        a, b = self._aligned(other)
        return DivisorClass(self.h + other.h, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        a, b = self._aligned(other)
        return DivisorClass(self.h - other.h, tuple(x - y for x, y in zip(a, b)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-self.h, tuple(-b for b in self.e))

    def __mul__(self, n: int) -> DivisorClass:
        return DivisorClass(n * self.h, tuple(n * b for b in self.e))

    __rmul__ = __mul__

    def to_system(self) -> LinearSystem:
        return LinearSystem(self.h, self.e)


def canonical_class(r: int) -> DivisorClass:
    """K_X = -4H + 2*sum E_i, stored as (h=-4, e_i=-2)."""
    return DivisorClass(-4, (-2,) * r)


def hyperplane_class(r: int) -> DivisorClass:
    return DivisorClass(1, (0,) * r)


def triple_product(d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> int:
    """Triple intersection number a*a'*a'' - sum b_i*b'_i*b''_i."""
    if not d1.r == d2.r == d3.r:
        raise InvalidInputError(f"classes on different blow-ups: r={d1.r}, {d2.r}, {d3.r}")
    return d1.h * d2.h * d3.h - sum(x * y * z for x, y, z in zip(d1.e, d2.e, d3.e))


def c2_pairing(D: DivisorClass) -> int:
    """Second Chern class of X paired with D: c2.H = 6, c2.E_i = 0."""
    return 6 * D.h


def virtual_dimension(L: LinearSystem) -> int:
    return binom(L.degree + 3, 3) - sum(binom(m + 2, 3) for m in L.mults) - 1


def expected_dimension(L: LinearSystem) -> int:
    return max(virtual_dimension(L), -1)


def rr_virtual_dimension(L: LinearSystem) -> int:
    """Virtual dimension via Riemann-Roch on X.

    Agrees with :func:`virtual_dimension` whenever ``degree >= -3`` and every
    multiplicity is ``>= -2``; outside that range the binomial convention and
    the cubic polynomial part ways.
    """
    D = L.to_class()
    K = canonical_class(L.r)
    num = triple_product(D, D - K, 2 * D - K) + c2_pairing(D)
    q, rem = divmod(num, 12)
    if rem:
        raise ArithmeticError(f"Riemann-Roch numerator {num} not divisible by 12 for {L}")
    return q


def euler_characteristic(L: LinearSystem) -> int:
    return virtual_dimension(L) + 1


def additivity_defect(F: DivisorClass, M: DivisorClass) -> int:
    """v(F+M) - v(F) - v(M) predicted by F.M.(L-K)/2 with L = F+M."""
    L = F + M
    num = triple_product(F, M, L - canonical_class(L.r))
    q, rem = divmod(num, 2)
    if rem:
        raise ArithmeticError(f"F.M.(L-K) = {num} is odd")
    return q


def iter_pairs(n: int) -> Iterable[tuple[int, int]]:
    for i in range(n):
        for j in range(i + 1, n):
            yield i, j
