"""Speciality predictor: quadric obstructions, multiple lines, and peeling."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .core import (
    DivisorClass,
    InvalidInputError,
    LinearSystem,
    canonical_class,
    expected_dimension,
    triple_product,
    virtual_dimension,
)
from .cremona import ReductionTrace, is_standard, standard_form
from .gamma import gamma_contribution, gamma_cycle

MAX_SCAN_POINTS = 15


class TooManyPointsError(InvalidInputError):
    """The 9-subset scan was asked to enumerate beyond its configured cap."""


def quadric_class(r: int, subset: Sequence[int]) -> DivisorClass:
    e = [0] * r
    for i in subset:
        e[i] = 1
    return DivisorClass(2, e)


def _check_subset(L: LinearSystem, subset: Sequence[int]) -> tuple[int, ...]:
    if L.r < 9:
        raise InvalidInputError(f"a quadric needs nine base points, {L} has {L.r}")
    s = tuple(sorted(int(i) for i in subset))
    if len(s) != 9 or len(set(s)) != 9 or s[0] < 0 or s[-1] >= L.r:
        raise InvalidInputError(f"bad 9-point subset {tuple(subset)} for {L.r} points")
    return s


def quadric_obstruction(L: LinearSystem, subset: Sequence[int]) -> int:
    """Q.(L-Q).(L-K) for the quadric Q through the nine chosen points."""
    s = _check_subset(L, subset)
    D = L.to_class()
    Q = quadric_class(L.r, s)
    return triple_product(Q, D - Q, D - canonical_class(L.r))


@dataclass(frozen=True)
class QuadricObstruction:
    subset: tuple[int, ...]
    value: int


def scan_quadrics(L: LinearSystem, max_points: int = MAX_SCAN_POINTS) -> list[QuadricObstruction]:
    """All 9-subsets whose quadric has a negative obstruction, most negative first."""
    if L.r < 9:
        return []
    if L.r > max_points:
        raise TooManyPointsError(f"{L.r} points exceeds the scan cap of {max_points}")
    D = L.to_class()
    LK = D - canonical_class(L.r)
    found = []
    for s in itertools.combinations(range(L.r), 9):
        Q = quadric_class(L.r, s)
        val = triple_product(Q, D - Q, LK)
        if val < 0:
            found.append(QuadricObstruction(s, val))
    found.sort(key=lambda o: (o.value, o.subset))
    return found


def peel_quadrics(
    L: LinearSystem, max_points: int = MAX_SCAN_POINTS
) -> tuple[LinearSystem, list[tuple[int, ...]]]:
    """Strip quadrics with negative obstruction from the base locus.

    After each subtraction the system is clamped, re-sorted, and points of
    multiplicity zero are dropped.  Subsets are reported in the indexing of
    the system they were peeled from.
    """
    if not is_standard(L):
        raise InvalidInputError(f"{L} is not in standard form")
    cur = L.without_zeros()
    peeled: list[tuple[int, ...]] = []
    while cur.degree >= 2:
        obs = scan_quadrics(cur, max_points)
        if not obs:
            break
        s = obs[0].subset
        mults = list(cur.mults)
        for i in s:
            mults[i] -= 1
        cur = LinearSystem(cur.degree - 2, mults).canonical().without_zeros()
        peeled.append(s)
    return cur, peeled


@dataclass(frozen=True)
class QuadricCondition:
    subset: tuple[int, ...]
    value: int

    def to_dict(self) -> dict:
        return {"type": "quadric", "subset": list(self.subset), "value": self.value}


@dataclass(frozen=True)
class GammaCondition:
    i: int
    j: int
    t: int

    def to_dict(self) -> dict:
        return {"type": "gamma", "i": self.i, "j": self.j, "t": self.t}


Reason = Union[QuadricCondition, GammaCondition]


@dataclass(frozen=True)
class Verdict:
    """Outcome of the predictor on one system.

    ``reasons`` lists every triggered condition on the standardized system;
    ``special`` is whether the predicted dimension exceeds its expected
    dimension.  Special implies reasons, not conversely: a condition on a
    system whose residual is still empty does not raise the dimension.
    """

    special: bool
    reasons: tuple[Reason, ...]
    predicted_dimension: int
    standard_trace: ReductionTrace
    peeled_quadrics: tuple[tuple[int, ...], ...]
    residual: LinearSystem | None

    @property
    def standard(self) -> LinearSystem:
        return self.standard_trace.final

    @property
    def expected(self) -> int:
        return expected_dimension(self.standard)


def predicted_dimension(L: LinearSystem, max_points: int = MAX_SCAN_POINTS) -> Verdict:
    trace = standard_form(L)
    S = trace.final
    if trace.empty:
        # dim >= e always; an empty reduction of a system with e >= 0 is a reduction bug.
        assert expected_dimension(L) <= -1, f"{L} reduced to empty but e = {expected_dimension(L)}"
        return Verdict(False, (), -1, trace, (), None)

    core = S.without_zeros()
    reasons: list[Reason] = [
        QuadricCondition(o.subset, o.value) for o in scan_quadrics(core, max_points)
    ]
    reasons += [GammaCondition(e.i, e.j, e.t) for e in gamma_cycle(core).edges if e.t >= 2]

    predicted, peels, residual = _residual_dimension(core, max_points)
    special = predicted > expected_dimension(S)
    return Verdict(special, tuple(reasons), predicted, trace, tuple(peels), residual)


def _exceeds_degree(L: LinearSystem) -> bool:
    # a point of multiplicity above the degree kills every surface
    return bool(L.mults) and L.mults[0] > L.degree


def _residual_dimension(
    S: LinearSystem, max_points: int
) -> tuple[int, list[tuple[int, ...]], LinearSystem | None]:
    """Peel quadrics, re-standardize the residual, repeat until stable."""
    peels: list[tuple[int, ...]] = []
    cur = S
    while True:
        if _exceeds_degree(cur):
            return -1, peels, None
        residual, new = peel_quadrics(cur, max_points)
        peels += new
        trace = standard_form(residual)
        if trace.empty:
            return -1, peels, None
        nxt = trace.final.without_zeros()
        if not new or nxt == residual:
            cur = nxt
            break
        cur = nxt
    if _exceeds_degree(cur):
        return -1, peels, None
    return max(-1, virtual_dimension(cur) + gamma_contribution(cur)), peels, cur


def homogeneous_empty(d: int, m: int, r: int) -> bool:
    if m < 0 or r < 0:
        raise InvalidInputError("m and r must be non-negative")
    return d <= 2 * m - 1 and r >= 8


def homogeneous_special(d: int, m: int, r: int) -> bool:
    """Speciality of L(d; m^r) for d >= 2m.

    Special iff r = 9 and d < -1 + (3/2) sqrt(2m^2 + 2m), compared exactly as
    4(d+1)^2 < 9(2m^2 + 2m).
    """
    if d < 2 * m:
        raise InvalidInputError(f"d = {d} < 2m = {2 * m}")
    return r == 9 and 4 * (d + 1) ** 2 < 9 * (2 * m * m + 2 * m)
