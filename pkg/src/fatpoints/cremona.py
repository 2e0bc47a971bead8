"""Cubo-cubic Cremona action on multiplicity vectors and standard form."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .core import InvalidInputError, LinearSystem, binom, iter_pairs


def _check_indices(indices: Sequence[int], n: int, bound: int) -> tuple[int, ...]:
    idx = tuple(int(i) for i in indices)
    if len(idx) != n:
        raise InvalidInputError(f"expected {n} point indices, got {len(idx)}")
    if len(set(idx)) != n:
        raise InvalidInputError(f"repeated point indices {idx}")
    if any(i < 0 or i >= bound for i in idx):
        raise InvalidInputError(f"point indices {idx} out of range for {bound} points")
    return idx


def cremona_k(L: LinearSystem, indices: Sequence[int] = (0, 1, 2, 3)) -> int:
    P = L.padded(4)
    idx = _check_indices(indices, 4, max(P.r, 4))
    return 2 * L.degree - sum(P.mults[i] for i in idx)


def cremona_raw(L: LinearSystem, indices: Sequence[int] = (0, 1, 2, 3)) -> LinearSystem:
    """Apply the Cremona transformation based at four points.

    Degree and the four chosen multiplicities shift by k = 2d - sum of them.
    No clamping or sorting.  Systems with fewer than four points are padded
    with zero multiplicities first.
    """
    idx = _check_indices(indices, 4, max(L.r, 4))
    P = L.padded(max(idx) + 1)
    k = 2 * P.degree - sum(P.mults[i] for i in idx)
    mults = list(P.mults)
    for i in idx:
        mults[i] += k
    return LinearSystem(P.degree + k, mults)


def clamp(L: LinearSystem) -> LinearSystem:
    return L.clamped()


def remove_fixed_plane(L: LinearSystem, indices: Sequence[int] = (0, 1, 2)) -> LinearSystem:
    """Subtract the plane through three points, which must be a fixed component."""
    idx = _check_indices(indices, 3, max(L.r, 3))
    P = L.padded(max(idx) + 1)
    s = sum(P.mults[i] for i in idx)
    if not 2 * P.degree < s:
        raise InvalidInputError(
            f"plane through points {idx} is not forced: 2d = {2 * P.degree} >= {s}"
        )
    mults = list(P.mults)
    for i in idx:
        mults[i] -= 1
    return LinearSystem(P.degree - 1, mults)


def vir_change_rhs(L: LinearSystem) -> int:
    """Predicted v(Cr(L)) - v(L) for the Cremona based at the first four points.

    Sums over the six pairs inside the first four points, with
    t_ij = m_i + m_j - d.
    """
    P = L.padded(4)
    d, m = P.degree, P.mults
    for a in range(4):
        for b in range(a + 1, 4):
            for c in range(b + 1, 4):
                if 2 * d < m[a] + m[b] + m[c]:
                    raise InvalidInputError(
                        f"{L}: 2d < m_{a} + m_{b} + m_{c}; the identity needs every triple bounded"
                    )
    total = 0
    for i, j in iter_pairs(4):
        t = m[i] + m[j] - d
        if t >= 2:
            total += binom(1 + t, 3)
        elif t <= -2:
            total -= binom(1 - t, 3)
    return total


class StepKind(str, enum.Enum):
    CREMONA = "cremona"
    PLANE = "plane"
    CLAMP = "clamp"
    RESORT = "resort"


@dataclass(frozen=True)
class ReductionStep:
    kind: StepKind
    indices: tuple[int, ...] = ()
    k: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.indices:
            out["indices"] = list(self.indices)
        if self.k is not None:
            out["k"] = self.k
        return out

    @classmethod
    def from_dict(cls, data: dict) -> ReductionStep:
        return cls(StepKind(data["kind"]), tuple(data.get("indices", ())), data.get("k"))


def apply_step(L: LinearSystem, step: ReductionStep) -> LinearSystem:
    """Replay a single reduction step.

    Plane and Cremona steps may act on points beyond ``L.r`` (conceptual
    zero multiplicities); those slots must come out non-positive and are
    dropped again, which is the same as clamping them.
    """
    if step.kind is StepKind.RESORT:
        return L.sorted()
    if step.kind is StepKind.CLAMP:
        return L.clamped()
    if step.kind is StepKind.PLANE:
        out = remove_fixed_plane(L, step.indices)
    else:
        out = cremona_raw(L, step.indices)
        if step.k is not None and out.degree - L.degree != step.k:
            raise InvalidInputError(f"recorded k={step.k} does not match replay on {L}")
    extra = out.mults[L.r:]
    if any(m > 0 for m in extra):
        raise InvalidInputError(f"step {step} creates a positive multiplicity at a virtual point")
    return LinearSystem(out.degree, out.mults[: L.r])


@dataclass(frozen=True)
class ReductionTrace:
    initial: LinearSystem
    steps: tuple[ReductionStep, ...]
    final: LinearSystem

    @property
    def empty(self) -> bool:
        return self.final.degree < 0

    def replay(self) -> LinearSystem:
        L = self.initial
        for step in self.steps:
            L = apply_step(L, step)
        return L

    def to_list(self) -> list[dict]:
        return [s.to_dict() for s in self.steps]


def is_standard(L: LinearSystem) -> bool:
    """Sorted, non-negative and 2d >= m1 + m2 + m3 + m4."""
    return L.is_canonical() and 2 * L.degree >= sum(L.mults[:4])


def standard_form(L: LinearSystem) -> ReductionTrace:
    """Reduce ``L`` by plane removals and degree-lowering Cremona steps.

    Plane removal on the top three points takes priority over Cremona on the
    top four.  A final degree below zero means the system is empty.
    """
    steps: list[ReductionStep] = []
    cur = L
    while True:
        if any(m < 0 for m in cur.mults):
            cur = cur.clamped()
            steps.append(ReductionStep(StepKind.CLAMP))
        s = cur.sorted()
        if s != cur:
            cur = s
            steps.append(ReductionStep(StepKind.RESORT))
        if cur.degree < 0:
            break
        top = cur.padded(4).mults
        if 2 * cur.degree < top[0] + top[1] + top[2]:
            step = ReductionStep(StepKind.PLANE, (0, 1, 2))
        elif 2 * cur.degree < sum(top[:4]):
            step = ReductionStep(StepKind.CREMONA, (0, 1, 2, 3), cremona_k(cur))
        else:
            break
        cur = apply_step(cur, step)
        steps.append(step)
    return ReductionTrace(L, tuple(steps), cur)
