"""Ground-truth dimension by exact interpolation rank over GF(p).

Each point (1 : a : b : c) contributes one row per partial derivative of
order below its multiplicity, evaluated on the degree-d monomials in the
affine chart x0 = 1.  Generic rank over GF(p) is approached by taking the
largest rank over a few independent random point configurations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import InvalidInputError, LinearSystem, binom, expected_dimension

DEFAULT_PRIME = 2**31 - 1
DEFAULT_TRIALS = 3
DEFAULT_SEED = 0

Point = tuple[int, int, int]


@lru_cache(maxsize=64)
def monomial_exponents(d: int) -> np.ndarray:
    """Affine exponents (a, b, c), a + b + c <= d, in graded-lex order.

    Row t is the monomial x1^a x2^b x3^c x0^(d-a-b-c).
    """
    exps = [
        (a, b, tot - a - b)
        for tot in range(d + 1)
        for a in range(tot, -1, -1)
        for b in range(tot - a, -1, -1)
    ]
    out = np.array(exps, dtype=np.int64).reshape(-1, 3)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def derivative_orders(m: int) -> tuple[Point, ...]:
    return tuple(
        (i, j, tot - i - j)
        for tot in range(m)
        for i in range(tot, -1, -1)
        for j in range(tot - i, -1, -1)
    )


@lru_cache(maxsize=256)
def _falling_factorials(d: int, order: int, p: int) -> np.ndarray:
    """ff[n, i] = n (n-1) ... (n-i+1) mod p, zero when i > n."""
    ff = np.zeros((d + 1, order + 1), dtype=np.int64)
    for n in range(d + 1):
        acc = 1
        for i in range(min(n, order) + 1):
            ff[n, i] = acc
            acc = acc * (n - i) % p
    ff.setflags(write=False)
    return ff


def _powers(x: int, d: int, p: int) -> np.ndarray:
    out = np.empty(d + 1, dtype=np.int64)
    acc = 1
    for e in range(d + 1):
        out[e] = acc
        acc = acc * x % p
    return out


def condition_rows(d: int, m: int, point: Sequence[int], p: int = DEFAULT_PRIME) -> np.ndarray:
    """Vanishing conditions of order m at one point.

    Returns a ``(binom(m+2, 3), binom(d+3, 3))`` int64 array of residues mod p.
    """
    if p <= d:
        raise InvalidInputError(f"prime {p} must exceed the degree {d}")
    exps = monomial_exponents(d)
    orders = derivative_orders(m)
    rows = np.zeros((len(orders), len(exps)), dtype=np.int64)
    if not orders or d < 0:
        return rows
    top = max(max(o) for o in orders)
    ff = _falling_factorials(d, top, p)
    pw = [_powers(int(c) % p, d, p) for c in point]
    A, B, C = exps[:, 0], exps[:, 1], exps[:, 2]
    for r, (i, j, k) in enumerate(orders):
        ok = (A >= i) & (B >= j) & (C >= k)
        if not ok.any():
            continue
        a, b, c = A[ok], B[ok], C[ok]
        val = ff[a, i] * pw[0][a - i] % p
        val = val * (ff[b, j] * pw[1][b - j] % p) % p
        val = val * (ff[c, k] * pw[2][c - k] % p) % p
        rows[r, ok] = val
    return rows


def interpolation_matrix(
    L: LinearSystem, points: Sequence[Sequence[int]], p: int = DEFAULT_PRIME
) -> np.ndarray:
    ncols = binom(L.degree + 3, 3)
    blocks = [condition_rows(L.degree, m, pt, p) for m, pt in zip(L.mults, points) if m > 0]
    if not blocks:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.vstack(blocks)


def rank_mod_p(M: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    """Rank over GF(p) by fraction-free elimination; p must be below 2^31."""
    if p >= 2**31:
        raise InvalidInputError("products of residues must fit in int64")
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(M[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        below = rank + 1 + np.flatnonzero(M[rank + 1 :, c])
        if below.size:
            pivot_row = M[rank, c:]
            factors = M[below, c][:, None]
            M[below, c:] = (M[rank, c] * M[below, c:] - factors * pivot_row) % p
        rank += 1
    return rank


def random_points(r: int, rng: random.Random, p: int = DEFAULT_PRIME) -> list[Point]:
    """r pairwise distinct uniform affine points over GF(p)."""
    pts: list[Point] = []
    seen: set[Point] = set()
    while len(pts) < r:
        pt = (rng.randrange(p), rng.randrange(p), rng.randrange(p))
        if pt not in seen:
            seen.add(pt)
            pts.append(pt)
    return pts


@dataclass(frozen=True)
class OracleResult:
    prime: int
    seed: int
    trials: int
    coranks: tuple[int, ...]
    dimension: int

    @property
    def consistent(self) -> bool:
        """False when trials disagreed, i.e. some configuration was not general."""
        return len(set(self.coranks)) <= 1

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "seed": self.seed,
            "trials": self.trials,
            "coranks": list(self.coranks),
            "dim": self.dimension,
        }

    @classmethod
    def from_dict(cls, data: dict) -> OracleResult:
        return cls(data["prime"], data["seed"], data["trials"], tuple(data["coranks"]), data["dim"])


def trial_corank(L: LinearSystem, seed: int, p: int = DEFAULT_PRIME) -> int:
    rng = random.Random(seed)
    M = interpolation_matrix(L, random_points(L.r, rng, p), p)
    return M.shape[1] - rank_mod_p(M, p)


def oracle_dimension(
    L: LinearSystem,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    prime: int = DEFAULT_PRIME,
) -> OracleResult:
    """Projective dimension of L at random points: min corank over trials, minus one.

    Trial t draws its points from ``random.Random(seed + t)``.
    """
    if trials < 1:
        raise InvalidInputError("need at least one trial")
    if L.degree < 0:
        return OracleResult(prime, seed, trials, (0,) * trials, -1)
    if prime <= L.degree:
        raise InvalidInputError(f"prime {prime} must exceed the degree {L.degree}")
    coranks = tuple(trial_corank(L, seed + t, prime) for t in range(trials))
    dim = min(coranks) - 1
    # rank never exceeds the row count, so this is an invariant, not a statistic
    assert dim >= expected_dimension(L), f"oracle dim {dim} below e for {L}"
    return OracleResult(prime, seed, trials, coranks, dim)
