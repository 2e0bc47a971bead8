"""The cycle of multiple base lines through pairs of points."""

from __future__ import annotations

from dataclasses import dataclass

from .core import InvalidInputError, LinearSystem, binom, iter_pairs


@dataclass(frozen=True)
class GammaEdge:
    i: int
    j: int
    t: int


@dataclass(frozen=True)
class GammaCycle:
    """Pairs (i, j), i < j, with t_ij = m_i + m_j - d >= 1."""

    edges: tuple[GammaEdge, ...]

    def __bool__(self) -> bool:
        return bool(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def as_tuples(self) -> list[tuple[int, int, int]]:
        return [(e.i, e.j, e.t) for e in self.edges]


def t_value(L: LinearSystem, i: int, j: int) -> int:
    if i == j or not (0 <= i < L.r and 0 <= j < L.r):
        raise InvalidInputError(f"bad point pair ({i}, {j}) for {L.r} points")
    return L.mults[i] + L.mults[j] - L.degree


def gamma_cycle(L: LinearSystem) -> GammaCycle:
    edges = []
    for i, j in iter_pairs(L.r):
        t = L.mults[i] + L.mults[j] - L.degree
        if t >= 1:
            edges.append(GammaEdge(i, j, t))
    return GammaCycle(tuple(edges))


def gamma_contribution(L: LinearSystem) -> int:
    """Sum of binom(t+1, 3) over lines with t_ij >= 2."""
    return sum(binom(e.t + 1, 3) for e in gamma_cycle(L).edges if e.t >= 2)


@dataclass(frozen=True)
class GammaShape:
    """Shape of the graph on points whose edges are the lines of the cycle.

    ``kind`` is one of ``empty``, ``star``, ``triangle`` or ``other``.  A
    single edge is a star centred at its smaller endpoint.
    """

    kind: str
    center: int | None = None
    vertices: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.center is not None:
            out["center"] = self.center
        if self.vertices:
            out["vertices"] = list(self.vertices)
        return out


def classify_edges(pairs: list[tuple[int, int]]) -> GammaShape:
    if not pairs:
        return GammaShape("empty")
    common = set(pairs[0])
    for p in pairs[1:]:
        common &= set(p)
    if len(pairs) == 1:
        i, j = pairs[0]
        return GammaShape("star", center=i, vertices=(j,))
    if len(common) == 1:
        (c,) = common
        leaves = tuple(sorted(v for p in pairs for v in p if v != c))
        return GammaShape("star", center=c, vertices=leaves)
    verts = sorted({v for p in pairs for v in p})
    if len(pairs) == 3 and len(verts) == 3:
        return GammaShape("triangle", vertices=tuple(verts))
    return GammaShape("other", vertices=tuple(verts))


def classify_gamma_graph(L: LinearSystem) -> GammaShape:
    return classify_edges([(e.i, e.j) for e in gamma_cycle(L).edges])
