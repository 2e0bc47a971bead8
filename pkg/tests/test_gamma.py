from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from conftest import systems
from fatpoints.core import InvalidInputError, LinearSystem, binom, virtual_dimension
from fatpoints.cremona import is_standard, standard_form
from fatpoints.gamma import (
    classify_edges,
    classify_gamma_graph,
    gamma_contribution,
    gamma_cycle,
    t_value,
)
from fatpoints.oracle import oracle_dimension


@pytest.mark.parametrize(
    "L,pair,want",
    [(LinearSystem(6, (5, 3, 2, 2)), (0, 1), 2), (LinearSystem(2, (1, 1)), (0, 1), 0), (LinearSystem(4, (2,) * 9), (0, 1), 0)],
)
def test_t_value(L, pair, want):
    assert t_value(L, *pair) == want


def test_t_value_bad_pair():
    with pytest.raises(InvalidInputError):
        t_value(LinearSystem(2, (1, 1)), 0, 0)
    with pytest.raises(InvalidInputError):
        t_value(LinearSystem(2, (1, 1)), 0, 2)


def test_gamma_cycle_examples():
    assert gamma_cycle(LinearSystem(6, (5, 3, 2, 2))).as_tuples() == [(0, 1, 2), (0, 2, 1), (0, 3, 1)]
    assert not gamma_cycle(LinearSystem(5, (2,) * 9))
    k4 = gamma_cycle(LinearSystem(3, (2, 2, 2, 2)))
    assert k4.as_tuples() == [(i, j, 1) for i in range(4) for j in range(i + 1, 4)]


@pytest.mark.parametrize(
    "L,want",
    [(LinearSystem(6, (5, 3, 2, 2)), 1), (LinearSystem(5, (2,) * 9), 0), (LinearSystem(8, (7, 4, 2, 2)), 4)],
)
def test_gamma_contribution(L, want):
    assert gamma_contribution(L) == want


def test_classify_examples():
    s = classify_gamma_graph(LinearSystem(6, (5, 3, 2, 2)))
    assert s.kind == "star" and s.center == 0 and s.vertices == (1, 2, 3)
    assert classify_gamma_graph(LinearSystem(5, (2,) * 9)).kind == "empty"
    tri = classify_gamma_graph(LinearSystem(7, (5, 5, 4, 0)))
    assert tri.kind == "triangle" and tri.vertices == (0, 1, 2)
    assert classify_gamma_graph(LinearSystem(3, (2, 2, 2, 2))).kind == "other"


def test_classify_edge_cases():
    assert classify_edges([(2, 5)]).kind == "star"
    assert classify_edges([(0, 1), (2, 3)]).kind == "other"
    assert classify_edges([(0, 1), (1, 2), (2, 3)]).kind == "other"


@settings(max_examples=1000)
@given(systems())
def test_standard_form_graph_is_star_or_triangle(L):
    t = standard_form(L)
    if not t.empty:
        assert classify_gamma_graph(t.final).kind in {"empty", "star", "triangle"}


@given(systems())
def test_contribution_recomputed_from_pairs(L):
    direct = 0
    for i in range(L.r):
        for j in range(i + 1, L.r):
            t = L.mults[i] + L.mults[j] - L.degree
            if t >= 2:
                direct += binom(t + 1, 3)
    assert gamma_contribution(L) == direct >= 0


def _single_line_systems(n, seed):
    """Standard-form systems whose cycle is a single line with t >= 2."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        d = rng.randint(2, 8)
        r = rng.randint(2, 6)
        L = LinearSystem(d, tuple(sorted((rng.randint(0, d) for _ in range(r)), reverse=True)))
        cyc = gamma_cycle(L)
        if is_standard(L) and len(cyc) == 1 and cyc.edges[0].t >= 2:
            out.append(L)
    return out


def test_single_multiple_line_forces_speciality():
    for L in _single_line_systems(50, seed=7):
        dim = oracle_dimension(L).dimension
        assert dim - virtual_dimension(L) >= gamma_contribution(L), str(L)
