from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from curvekit import whitney_complex, zoo
from curvekit.errors import CoverViolation, EmptySample, NotLocallyInjective
from curvekit.morse import (
    index_expectation,
    is_locally_injective,
    k_function,
    ph_indices,
    random_k_function,
)


def classical_vertex_index(g, values):
    # oracle: i(v) = 1 - chi(S^-(v)), S^-(v) = clique complex on lower neighbours
    out = {}
    for v in g:
        lower = [w for w in g.neighbors(v) if values[w] < values[v]]
        sub = g.subgraph(lower)
        chi = sum((-1) ** (len(c) - 1) for c in nx.enumerate_all_cliques(sub)) if lower else 0
        out[v] = 1 - chi
    return out


@pytest.mark.parametrize("seed", range(10))
def test_vertex_index_matches_classical(seed):
    graph = nx.gnm_random_graph(9, 18, seed=seed)
    G = whitney_complex(graph)
    g = random_k_function(G, 0, seed)
    idx = ph_indices(G, 0, g).as_dict()
    values = {v: val for (v,), val in zip(G.grade(0), g.values)}
    assert {v: idx[(v,)] for v in graph} == classical_vertex_index(graph, values)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_ph_sum(octahedron, k):
    for seed in range(5):
        assert ph_indices(octahedron, k, random_k_function(octahedron, k, seed)).total() == 2


def test_exact_values_and_ties(octahedron):
    n = len(octahedron.grade(1))
    g = k_function(octahedron, 1, [Fraction(i, n) for i in range(n)])
    assert ph_indices(octahedron, 1, g).total() == 2
    flat = k_function(octahedron, 1, [0.5] * n)
    assert not is_locally_injective(octahedron, 1, flat.values)
    with pytest.raises(NotLocallyInjective):
        ph_indices(octahedron, 1, flat)


def test_cover_violation(two_triangles_bridge):
    g = random_k_function(two_triangles_bridge, 2, 0)
    with pytest.raises(CoverViolation):
        ph_indices(two_triangles_bridge, 2, g)


def test_expectation_reproducible_and_close(octahedron):
    a = index_expectation(octahedron, 0, 400, seed=7)
    b = index_expectation(octahedron, 0, 400, seed=7)
    assert np.array_equal(a.mean, b.mean)
    assert a.fraction_within(5) >= 0.99
    assert abs(a.mean.sum() - 2) < 1e-9


def test_expectation_prefix_stable(octahedron):
    # per-sample generators make chunking irrelevant
    small = index_expectation(octahedron, 1, 300, seed=3)
    big = index_expectation(octahedron, 1, 300, seed=3, with_exact=False)
    assert np.array_equal(small.mean, big.mean)


def test_empty_sample(octahedron):
    with pytest.raises(EmptySample):
        index_expectation(octahedron, 0, 0, seed=1)


def test_json_rationals(octahedron):
    js = index_expectation(octahedron, 0, 10, seed=1).to_json()
    assert js["exact"][0] == "1/3"
    assert set(js) >= {"k", "samples", "seed", "mean", "stderr", "exact"}


def test_zoo_random(octahedron):
    assert zoo.random_clique_complex(6, 8, 1).complex.f_vector().counts[1] == 8
