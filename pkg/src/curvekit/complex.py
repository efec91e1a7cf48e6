"""Finite abstract simplicial complexes.

Simplices are plain tuples of strictly increasing non-negative integers.
A :class:`SimplicialComplex` keeps them in canonical order (dimension first,
then lexicographic), which fixes the row/column order of every matrix built
on top of it.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np

from curvekit.errors import EmptyFacet, SimplexBudgetExceeded, SimplexNotInComplex

Simplex = tuple[int, ...]

DEFAULT_SIMPLEX_BUDGET = 200_000


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize a vertex collection to a canonical simplex tuple."""
    vs = sorted(set(int(v) for v in vertices))
    if not vs:
        raise EmptyFacet("simplices must be non-empty")
    if vs[0] < 0:
        raise ValueError(f"vertex identifiers must be non-negative, got {vs[0]}")
    return tuple(vs)


def canonical_key(x: Simplex) -> tuple[int, Simplex]:
    return (len(x), x)


def omega(x: Simplex) -> int:
    """Energy (-1)^dim(x) carried by a simplex."""
    return -1 if len(x) % 2 == 0 else 1


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    @property
    def euler(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, k):
        return self.counts[k]


@dataclass(frozen=True)
class CoverStatus:
    k: int
    weak: bool
    strong: bool
    witnesses: list[Simplex] = field(default_factory=list)


class SimplicialComplex:
    """Immutable, downward-closed family of simplices in canonical order."""

    def __init__(self, simplices: Iterable[Iterable[int]], *, check: bool = True):
        simps = sorted({simplex(s) for s in simplices}, key=canonical_key)
        self.simplices: tuple[Simplex, ...] = tuple(simps)
        self.index: dict[Simplex, int] = {s: i for i, s in enumerate(simps)}
        if check:
            for s in simps:
                if len(s) > 1:
                    for i in range(len(s)):
                        face = s[:i] + s[i + 1 :]
                        if face not in self.index:
                            raise ValueError(f"not closed: face {face} of {s} is missing")
        dim = len(simps[-1]) - 1 if simps else -1
        offsets = [0] * (dim + 2)
        for s in simps:
            offsets[len(s)] += 1
        for k in range(1, dim + 2):
            offsets[k] += offsets[k - 1]
        # grade_offsets[k] is where dimension k starts; grade_offsets[q+1] == n
        self.grade_offsets: tuple[int, ...] = tuple(offsets)
        self.vertex_set: frozenset[int] = frozenset(s[0] for s in simps if len(s) == 1)
        self._comparable: dict[int, list[list[int]]] = {}

    # -- basic container protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, x) -> bool:
        try:
            return simplex(x) in self.index
        except (EmptyFacet, ValueError, TypeError):
            return False

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={list(self.f_vector())}, chi={self.euler_characteristic()})"

    @property
    def dim(self) -> int:
        return len(self.grade_offsets) - 2

    def grade(self, k: int) -> tuple[Simplex, ...]:
        if k < 0 or k > self.dim:
            return ()
        return self.simplices[self.grade_offsets[k] : self.grade_offsets[k + 1]]

    def grade_range(self, k: int) -> range:
        if k < 0 or k > self.dim:
            return range(0)
        return range(self.grade_offsets[k], self.grade_offsets[k + 1])

    @cached_property
    def dims(self) -> np.ndarray:
        return np.array([len(s) - 1 for s in self.simplices], dtype=int)

    @cached_property
    def omegas(self) -> np.ndarray:
        return np.where(self.dims % 2 == 0, 1, -1)

    @cached_property
    def facets(self) -> list[Simplex]:
        return [self.simplices[i] for i in range(len(self)) if self.degrees[i].sum() == 1]

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def position(self, x: Iterable[int]) -> int:
        try:
            return self.index[simplex(x)]
        except (KeyError, EmptyFacet) as exc:
            raise SimplexNotInComplex(f"{tuple(x)} is not a simplex of the complex") from exc

    # -- combinatorics ---------------------------------------------------------------

    def f_vector(self) -> FVector:
        return FVector(tuple(np.diff(self.grade_offsets).tolist()))

    def euler_characteristic(self) -> int:
        return int(self.omegas.sum()) if len(self) else 0

    @cached_property
    def degrees(self) -> np.ndarray:
        """``degrees[i, j]`` = number of j-simplices containing simplex i."""
        table = np.zeros((len(self), self.dim + 1), dtype=np.int64)
        for y in self.simplices:
            j = len(y) - 1
            for r in range(1, len(y) + 1):
                for z in itertools.combinations(y, r):
                    table[self.index[z], j] += 1
        return table

    def degree(self, x: Iterable[int], j: int) -> int:
        i = self.position(x)
        if j < 0 or j > self.dim:
            return 0
        return int(self.degrees[i, j])

    def open_star(self, x: Iterable[int]) -> list[Simplex]:
        x = self.simplices[self.position(x)]
        xs = set(x)
        return [y for y in self.simplices if len(y) >= len(x) and xs.issubset(y)]

    def link(self, x: Iterable[int]) -> SimplicialComplex:
        """Link {y minus x : y strictly contains x} as a complex (possibly empty)."""
        x = self.simplices[self.position(x)]
        xs = set(x)
        rest = [tuple(v for v in y if v not in xs) for y in self.open_star(x) if len(y) > len(x)]
        return SimplicialComplex(rest, check=False)

    def comparable(self, k: int) -> list[list[int]]:
        """For every simplex, the canonical indices of the k-simplices comparable to it.

        Simplices of dimension <= k map to the k-simplices containing them, higher
        ones to their k-dimensional faces. Lists are sorted in canonical order.
        """
        if k in self._comparable:
            return self._comparable[k]
        out: list[list[int]] = [[] for _ in range(len(self))]
        for xi in self.grade_range(k):
            x = self.simplices[xi]
            for r in range(1, k + 2):
                for z in itertools.combinations(x, r):
                    out[self.index[z]].append(xi)
        for yi in range(self.grade_offsets[k + 1], len(self)):
            y = self.simplices[yi]
            out[yi] = sorted(self.index[z] for z in itertools.combinations(y, k + 1))
        self._comparable[k] = out
        return out

    def graph(self) -> nx.Graph:
        """1-skeleton as a networkx graph."""
        g = nx.Graph()
        g.add_nodes_from(s[0] for s in self.grade(0))
        g.add_edges_from(self.grade(1))
        return g

    def relabel(self, mapping) -> SimplicialComplex:
        return SimplicialComplex(([mapping[v] for v in s] for s in self.simplices), check=False)


# -- constructors ------------------------------------------------------------------------


def _check_budget(count: int, budget: int | None) -> None:
    if budget is not None and count > budget:
        raise SimplexBudgetExceeded(f"complex exceeds the simplex budget of {budget}")


def generate_closure(
    facets: Iterable[Iterable[int]], budget: int | None = DEFAULT_SIMPLEX_BUDGET
) -> SimplicialComplex:
    """Smallest complex containing every given facet."""
    simps: set[Simplex] = set()
    for f in facets:
        f = simplex(f)
        for r in range(1, len(f) + 1):
            simps.update(itertools.combinations(f, r))
        _check_budget(len(simps), budget)
    return SimplicialComplex(simps, check=False)


def _as_graph(graph) -> nx.Graph:
    if isinstance(graph, nx.Graph):
        return graph
    vertices, edges = graph
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    return g


def whitney_complex(graph, budget: int | None = DEFAULT_SIMPLEX_BUDGET) -> SimplicialComplex:
    """Clique complex: every complete subgraph becomes a simplex.

    ``graph`` is a networkx graph or a ``(vertices, edges)`` pair.
    """
    g = _as_graph(graph)
    if nx.number_of_selfloops(g):
        raise ValueError("graph has self-loops")
    cliques = []
    for c in nx.enumerate_all_cliques(g):
        cliques.append(tuple(sorted(c)))
        _check_budget(len(cliques), budget)
    return SimplicialComplex(cliques, check=False)


def f_vector(G: SimplicialComplex) -> FVector:
    return G.f_vector()


def euler_characteristic(G: SimplicialComplex) -> int:
    return G.euler_characteristic()


def degree(G: SimplicialComplex, x: Iterable[int], j: int) -> int:
    """Number of j-simplices containing x."""
    return G.degree(x, j)


def open_star(G: SimplicialComplex, x: Iterable[int]) -> list[Simplex]:
    return G.open_star(x)


def link_complex(G: SimplicialComplex, x: Iterable[int]) -> SimplicialComplex:
    return G.link(x)


def cover_status(G: SimplicialComplex, k: int) -> CoverStatus:
    if k < 0 or k > G.dim:
        raise ValueError(f"k={k} outside 0..{G.dim}")
    covered = set().union(*G.grade(k)) if G.grade(k) else set()
    weak = covered == set(G.vertex_set)
    low = G.grade_offsets[k + 1]
    witnesses = [G.simplices[i] for i in range(low) if G.degrees[i, k] == 0]
    return CoverStatus(k=k, weak=weak, strong=not witnesses, witnesses=witnesses)


def barycentric_refinement(
    G: SimplicialComplex, budget: int | None = DEFAULT_SIMPLEX_BUDGET
) -> SimplicialComplex:
    """Order complex of the face poset; vertex i stands for the i-th simplex of G."""
    g = nx.Graph()
    g.add_nodes_from(range(len(G)))
    for i, y in enumerate(G.simplices):
        for r in range(1, len(y)):
            for z in itertools.combinations(y, r):
                g.add_edge(G.index[z], i)
    return whitney_complex(g, budget=budget)

