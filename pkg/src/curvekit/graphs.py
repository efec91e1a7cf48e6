"""Unit spheres and manifold recognition.

The checks accept either a networkx graph (read as its clique complex) or a
:class:`SimplicialComplex`. Complexes given by facet lists are often not flag,
so for them the vertex links are used instead of graph unit spheres.
"""

from __future__ import annotations

from typing import NamedTuple

import networkx as nx

from curvekit.complex import SimplicialComplex, whitney_complex
from curvekit.errors import VertexNotInGraph


class TwoManifoldCheck(NamedTuple):
    is_manifold: bool
    interior: frozenset[int]
    boundary: frozenset[int]

    def __bool__(self) -> bool:
        return self.is_manifold


def unit_sphere(graph: nx.Graph, v: int) -> nx.Graph:
    """Subgraph induced on the neighbours of v."""
    if v not in graph:
        raise VertexNotInGraph(f"vertex {v} is not in the graph")
    return graph.subgraph(graph.neighbors(v)).copy()


def _as_complex(X) -> SimplicialComplex:
    if isinstance(X, SimplicialComplex):
        return X
    return whitney_complex(X)


def _circle_shape(link: SimplicialComplex) -> str | None:
    """'cycle', 'path', or None for a one-dimensional link."""
    if link.dim != 1:
        return None
    g = link.graph()
    if not nx.is_connected(g):
        return None
    degs = sorted(d for _, d in g.degree())
    if all(d == 2 for d in degs) and len(degs) >= 3:
        return "cycle"
    if degs[:2] == [1, 1] and all(d == 2 for d in degs[2:]):
        return "path"
    return None


def is_2manifold(X) -> TwoManifoldCheck:
    """Classify vertices as interior (link is a cycle) or boundary (link is a path).

    For graphs this is the usual rule that unit spheres are cycles of length
    at least 4 or paths: a 3-cycle gets filled by a triangle in the clique
    complex and is rejected.
    """
    G = _as_complex(X)
    interior, boundary = set(), set()
    ok = len(G) > 0
    for (v,) in G.grade(0):
        shape = _circle_shape(G.link((v,)))
        if shape == "cycle":
            interior.add(v)
        elif shape == "path":
            boundary.add(v)
        else:
            ok = False
    return TwoManifoldCheck(ok, frozenset(interior), frozenset(boundary))


def is_2sphere(X) -> bool:
    G = _as_complex(X)
    check = is_2manifold(G)
    return (
        check.is_manifold
        and not check.boundary
        and nx.is_connected(G.graph())
        and G.euler_characteristic() == 2
    )


def is_3manifold(X) -> bool:
    """Every vertex link is a 2-sphere."""
    G = _as_complex(X)
    if len(G) == 0:
        return False
    return all(is_2sphere(G.link((v,))) for (v,) in G.grade(0))
