"""Builtin complexes: generators, bundled facet files and random clique complexes."""

from __future__ import annotations

import hashlib
import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb
from pathlib import Path

import networkx as nx
import numpy as np

from curvekit.complex import SimplicialComplex, barycentric_refinement, generate_closure, whitney_complex
from curvekit.errors import DataIntegrity, TooManyEdges
from curvekit.io import read_facets
from curvekit.spectral import betti

BUNDLED = ("homology_sphere", "rp3", "cp2")

# Reference constants for the 600-cell. Its facet list is not shipped; load a
# user-supplied file with ``--file`` to use it.
SIX_HUNDRED_CELL = {"f_vector": (120, 720, 1200, 600), "vertex_degree": 12, "edge_degree": 5}

_EXPECTED = {
    "homology_sphere": {"f_vector": (24, 154, 260, 130), "chi": 0},
    "rp3": {"f_vector": (11, 51, 80, 40), "chi": 0, "betti": (1, 0, 0, 1)},
    "cp2": {"f_vector": (9, 36, 84, 90, 36), "chi": 3, "betti": (1, 0, 1, 0, 1)},
}


@dataclass(frozen=True)
class NamedComplex:
    name: str
    source: str
    complex: SimplicialComplex
    expected: dict = field(default_factory=dict)

    def self_check(self) -> NamedComplex:
        G = self.complex
        exp = self.expected
        problems = []
        if "f_vector" in exp and tuple(G.f_vector()) != tuple(exp["f_vector"]):
            problems.append(f"f-vector {tuple(G.f_vector())} != {exp['f_vector']}")
        if "chi" in exp and G.euler_characteristic() != exp["chi"]:
            problems.append(f"chi {G.euler_characteristic()} != {exp['chi']}")
        if "betti" in exp and tuple(betti(G)) != tuple(exp["betti"]):
            problems.append(f"betti {tuple(betti(G))} != {exp['betti']}")
        if problems:
            raise DataIntegrity(f"{self.name}: " + "; ".join(problems))
        return self


def cross_polytope(d: int) -> NamedComplex:
    """Boundary of the d-dimensional cross polytope, vertices 2i and 2i+1 antipodal."""
    if d < 1:
        raise ValueError("d must be at least 1")
    pairs = [(2 * i, 2 * i + 1) for i in range(d)]
    G = generate_closure(itertools.product(*pairs))
    expected = {
        "f_vector": tuple(comb(d, k + 1) * 2 ** (k + 1) for k in range(d)),
        "chi": 1 + (-1) ** (d - 1),
    }
    return NamedComplex(f"cross{d}", "builtin-generator", G, expected).self_check()


def triangle() -> NamedComplex:
    return NamedComplex("triangle", "builtin-generator", generate_closure([[0, 1, 2]]), {"f_vector": (3, 3, 1), "chi": 1})


def icosahedron() -> NamedComplex:
    G = whitney_complex(nx.icosahedral_graph())
    return NamedComplex("icosahedron", "builtin-generator", G, {"f_vector": (12, 30, 20), "chi": 2}).self_check()


def kite() -> NamedComplex:
    """Triangulated disk with 11 vertices, 22 edges and 12 triangles.

    A hexagonal wheel, two caps that make ring vertices interior, and two ears.
    """
    g = nx.cycle_graph(range(1, 7))
    g.add_edges_from((0, i) for i in range(1, 7))
    g.add_edges_from([(7, 1), (7, 2), (7, 3), (8, 4), (8, 5), (8, 6)])
    g.add_edges_from([(9, 1), (9, 7), (10, 4), (10, 8)])
    G = whitney_complex(g)
    return NamedComplex("kite", "builtin-generator", G, {"f_vector": (11, 22, 12), "chi": 1}).self_check()


def refined(named: NamedComplex, times: int = 1) -> NamedComplex:
    G = named.complex
    for _ in range(times):
        G = barycentric_refinement(G)
    chi = named.complex.euler_characteristic()
    return NamedComplex(f"{named.name}_sd{times}", "builtin-generator", G, {"chi": chi}).self_check()


def data_dir() -> Path:
    env = os.environ.get("CURVEKIT_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("curvekit") / "data"))


def _manifest(directory: Path) -> dict[str, str]:
    path = directory / "MANIFEST"
    if not path.exists():
        return {}
    out = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            digest, name = line.split()
            out[name] = digest
    return out


@lru_cache(maxsize=None)
def _bundled(name: str, directory: str) -> NamedComplex:
    d = Path(directory)
    path = d / f"{name}.facets"
    if not path.exists():
        raise DataIntegrity(f"missing data file {path}")
    digest = _manifest(d).get(path.name)
    if digest is not None and hashlib.sha256(path.read_bytes()).hexdigest() != digest:
        raise DataIntegrity(f"checksum mismatch for {path}")
    G = generate_closure(read_facets(path))
    return NamedComplex(name, f"bundled-data({path.name})", G, _EXPECTED.get(name, {})).self_check()


def bundled(name: str) -> NamedComplex:
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled complex {name!r}; choose from {BUNDLED}")
    return _bundled(name, str(data_dir()))


def random_clique_complex(n_vertices: int, n_edges: int, seed: int) -> NamedComplex:
    """Whitney complex of a uniform random graph with the given vertex and edge counts."""
    pairs = list(itertools.combinations(range(n_vertices), 2))
    if n_edges > len(pairs):
        raise TooManyEdges(f"{n_edges} edges requested, only {len(pairs)} possible")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(pairs), size=n_edges, replace=False) if n_edges else []
    g = nx.Graph()
    g.add_nodes_from(range(n_vertices))
    g.add_edges_from(pairs[i] for i in chosen)
    return NamedComplex(f"random({n_vertices},{n_edges},{seed})", "builtin-generator", whitney_complex(g))


_BUILTINS = {
    "triangle": triangle,
    "triangle_sd2": lambda: refined(triangle(), 2),
    "cross2": lambda: cross_polytope(2),
    "cross3": lambda: cross_polytope(3),
    "octahedron": lambda: cross_polytope(3),
    "cross4": lambda: cross_polytope(4),
    "sixteen_cell": lambda: cross_polytope(4),
    "icosahedron": icosahedron,
    "octahedron_sd1": lambda: refined(cross_polytope(3), 1),
    "kite": kite,
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS) + list(BUNDLED)


def get(name: str) -> NamedComplex:
    if name in BUNDLED:
        return bundled(name)
    if name in _BUILTINS:
        return _BUILTINS[name]()
    raise KeyError(f"unknown builtin {name!r}; choose from {builtin_names()}")
