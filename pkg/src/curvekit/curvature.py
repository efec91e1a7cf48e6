"""Curvatures supported on k-simplices.

Every simplex y carries the energy (-1)^dim(y). The k-form curvature hands
that energy out to the k-simplices comparable with y: evenly over the
k-simplices containing y when dim(y) <= k, and evenly over the k-faces of y
otherwise. Summing the shares over G_k gives back the Euler characteristic.
All arithmetic here is exact.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import networkx as nx
import numpy as np

from curvekit.complex import Simplex, SimplicialComplex, cover_status, omega, whitney_complex
from curvekit.errors import CoverViolation, GaussBonnetViolation, NotA2Manifold, NotA3Manifold
from curvekit.graphs import is_2manifold, is_3manifold


@dataclass(frozen=True)
class CurvatureField:
    k: int
    simplices: tuple[Simplex, ...]
    values: tuple
    formula_tag: str
    boundary: frozenset[Simplex] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x) -> Fraction:
        return self.as_dict()[tuple(sorted(x))]

    def as_dict(self) -> dict[Simplex, Fraction]:
        return dict(zip(self.simplices, self.values))

    def total(self):
        return sum(self.values, Fraction(0))

    def value_set(self) -> set:
        return set(self.values)


def require_cover(G: SimplicialComplex, k: int) -> None:
    status = cover_status(G, k)
    if not status.strong:
        raise CoverViolation(k, status.witnesses)


def transport_divisors(G: SimplicialComplex, k: int) -> list[int]:
    """Number of k-simplices each simplex spreads its energy over."""
    out = []
    for i, y in enumerate(G.simplices):
        j = len(y) - 1
        out.append(int(G.degrees[i, k]) if j <= k else comb(j + 1, k + 1))
    return out


def redistribute(G: SimplicialComplex, k: int, energy: Sequence) -> list:
    """Move per-simplex energies onto G_k along comparability.

    ``energy`` is indexed in canonical order; the result is indexed like
    ``G.grade(k)``. Works for Fractions and floats alike.
    """
    comp = G.comparable(k)
    div = transport_divisors(G, k)
    base = G.grade_offsets[k]
    out = [0] * len(G.grade(k))
    for i, targets in enumerate(comp):
        e = energy[i]
        if not e:
            continue
        share = e / div[i] if not isinstance(e, int) else Fraction(e, div[i])
        for xi in targets:
            out[xi - base] += share
    return out


def _check_gauss_bonnet(field_: CurvatureField, chi: int) -> CurvatureField:
    total = field_.total()
    if total != chi:
        raise GaussBonnetViolation(
            f"sum of K_{field_.k} ({field_.formula_tag}) is {total}, expected chi={chi}"
        )
    return field_


def form_curvature(G: SimplicialComplex, k: int) -> CurvatureField:
    """Exact k-form curvature K_k on G_k; raises CoverViolation without strong cover."""
    require_cover(G, k)
    energy = [omega(y) for y in G.simplices]
    values = [Fraction(v) for v in redistribute(G, k, energy)]
    return _check_gauss_bonnet(
        CurvatureField(k, G.grade(k), tuple(values), "form"), G.euler_characteristic()
    )


def levitt_curvature(G: SimplicialComplex) -> CurvatureField:
    """K(v) = sum over simplices x containing v of omega(x)/|x|."""
    acc: dict[int, Fraction] = {v: Fraction(0) for (v,) in G.grade(0)}
    for x in G.simplices:
        share = Fraction(omega(x), len(x))
        for v in x:
            acc[v] += share
    vals = tuple(acc[v] for (v,) in G.grade(0))
    return _check_gauss_bonnet(CurvatureField(0, G.grade(0), vals, "levitt"), G.euler_characteristic())


def facet_curvature(G: SimplicialComplex) -> CurvatureField:
    """Top-dimensional curvature: sum over faces y of x of omega(y)/d_q(y)."""
    q = G.dim
    require_cover(G, q)
    vals = []
    for x in G.grade(q):
        s = Fraction(0)
        for r in range(1, len(x) + 1):
            for y in combinations(x, r):
                s += Fraction(omega(y), int(G.degrees[G.index[y], q]))
        vals.append(s)
    return _check_gauss_bonnet(CurvatureField(q, G.grade(q), tuple(vals), "facet"), G.euler_characteristic())


# -- closed forms on 3-manifolds ------------------------------------------------------------


class _LinkCounts:
    """Cached f-vectors of links, f_j(link(x)) = number of (dim x + j + 1)-simplices on x."""

    def __init__(self, G: SimplicialComplex):
        self.G = G
        self._cache: dict[Simplex, tuple[int, ...]] = {}

    def __call__(self, x: Simplex, j: int) -> int:
        if x not in self._cache:
            self._cache[x] = tuple(self.G.link(x).f_vector())
        f = self._cache[x]
        return f[j] if j < len(f) else 0


def _require_3manifold(G: SimplicialComplex) -> _LinkCounts:
    if G.dim != 3 or not is_3manifold(G):
        raise NotA3Manifold("every vertex link must be a 2-sphere")
    return _LinkCounts(G)


def edge_curvature_3manifold(G: SimplicialComplex) -> CurvatureField:
    """K_1(a,b) = 1/d(a) + 1/d(b) + d(a,b)/6 - 1 with d(a,b) the edge degree."""
    link = _require_3manifold(G)
    vals = []
    for a, b in G.grade(1):
        vals.append(
            Fraction(1, link((a,), 0)) + Fraction(1, link((b,), 0)) + Fraction(link((a, b), 0), 6) - 1
        )
    return _check_gauss_bonnet(CurvatureField(1, G.grade(1), tuple(vals), "edge-3manifold"), G.euler_characteristic())


def face_curvature_3manifold(G: SimplicialComplex) -> CurvatureField:
    link = _require_3manifold(G)
    vals = []
    for a, b, c in G.grade(2):
        # d_2(v): triangles at v = edges of the link of v
        s = sum(Fraction(1, link((v,), 1)) for v in (a, b, c))
        s -= sum(Fraction(1, link(e, 0)) for e in ((a, b), (b, c), (a, c)))
        vals.append(s + Fraction(1, 2))
    return _check_gauss_bonnet(CurvatureField(2, G.grade(2), tuple(vals), "face-3manifold"), G.euler_characteristic())


def chamber_curvature_3manifold(G: SimplicialComplex) -> CurvatureField:
    link = _require_3manifold(G)
    vals = []
    for x in G.grade(3):
        s = sum(Fraction(1, link((v,), 2)) for v in x)
        s -= sum(Fraction(1, link(e, 0)) for e in combinations(x, 2))
        vals.append(s + 1)
    return _check_gauss_bonnet(CurvatureField(3, G.grade(3), tuple(vals), "chamber-3manifold"), G.euler_characteristic())


# -- closed forms on 2-manifolds ------------------------------------------------------------


def _as_complex(X) -> SimplicialComplex:
    return X if isinstance(X, SimplicialComplex) else whitney_complex(X)


def two_manifold_curvatures(X, k: int) -> CurvatureField:
    """Closed-form curvature on a 2-manifold, with or without boundary.

    Interior rows: 1 - d/6, 1/d(a) + 1/d(b) - 1/3, sum 1/d - 1/2.
    Boundary rows: 2/3 - d/6 for vertices and 1/d(a) + 1/d(b) - 2/3 for rim
    edges. Faces use the triangle degrees t(v), t(e), which coincide with
    d(v) and 2 away from the boundary: sum 1/t(v) - sum 1/t(e) + 1.
    ``boundary`` lists the simplices classified as boundary.
    """
    G = _as_complex(X)
    check = is_2manifold(G)
    if not check or G.dim != 2:
        raise NotA2Manifold("links must be cycles (interior) or paths (boundary)")
    d = {v: int(G.degrees[G.index[(v,)], 1]) for (v,) in G.grade(0)}
    tri = {x: int(G.degrees[i, 2]) for i, x in enumerate(G.simplices) if len(x) <= 2}
    boundary: set[Simplex] = set()
    vals = []
    if k == 0:
        for (v,) in G.grade(0):
            if v in check.boundary:
                boundary.add((v,))
                vals.append(Fraction(2, 3) - Fraction(d[v], 6))
            else:
                vals.append(1 - Fraction(d[v], 6))
    elif k == 1:
        for e in G.grade(1):
            a, b = e
            if tri[e] == 1:
                boundary.add(e)
                vals.append(Fraction(1, d[a]) + Fraction(1, d[b]) - Fraction(2, 3))
            else:
                vals.append(Fraction(1, d[a]) + Fraction(1, d[b]) - Fraction(1, 3))
    elif k == 2:
        for f in G.grade(2):
            a, b, c = f
            edges = ((a, b), (b, c), (a, c))
            if any(tri[e] == 1 for e in edges) or any(v in check.boundary for v in f):
                boundary.add(f)
            s = sum(Fraction(1, tri[(v,)]) for v in f) - sum(Fraction(1, tri[e]) for e in edges)
            vals.append(s + 1)
    else:
        raise ValueError("k must be 0, 1 or 2 on a 2-manifold")
    return _check_gauss_bonnet(
        CurvatureField(k, G.grade(k), tuple(vals), "2manifold-table", frozenset(boundary)),
        G.euler_characteristic(),
    )


def _graph_of(X) -> nx.Graph:
    return X.graph() if isinstance(X, SimplicialComplex) else X


def puiseux_vertex_curvature(X) -> CurvatureField:
    """K(v) = 1 - d(v)/6 + (-1 + sum over neighbours w of 1/d(w)) / 2.

    Defined on closed 2-manifolds. Also verifies that the neighbour sum
    sum_v sum_{w ~ v} 1/d(w) equals the number of vertices.
    """
    G = _as_complex(X)
    check = is_2manifold(G)
    if not check or check.boundary or G.dim != 2:
        raise NotA2Manifold("a 2-manifold without boundary is required")
    g = G.graph()
    d = dict(g.degree())
    vals = []
    for (v,) in G.grade(0):
        nb = sum((Fraction(1, d[w]) for w in g.neighbors(v)), Fraction(0))
        vals.append(1 - Fraction(d[v], 6) + (nb - 1) / 2)
    if neighbour_inverse_degree_sum(g) != g.number_of_nodes():
        raise GaussBonnetViolation("sum of 1/d(w) over neighbours differs from |V|")
    return _check_gauss_bonnet(CurvatureField(0, G.grade(0), tuple(vals), "puiseux"), G.euler_characteristic())


def neighbour_inverse_degree_sum(graph) -> Fraction:
    g = _graph_of(graph)
    d = dict(g.degree())
    return sum((Fraction(1, d[w]) for v in g for w in g.neighbors(v)), Fraction(0))


def handshake_sum(graph) -> int:
    """Sum over vertices of |S(v)|; equals twice the edge count."""
    g = _graph_of(graph)
    return sum(len(list(g.neighbors(v))) for v in g)


# -- simplex generating function ------------------------------------------------------------


@dataclass(frozen=True)
class GeneratingPolynomial:
    """f(t) = 1 + f_0 t + f_1 t^2 + ...: coefficient of t^m counts (m-1)-simplices.

    The constant 1 stands for the empty simplex, which makes
    chi = 1 - f(-1) hold.
    """

    coefficients: tuple[int, ...]

    @classmethod
    def of(cls, G: SimplicialComplex) -> GeneratingPolynomial:
        return cls((1, *G.f_vector().counts))

    def __call__(self, t):
        return sum(c * t**m for m, c in enumerate(self.coefficients))

    def derivative(self) -> GeneratingPolynomial:
        return GeneratingPolynomial(tuple(m * c for m, c in enumerate(self.coefficients))[1:])

    def __add__(self, other: GeneratingPolynomial) -> GeneratingPolynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return GeneratingPolynomial(tuple(x + y for x, y in zip(a, b)))

    def trimmed(self) -> tuple[int, ...]:
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)


@dataclass(frozen=True)
class GeneratingIdentityReport:
    holds: bool
    derivative: tuple[int, ...]
    link_sum: tuple[int, ...]
    diff: dict[int, int]
    euler_ok: bool

    def __bool__(self) -> bool:
        return self.holds and self.euler_ok


def generating_identity_check(G: SimplicialComplex) -> GeneratingIdentityReport:
    """Compare f_G'(t) with the sum over vertices of the link polynomials."""
    fG = GeneratingPolynomial.of(G)
    lhs = fG.derivative()
    rhs = GeneratingPolynomial(())
    for (v,) in G.grade(0):
        rhs = rhs + GeneratingPolynomial.of(G.link((v,)))
    a, b = lhs.trimmed(), rhs.trimmed()
    n = max(len(a), len(b))
    a += (0,) * (n - len(a))
    b += (0,) * (n - len(b))
    diff = {m: x - y for m, (x, y) in enumerate(zip(a, b)) if x != y}
    euler_ok = 1 - fG(-1) == G.euler_characteristic()
    return GeneratingIdentityReport(not diff, a, b, diff, euler_ok)


def curvature_float_array(field_: CurvatureField) -> np.ndarray:
    return np.array([float(v) for v in field_.values])
