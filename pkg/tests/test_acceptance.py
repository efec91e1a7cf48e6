"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed at the end."""

from fractions import Fraction as F

import networkx as nx
import numpy as np
import pytest

from curvekit import cover_status, form_curvature, whitney_complex, zoo
from curvekit.curvature import generating_identity_check, neighbour_inverse_degree_sum, puiseux_vertex_curvature
from curvekit.dynamics import chebyshev_evolve, lax_deform_ode, lax_deform_qr, support_radius_ok, wave_curvature
from curvekit.errors import CoverViolation
from curvekit.morse import index_expectation, ph_indices, random_k_function
from curvekit.spectral import adjacency_distances, betti, dirac, heat_kernel, hodge_power_super_traces, super_trace

pytestmark = pytest.mark.acceptance

WAVE_TIMES = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


def values(G, k):
    return form_curvature(G, k).value_set()


def test_c01_homology_sphere(bundled_complexes, criterion):
    """1 homology sphere exact curvature value sets"""
    G = bundled_complexes["homology_sphere"]
    assert values(G, 0) == {0}
    assert values(G, 1) == {F(-67, 462), F(-5, 132), 0, F(5, 84), F(13, 22)}
    assert values(G, 2) == {F(-1, 30), F(-1, 60), F(-1, 90), 0, F(1, 18)}
    assert values(G, 3) == {F(-1, 40), F(-1, 90), 0, F(7, 180)}
    assert G.f_vector().counts == (24, 154, 260, 130)


def test_c02_rp3(bundled_complexes, criterion):
    """2 RP3 exact curvature value sets, chi and Betti"""
    G = bundled_complexes["rp3"]
    assert values(G, 0) == {0}
    assert values(G, 1) == {F(-2, 15), F(-1, 9), F(-1, 15), F(1, 30), F(2, 45)}
    assert values(G, 2) == {F(-1, 30), F(-2, 105), F(-11, 840), F(1, 40), F(13, 420)}
    assert values(G, 3) == {F(-3, 80), F(-9, 280), F(1, 56), F(33, 560)}
    assert G.euler_characteristic() == 0
    assert tuple(betti(G)) == (1, 0, 0, 1)


def test_c03_cp2(bundled_complexes, criterion):
    """3 CP2 exact curvature constants, chi and Betti"""
    G = bundled_complexes["cp2"]
    assert values(G, 0) == {F(1, 3)}
    assert values(G, 1) == {F(1, 12)}
    assert values(G, 2) == {F(-31, 140), F(-1, 14), F(11, 140), F(8, 35)}
    assert values(G, 3) == {0, F(1, 20), F(1, 30)}
    assert values(G, 4) == {F(1, 30), F(1, 10)}
    assert G.euler_characteristic() == 3
    assert tuple(betti(G)) == (1, 0, 1, 0, 1)


def test_c04_sixteen_cell(sixteen_cell, criterion):
    """4 16-cell has zero curvature in every degree"""
    for k in range(4):
        assert values(sixteen_cell, k) == {0}
    # the per-simplex contributions behind the zeros
    assert F(1, 6) + F(1, 6) + F(4, 6) - 1 == 0
    assert F(3, 12) - F(3, 4) + F(1, 2) == 0
    assert F(4, 8) - F(6, 4) + 1 == 0


def test_c05_gauss_bonnet_random(criterion):
    """5 Gauss-Bonnet on 25 random clique complexes"""
    rng = np.random.default_rng(2024)
    checked = raised = 0
    for i in range(25):
        n = int(rng.integers(4, 21))
        m = int(rng.integers(1, min(60, n * (n - 1) // 2) + 1))
        G = whitney_complex(nx.gnm_random_graph(n, m, seed=i))
        for k in range(G.dim + 1):
            if cover_status(G, k).strong:
                assert form_curvature(G, k).total() == G.euler_characteristic()
                checked += 1
            else:
                with pytest.raises(CoverViolation):
                    form_curvature(G, k)
                raised += 1
    criterion["msg"] = f"({checked} sums exact, {raised} cover violations raised)"


def test_c06_poincare_hopf(bundled_complexes, criterion):
    """6 Poincare-Hopf sums on bundled complexes, 50 functions per degree"""
    for G in bundled_complexes.values():
        chi = G.euler_characteristic()
        for k in range(G.dim + 1):
            for seed in range(50):
                assert ph_indices(G, k, random_k_function(G, k, seed)).total() == chi


def test_c07_index_expectation(sixteen_cell, octahedron, criterion):
    """7 index expectation within 5 SE for at least 99% of simplices"""
    worst = 1.0
    for G, ks in ((sixteen_cell, range(4)), (octahedron, range(3))):
        for k in ks:
            frac = index_expectation(G, k, 2000, seed=12345).fraction_within(5.0)
            worst = min(worst, frac)
    criterion["msg"] = f"(worst fraction {worst:.4f})"
    assert worst >= 0.99


def test_c08_wave_gauss_bonnet(sixteen_cell, criterion):
    """8 time-dependent Gauss-Bonnet and t=0 agreement"""
    worst_sum = worst_zero = 0.0
    for G in (zoo.get("triangle_sd2").complex, sixteen_cell):
        chi = G.euler_characteristic()
        for k in range(G.dim + 1):
            if not cover_status(G, k).strong:
                continue
            for t in WAVE_TIMES:
                worst_sum = max(worst_sum, abs(sum(wave_curvature(G, k, t).values) - chi))
            exact = np.array([float(v) for v in form_curvature(G, k).values])
            worst_zero = max(worst_zero, np.abs(np.array(wave_curvature(G, k, 0.0).values) - exact).max())
    criterion["msg"] = f"(max |sum-chi| {worst_sum:.1e}, max t=0 error {worst_zero:.1e})"
    assert worst_sum < 1e-9
    assert worst_zero < 1e-10


def test_c09_mckean_singer(bundled_complexes, criterion):
    """9 McKean-Singer super traces"""
    for G in bundled_complexes.values():
        chi = G.euler_characteristic()
        assert hodge_power_super_traces(G, 4) == [0, 0, 0, 0]
        for t in (0.1, 1.0, 10.0):
            assert abs(super_trace(heat_kernel(G, t), G) - chi) < 1e-9
        assert abs(super_trace(heat_kernel(G, 50.0), G) - betti(G).euler) < 1e-6


def test_c10a_qr_isospectral(sixteen_cell, bundled_complexes, criterion):
    """10a QR deformation eigenvalue drift below 1e-8"""
    worst = 0.0
    for G in (sixteen_cell, bundled_complexes["rp3"]):
        D = np.asarray(dirac(G).entries, dtype=float)
        assert len(D) <= 200
        for t in (0.5, 1.0, 2.0):
            for g in ("identity", "log"):
                worst = max(worst, lax_deform_qr(D, t, g).eig_drift(D))
    criterion["msg"] = f"(max drift {worst:.1e})"
    assert worst < 1e-8


def test_c10b_qr_causality(sixteen_cell, criterion):
    """10b causal log deformation keeps Q_t supported within distance t"""
    D = np.asarray(dirac(sixteen_cell).entries, dtype=float)
    dist = adjacency_distances(D)
    worst = max(lax_deform_qr(D, t, "log").causality_violation(dist) for t in (1, 2, 3))
    criterion["msg"] = f"(max |Q| beyond distance t: {worst:.2e})"
    assert worst < 1e-12


def test_c10c_ode_complex(octahedron, criterion):
    """10c complex ODE Lax flow preserves the spectrum"""
    D = np.asarray(dirac(octahedron).entries, dtype=float)
    assert len(D) <= 50
    traj = lax_deform_ode(D, 0.5, dt=1e-3, c_imag=0.5, record_every=0.1)
    worst = max(op.eig_drift(D) for op in traj)
    criterion["msg"] = f"(max drift {worst:.1e})"
    assert worst < 1e-6


def test_c11_chebyshev_causality(sixteen_cell, criterion):
    """11 Chebyshev evolution support bounded by BFS distance"""
    D = np.asarray(dirac(sixteen_cell).entries)
    dist = adjacency_distances(D)
    c = F(1, 2 * int(np.ceil(np.linalg.norm(D.astype(float), 2))))
    for src in range(len(D)):
        u0 = [0] * len(D)
        u0[src] = 1
        for n in range(1, 6):
            assert support_radius_ok(chebyshev_evolve(sixteen_cell, c, u0, n=n), dist, src)


def test_c12_puiseux(criterion):
    """12 neighbour inverse-degree identity and vertex curvature sum"""
    for name in ("octahedron", "icosahedron", "octahedron_sd1"):
        G = zoo.get(name).complex
        g = G.graph()
        assert neighbour_inverse_degree_sum(g) == g.number_of_nodes()
        assert puiseux_vertex_curvature(G).total() == G.euler_characteristic()


def test_c13_generating_identity(bundled_complexes, criterion):
    """13 generating-function derivative equals the sum of link polynomials"""
    for G in bundled_complexes.values():
        assert generating_identity_check(G)
    for i in range(20):
        G = whitney_complex(nx.gnm_random_graph(12, 30, seed=100 + i))
        assert generating_identity_check(G)
