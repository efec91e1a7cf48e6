from fractions import Fraction

import numpy as np
import pytest

from curvekit import form_curvature, zoo
from curvekit.dynamics import (
    chebyshev_evolve,
    chebyshev_matrix,
    chebyshev_unitary,
    default_coupling,
    lax_deform_ode,
    lax_deform_qr,
    str_wave,
    support_radius_ok,
    wave_curvature,
)
from curvekit.errors import SpectralRadiusExceeded, StepSizeTooLarge
from curvekit.spectral import adjacency_distances, dirac


@pytest.fixture(scope="module")
def D16(sixteen_cell):
    return np.asarray(dirac(sixteen_cell).entries, dtype=float)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_wave_at_zero_is_exact(octahedron, k):
    exact = [float(v) for v in form_curvature(octahedron, k).values]
    assert np.allclose(wave_curvature(octahedron, k, 0.0).values, exact, atol=1e-10)


@pytest.mark.parametrize("t", [0.5, 1.7, 3.0])
def test_wave_sum(octahedron, t):
    for k in range(3):
        assert abs(sum(wave_curvature(octahedron, k, t).values) - 2) < 1e-9


def test_str_wave_constant(octahedron):
    for t in (0.0, 0.3, 2.2):
        assert abs(str_wave(octahedron, t) - 2) < 1e-9


def test_qr_isospectral(D16):
    for t in (0.5, 1.0, 2.0):
        op = lax_deform_qr(D16, t)
        assert op.eig_drift(D16) < 1e-8
        assert op.asymmetry() < 1e-10


def test_qr_matches_ode(octahedron):
    D = np.asarray(dirac(octahedron).entries, dtype=float)
    qr = lax_deform_qr(D, 0.3)
    ode = lax_deform_ode(D, 0.3, dt=1e-3)[-1]
    assert np.abs(qr.matrix - ode.matrix).max() < 1e-8


def test_ode_complex(octahedron):
    D = np.asarray(dirac(octahedron).entries, dtype=float)
    traj = lax_deform_ode(D, 0.5, dt=1e-3, c_imag=0.5, record_every=0.25)
    assert [round(s.t, 6) for s in traj] == [0.0, 0.25, 0.5]
    assert traj[-1].eig_drift(D) < 1e-6


def test_ode_step_too_large(octahedron):
    D = np.asarray(dirac(octahedron).entries, dtype=float)
    with pytest.raises(StepSizeTooLarge):
        lax_deform_ode(D, 3.0, dt=1.0)


def test_log_coupling_bound(D16):
    with pytest.raises(SpectralRadiusExceeded):
        lax_deform_qr(D16, 1, "log", c=1.0)
    c = default_coupling(D16)
    assert c * np.linalg.norm(D16, 2) < 1


def test_seed_is_local(D16):
    # (1 + cD)^t itself has finite support; the QR factor is a separate matter
    dist = adjacency_distances(D16)
    for t in (1, 2, 3):
        M = np.linalg.matrix_power(np.eye(len(D16)) + 0.05 * D16, t)
        assert np.abs(M[dist > t]).max(initial=0) == 0


def test_chebyshev_exact_support(sixteen_cell, D16):
    dist = adjacency_distances(D16)
    c = Fraction(1, 2 * int(np.ceil(np.linalg.norm(D16, 2))))
    for src in (0, 10, 40):
        u0 = [0] * len(D16)
        u0[src] = 1
        for n in range(1, 6):
            st = chebyshev_evolve(sixteen_cell, c, u0, n=n)
            assert isinstance(st.u_curr[0], Fraction)
            assert support_radius_ok(st, dist, src)


def test_chebyshev_polynomial_identity(D16):
    c = 0.1
    w, V = np.linalg.eigh(D16)
    for m in range(5):
        ref = V @ np.diag(np.cos(m * np.arccos(c * w))) @ V.T
        assert np.allclose(chebyshev_matrix(D16, c, m), ref, atol=1e-12)
    U = chebyshev_unitary(D16, c, 3)
    assert np.allclose(U.real, chebyshev_matrix(D16, c, 3), atol=1e-12)


def test_chebyshev_radius(sixteen_cell):
    with pytest.raises(SpectralRadiusExceeded):
        chebyshev_evolve(sixteen_cell, 1.0, [1] + [0] * (len(sixteen_cell) - 1), n=2)


@pytest.mark.parametrize("name", ["octahedron", "kite"])
def test_unitary_super_trace_phase(name):
    # str(U_t) keeps modulus |chi| while its phase rotates as exp(i pi t / 2)
    from curvekit.spectral import super_trace

    G = zoo.get(name).complex
    D = np.asarray(dirac(G).entries, dtype=float)
    c = default_coupling(D)
    for t in (0.5, 1.0, 2.0, 3.0):
        s = super_trace(chebyshev_unitary(D, c, t), G)
        assert abs(s - np.exp(1j * np.pi * t / 2) * G.euler_characteristic()) < 1e-10
