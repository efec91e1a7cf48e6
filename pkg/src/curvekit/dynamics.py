"""Time-dependent curvatures and deformations of the Dirac operator.

Three evolutions are provided:

* the linear wave cos(Dt), whose diagonal replaces the static energies,
* the isospectral Lax flow, either through a QR factorization of
  exp(-t g(D)) or by integrating the matrix ODE directly,
* the discrete-time Chebyshev recursion u_{m+1} = 2cD u_m - u_{m-1},
  which has finite propagation speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from curvekit.complex import SimplicialComplex
from curvekit.curvature import CurvatureField, redistribute, require_cover
from curvekit.errors import SpectralRadiusExceeded, StepSizeTooLarge
from curvekit.spectral import adjacency_distances, dirac, matrix_function, spectral_norm, super_trace

G_TAGS = ("identity", "log")


def _dirac_float(G_or_D) -> np.ndarray:
    if isinstance(G_or_D, SimplicialComplex):
        return dirac(G_or_D).entries.astype(float)
    return np.asarray(G_or_D, dtype=float)


def default_coupling(D) -> float:
    """c = 1 / (2 ceil(||D||)), so that ||cD|| <= 1/2."""
    return 1.0 / (2 * max(1, math.ceil(spectral_norm(D))))


# -- wave ------------------------------------------------------------------------------------


def wave_operator(G: SimplicialComplex, t: float, kind: str = "cos") -> np.ndarray:
    """cos(Dt) by default; ``kind='exp'`` gives the complex wave exp(iDt)."""
    D = _dirac_float(G)
    if kind == "cos":
        return matrix_function(D, lambda w: np.cos(w * t))
    if kind == "exp":
        return matrix_function(D, lambda w: np.exp(1j * w * t))
    raise ValueError(f"unknown wave kind {kind!r}")


@dataclass(frozen=True)
class WaveDiagonal:
    t: float
    omega_t: np.ndarray

    def total(self):
        return self.omega_t.sum()


def wave_diagonal(G: SimplicialComplex, t: float, kind: str = "cos") -> WaveDiagonal:
    """omega_t(x) = (-1)^dim(x) W(t)[x, x]; sums to chi(G) for every t."""
    W = wave_operator(G, t, kind)
    return WaveDiagonal(t, G.omegas * np.diagonal(W))


def wave_curvature(G: SimplicialComplex, k: int, t: float, kind: str = "cos") -> CurvatureField:
    """K_{k,t}: the form curvature with energies taken from the wave diagonal."""
    require_cover(G, k)
    energy = wave_diagonal(G, t, kind).omega_t
    vals = np.asarray(redistribute(G, k, list(energy)))
    return CurvatureField(k, G.grade(k), tuple(vals.tolist()), f"wave t={t}")


# -- isospectral deformation --------------------------------------------------------------------


@dataclass(frozen=True)
class DeformedOperator:
    t: float
    matrix: np.ndarray
    method: str
    g_tag: str
    c: float | None = None
    c_imag: float = 0.0
    Q: np.ndarray | None = field(default=None, repr=False)

    def eig_drift(self, D0) -> float:
        a = np.sort(np.linalg.eigvalsh(self.matrix))
        b = np.sort(np.linalg.eigvalsh(np.asarray(D0)))
        return float(np.abs(a - b).max()) if len(a) else 0.0

    def asymmetry(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max()) if self.matrix.size else 0.0

    def causality_violation(self, distances: np.ndarray) -> float:
        """Largest |Q[x, y]| over pairs further apart than t (0 when t is not integral)."""
        if self.Q is None:
            raise ValueError("no orthogonal factor recorded")
        mask = distances > self.t
        return float(np.abs(self.Q[mask]).max()) if mask.any() else 0.0


def _check_coupling(D: np.ndarray, c: float) -> None:
    if abs(c) * spectral_norm(D) >= 1:
        raise SpectralRadiusExceeded(f"||cD|| = {abs(c) * spectral_norm(D):.4g} must stay below 1")


def _deformation_seed(D: np.ndarray, t: float, g_tag: str, c: float | None) -> np.ndarray:
    """exp(-t g(D)) for g(x) = x or g(x) = -log(1 + c x)."""
    n = D.shape[0]
    if g_tag == "identity":
        return matrix_function(D, lambda w: np.exp(-t * w))
    if g_tag == "log":
        if float(t).is_integer() and t >= 0:
            # exp(-t g(D)) = (1 + cD)^t is a polynomial in D
            return np.linalg.matrix_power(np.eye(n) + c * D, int(t))
        return matrix_function(D, lambda w: (1 + c * w) ** t)
    raise ValueError(f"unknown g {g_tag!r}; expected one of {G_TAGS}")


def lax_deform_qr(G_or_D, t: float, g_tag: str = "identity", c: float | None = None) -> DeformedOperator:
    """D_t = Q^T D Q where exp(-t g(D)) = QR with R having a positive diagonal."""
    D = _dirac_float(G_or_D)
    if g_tag == "log":
        c = default_coupling(D) if c is None else c
        _check_coupling(D, c)
    M = _deformation_seed(D, t, g_tag, c)
    Q, R = np.linalg.qr(M)
    signs = np.sign(np.diagonal(R))
    signs[signs == 0] = 1
    Q = Q * signs
    return DeformedOperator(t, Q.T @ D @ Q, "qr", g_tag, c, 0.0, Q)


def _generator(X: np.ndarray, g_tag: str, c: float | None, c_imag: float) -> np.ndarray:
    if g_tag == "identity":
        gX = X
    elif g_tag == "log":
        gX = matrix_function(X, lambda w: -np.log(1 + c * w))
    else:
        raise ValueError(f"unknown g {g_tag!r}")
    B = np.triu(gX, 1) - np.tril(gX, -1)
    if c_imag:
        B = B + 1j * c_imag * np.diag(np.diagonal(gX))
    return B


def _rhs(X, g_tag, c, c_imag):
    B = _generator(X, g_tag, c, c_imag)
    # orientation chosen so that the flow agrees with the QR route above
    return X @ B - B @ X


def lax_deform_ode(
    G_or_D,
    t_end: float,
    dt: float = 1e-3,
    g_tag: str = "identity",
    c_imag: float = 0.0,
    c: float | None = None,
    record_every: float | None = None,
    drift_tol: float = 1e-6,
) -> list[DeformedOperator]:
    """Integrate the Lax equation with classical RK4 at fixed step.

    Returns snapshots at t = 0, every ``record_every`` (default: only the
    end) and at ``t_end``. Raises StepSizeTooLarge if the spectrum drifts by
    more than ``drift_tol``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if c_imag < 0:
        raise ValueError("c_imag must be non-negative")
    D = _dirac_float(G_or_D)
    if g_tag == "log":
        c = default_coupling(D) if c is None else c
        _check_coupling(D, c)
    steps = max(1, math.ceil(round(t_end / dt, 9))) if t_end > 0 else 0
    h = t_end / steps if steps else 0.0
    every = steps if record_every is None else max(1, round(record_every / h)) if steps else 1
    X = D.astype(complex) if c_imag else D.copy()
    traj = [DeformedOperator(0.0, X.copy(), "ode", g_tag, c, c_imag)]
    for s in range(1, steps + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            k1 = _rhs(X, g_tag, c, c_imag)
            k2 = _rhs(X + 0.5 * h * k1, g_tag, c, c_imag)
            k3 = _rhs(X + 0.5 * h * k2, g_tag, c, c_imag)
            k4 = _rhs(X + h * k3, g_tag, c, c_imag)
            X = X + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(X)):
            raise StepSizeTooLarge(f"integration diverged at t={s * h:.4g}; reduce dt")
        if s % every == 0 or s == steps:
            traj.append(DeformedOperator(s * h, X.copy(), "ode", g_tag, c, c_imag))
    drift = traj[-1].eig_drift(D)
    if drift > drift_tol:
        raise StepSizeTooLarge(f"spectral drift {drift:.3g} exceeds {drift_tol:.3g}; reduce dt")
    return traj


# -- discrete-time causal evolution -----------------------------------------------------------


@dataclass(frozen=True)
class ChebyshevState:
    c: object
    D: np.ndarray = field(repr=False)
    u_prev: np.ndarray
    u_curr: np.ndarray
    n: int = 1


def _exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def chebyshev_step(state: ChebyshevState) -> ChebyshevState:
    """(u, v) -> (2cD u - v, u)."""
    nxt = 2 * state.c * state.D.dot(state.u_curr) - state.u_prev
    return replace(state, u_prev=state.u_curr, u_curr=nxt, n=state.n + 1)


def chebyshev_evolve(G_or_D, c, u0, u1=None, n: int = 1) -> ChebyshevState:
    """Run the recursion until u_n; with u1 = cD u0 this yields T_n(cD) u0.

    Exact arithmetic is used when c is a Fraction or int and u0 holds
    integers/Fractions.
    """
    if isinstance(G_or_D, SimplicialComplex):
        D = dirac(G_or_D).entries
    else:
        D = np.asarray(G_or_D)
    if abs(float(c)) * spectral_norm(D) >= 1:
        raise SpectralRadiusExceeded("||cD|| must stay below 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    exact = _exact(c) and all(_exact(v) for v in np.asarray(u0, dtype=object).ravel())
    if exact:
        c = Fraction(c)
        D = D.astype(object)
        u0 = np.array([Fraction(v) for v in np.asarray(u0, dtype=object)], dtype=object)
        u1 = D.dot(u0) * c if u1 is None else np.array([Fraction(v) for v in u1], dtype=object)
    else:
        c = float(c)
        D = D.astype(float)
        u0 = np.asarray(u0, dtype=float)
        u1 = c * D @ u0 if u1 is None else np.asarray(u1, dtype=float)
    state = ChebyshevState(c, D, u0, u1, 1)
    while state.n < n:
        state = chebyshev_step(state)
    return state


def chebyshev_matrix(D, c: float, m: int) -> np.ndarray:
    """T_m(cD) by the three-term recursion."""
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    prev, curr = np.eye(n), c * D
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, curr = curr, 2 * c * D @ curr - prev
    return curr


def chebyshev_unitary(D, c: float, t: float) -> np.ndarray:
    """U_t = exp(i t arccos(cD))."""
    D = np.asarray(D, dtype=float)
    return matrix_function(D, lambda w: np.exp(1j * t * np.arccos(np.clip(c * w, -1, 1))))


def support_radius_ok(state: ChebyshevState, distances: np.ndarray, source: int, tol: float = 0.0) -> bool:
    """True when u_curr vanishes (|u| <= tol) outside distance n of ``source``."""
    outside = distances[source] > state.n
    vals = state.u_curr[outside]
    if state.u_curr.dtype == object:
        return all(v == 0 for v in vals)
    return bool(np.all(np.abs(vals) <= tol))


def wave_trajectory(G: SimplicialComplex, k: int, times) -> list[dict]:
    chi = G.euler_characteristic()
    out = []
    for t in times:
        field_ = wave_curvature(G, k, t)
        vals = list(field_.values)
        out.append({"t": t, "sum_K": float(sum(vals)), "chi": chi, "values": vals})
    return out


def deformation_trajectory(
    G: SimplicialComplex,
    times,
    method: str = "qr",
    g_tag: str = "identity",
    c: float | None = None,
    dt: float = 1e-3,
    c_imag: float = 0.0,
) -> list[dict]:
    """One record per time: spectral drift and (for integral t with g=log) causality."""
    D = _dirac_float(G)
    dist = adjacency_distances(D)
    out = []
    for t in times:
        if method == "qr":
            op = lax_deform_qr(D, t, g_tag, c)
            pattern_ok = None
            if g_tag == "log" and float(t).is_integer():
                pattern_ok = op.causality_violation(dist) < 1e-12
        elif method == "ode":
            op = lax_deform_ode(D, t, dt, g_tag, c_imag, c)[-1]
            pattern_ok = None
        else:
            raise ValueError(f"unknown method {method!r}")
        out.append(
            {
                "t": t,
                "eig_drift": op.eig_drift(D),
                "offdiag_pattern_ok": pattern_ok,
                "asymmetry": op.asymmetry(),
            }
        )
    return out


def str_wave(G: SimplicialComplex, t: float) -> float:
    return float(super_trace(wave_operator(G, t), G))
