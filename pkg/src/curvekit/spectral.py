"""Dirac and Hodge operators, exact Betti numbers and super traces.

The incidence, Dirac and Hodge matrices have small integer entries and are
kept as int64 arrays, which makes them exact. Ranks are computed by Gaussian
elimination over :class:`fractions.Fraction`. Functions of operators (heat,
wave, logarithms) go through a symmetric eigendecomposition in float64.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from curvekit.complex import Simplex, SimplicialComplex

EIGEN_CLUSTER_TOL = 1e-10


@dataclass(frozen=True)
class GradedMatrix:
    """Square operator on the simplex basis of a complex, in canonical order."""

    entries: np.ndarray
    grade_offsets: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def block(self, k: int, j: int | None = None) -> np.ndarray:
        j = k if j is None else j
        o = self.grade_offsets
        return self.entries[o[k] : o[k + 1], o[j] : o[j + 1]]

    def __matmul__(self, other: GradedMatrix) -> GradedMatrix:
        return GradedMatrix(self.entries @ other.entries, self.grade_offsets)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True)
class BettiVector:
    betti: tuple[int, ...]

    @property
    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def __iter__(self):
        return iter(self.betti)

    def __getitem__(self, k):
        return self.betti[k]

    def __len__(self) -> int:
        return len(self.betti)

    def __eq__(self, other):
        if isinstance(other, BettiVector):
            return self.betti == other.betti
        return tuple(self.betti) == tuple(other)

    def __hash__(self):
        return hash(self.betti)


def incidence_sign(x: Simplex, y: Simplex) -> int:
    """Orientation sign of y as a codimension-one face of x, else 0.

    The sign is (-1)^i where i is the position in x of the vertex missing from y.
    """
    if len(x) != len(y) + 1:
        return 0
    ys = set(y)
    if not ys.issubset(x):
        return 0
    for i, v in enumerate(x):
        if v not in ys:
            return -1 if i % 2 else 1
    return 0  # pragma: no cover


def exterior_derivative(G: SimplicialComplex) -> GradedMatrix:
    """Matrix d with d[i, j] = incidence_sign(simplex_i, simplex_j)."""
    n = len(G)
    d = np.zeros((n, n), dtype=np.int64)
    for xi, x in enumerate(G.simplices):
        if len(x) < 2:
            continue
        for i in range(len(x)):
            d[xi, G.index[x[:i] + x[i + 1 :]]] = -1 if i % 2 else 1
    return GradedMatrix(d, G.grade_offsets)


def dirac(G: SimplicialComplex) -> GradedMatrix:
    d = exterior_derivative(G).entries
    return GradedMatrix(d + d.T, G.grade_offsets)


def hodge(G: SimplicialComplex) -> GradedMatrix:
    D = dirac(G).entries
    return GradedMatrix(D @ D, G.grade_offsets)


def hodge_blocks(G: SimplicialComplex) -> list[GradedMatrix]:
    """Diagonal blocks L_0..L_q of D^2."""
    L = hodge(G)
    blocks = []
    for k in range(G.dim + 1):
        size = G.grade_offsets[k + 1] - G.grade_offsets[k]
        blocks.append(GradedMatrix(L.block(k).copy(), (0, size)))
    return blocks


def exact_rank(matrix) -> int:
    """Rank over the rationals by sparse fraction-exact Gaussian elimination."""
    rows = []
    for row in np.asarray(matrix, dtype=object):
        r = {j: Fraction(v) for j, v in enumerate(row) if v != 0}
        if r:
            rows.append(r)
    rank = 0
    while rows:
        # pivot on the shortest row to limit fill-in
        rows.sort(key=len)
        pivot = rows.pop(0)
        col = min(pivot)
        pv = pivot[col]
        rank += 1
        remaining = []
        for r in rows:
            f = r.get(col)
            if f is not None:
                f = f / pv
                for j, v in pivot.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                remaining.append(r)
        rows = remaining
    return rank


def betti(G: SimplicialComplex) -> BettiVector:
    """b_k = nullity of the k-th Hodge block, computed exactly."""
    return BettiVector(
        tuple(blk.n - exact_rank(blk.entries) for blk in hodge_blocks(G))
    )


def super_trace(A, G: SimplicialComplex | GradedMatrix | None = None):
    """Sum of diagonal entries weighted by (-1)^dim of the basis simplex.

    Grades come from ``A.grade_offsets`` when ``A`` is a GradedMatrix,
    otherwise from ``G``.
    """
    if isinstance(A, GradedMatrix):
        offsets, entries = A.grade_offsets, A.entries
    else:
        entries = np.asarray(A)
        offsets = G.grade_offsets
    diag = np.diagonal(entries)
    total = 0
    for k in range(len(offsets) - 1):
        s = diag[offsets[k] : offsets[k + 1]].sum()
        total = total + s if k % 2 == 0 else total - s
    return total.item() if hasattr(total, "item") else total


def hodge_power_super_traces(G: SimplicialComplex, max_power: int = 4) -> list[int]:
    """Exact str(L^m) for m = 1..max_power, block by block in integer arithmetic."""
    blocks = [b.entries for b in hodge_blocks(G)]
    bound = max((int(np.abs(b).sum(axis=1).max()) for b in blocks if b.size), default=0)
    # entries of L^m are bounded by (max row sum)^m
    dtype = np.int64 if bound**max_power < 2**62 else object
    blocks = [b.astype(dtype) for b in blocks]
    powers = [b.copy() for b in blocks]
    out = []
    for m in range(1, max_power + 1):
        if m > 1:
            powers = [p.dot(b) for p, b in zip(powers, blocks)]
        total = 0
        for k, p in enumerate(powers):
            tr = int(np.trace(p)) if p.size else 0
            total += tr if k % 2 == 0 else -tr
        out.append(total)
    return out


# -- functional calculus -----------------------------------------------------------------


def eigh(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition with near-equal eigenvalues snapped together."""
    A = np.asarray(A)
    w, V = np.linalg.eigh(A if np.iscomplexobj(A) else A.astype(float))
    if len(w) > 1:
        w = w.copy()
        start = 0
        for i in range(1, len(w) + 1):
            if i == len(w) or w[i] - w[i - 1] > EIGEN_CLUSTER_TOL:
                w[start:i] = w[start:i].mean()
                start = i
    return w, V


def matrix_function(A, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """f(A) for a Hermitian matrix A; f acts elementwise on eigenvalues."""
    w, V = eigh(A)
    fw = f(w)
    return (V * fw) @ V.conj().T


def heat_kernel(G: SimplicialComplex, t: float) -> np.ndarray:
    return matrix_function(hodge(G).entries, lambda w: np.exp(-t * w))


def spectral_norm(A) -> float:
    w = np.linalg.eigvalsh(np.asarray(A, dtype=float))
    return float(np.abs(w).max()) if len(w) else 0.0


def adjacency_distances(D) -> np.ndarray:
    """All-pairs hop distance through nonzero off-diagonal entries of |D|.

    Unreachable pairs get ``n`` (larger than any finite distance).
    """
    A = np.asarray(D) != 0
    n = A.shape[0]
    np.fill_diagonal(A, False)
    dist = np.full((n, n), n, dtype=int)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    np.fill_diagonal(dist, 0)
    step = 0
    while frontier.any():
        step += 1
        nxt = (frontier.astype(np.int64) @ A.astype(np.int64)) > 0
        nxt &= ~reached
        dist[nxt] = step
        reached |= nxt
        frontier = nxt
    return dist


def write_matrix_csv(M: GradedMatrix, path, name: str = "dirac") -> None:
    """Dense CSV dump with a one-line ``# <name> n=<n> grades=<offsets>`` header."""
    offsets = ",".join(str(o) for o in M.grade_offsets)
    header = f"{name} n={M.n} grades={offsets}"
    fmt = "%d" if np.issubdtype(M.entries.dtype, np.integer) else "%.17g"
    np.savetxt(path, M.entries, fmt=fmt, delimiter=",", header=header, comments="# ")


def read_matrix_csv(path) -> tuple[str, GradedMatrix]:
    with open(path) as fh:
        header = fh.readline()
    parts = header.lstrip("#").split()
    name = parts[0]
    fields = dict(p.split("=", 1) for p in parts[1:])
    offsets = tuple(int(o) for o in fields["grades"].split(","))
    data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if np.all(data == np.round(data)):
        data = data.astype(np.int64)
    return name, GradedMatrix(data, offsets)
