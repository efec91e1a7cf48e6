"""Poincaré-Hopf indices on k-simplices and their Monte Carlo expectation.

A locally injective function g on G_k sends every simplex y of the complex
to the comparable k-simplex where g is largest. The index of a k-simplex x
is the total energy (-1)^dim(y) of the simplices sent to x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from curvekit.complex import Simplex, SimplicialComplex
from curvekit.curvature import form_curvature, require_cover
from curvekit.errors import EmptySample, NotLocallyInjective

CHUNK = 256


@dataclass(frozen=True)
class KFunction:
    k: int
    simplices: tuple[Simplex, ...]
    values: np.ndarray
    provenance: str = "user"

    def as_dict(self) -> dict[Simplex, float]:
        return dict(zip(self.simplices, self.values.tolist()))


@dataclass(frozen=True)
class IndexField:
    k: int
    simplices: tuple[Simplex, ...]
    indices: tuple[int, ...]

    def total(self) -> int:
        return sum(self.indices)

    def as_dict(self) -> dict[Simplex, int]:
        return dict(zip(self.simplices, self.indices))


def _conflict_groups(G: SimplicialComplex, k: int) -> list[list[int]]:
    """Groups of k-simplices (as offsets into G_k) on which g must be injective.

    Two k-simplices meeting in a vertex land in the group of that vertex; two
    k-simplices spanning a common simplex land in the group of that simplex.
    """
    comp = G.comparable(k)
    base = G.grade_offsets[k]
    groups = [[i - base for i in comp[vi]] for vi in G.grade_range(0)]
    groups += [[i - base for i in comp[yi]] for yi in range(G.grade_offsets[k + 1], len(G))]
    return [g for g in groups if len(g) > 1]


def is_locally_injective(G: SimplicialComplex, k: int, values) -> bool:
    values = np.asarray(values)
    if len(np.unique(values)) == len(values):
        return True
    for group in _conflict_groups(G, k):
        vals = values[group]
        if len(np.unique(vals)) != len(vals):
            return False
    return True


def k_function(G: SimplicialComplex, k: int, values, provenance: str = "user") -> KFunction:
    """Wrap values (sequence in G_k order, or mapping simplex -> value)."""
    if isinstance(values, dict):
        lookup = {tuple(sorted(s)): v for s, v in values.items()}
        values = [lookup[x] for x in G.grade(k)]
    arr = np.asarray(values, dtype=object if _is_exact(values) else float)
    if len(arr) != len(G.grade(k)):
        raise ValueError(f"expected {len(G.grade(k))} values, got {len(arr)}")
    return KFunction(k, G.grade(k), arr, provenance)


def _is_exact(values) -> bool:
    return any(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in values)


def random_k_function(G: SimplicialComplex, k: int, seed: int) -> KFunction:
    """IID uniform [0, 1) values on G_k from numpy's PCG64, redrawn until locally injective."""
    n = len(G.grade(k))
    if n == 0:
        raise ValueError(f"G_{k} is empty")
    rng = np.random.default_rng(seed)
    while True:
        vals = rng.random(n)
        if is_locally_injective(G, k, vals):
            return KFunction(k, G.grade(k), vals, f"uniform PCG64 seed={seed}")


def _candidate_table(G: SimplicialComplex, k: int) -> np.ndarray:
    """Comparable k-simplices per simplex, padded with the sentinel f_k."""
    comp = G.comparable(k)
    base = G.grade_offsets[k]
    fk = len(G.grade(k))
    width = max(len(c) for c in comp)
    table = np.full((len(G), width), fk, dtype=np.intp)
    for i, c in enumerate(comp):
        table[i, : len(c)] = [x - base for x in c]
    return table


def _transport(table: np.ndarray, omegas: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Index fields for a batch of functions; ``values`` has shape (batch, f_k).

    Ties go to the first candidate, i.e. the earliest in canonical order.
    """
    batch, fk = values.shape
    padded = np.concatenate([values, np.full((batch, 1), -np.inf)], axis=1)
    cand_vals = padded[:, table]  # (batch, n, width)
    best = table[np.arange(table.shape[0]), np.argmax(cand_vals, axis=2)]  # (batch, n)
    out = np.zeros((batch, fk), dtype=np.int64)
    rows = np.repeat(np.arange(batch), table.shape[0])
    np.add.at(out, (rows, best.ravel()), np.tile(omegas, batch))
    return out


def ph_indices(G: SimplicialComplex, k: int, g: KFunction) -> IndexField:
    """Poincaré-Hopf index field of g on G_k; the indices sum to chi(G)."""
    require_cover(G, k)
    if g.k != k or len(g.values) != len(G.grade(k)):
        raise ValueError("function does not live on G_k")
    if not is_locally_injective(G, k, g.values):
        raise NotLocallyInjective(f"function is not locally injective on G_{k}")
    table = _candidate_table(G, k)
    if g.values.dtype == object:
        # exact values: rank them so comparisons stay exact
        rank = {v: r for r, v in enumerate(sorted(set(g.values.tolist())))}
        vals = np.array([rank[v] for v in g.values.tolist()], dtype=float)
    else:
        vals = g.values.astype(float)
    idx = _transport(table, G.omegas.astype(np.int64), vals[None, :])[0]
    field = IndexField(k, G.grade(k), tuple(int(i) for i in idx))
    if field.total() != G.euler_characteristic():  # pragma: no cover - would be a bug
        raise ArithmeticError("Poincaré-Hopf sum differs from the Euler characteristic")
    return field


@dataclass(frozen=True)
class IndexExpectation:
    k: int
    samples: int
    seed: int
    simplices: tuple[Simplex, ...]
    mean: np.ndarray
    stderr: np.ndarray
    exact: tuple[Fraction, ...] | None = None

    def z_scores(self) -> np.ndarray:
        exact = np.array([float(v) for v in self.exact])
        diff = np.abs(self.mean - exact)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(self.stderr > 0, diff / self.stderr, np.where(diff > 1e-12, np.inf, 0.0))
        return z

    def fraction_within(self, n_se: float) -> float:
        return float(np.mean(self.z_scores() <= n_se))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
            "simplices": [list(s) for s in self.simplices],
            "mean": self.mean.tolist(),
            "stderr": self.stderr.tolist(),
            "exact": None if self.exact is None else [f"{v.numerator}/{v.denominator}" for v in self.exact],
        }


def _sample_values(G: SimplicialComplex, k: int, seed: int, index: int) -> np.ndarray:
    # each sample owns a generator keyed by (seed, index): order-independent
    attempt = 0
    while True:
        rng = np.random.default_rng([seed, index, attempt])
        vals = rng.random(len(G.grade(k)))
        if is_locally_injective(G, k, vals):
            return vals
        attempt += 1


def index_expectation(
    G: SimplicialComplex, k: int, samples: int, seed: int, *, with_exact: bool = True
) -> IndexExpectation:
    """Mean and standard error of the index over ``samples`` IID uniform functions."""
    if samples <= 0:
        raise EmptySample("at least one sample is required")
    require_cover(G, k)
    table = _candidate_table(G, k)
    omegas = G.omegas.astype(np.int64)
    fk = len(G.grade(k))
    s1 = np.zeros(fk)
    s2 = np.zeros(fk)
    for start in range(0, samples, CHUNK):
        stop = min(samples, start + CHUNK)
        vals = np.stack([_sample_values(G, k, seed, i) for i in range(start, stop)])
        idx = _transport(table, omegas, vals).astype(float)
        s1 += idx.sum(axis=0)
        s2 += (idx**2).sum(axis=0)
    mean = s1 / samples
    if samples > 1:
        var = np.maximum(s2 - samples * mean**2, 0.0) / (samples - 1)
        stderr = np.sqrt(var / samples)
    else:
        stderr = np.full(fk, np.inf)
    exact = form_curvature(G, k).values if with_exact else None
    return IndexExpectation(k, samples, seed, G.grade(k), mean, stderr, exact)
