"""Position distributions, marginals, moments and comparison metrics."""

from __future__ import annotations

import itertools
import math
from typing import TYPE_CHECKING, Iterator, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

from ._sparse import sum_rows

if TYPE_CHECKING:
    from .engine import SpinorField

__all__ = [
    "Distribution",
    "distribution",
    "marginal",
    "mean",
    "variance",
    "max_abs_diff",
    "diagonal_variances",
    "SignedPermutation",
    "signed_permutations",
    "find_symmetries",
]

CLAMP = 1e-15


class Distribution:
    """Sparse map from position to probability, rows sorted lexicographically."""

    __slots__ = ("coords", "probs")

    def __init__(self, coords: NDArray[np.int64], probs: NDArray[np.float64]) -> None:
        coords = np.asarray(coords, dtype=np.int64)
        probs = np.asarray(probs, dtype=np.float64)
        if coords.ndim != 2 or probs.shape != (coords.shape[0],):
            raise ValueError("coords must be (N, dim) and probs (N,)")
        coords, probs = sum_rows(coords, probs)
        probs = np.where(probs < CLAMP, 0.0, probs)
        coords.flags.writeable = False
        probs.flags.writeable = False
        self.coords = coords
        self.probs = probs

    @classmethod
    def from_mapping(cls, mapping: Mapping[Sequence[int], float]) -> "Distribution":
        if not mapping:
            raise ValueError("empty distribution")
        keys = [tuple(int(v) for v in k) for k in mapping]
        return cls(np.array(keys, dtype=np.int64), np.array(list(mapping.values()), dtype=float))

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], float]]:
        for pos, p in zip(self.coords, self.probs):
            yield tuple(int(v) for v in pos), float(p)

    def __getitem__(self, position: Sequence[int]) -> float:
        hit = np.flatnonzero(np.all(self.coords == np.asarray(position, dtype=np.int64), axis=1))
        return float(self.probs[hit[0]]) if hit.size else 0.0

    def to_dict(self) -> dict[tuple[int, ...], float]:
        return dict(iter(self))

    def total(self) -> float:
        return float(math.fsum(self.probs))

    def support(self, tol: float = 0.0) -> NDArray[np.int64]:
        return self.coords[self.probs > tol]

    def transformed(self, perm: Sequence[int], signs: Sequence[int]) -> "Distribution":
        """Image under ``p -> (signs[i] * p[perm[i]])_i``."""
        return Distribution(self.coords[:, list(perm)] * np.asarray(signs, dtype=np.int64), self.probs)

    def __repr__(self) -> str:
        return f"Distribution(sites={len(self)}, dim={self.dim}, total={self.total():.15f})"


def distribution(state: "SpinorField") -> Distribution:
    """Per-site squared norm of a two- or four-component field."""
    return Distribution(state.coords, state.probabilities())


def marginal(d: Distribution, axis_index: int) -> Distribution:
    """Keep coordinate ``axis_index`` and sum the probability over the others."""
    if not 0 <= axis_index < d.dim:
        raise ValueError(f"axis index {axis_index} out of range for a {d.dim}D distribution")
    return Distribution(d.coords[:, [axis_index]], d.probs)


def _coordinate(d: Distribution) -> NDArray[np.float64]:
    if d.dim != 1:
        raise ValueError("expected a 1D distribution; take a marginal first")
    return d.coords[:, 0].astype(np.float64)


def mean(d: Distribution) -> float:
    return float(np.dot(d.probs, _coordinate(d)))


def variance(d: Distribution) -> float:
    x = _coordinate(d)
    m = float(np.dot(d.probs, x))
    return float(np.dot(d.probs, x * x)) - m * m


def max_abs_diff(a: Distribution, b: Distribution) -> float:
    """Largest pointwise probability difference over the union of supports."""
    if a.dim != b.dim:
        raise ValueError(f"cannot compare {a.dim}D and {b.dim}D distributions")
    _, diff = sum_rows(np.concatenate([a.coords, b.coords]), np.concatenate([a.probs, -b.probs]))
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def diagonal_variances(d: Distribution) -> tuple[float, float]:
    """
    Variances along the rotated axes ``u = (x+z)/sqrt2`` and ``v = (x-z)/sqrt2``.

    The integer sums ``x+z`` and ``x-z`` are used directly and the factor of
    one half is applied to the result.
    """
    if d.dim != 2:
        raise ValueError("diagonal variances need a 2D (square lattice) distribution")
    x, z = d.coords[:, 0], d.coords[:, 1]
    var_u = variance(Distribution((x + z)[:, None], d.probs)) / 2.0
    var_v = variance(Distribution((x - z)[:, None], d.probs)) / 2.0
    return var_u, var_v


SignedPermutation = tuple[tuple[int, ...], tuple[int, ...]]


def signed_permutations(dim: int, *, include_identity: bool = False) -> list[SignedPermutation]:
    """Every coordinate permutation combined with every sign pattern."""
    out = []
    for perm in itertools.permutations(range(dim)):
        for signs in itertools.product((1, -1), repeat=dim):
            if not include_identity and perm == tuple(range(dim)) and all(s == 1 for s in signs):
                continue
            out.append((perm, signs))
    return out


def describe_map(m: SignedPermutation, names: Sequence[str] | None = None) -> str:
    perm, signs = m
    names = list(names or ("x", "y", "z")[: len(perm)])
    if tuple(perm) == tuple(range(len(perm))):
        if all(s == -1 for s in signs):
            return "inversion"
        if all(s == 1 for s in signs):
            return "identity"
    parts = [("-" if s < 0 else "") + names[p] for p, s in zip(perm, signs)]
    return "(" + ", ".join(names) + ") -> (" + ", ".join(parts) + ")"


def find_symmetries(
    a: Distribution,
    b: Distribution | None = None,
    *,
    tol: float = 1e-10,
    candidates: Sequence[SignedPermutation] | None = None,
) -> list[SignedPermutation]:
    """
    Signed permutations ``g`` with ``a`` mapped by ``g`` equal to ``b`` within ``tol``.

    With ``b`` omitted this is the symmetry group of ``a`` (identity excluded).
    """
    b = a if b is None else b
    if candidates is None:
        candidates = signed_permutations(a.dim)
    return [m for m in candidates if max_abs_diff(a.transformed(*m), b) < tol]
