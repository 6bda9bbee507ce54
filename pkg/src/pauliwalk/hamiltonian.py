"""
Momentum-space walk matrices, their eigen-decomposition and effective Hamiltonians.

A plane wave ``sum_p exp(-i k.p) |p>`` is an eigenstate of every shift, and
the ``+`` eigenstate of an axis then picks up ``exp(-i k_axis)`` where
``k_axis = -k . D_plus``. For the line and the Z axis this is the usual
``exp(-i P)`` translation convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

from .lattice import LatticeKind, LatticeSpec, lattice_spec
from .spinor import PauliAxis, coin_operator, pauli_eigenbasis, pauli_matrix, projector

__all__ = [
    "DEGENERACY_TOL",
    "DegenerateMomentumError",
    "EigenSystem",
    "wrap_momentum",
    "degeneracy_gap",
    "walk_momentum_matrix",
    "eigensystem",
    "hamiltonian_matrix",
    "theta0_hamiltonian",
    "unitary_from_hamiltonian",
    "axis_momentum",
    "lattice_walk_matrix",
    "CommutatorReport",
    "triangular_commutator_report",
]

DEGENERACY_TOL = 1e-9

Matrix2 = NDArray[np.complex128]


class DegenerateMomentumError(ValueError):
    """``cos^2(theta) cos^2(k)`` is too close to one for the closed forms."""


def wrap_momentum(k: float) -> float:
    """Map ``k`` into the principal zone ``[-pi, pi)``."""
    return (k + math.pi) % (2.0 * math.pi) - math.pi


def degeneracy_gap(theta: float, k: float) -> float:
    return abs(math.cos(theta) ** 2 * math.cos(k) ** 2 - 1.0)


def _check_gap(theta: float, k: float, tol: float) -> None:
    gap = degeneracy_gap(theta, k)
    if gap <= tol:
        raise DegenerateMomentumError(
            f"degenerate point theta={theta!r}, k={k!r}: |cos^2 theta cos^2 k - 1| = {gap:.3e}"
        )


def walk_momentum_matrix(axis: PauliAxis | str, theta: float, k: float) -> Matrix2:
    """
    Single-axis step ``S (B(theta) x 1)`` at quasi-momentum ``k``.

    The ``+`` projection of the coined spinor carries ``exp(-ik)``, the ``-``
    projection ``exp(+ik)``.
    """
    axis = PauliAxis.parse(axis)
    coin = coin_operator(axis, theta)
    return (
        cmath.exp(-1j * k) * projector(axis, +1) @ coin
        + cmath.exp(1j * k) * projector(axis, -1) @ coin
    )


def _sqrt_term(theta: float, k: float) -> complex:
    # sqrt(cos^2 theta cos^2 k - 1) is imaginary; its sign follows sin k so that
    # theta = 0 gives lambda_-/+ = exp(-/+ i k) over the whole zone
    mag = math.sqrt(max(0.0, 1.0 - math.cos(theta) ** 2 * math.cos(k) ** 2))
    return 1j * mag if math.sin(k) >= 0.0 else -1j * mag


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues ``lambda_-``, ``lambda_+`` of a walk matrix and its eigenvector matrices."""

    axis: PauliAxis
    theta: float
    k: float
    lambda_minus: complex
    lambda_plus: complex
    V: Matrix2 = field(repr=False)
    V_inv: Matrix2 = field(repr=False)

    def eigenvalues(self) -> NDArray[np.complex128]:
        return np.array([self.lambda_minus, self.lambda_plus], dtype=np.complex128)

    def reconstruct(self) -> Matrix2:
        return self.V @ np.diag(self.eigenvalues()) @ self.V_inv

    def log(self) -> Matrix2:
        """``V ln(lambda) V^-1`` with the principal log of each eigenvalue."""
        return self.V @ np.diag(np.log(self.eigenvalues())) @ self.V_inv


def eigensystem(
    theta: float, k: float, axis: PauliAxis | str = PauliAxis.Z, tol: float = DEGENERACY_TOL
) -> EigenSystem:
    """
    Closed-form eigenvalues and eigenvectors of the single-axis walk matrix.

    ``lambda_-/+ = cos(theta) cos(k) -/+ sqrt(cos^2(theta) cos^2(k) - 1)``.
    The eigenvector matrix for Z has unit second components; X and Y reuse it
    through the change of basis onto the axis eigenstates.

    Raises
    ------
    DegenerateMomentumError
        When the two eigenvalues (nearly) coincide.
    """
    axis = PauliAxis.parse(axis)
    _check_gap(theta, k, tol)
    c, s = math.cos(theta), math.sin(theta)
    root = _sqrt_term(theta, k)
    ck = c * math.cos(k)
    lam_m, lam_p = ck - root, ck + root
    phase = cmath.exp(1j * k)
    if abs(s) > 1e-8:
        V = np.array(
            [[(c * phase - lam_m) / (s * phase), (c * phase - lam_p) / (s * phase)], [1.0, 1.0]],
            dtype=np.complex128,
        )
        two_root = 2.0 * root
        V_inv = np.array(
            [
                [s * phase / two_root, (lam_p - c * phase) / two_root],
                [-s * phase / two_root, (c * phase - lam_m) / two_root],
            ],
            dtype=np.complex128,
        )
    else:
        # coin is +-identity: the walk matrix is diagonal, eigenvectors are |down>, |up>
        diag = np.diag(walk_momentum_matrix(PauliAxis.Z, theta, k))
        first = 0 if abs(diag[0] - lam_m) <= abs(diag[1] - lam_m) else 1
        V = np.zeros((2, 2), dtype=np.complex128)
        V[first, 0] = 1.0
        V[1 - first, 1] = 1.0
        V_inv = V.T.copy()
    if axis is not PauliAxis.Z:
        U = np.column_stack(pauli_eigenbasis(axis))
        V, V_inv = U @ V, V_inv @ U.conj().T
    return EigenSystem(axis, theta, k, lam_m, lam_p, V, V_inv)


def _bracket(axis: PauliAxis, theta: float, k: float) -> Matrix2:
    c, s = math.cos(theta), math.sin(theta)
    sk, ck = math.sin(k), math.cos(k)
    if axis is PauliAxis.Z:
        return np.array(
            [[c * sk, -s * (sk + 1j * ck)], [s * (sk - 1j * ck), c * sk]], dtype=np.complex128
        )
    if axis is PauliAxis.X:
        return np.array(
            [[c * sk - 1j * ck * s, s * sk], [-s * sk, c * sk + 1j * ck * s]], dtype=np.complex128
        )
    return np.array(
        [[c * sk - 1j * ck * s, -1j * s * sk], [-1j * sk * s, c * sk + 1j * ck * s]],
        dtype=np.complex128,
    )


def hamiltonian_matrix(
    axis: PauliAxis | str, theta: float, k: float, tol: float = DEGENERACY_TOL
) -> Matrix2:
    """
    Effective Hamiltonian ``H`` with ``exp(-iH)`` equal to the walk matrix.

    Closed form ``(ln lambda_+ - ln lambda_-) / (2 sqrt(...)) * M(theta, k) . sigma``
    with principal logs of the individual eigenvalues. Taking the principal
    log of the ratio instead would flip the sign of ``exp(-iH)`` whenever
    ``cos(theta) cos(k) < 0``.
    """
    axis = PauliAxis.parse(axis)
    _check_gap(theta, k, tol)
    root = _sqrt_term(theta, k)
    ck = math.cos(theta) * math.cos(k)
    lam_m, lam_p = ck - root, ck + root
    prefactor = (cmath.log(lam_p) - cmath.log(lam_m)) / (2.0 * root)
    return prefactor * _bracket(axis, theta, k) @ pauli_matrix(axis)


def theta0_hamiltonian(axis: PauliAxis | str, k: float) -> Matrix2:
    """Coinless reduction ``diag(k, k) . sigma_axis``."""
    axis = PauliAxis.parse(axis)
    return np.diag([k, k]).astype(np.complex128) @ pauli_matrix(axis)


def unitary_from_hamiltonian(h: Matrix2) -> Matrix2:
    """
    ``exp(-iH)`` for a 2x2 matrix via ``H = h0 + h.sigma``.

    Closed form ``exp(-i h0) (cos|h| - i sin|h| h.sigma/|h|)``; no series or
    library exponential involved.
    """
    h = np.asarray(h, dtype=np.complex128)
    h0 = 0.5 * (h[0, 0] + h[1, 1])
    hx = 0.5 * (h[0, 1] + h[1, 0])
    hy = 0.5j * (h[0, 1] - h[1, 0])
    hz = 0.5 * (h[0, 0] - h[1, 1])
    n = cmath.sqrt(hx * hx + hy * hy + hz * hz)
    sinc = cmath.sin(n) / n if abs(n) > 1e-8 else 1.0 - n * n / 6.0
    dot = (
        hx * pauli_matrix(PauliAxis.X) + hy * pauli_matrix(PauliAxis.Y) + hz * pauli_matrix(PauliAxis.Z)
    )
    return cmath.exp(-1j * h0) * (cmath.cos(n) * np.eye(2) - 1j * sinc * dot)


def axis_momentum(lattice: LatticeSpec, axis: PauliAxis | str, k: Sequence[float]) -> float:
    """Scalar momentum felt by ``axis``: ``-k . D_plus``, wrapped into the zone."""
    d = lattice.displacement(PauliAxis.parse(axis), +1)
    if len(k) != len(d):
        raise ValueError(f"momentum needs {len(d)} components for a {lattice.kind.value} lattice")
    return wrap_momentum(-float(np.dot(k, d)))


def lattice_walk_matrix(
    lattice: LatticeSpec, thetas: Mapping[PauliAxis, float], k: Sequence[float]
) -> Matrix2:
    """Full-step momentum matrix: sub-step matrices multiplied in time order."""
    out = np.eye(2, dtype=np.complex128)
    for axis in lattice.ordering:
        out = walk_momentum_matrix(axis, thetas[axis], axis_momentum(lattice, axis, k)) @ out
    return out


def _frob(m: Matrix2) -> float:
    return float(np.linalg.norm(m))


@dataclass
class CommutatorReport:
    """Commutator norms and sum-vs-product residuals over a momentum grid."""

    thetas: dict[str, float]
    grid_size: int
    tolerance: float
    total_points: int = 0
    evaluated: int = 0
    skipped_degenerate: int = 0
    commutator_max: dict[str, float] = field(default_factory=dict)
    commutator_mean: dict[str, float] = field(default_factory=dict)
    residual_max: float = 0.0
    residual_mean: float = 0.0

    def to_dict(self) -> dict:
        return {
            "thetas": self.thetas,
            "grid_size": self.grid_size,
            "degenerate_tolerance": self.tolerance,
            "total_points": self.total_points,
            "evaluated": self.evaluated,
            "skipped_degenerate": self.skipped_degenerate,
            "commutator_norm_max": self.commutator_max,
            "commutator_norm_mean": self.commutator_mean,
            "exp_sum_vs_product_residual_max": self.residual_max,
            "exp_sum_vs_product_residual_mean": self.residual_mean,
        }


def momentum_grid(n: int, dim: int = 3) -> Iterable[tuple[float, ...]]:
    """``n`` evenly spaced values per axis starting at ``-pi``, in lexicographic order."""
    axis_values = [-math.pi + 2.0 * math.pi * j / n for j in range(n)]
    grids = np.meshgrid(*([axis_values] * dim), indexing="ij")
    return [tuple(float(g[idx]) for g in grids) for idx in np.ndindex(*grids[0].shape)]


def triangular_commutator_report(
    theta: float | Mapping[PauliAxis | str, float],
    grid_size: int = 5,
    tol: float = DEGENERACY_TOL,
    lattice: LatticeSpec | None = None,
) -> CommutatorReport:
    """
    Measure how far the per-axis triangular Hamiltonians are from commuting.

    For every grid momentum, computes ``||[H_a, H_b]||_F`` for each axis pair
    and ``||exp(-i (H_X + H_Y + H_Z)) - W_tri(k)||_F``. Points where any axis
    is degenerate are skipped and counted. Nothing is asserted.
    """
    lattice = lattice or lattice_spec(LatticeKind.TRIANGULAR)
    if isinstance(theta, Mapping):
        thetas = {PauliAxis.parse(a): float(v) for a, v in theta.items()}
    else:
        thetas = {a: float(theta) for a in lattice.ordering}
    axes = sorted(lattice.axes, key=lambda a: a.value)
    pairs = [(a, b) for i, a in enumerate(axes) for b in axes[i + 1 :]]
    report = CommutatorReport({a.value: thetas[a] for a in axes}, grid_size, tol)
    comm: dict[str, list[float]] = {f"{a.value}{b.value}": [] for a, b in pairs}
    residuals = []
    for k in momentum_grid(grid_size, lattice.dim):
        report.total_points += 1
        try:
            hs = {a: hamiltonian_matrix(a, thetas[a], axis_momentum(lattice, a, k), tol) for a in axes}
        except DegenerateMomentumError:
            report.skipped_degenerate += 1
            continue
        report.evaluated += 1
        for a, b in pairs:
            comm[f"{a.value}{b.value}"].append(_frob(hs[a] @ hs[b] - hs[b] @ hs[a]))
        total = sum(hs.values())
        residuals.append(_frob(unitary_from_hamiltonian(total) - lattice_walk_matrix(lattice, thetas, k)))
    for key, vals in comm.items():
        report.commutator_max[key] = max(vals) if vals else 0.0
        report.commutator_mean[key] = float(np.mean(vals)) if vals else 0.0
    report.residual_max = max(residuals) if residuals else 0.0
    report.residual_mean = float(np.mean(residuals)) if residuals else 0.0
    return report
