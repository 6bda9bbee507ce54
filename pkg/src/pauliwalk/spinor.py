"""
Two-component spinor algebra in the sigma_3 basis.

Every 2x2 matrix and spinor in the package is expressed in the eigenbasis of
sigma_3, with ``|down> = (1, 0)`` and ``|up> = (0, 1)``. The X, Y and Z lattice
axes are quantized by sigma_1, sigma_2 and sigma_3 respectively; the other
Pauli bases enter only through :func:`pauli_eigenbasis`.
"""

from __future__ import annotations

import enum
import math

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "PauliAxis",
    "pauli_matrix",
    "pauli_eigenbasis",
    "projector",
    "coin_operator",
    "spin_from_angles",
    "DOWN",
    "UP",
    "PLUS_I",
    "is_unitary",
]

Spinor2 = NDArray[np.complex128]
Matrix2 = NDArray[np.complex128]

_SQRT_HALF = 1.0 / math.sqrt(2.0)


class PauliAxis(str, enum.Enum):
    """Lattice axis and the Pauli operator whose eigenstates translate along it."""

    X = "X"  # sigma_1
    Y = "Y"  # sigma_2
    Z = "Z"  # sigma_3

    @classmethod
    def parse(cls, value: "str | PauliAxis") -> "PauliAxis":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise ValueError(f"unknown Pauli axis {value!r}; expected X, Y or Z") from None


_PAULI = {
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_EIGEN = {
    PauliAxis.X: (
        np.array([1, 1], dtype=np.complex128) * _SQRT_HALF,
        np.array([1, -1], dtype=np.complex128) * _SQRT_HALF,
    ),
    PauliAxis.Y: (
        np.array([1, 1j], dtype=np.complex128) * _SQRT_HALF,
        np.array([1, -1j], dtype=np.complex128) * _SQRT_HALF,
    ),
    PauliAxis.Z: (
        np.array([1, 0], dtype=np.complex128),
        np.array([0, 1], dtype=np.complex128),
    ),
}

DOWN: Spinor2 = np.array([1, 0], dtype=np.complex128)
UP: Spinor2 = np.array([0, 1], dtype=np.complex128)
PLUS_I: Spinor2 = np.array([_SQRT_HALF, 1j * _SQRT_HALF], dtype=np.complex128)

for _arr in (DOWN, UP, PLUS_I, *_PAULI.values(), *(v for pair in _EIGEN.values() for v in pair)):
    _arr.flags.writeable = False


def pauli_matrix(axis: PauliAxis) -> Matrix2:
    """Return sigma_1, sigma_2 or sigma_3 for axis X, Y or Z (a fresh copy)."""
    return _PAULI[PauliAxis.parse(axis)].copy()


def pauli_eigenbasis(axis: PauliAxis) -> tuple[Spinor2, Spinor2]:
    """
    Return the normalized ``(+1, -1)`` eigenvectors of the Pauli operator for ``axis``.

    For Z these are ``|down>`` and ``|up>``; the ``+`` member is the state that
    translates toward the negative coordinate direction.
    """
    plus, minus = _EIGEN[PauliAxis.parse(axis)]
    return plus.copy(), minus.copy()


def projector(axis: PauliAxis, sign: int) -> Matrix2:
    """Rank-one projector onto the ``sign`` (+1 or -1) eigenstate of ``axis``."""
    plus, minus = _EIGEN[PauliAxis.parse(axis)]
    v = plus if sign > 0 else minus
    return np.outer(v, v.conj())


def coin_operator(axis: PauliAxis, theta: float) -> Matrix2:
    """
    One-parameter coin rotation written over the eigenbasis of ``axis``.

    Parameters
    ----------
    axis : PauliAxis
        Basis in which the rotation is defined.
    theta : float
        Coin angle in radians.

    Returns
    -------
    ndarray, shape (2, 2)
        ``cos|+><+| + sin|+><-| - sin|-><+| + cos|-><-|`` in the sigma_3 basis.
    """
    if not math.isfinite(theta):
        raise ValueError(f"coin angle must be finite, got {theta!r}")
    plus, minus = _EIGEN[PauliAxis.parse(axis)]
    c, s = math.cos(theta), math.sin(theta)
    return (
        c * np.outer(plus, plus.conj())
        + s * np.outer(plus, minus.conj())
        - s * np.outer(minus, plus.conj())
        + c * np.outer(minus, minus.conj())
    )


def spin_from_angles(delta: float, eta: float) -> Spinor2:
    """Coin state ``cos(delta/2)|down> + exp(i eta) sin(delta/2)|up>``."""
    return np.array(
        [math.cos(delta / 2.0), complex(math.cos(eta), math.sin(eta)) * math.sin(delta / 2.0)],
        dtype=np.complex128,
    )


def is_unitary(m: NDArray[np.complex128], tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return bool(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) < tol)
