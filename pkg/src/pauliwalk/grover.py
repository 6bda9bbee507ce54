"""Four-state Grover walk on the square lattice, used as an equivalence baseline."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from .analysis import Distribution, distribution
from .engine import NormalizationError, SpinorField

__all__ = [
    "GROVER_SHIFTS",
    "grover_coin",
    "grover_initial_state",
    "grover_step",
    "grover_evolve_state",
    "grover_evolve",
]

# coin basis (down, up, left, right) -> (dx, dz)
GROVER_SHIFTS = np.array([(-1, -1), (-1, 1), (1, -1), (1, 1)], dtype=np.int64)

GroverField = SpinorField


def grover_coin() -> NDArray[np.complex128]:
    """Grover diffusion coin: -1/2 on the diagonal, +1/2 elsewhere."""
    return np.full((4, 4), 0.5, dtype=np.complex128) - np.eye(4, dtype=np.complex128)


def grover_initial_state() -> GroverField:
    """``(|down> - |up> - |left> + |right>) / 2`` at the origin."""
    return SpinorField.point((0, 0), [0.5, -0.5, -0.5, 0.5])


def grover_step(state: GroverField) -> GroverField:
    if state.components != 4 or state.dim != 2:
        raise ValueError("the Grover walk needs a 2D field of four-component amplitudes")
    coined = state.amps @ grover_coin().T
    n = len(state)
    coords = np.concatenate([state.coords + GROVER_SHIFTS[j] for j in range(4)])
    amps = np.zeros((4 * n, 4), dtype=np.complex128)
    for j in range(4):
        amps[j * n : (j + 1) * n, j] = coined[:, j]
    return SpinorField.from_scatter(coords, amps)


def grover_evolve_state(t: int, *, check_norm: bool = True) -> GroverField:
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    state = grover_initial_state()
    for _ in range(t):
        state = grover_step(state)
        if check_norm and abs(state.norm_squared() - 1.0) > 1e-12:
            raise NormalizationError("Grover walk lost normalization")
    return state


def grover_evolve(t: int) -> Distribution:
    """Position distribution of the Grover walk after ``t`` steps."""
    return distribution(grover_evolve_state(t))
