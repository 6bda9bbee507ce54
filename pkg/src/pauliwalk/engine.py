"""
Sparse state-vector evolution of the two-state walk.

A field is stored as a lexicographically sorted integer coordinate array plus
a matching complex amplitude array. A sub-step applies the coin, splits each
spinor onto the ``+``/``-`` eigenstates of the axis and scatters the two parts
to their displaced sites; coinciding amplitudes are summed in sorted order, so
results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

from ._sparse import sum_rows
from .lattice import (
    KagomeClassificationError,
    KagomeSite,
    LatticeKind,
    LatticeSpec,
    kagome_site_types,
    lattice_spec,
)
from .spinor import PauliAxis, coin_operator, projector

__all__ = [
    "SpinorField",
    "WalkConfig",
    "NormalizationError",
    "initial_state",
    "apply_substep",
    "step",
    "evolve",
    "iter_evolve",
]

NORM_TOL = 1e-12


class NormalizationError(RuntimeError):
    """Total probability drifted away from one."""


class SpinorField:
    """
    Immutable sparse map from lattice position to an n-component amplitude.

    Two-state walks use two components ordered ``(down, up)``; the Grover
    reference walk uses four ordered ``(down, up, left, right)``.
    """

    __slots__ = ("coords", "amps")

    def __init__(self, coords: NDArray[np.int64], amps: NDArray[np.complex128]) -> None:
        coords = np.ascontiguousarray(coords, dtype=np.int64)
        amps = np.ascontiguousarray(amps, dtype=np.complex128)
        if coords.ndim != 2 or amps.ndim != 2 or coords.shape[0] != amps.shape[0]:
            raise ValueError("coords must be (N, dim) and amps (N, components)")
        coords.flags.writeable = False
        amps.flags.writeable = False
        self.coords = coords
        self.amps = amps

    @classmethod
    def point(cls, position: Sequence[int], spinor: Sequence[complex]) -> "SpinorField":
        return cls(np.array([position], dtype=np.int64), np.array([spinor], dtype=np.complex128))

    @classmethod
    def from_scatter(cls, coords: NDArray[np.int64], amps: NDArray[np.complex128]) -> "SpinorField":
        """Merge duplicate positions by summing their amplitudes (input order fixed)."""
        coords, amps = sum_rows(
            np.asarray(coords, dtype=np.int64), np.asarray(amps, dtype=np.complex128)
        )
        return cls(coords, amps)

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    @property
    def components(self) -> int:
        return self.amps.shape[1]

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], NDArray[np.complex128]]]:
        for pos, amp in zip(self.coords, self.amps):
            yield tuple(int(v) for v in pos), amp

    def __getitem__(self, position: Sequence[int]) -> NDArray[np.complex128]:
        idx = self._index(position)
        if idx is None:
            return np.zeros(self.components, dtype=np.complex128)
        return self.amps[idx]

    def __contains__(self, position: Sequence[int]) -> bool:
        return self._index(position) is not None

    def _index(self, position: Sequence[int]) -> int | None:
        hits = np.flatnonzero(np.all(self.coords == np.asarray(position, dtype=np.int64), axis=1))
        return int(hits[0]) if hits.size else None

    def to_dict(self) -> dict[tuple[int, ...], NDArray[np.complex128]]:
        return dict(iter(self))

    def probabilities(self) -> NDArray[np.float64]:
        return np.sum(self.amps.real**2 + self.amps.imag**2, axis=1)

    def norm_squared(self) -> float:
        return float(np.sum(self.probabilities()))

    def __add__(self, other: "SpinorField") -> "SpinorField":
        return SpinorField.from_scatter(
            np.concatenate([self.coords, other.coords]), np.concatenate([self.amps, other.amps])
        )

    def __mul__(self, scalar: complex) -> "SpinorField":
        return SpinorField(self.coords, self.amps * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"SpinorField(sites={len(self)}, dim={self.dim}, components={self.components})"


def _as_spinor(value: Sequence[complex]) -> NDArray[np.complex128]:
    spin = np.asarray(value, dtype=np.complex128).reshape(-1)
    if spin.shape != (2,) or not np.all(np.isfinite(spin)):
        raise ValueError(f"initial spin must be two finite complex numbers, got {value!r}")
    return spin


@dataclass(frozen=True)
class WalkConfig:
    """Everything needed to reproduce a two-state walk run."""

    lattice: LatticeSpec
    steps: int
    thetas: Mapping[PauliAxis, float]
    initial_spin: NDArray[np.complex128]
    initial_position: tuple[int, ...] | None = None
    check_norm: bool = True

    def __post_init__(self) -> None:
        if isinstance(self.steps, bool) or not isinstance(self.steps, (int, np.integer)) or self.steps < 0:
            raise ValueError(f"steps must be a non-negative integer, got {self.steps!r}")
        thetas = {PauliAxis.parse(a): float(v) for a, v in self.thetas.items()}
        missing = [a.value for a in self.lattice.ordering if a not in thetas]
        if missing:
            raise ValueError(f"no coin angle given for axis {', '.join(missing)}")
        for a, v in thetas.items():
            if not math.isfinite(v):
                raise ValueError(f"coin angle for {a.value} is not finite")
        spin = _as_spinor(self.initial_spin)
        if abs(float(np.vdot(spin, spin).real) - 1.0) > NORM_TOL:
            raise ValueError(f"initial spin is not normalized (|s|^2 = {np.vdot(spin, spin).real!r})")
        spin.flags.writeable = False
        pos = self.initial_position
        pos = (0,) * self.lattice.dim if pos is None else tuple(int(v) for v in pos)
        if len(pos) != self.lattice.dim:
            raise ValueError(f"initial position {pos} does not match {self.lattice.kind.value} dimension")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "initial_spin", spin)
        object.__setattr__(self, "initial_position", pos)

    @classmethod
    def build(
        cls,
        lattice: LatticeKind | str,
        steps: int,
        theta: float | Mapping[PauliAxis | str, float] = 0.0,
        initial_spin: Sequence[complex] = (1.0, 0.0),
        initial_position: Sequence[int] | None = None,
        ordering: Sequence[PauliAxis | str] | None = None,
        origin_type: KagomeSite | str | None = None,
        convention: str = "literal",
    ) -> "WalkConfig":
        """Convenience constructor; a scalar ``theta`` applies to every axis."""
        spec = lattice_spec(lattice, ordering=ordering, origin_type=origin_type, convention=convention)
        if isinstance(theta, Mapping):
            thetas = {PauliAxis.parse(a): float(v) for a, v in theta.items()}
        else:
            thetas = {a: float(theta) for a in spec.ordering}
        return cls(spec, steps, thetas, np.asarray(initial_spin, dtype=np.complex128), initial_position)


def initial_state(config: WalkConfig) -> SpinorField:
    return SpinorField.point(config.initial_position, config.initial_spin)


def _substep_maps(axis: PauliAxis, theta: float) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    coin = coin_operator(axis, theta)
    return projector(axis, +1) @ coin, projector(axis, -1) @ coin


def apply_substep(
    state: SpinorField,
    axis: PauliAxis | str,
    theta: float,
    lattice: LatticeSpec,
    *,
    origin: Sequence[int] | None = None,
) -> SpinorField:
    """
    Coin then conditional shift along one axis.

    On kagome every occupied site must carry ``axis``; ``origin`` (default the
    coordinate origin) fixes the site typing.
    """
    axis = PauliAxis.parse(axis)
    if axis not in lattice.axes:
        raise ValueError(f"axis {axis.value} is not active on a {lattice.kind.value} lattice")
    if state.components != 2:
        raise ValueError("the two-state engine needs two-component spinors")
    if lattice.kind is LatticeKind.KAGOME:
        _require_kagome_axis(state, axis, lattice, origin)
    plus_map, minus_map = _substep_maps(axis, theta)
    d_plus = np.asarray(lattice.displacement(axis, +1), dtype=np.int64)
    d_minus = np.asarray(lattice.displacement(axis, -1), dtype=np.int64)
    coords = np.concatenate([state.coords + d_plus, state.coords + d_minus])
    amps = np.concatenate([state.amps @ plus_map.T, state.amps @ minus_map.T])
    return SpinorField.from_scatter(coords, amps)


def _require_kagome_axis(
    state: SpinorField, axis: PauliAxis, lattice: LatticeSpec, origin: Sequence[int] | None
) -> None:
    origin = (0, 0, 0) if origin is None else tuple(origin)
    types = kagome_site_types(
        state.coords, origin, lattice.origin_type or KagomeSite.P, lattice.convention or "literal"
    )
    for site in set(types):
        if axis not in site.axes:
            pos = tuple(int(v) for v in state.coords[types.index(site)])
            raise KagomeClassificationError(
                f"axis {axis.value} does not exist at type-{site.value} site {pos}"
            )


def step(state: SpinorField, config: WalkConfig) -> SpinorField:
    """One full step: every sub-step of the lattice ordering, first to last."""
    for axis in config.lattice.ordering:
        state = apply_substep(
            state, axis, config.thetas[axis], config.lattice, origin=config.initial_position
        )
        if config.check_norm:
            _check_norm(state)
    return state


def _check_norm(state: SpinorField) -> None:
    drift = abs(state.norm_squared() - 1.0)
    if drift > NORM_TOL:
        raise NormalizationError(f"total probability drifted by {drift:.3e}")


def iter_evolve(config: WalkConfig) -> Iterator[SpinorField]:
    """Yield the field at t = 0, 1, ..., steps."""
    state = initial_state(config)
    yield state
    for _ in range(config.steps):
        state = step(state, config)
        yield state


def evolve(config: WalkConfig) -> SpinorField:
    state = initial_state(config)
    for _ in range(config.steps):
        state = step(state, config)
    return state
