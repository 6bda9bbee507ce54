"""
Brute-force dense operators on a truncated site set.

Each sub-step is assembled as ``S (B x 1)`` from the projector-sum definition
of the conditional shift, independently of the sparse engine. Columns for
sites whose images stay inside the truncation are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

from .engine import SpinorField, WalkConfig
from .lattice import LatticeSpec
from .spinor import PauliAxis, coin_operator, projector

__all__ = ["DenseWalk", "reachable_sites", "dense_walk", "dense_evolve"]


def reachable_sites(
    lattice: LatticeSpec, steps: int, origin: Sequence[int] | None = None
) -> list[set[tuple[int, ...]]]:
    """Sites reachable after exactly ``0..steps`` full steps (sub-step by sub-step)."""
    origin = tuple(origin) if origin is not None else (0,) * lattice.dim
    layers = [{origin}]
    frontier = {origin}
    for _ in range(steps):
        for axis in lattice.ordering:
            moves = [lattice.displacement(axis, s) for s in (+1, -1)]
            frontier = {tuple(p + d for p, d in zip(site, mv)) for site in frontier for mv in moves}
        layers.append(frontier)
    return layers


@dataclass(frozen=True)
class DenseWalk:
    """One-step matrix on ``sites`` (basis index ``2*i + spin``)."""

    sites: tuple[tuple[int, ...], ...]
    matrix: NDArray[np.complex128]
    interior: tuple[int, ...]

    def index(self, site: Sequence[int]) -> int:
        return self.sites.index(tuple(site))

    def interior_columns(self) -> NDArray[np.complex128]:
        cols = [2 * i + s for i in self.interior for s in (0, 1)]
        return self.matrix[:, cols]


def _apply_substep(
    lattice: LatticeSpec,
    axis: PauliAxis,
    theta: float,
    sites: Sequence[tuple[int, ...]],
    mat: NDArray[np.complex128],
) -> NDArray[np.complex128]:
    """Left-multiply ``mat`` by ``sum_s (P_s B) x |p + d_s><p|`` block by block."""
    lookup = {s: i for i, s in enumerate(sites)}
    coin = coin_operator(axis, theta)
    out = np.zeros_like(mat)
    for sign in (+1, -1):
        block = projector(axis, sign) @ coin
        d = lattice.displacement(axis, sign)
        for j, site in enumerate(sites):
            i = lookup.get(tuple(p + q for p, q in zip(site, d)))
            if i is not None:
                out[2 * i : 2 * i + 2] += block @ mat[2 * j : 2 * j + 2]
    return out


def dense_walk(
    lattice: LatticeSpec,
    thetas: Mapping[PauliAxis, float],
    radius_steps: int,
    origin: Sequence[int] | None = None,
) -> DenseWalk:
    """
    Dense one-step operator on every site visited within ``radius_steps`` steps.

    Sites reached within ``radius_steps - 1`` steps are interior: their whole
    one-step image lies in the truncation.
    """
    # intermediate sub-step sites are included so truncation only bites at the rim
    origin = tuple(origin) if origin is not None else (0,) * lattice.dim
    all_sites: set[tuple[int, ...]] = {origin}
    interior_sites: set[tuple[int, ...]] = {origin}
    frontier = {origin}
    for t in range(radius_steps):
        for axis in lattice.ordering:
            moves = [lattice.displacement(axis, s) for s in (+1, -1)]
            frontier = {tuple(p + d for p, d in zip(site, mv)) for site in frontier for mv in moves}
            all_sites |= frontier
        if t < radius_steps - 1:
            interior_sites |= frontier
    sites = tuple(sorted(all_sites))
    mat = np.eye(2 * len(sites), dtype=np.complex128)
    for axis in lattice.ordering:
        mat = _apply_substep(lattice, axis, thetas[axis], sites, mat)
    interior = tuple(i for i, s in enumerate(sites) if s in interior_sites)
    return DenseWalk(sites, mat, interior)


def dense_evolve(config: WalkConfig) -> SpinorField:
    """Evolve by repeated dense matrix-vector products (small step counts only)."""
    dw = dense_walk(config.lattice, config.thetas, max(config.steps, 1) + 1, config.initial_position)
    vec = np.zeros(2 * len(dw.sites), dtype=np.complex128)
    i0 = dw.index(config.initial_position)
    vec[2 * i0 : 2 * i0 + 2] = config.initial_spin
    for _ in range(config.steps):
        vec = dw.matrix @ vec
    amps = vec.reshape(-1, 2)
    keep = np.any(amps != 0, axis=1)
    coords = np.array(dw.sites, dtype=np.int64)[keep]
    return SpinorField.from_scatter(coords, amps[keep])
