"""
Amplitude recursions for the square-lattice walks, used as independent oracles.

Both recursions are evaluated on the full rectangle ``[-T, T]^2`` with zeros
outside the reachable set. The two-state recursion is only valid for a
coin angle of zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .analysis import Distribution, SignedPermutation, signed_permutations
from .engine import SpinorField

__all__ = [
    "AmplitudeTable",
    "two_state_recursion",
    "grover_recursion",
    "determine_correspondence",
    "GROVER_VARIANTS",
]

GROVER_VARIANTS = ("verbatim", "consistent")


@dataclass(frozen=True)
class AmplitudeTable:
    """``amplitudes[t][a + T, b + T, j]`` is component ``j`` at ``(a, b)`` after ``t`` steps."""

    extent: int
    amplitudes: tuple[NDArray[np.complex128], ...]

    @property
    def steps(self) -> int:
        return len(self.amplitudes) - 1

    def at(self, a: int, b: int, t: int) -> NDArray[np.complex128]:
        T = self.extent
        if abs(a) > T or abs(b) > T:
            return np.zeros(self.amplitudes[t].shape[-1], dtype=np.complex128)
        return self.amplitudes[t][a + T, b + T]

    def norm_squared(self, t: int) -> float:
        amp = self.amplitudes[t]
        return float(np.sum(amp.real**2 + amp.imag**2))

    def field(self, t: int, correspondence: SignedPermutation | None = None) -> SpinorField:
        """Nonzero entries at step ``t`` as a sparse field, optionally with coordinates remapped."""
        amp = self.amplitudes[t]
        idx = np.argwhere(np.any(amp != 0, axis=-1))
        coords = idx.astype(np.int64) - self.extent
        if correspondence is not None:
            perm, signs = correspondence
            coords = coords[:, list(perm)] * np.asarray(signs, dtype=np.int64)
        return SpinorField.from_scatter(coords, amp[idx[:, 0], idx[:, 1]])

    def distribution(self, t: int, correspondence: SignedPermutation | None = None) -> Distribution:
        f = self.field(t, correspondence)
        return Distribution(f.coords, f.probabilities())


def _neighbour(arr: NDArray[np.complex128], da: int, db: int) -> NDArray[np.complex128]:
    """``out[a, b] = arr[a + da, b + db]`` with zeros beyond the edge."""
    n = arr.shape[0]
    out = np.zeros_like(arr)
    src_a = slice(max(da, 0), n + min(da, 0))
    dst_a = slice(max(-da, 0), n + min(-da, 0))
    src_b = slice(max(db, 0), n + min(db, 0))
    dst_b = slice(max(-db, 0), n + min(-db, 0))
    out[dst_a, dst_b] = arr[src_a, src_b]
    return out


def _seed(t: int, init: Sequence[complex]) -> NDArray[np.complex128]:
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    arr = np.zeros((2 * t + 1, 2 * t + 1, len(init)), dtype=np.complex128)
    arr[t, t] = np.asarray(init, dtype=np.complex128)
    return arr


def two_state_recursion(t: int, init: Sequence[complex]) -> AmplitudeTable:
    """
    Coupled two-component recursion of the coinless square-lattice walk.

    The table's two indices follow the recursion's own ``(x, y)`` labels,
    which are not necessarily the engine's ``(x, z)`` order; see
    :func:`determine_correspondence`.
    """
    init = np.asarray(init, dtype=np.complex128)
    if init.shape != (2,) or abs(np.vdot(init, init).real - 1.0) > 1e-12:
        raise ValueError("initial amplitudes must be a normalized pair")
    cur = _seed(t, init)
    out = [cur]
    for _ in range(t):
        a1, a2 = cur[..., 0], cur[..., 1]
        pp = _neighbour(a1, 1, 1)
        pm = _neighbour(a1, 1, -1)
        mp = _neighbour(a2, -1, 1)
        mm = _neighbour(a2, -1, -1)
        nxt = np.empty_like(cur)
        nxt[..., 0] = 0.5 * (pp + pm + mp - mm)
        nxt[..., 1] = 0.5 * (pp - pm + mp + mm)
        out.append(nxt)
        cur = nxt
    return AmplitudeTable(t, tuple(out))


def grover_recursion(t: int, variant: str = "consistent") -> AmplitudeTable:
    """
    Four-component recursion of the Grover walk seeded with ``(1, -1, -1, 1)/2``.

    ``variant="verbatim"`` takes the third term of the second component from
    ``(x-1, z-1)`` as originally stated; ``"consistent"`` takes it from ``(x+1, z-1)``
    like the other terms of that component.
    """
    if variant not in GROVER_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {GROVER_VARIANTS}")
    cur = _seed(t, (0.5, -0.5, -0.5, 0.5))
    out = [cur]
    b3_shift = (-1, -1) if variant == "verbatim" else (1, -1)
    for _ in range(t):
        b = [cur[..., j] for j in range(4)]
        nxt = np.empty_like(cur)
        n1 = [_neighbour(x, 1, 1) for x in b]
        nxt[..., 0] = 0.5 * (-n1[0] + n1[1] + n1[2] + n1[3])
        n2 = [_neighbour(x, 1, -1) for x in b]
        nxt[..., 1] = 0.5 * (n2[0] - n2[1] + _neighbour(b[2], *b3_shift) + n2[3])
        n3 = [_neighbour(x, -1, 1) for x in b]
        nxt[..., 2] = 0.5 * (n3[0] + n3[1] - n3[2] + n3[3])
        n4 = [_neighbour(x, -1, -1) for x in b]
        nxt[..., 3] = 0.5 * (n4[0] + n4[1] + n4[2] - n4[3])
        out.append(nxt)
        cur = nxt
    return AmplitudeTable(t, tuple(out))


def determine_correspondence(
    table: AmplitudeTable, reference: SpinorField, t: int = 1, tol: float = 1e-12
) -> SignedPermutation:
    """
    Find the square-lattice symmetry mapping table coordinates onto ``reference``
    coordinates so that amplitudes agree at step ``t``.

    The identity is tried first. Raises ``LookupError`` if no map matches.
    """
    for m in signed_permutations(2, include_identity=True):
        mapped = table.field(t, m)
        both = SpinorField.from_scatter(
            np.concatenate([mapped.coords, reference.coords]),
            np.concatenate([mapped.amps, -reference.amps]),
        )
        if np.max(np.abs(both.amps), initial=0.0) < tol:
            return m
    raise LookupError(f"no square-lattice symmetry matches the recursion at t={t}")
