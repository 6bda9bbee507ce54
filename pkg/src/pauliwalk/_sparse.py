"""Deterministic merging of rows that share integer coordinates."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray


def group_rows(coords: NDArray[np.int64]) -> tuple[NDArray[np.int64], NDArray[np.intp], NDArray[np.int64]]:
    """
    Sort ``coords`` lexicographically (first column primary, stable).

    Returns ``(order, group, unique_coords)`` where ``group[i]`` is the index of
    the unique row that ``coords[order[i]]`` belongs to.
    """
    order = np.lexsort(coords.T[::-1])
    ordered = coords[order]
    starts = np.ones(ordered.shape[0], dtype=bool)
    starts[1:] = np.any(ordered[1:] != ordered[:-1], axis=1)
    group = np.cumsum(starts) - 1
    return order, group, ordered[starts]


def sum_rows(coords: NDArray[np.int64], values: NDArray) -> tuple[NDArray[np.int64], NDArray]:
    """Sum ``values`` (shape (N,) or (N, c), real or complex) over equal coordinate rows."""
    if coords.shape[0] == 0:
        return coords, values
    order, group, uniq = group_rows(coords)
    vals = values[order]
    n = uniq.shape[0]
    flat = vals.reshape(vals.shape[0], -1)
    out = np.empty((n, flat.shape[1]), dtype=vals.dtype)
    for c in range(flat.shape[1]):
        col = flat[:, c]
        if np.iscomplexobj(col):
            out[:, c] = np.bincount(group, weights=col.real, minlength=n)
            out[:, c] += 1j * np.bincount(group, weights=col.imag, minlength=n)
        else:
            out[:, c] = np.bincount(group, weights=col, minlength=n)
    return uniq, out.reshape((n,) + vals.shape[1:])
