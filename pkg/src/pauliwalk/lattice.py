"""Lattice kinds, per-axis displacement rules and kagome site typing."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .spinor import PauliAxis

__all__ = [
    "LatticeKind",
    "LatticeSpec",
    "KagomeSite",
    "TriangularConvention",
    "lattice_spec",
    "kagome_ordering",
    "kagome_site_axes",
    "kagome_site_type",
    "kagome_site_types",
    "KagomeClassificationError",
]

X, Y, Z = PauliAxis.X, PauliAxis.Y, PauliAxis.Z


class LatticeKind(str, enum.Enum):
    LINE = "line"
    SQUARE = "square"
    CUBIC = "cubic"
    TRIANGULAR = "triangular"
    KAGOME = "kagome"


class TriangularConvention(str, enum.Enum):
    """
    Displacement table for the triangular and kagome labels.

    ``literal`` takes the three combined momenta at face value; the three
    axis displacements are then linearly independent, so the walk spreads over
    a 3D set of labels. ``planar`` flips the sign of the X term in the Y-axis
    momentum, which keeps every label on the plane ``y = x + z``.
    """

    LITERAL = "literal"
    PLANAR = "planar"


class KagomeSite(str, enum.Enum):
    """Kagome sublattice; each carries two of the three propagation axes."""

    O = "o"
    P = "p"
    Q = "q"

    @property
    def axes(self) -> frozenset[PauliAxis]:
        return _KAGOME_AXES[self]


_KAGOME_AXES = {
    KagomeSite.O: frozenset({X, Z}),
    KagomeSite.P: frozenset({X, Y}),
    KagomeSite.Q: frozenset({Y, Z}),
}

# Sublattice parity label (n1 mod 2, n2 mod 2); (1, 1) is a hole of the kagome net.
_KAGOME_PARITY = {KagomeSite.P: (0, 0), KagomeSite.O: (1, 0), KagomeSite.Q: (0, 1)}
_PARITY_KAGOME = {v: k for k, v in _KAGOME_PARITY.items()}

# Step orderings that only ever use axes present at the occupied sublattice.
# p -> q -> o -> p is the cycle of the Y, Z, X ordering; o and q start on the same cycle.
_KAGOME_ORDERING = {
    KagomeSite.P: (Y, Z, X),
    KagomeSite.Q: (Z, X, Y),
    KagomeSite.O: (X, Y, Z),
}


_SITE_BY_CODE = np.array([KagomeSite.P, KagomeSite.O, KagomeSite.Q, None], dtype=object)


class KagomeClassificationError(ValueError):
    """Position cannot be assigned a kagome site type from the declared origin."""


Displacement = tuple[int, ...]


@dataclass(frozen=True)
class LatticeSpec:
    """
    Lattice kind plus the displacement of each translational eigenstate.

    ``displacements[(axis, +1)]`` is where the ``|+>`` eigenstate of ``axis``
    moves; ``ordering`` lists the sub-step axes in the order they are applied
    in time (the rightmost operator of the product acts first).
    """

    kind: LatticeKind
    coord_names: tuple[str, ...]
    displacements: Mapping[tuple[PauliAxis, int], Displacement]
    ordering: tuple[PauliAxis, ...]
    origin_type: KagomeSite | None = None
    convention: TriangularConvention | None = None
    _axes: frozenset[PauliAxis] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        axes = frozenset(a for a, _ in self.displacements)
        object.__setattr__(self, "_axes", axes)
        for axis in axes:
            plus = self.displacements[(axis, +1)]
            minus = self.displacements[(axis, -1)]
            if len(plus) != self.dim or any(p + m != 0 for p, m in zip(plus, minus)):
                raise ValueError(f"displacements for {axis.value} are not opposite vectors")
        if len(set(self.ordering)) != len(self.ordering) or set(self.ordering) != axes:
            raise ValueError(
                f"ordering {[a.value for a in self.ordering]} must list each of "
                f"{sorted(a.value for a in axes)} exactly once"
            )

    @property
    def dim(self) -> int:
        return len(self.coord_names)

    @property
    def axes(self) -> frozenset[PauliAxis]:
        return self._axes

    def displacement(self, axis: PauliAxis, sign: int) -> Displacement:
        try:
            return self.displacements[(PauliAxis.parse(axis), 1 if sign > 0 else -1)]
        except KeyError:
            raise ValueError(f"axis {axis} is not active on a {self.kind.value} lattice") from None

    def max_step_extent(self) -> int:
        """Largest per-coordinate movement of one full step."""
        return max(
            sum(abs(self.displacement(a, 1)[i]) for a in self.ordering) for i in range(self.dim)
        )


def _pm(plus: Displacement) -> tuple[Displacement, Displacement]:
    return plus, tuple(-v for v in plus)


def _table(entries: Mapping[PauliAxis, Displacement]) -> dict[tuple[PauliAxis, int], Displacement]:
    out = {}
    for axis, plus in entries.items():
        out[(axis, 1)], out[(axis, -1)] = _pm(plus)
    return out


_TRI_PLUS = {
    Z: (1, -1, -2),
    X: (-2, -1, 1),
    Y: (1, -2, -1),
}

_TRI_PLUS_PLANAR = {**_TRI_PLUS, Y: (-1, -2, -1)}

_BASE = {
    LatticeKind.LINE: (("z",), {Z: (-1,)}, (Z,)),
    LatticeKind.SQUARE: (("x", "z"), {Z: (0, -1), X: (-1, 0)}, (Z, X)),
    LatticeKind.CUBIC: (
        ("x", "y", "z"),
        {Z: (0, 0, -1), X: (-1, 0, 0), Y: (0, -1, 0)},
        (Z, X, Y),
    ),
    LatticeKind.TRIANGULAR: (("x", "y", "z"), _TRI_PLUS, (Z, Y, X)),
    LatticeKind.KAGOME: (("x", "y", "z"), _TRI_PLUS, _KAGOME_ORDERING[KagomeSite.P]),
}


def lattice_spec(
    kind: LatticeKind | str,
    ordering: Sequence[PauliAxis | str] | None = None,
    origin_type: KagomeSite | str | None = None,
    convention: TriangularConvention | str = TriangularConvention.LITERAL,
) -> LatticeSpec:
    """
    Build the displacement table for ``kind``.

    ``ordering`` overrides the default sub-step order. For kagome, the default
    order depends on ``origin_type`` (``p`` when not given). ``convention``
    only matters for triangular and kagome labels.
    """
    try:
        kind = LatticeKind(kind)
    except ValueError:
        raise ValueError(
            f"unknown lattice kind {kind!r}; expected one of {[k.value for k in LatticeKind]}"
        ) from None
    convention = TriangularConvention(convention)
    names, plus, default_order = _BASE[kind]
    site = None
    conv = None
    if kind in (LatticeKind.TRIANGULAR, LatticeKind.KAGOME):
        conv = convention
        if conv is TriangularConvention.PLANAR:
            plus = _TRI_PLUS_PLANAR
    if kind is LatticeKind.KAGOME:
        site = KagomeSite(origin_type) if origin_type is not None else KagomeSite.P
        default_order = _KAGOME_ORDERING[site]
    elif origin_type is not None:
        raise ValueError("origin_type only applies to the kagome lattice")
    order = tuple(PauliAxis.parse(a) for a in ordering) if ordering else default_order
    spec = LatticeSpec(kind, names, _table(plus), order, site, conv)
    if site is not None:
        _check_kagome_ordering(site, order)
    return spec


def kagome_ordering(origin_type: KagomeSite | str) -> tuple[PauliAxis, ...]:
    return _KAGOME_ORDERING[KagomeSite(origin_type)]


def _check_kagome_ordering(site: KagomeSite, order: Iterable[PauliAxis]) -> None:
    # every sub-step moves the walker to the other sublattice on that axis' lines
    current = site
    for axis in order:
        if axis not in current.axes:
            raise KagomeClassificationError(
                f"ordering {[a.value for a in order]} uses axis {axis.value} on a "
                f"type-{current.value} site, which lacks it"
            )
        current = _move(current, axis)
    if current is not site:
        raise KagomeClassificationError(
            f"ordering {[a.value for a in order]} does not return a type-{site.value} "
            f"walker to type {site.value} after one step"
        )


def _move(site: KagomeSite, axis: PauliAxis) -> KagomeSite:
    n1, n2 = _KAGOME_PARITY[site]
    # X lines join o-p, Y lines p-q, Z lines o-q
    flip = {X: (1, 0), Y: (0, 1), Z: (1, 1)}[axis]
    return _PARITY_KAGOME[((n1 + flip[0]) % 2, (n2 + flip[1]) % 2)]


def _axis_counts(deltas: np.ndarray, table: Mapping[PauliAxis, Displacement]) -> tuple[np.ndarray, np.ndarray]:
    """
    Integer move counts ``(a, b, c)`` with ``delta = a*D_X + b*D_Y + c*D_Z`` per row.

    Returns the counts and a mask of rows that admit an integer solution. When
    the three displacements are coplanar the solution is taken with ``c = 0``;
    the sublattice parity does not depend on that choice.
    """
    basis = np.array([table[X], table[Y], table[Z]], dtype=float).T
    if abs(np.linalg.det(basis)) < 0.5:
        basis = basis[:, :2]
    sol = np.linalg.lstsq(basis, deltas.T.astype(float), rcond=None)[0].T
    counts = np.rint(sol).astype(np.int64)
    ok = np.all(counts @ basis.T.astype(np.int64) == deltas, axis=1)
    if counts.shape[1] == 2:
        counts = np.column_stack([counts, np.zeros(len(counts), dtype=np.int64)])
    return counts, ok


def kagome_site_types(
    positions: np.ndarray,
    origin: Sequence[int] = (0, 0, 0),
    origin_type: KagomeSite | str = KagomeSite.P,
    convention: TriangularConvention | str = TriangularConvention.LITERAL,
) -> list[KagomeSite]:
    """
    Sublattice of each row of ``positions`` obtained by propagating
    ``origin_type`` along kagome displacements.

    Raises
    ------
    KagomeClassificationError
        If a position is not an integer combination of the three axis
        displacements, or lands on a hole of the kagome net.
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=np.int64))
    if positions.shape[1] != 3 or len(origin) != 3:
        raise KagomeClassificationError("kagome positions carry three integer labels")
    table = _TRI_PLUS_PLANAR if TriangularConvention(convention) is TriangularConvention.PLANAR else _TRI_PLUS
    counts, ok = _axis_counts(positions - np.asarray(origin, dtype=np.int64), table)
    if not ok.all():
        bad = tuple(int(v) for v in positions[np.argmin(ok)])
        raise KagomeClassificationError(
            f"{bad} is not reachable from {tuple(origin)} by kagome displacements"
        )
    n1, n2 = _KAGOME_PARITY[KagomeSite(origin_type)]
    p1 = (n1 + counts[:, 0] + counts[:, 2]) % 2
    p2 = (n2 + counts[:, 1] + counts[:, 2]) % 2
    holes = (p1 == 1) & (p2 == 1)
    if holes.any():
        bad = tuple(int(v) for v in positions[np.argmax(holes)])
        raise KagomeClassificationError(
            f"{bad} falls on a hole of the kagome net seeded at {tuple(origin)}"
        )
    return _SITE_BY_CODE[p1 + 2 * p2].tolist()


def kagome_site_type(
    position: Sequence[int],
    origin: Sequence[int] = (0, 0, 0),
    origin_type: KagomeSite | str = KagomeSite.P,
    convention: TriangularConvention | str = TriangularConvention.LITERAL,
) -> KagomeSite:
    if len(position) != 3:
        raise KagomeClassificationError("kagome positions carry three integer labels")
    return kagome_site_types(np.array([position]), origin, origin_type, convention)[0]


def kagome_site_axes(
    position: Sequence[int],
    origin: Sequence[int] = (0, 0, 0),
    origin_type: KagomeSite | str = KagomeSite.P,
    convention: TriangularConvention | str = TriangularConvention.LITERAL,
) -> frozenset[PauliAxis]:
    """Axes available at ``position``: o -> {X, Z}, p -> {X, Y}, q -> {Y, Z}."""
    return kagome_site_type(position, origin, origin_type, convention).axes
