from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import sympy

from sigmacat.complexes import Cell
from sigmacat.geometry import ControlledModel, Direction, Point
from sigmacat.utils.exact import ZERO_LENGTH, Length, compare, exact_min

from .maps import FinitaryMap
from .volley import Volley
from .windows import Window

EXACT = "exact"
WINDOWED = "windowed"


@dataclass(frozen=True)
class ShiftReport:
    """Per-cell shifts of a map toward a direction or a point.

    ``gsh`` is exact when ``label`` is ``"exact"``; a ``"windowed"`` value is
    the minimum over the listed window only. Toward a point, ``event_radius``
    is the R of the guaranteed-shift pair ``(gsh, R)``.
    """

    shifts: dict[Cell, Any]
    gsh: Any
    label: str
    window: str
    event_radius: Any = None
    toward: Any = None
    profile: list[tuple[Any, Any]] = field(default_factory=list)

    @property
    def is_exact(self) -> bool:
        """Whether the guaranteed shift is exact rather than windowed."""
        return self.label == EXACT


def _cell_norm(cm: ControlledModel, cell: Cell, points: Iterable[Point]) -> Length:
    own = cm.points(cell)
    worst = ZERO_LENGTH
    for p in points:
        nearest = min(cm.model.distance(p, q) for q in own)
        worst = max(worst, nearest)
    return worst


def norm(
    cm: ControlledModel, cm2: ControlledModel, phi: FinitaryMap | Volley
) -> Length:
    """Least r with h'(phi(c)) inside the r-neighbourhood of h(c) for all c.

    Equivariance reduces this to the defaults on the basis symbols and the
    overridden cells, counted separately even when an override sits on a
    basis cell. Maps driven by a selector are bounded by their volley.
    """
    volley = phi if isinstance(phi, Volley) else phi.volley
    source = volley.source
    worst = ZERO_LENGTH
    if isinstance(phi, FinitaryMap) and phi.selector is None:
        values = [
            (Cell(symbol, source.group.identity), chain)
            for symbol, chain in phi.defaults.items()
        ]
        values.extend(phi.overrides.items())
        for cell, chain in values:
            worst = max(worst, _cell_norm(cm, cell, cm2.points_of(chain)))
        return worst
    for symbol, candidates in volley.table.items():
        cell = Cell(symbol, source.group.identity)
        for chain in candidates:
            worst = max(worst, _cell_norm(cm, cell, cm2.points_of(chain)))
    return worst


def cell_shift(
    cm: ControlledModel,
    cm2: ControlledModel,
    e: Direction,
    phi: FinitaryMap,
    cell: Cell,
) -> sympy.Expr:
    """sh(y) = v'(phi(y)) - v(y); ``oo`` when phi(y) = 0."""
    return cm2.value(e, phi.image(cell)) - cm.cell_value(e, cell)


def shift_report(
    cm: ControlledModel,
    cm2: ControlledModel,
    e: Direction,
    phi: FinitaryMap,
    window: Window,
    dimensions: Iterable[int] | None = None,
) -> ShiftReport:
    """Per-cell shifts toward e and the guaranteed shift.

    For translation actions and equivariant maps the shift is constant on
    orbits, so the minimum over basis symbols is exact; otherwise it is the
    minimum over the window.
    """
    source = phi.source
    dims = (
        list(dimensions)
        if dimensions is not None
        else list(range(source.length + 1))
    )
    exact = cm.model.is_translation and phi.is_equivariant
    if exact:
        cells = [
            Cell(symbol, source.group.identity)
            for k in dims
            for symbol in source.basis(k)
        ]
    else:
        cells = [cell for k in dims for cell in window.cells(source, k)]
    shifts = {cell: cell_shift(cm, cm2, e, phi, cell) for cell in cells}
    gsh = min(shifts.values(), default=sympy.oo)
    return ShiftReport(
        shifts=shifts,
        gsh=gsh,
        label=EXACT if exact else WINDOWED,
        window="orbit representatives" if exact else window.describe(),
        toward=e,
    )


def gsh_point(
    cm: ControlledModel,
    cm2: ControlledModel,
    b: Point,
    phi: FinitaryMap,
    window: Window,
    dimensions: Iterable[int] | None = None,
) -> ShiftReport:
    """Guaranteed shift toward a point with its event radius.

    sh_b(y) = D_b(y) - D_b(phi(y)). For each candidate radius R (0 and the
    values of D_b on the window) the pair (alpha(R), R) with alpha(R) the
    minimum shift over cells with D_b > R is recorded; candidates keep at
    least half of the window cells. The best pair has the largest alpha and,
    among those, the smallest R.
    """
    source = phi.source
    dims = (
        list(dimensions)
        if dimensions is not None
        else list(range(source.length + 1))
    )
    cells = [cell for k in dims for cell in window.cells(source, k)]
    distances = {cell: cm.cell_distance(b, cell) for cell in cells}
    shifts = {
        cell: distances[cell].value - cm2.dist_to_base(phi.image(cell), b).value
        for cell in cells
    }
    radii = sorted({Length.of(0), *distances.values()})
    profile = []
    for radius in radii:
        outside = [cell for cell in cells if distances[cell] > radius]
        if 2 * len(outside) < len(cells):
            break
        alpha = exact_min([shifts[cell] for cell in outside])
        profile.append((alpha, radius.value))
    if not profile:
        alpha = exact_min(list(shifts.values())) if shifts else sympy.Integer(0)
        profile.append((alpha, sympy.Integer(0)))
    best_alpha, best_radius = profile[0]
    for alpha, radius in profile[1:]:
        if compare(alpha, best_alpha) > 0:
            best_alpha, best_radius = alpha, radius
    return ShiftReport(
        shifts=shifts,
        gsh=best_alpha,
        label=WINDOWED,
        window=window.describe(),
        event_radius=best_radius,
        toward=b,
        profile=profile,
    )
