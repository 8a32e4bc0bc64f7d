from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import sympy

from sigmacat.complexes import (
    Cell,
    Chain,
    ChainComplex,
    complex_from_json,
    complex_to_json,
)
from sigmacat.utils.exact import ZERO_LENGTH, Length

from .base import Direction, GeometryError, ModelSpace, Point, ScaledValuation

CONTROL_PRESETS = ("base", "boundary")


@dataclass(frozen=True, eq=False)
class ControlledModel:
    """A complex over a model space together with a centerless control map.

    ``table`` holds h(x) for every basis symbol; cells are controlled
    equivariantly, h(g x) = g h(x). Valuations are anchored so that the base
    point has Busemann value 0.
    """

    model: ModelSpace
    complex: ChainComplex
    base: Point
    table: Mapping[str, tuple[Point, ...]] = field(default_factory=dict)
    preset: str = "base"

    def __post_init__(self) -> None:
        if self.model.group != self.complex.group:
            msg = (
                f"The model acts through {self.model.group.name()} but the complex "
                f"is over {self.complex.group.name()}"
            )
            raise GeometryError(msg)
        for basis in self.complex.bases:
            for symbol in basis:
                if not self.table.get(symbol):
                    msg = f"Control map is empty on basis cell '{symbol}'"
                    raise GeometryError(msg)

    def points(self, cell: Cell) -> tuple[Point, ...]:
        """The finite point set h(g x)."""
        return _cell_points(self, Cell(*cell))

    def points_of(self, chain: Chain) -> set[Point]:
        """h(c): the union of h over the support of c."""
        found: set[Point] = set()
        for cell in chain.terms:
            found.update(self.points(cell))
        return found

    def cell_value(self, e: Direction, cell: Cell) -> sympy.Rational:
        """Valuation of a single cell toward e."""
        return _cell_value(self, e, Cell(*cell))

    def value(self, e: Direction, chain: Chain) -> sympy.Expr:
        """min of beta_e - beta_e(b) over h(c); ``oo`` for the zero chain."""
        if not chain.terms:
            return sympy.oo
        return min(_cell_value(self, e, cell) for cell in chain.terms)

    def valuation(self, e: Direction, chain: Chain) -> ScaledValuation:
        """:meth:`value` wrapped with its scaling witness."""
        value = self.value(e, chain)
        return ScaledValuation(None if value is sympy.oo else value, witness=e)

    def dist_to_base(self, chain: Chain, b: Point | None = None) -> Length:
        """D_b(c) = max distance from b to h(c); zero for the zero chain."""
        b = self.base if b is None else b
        if not chain.terms:
            return ZERO_LENGTH
        return max(_cell_distance(self, b, cell) for cell in chain.terms)

    def cell_distance(self, b: Point, cell: Cell) -> Length:
        """D_b of a single cell."""
        return _cell_distance(self, b, Cell(*cell))

    def translate_direction(self, g: Any, e: Direction) -> Direction:
        """Action of a group element on a boundary direction."""
        return self.model.act_boundary(g, e)

    def extend(self, complex_: ChainComplex) -> ControlledModel:
        """Control map on a complex that adds expansion cells to ours."""
        return build_control(
            self.model,
            complex_,
            preset=self.preset,
            base=self.base,
            table=dict(self.table),
        )


@lru_cache(maxsize=1 << 16)
def _cell_points(cm: ControlledModel, cell: Cell) -> tuple[Point, ...]:
    act = cm.model.act_point
    return tuple(act(cell.form, p) for p in cm.table[cell.symbol])


@lru_cache(maxsize=1 << 18)
def _cell_value(cm: ControlledModel, e: Direction, cell: Cell) -> sympy.Rational:
    model = cm.model
    anchor = model.busemann(e, cm.base)
    return min(model.busemann(e, p) for p in _cell_points(cm, cell)) - anchor


@lru_cache(maxsize=1 << 16)
def _cell_distance(cm: ControlledModel, b: Point, cell: Cell) -> Length:
    return max(cm.model.distance(p, b) for p in _cell_points(cm, cell))


def _union(*groups: Iterable[Point]) -> tuple[Point, ...]:
    merged: dict[Point, None] = {}
    for group in groups:
        for p in group:
            merged.setdefault(p, None)
    return tuple(merged)


def build_control(
    model: ModelSpace,
    complex_: ChainComplex,
    *,
    preset: str = "base",
    base: Point | None = None,
    table: Mapping[str, Iterable[Point]] | None = None,
) -> ControlledModel:
    """Assemble h|X from a preset, explicit entries and expansion provenance.

    ``base`` puts every basis cell at the base point. ``boundary`` does so in
    dimension 0 and sets h(x) = h(dx) above; cells with zero boundary stay at
    the base point. Expansion cells get h(xi) = h(x) + h(c) and
    h(eta) = h(x) + h(c) + h(d).
    """
    if preset not in CONTROL_PRESETS:
        msg = f"Unknown control preset '{preset}'. Known: {', '.join(CONTROL_PRESETS)}"
        raise GeometryError(msg)
    b = model.base_point if base is None else base
    resolved: dict[str, tuple[Point, ...]] = {
        symbol: tuple(points) for symbol, points in (table or {}).items() if points
    }

    def points_of(chain: Chain) -> tuple[Point, ...]:
        return _union(
            *(
                (model.act_point(cell.form, p) for p in resolved[cell.symbol])
                for cell in chain.terms
            )
        )

    for k, basis in enumerate(complex_.bases):
        for symbol in basis:
            if symbol in resolved:
                continue
            origin = complex_.provenance.get(symbol)
            if origin is not None:
                parts = [points_of(origin.x), points_of(origin.c)]
                if origin.d is not None:
                    parts.append(points_of(origin.d))
                resolved[symbol] = _union(*parts) or (b,)
            elif preset == "boundary" and k > 0:
                boundary = complex_.boundaries.get(symbol)
                found = points_of(boundary) if boundary is not None else ()
                resolved[symbol] = found or (b,)
            else:
                resolved[symbol] = (b,)
    return ControlledModel(
        model=model, complex=complex_, base=b, table=resolved, preset=preset
    )


def with_base(cm: ControlledModel, base: Point) -> ControlledModel:
    """The same preset rebuilt around another base point."""
    return build_control(cm.model, cm.complex, preset=cm.preset, base=base)


def hausdorff(
    model: ModelSpace, first: Iterable[Point], second: Iterable[Point]
) -> Length:
    """Exact Hausdorff distance between two nonempty finite point sets."""
    first, second = list(first), list(second)
    forward = max(min(model.distance(p, q) for q in second) for p in first)
    backward = max(min(model.distance(p, q) for q in first) for p in second)
    return max(forward, backward)


def valuation(cm: ControlledModel, e: Direction, chain: Chain) -> ScaledValuation:
    """v_e(c) = min of the anchored Busemann function over h(c)."""
    return cm.valuation(e, chain)


def dist_to_base(cm: ControlledModel, b: Point, chain: Chain) -> Length:
    """D_b(c) = max{d(p, b) : p in h(c)}."""
    return cm.dist_to_base(chain, b)


def control_to_json(cm: ControlledModel) -> dict[str, Any]:
    """Model, group, complex and control table as one JSON document."""
    model = cm.model
    return {
        "group": cm.complex.group.to_json(),
        "model": model.to_json(),
        "complex": complex_to_json(cm.complex),
        "preset": cm.preset,
        "base": model.point_to_json(cm.base),
        "table": {
            symbol: [model.point_to_json(p) for p in points]
            for symbol, points in sorted(cm.table.items())
        },
    }


def control_from_json(
    data: dict[str, Any], build_model: Callable[[dict[str, Any], Any], ModelSpace]
) -> ControlledModel:
    """Inverse of :func:`control_to_json`; ``build_model`` reads the model."""
    try:
        complex_ = complex_from_json(data["complex"])
        model = build_model(data["model"], complex_.group)
        table = {
            symbol: tuple(model.point_from_json(p) for p in points)
            for symbol, points in data["table"].items()
        }
        return ControlledModel(
            model=model,
            complex=complex_,
            base=model.point_from_json(data["base"]),
            table=table,
            preset=data.get("preset", "base"),
        )
    except KeyError as err:
        msg = f"Missing field {err} in serialized control data"
        raise GeometryError(msg) from err
