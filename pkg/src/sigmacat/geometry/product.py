from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any

import sympy

from sigmacat.algebra import DirectProduct, Form
from sigmacat.utils.exact import Length, rational

from .base import GeometryError, ModelMismatchError, ModelSpace

_SEPARATOR = re.compile(r"[|;]")


@dataclass(frozen=True)
class Join:
    """The point of the join boundary between ``left`` and ``right``.

    Weights are nonnegative coprime integers after canonicalization; a factor
    with weight zero drops out and its direction is stored as ``None``.
    """

    w: sympy.Rational
    w2: sympy.Rational
    left: Any
    right: Any

    @property
    def is_pure(self) -> bool:
        """Whether one of the weights vanishes."""
        return self.w == 0 or self.w2 == 0

    @property
    def is_mixed(self) -> bool:
        """Whether both weights are positive."""
        return not self.is_pure


def canonical_join(w: object, w2: object, left: Any, right: Any) -> Join:
    """Scale the weights to coprime integers and drop zero-weight factors."""
    w, w2 = rational(w), rational(w2)
    if w < 0 or w2 < 0 or (w == 0 and w2 == 0):
        msg = f"Join weights must be nonnegative and not both zero: ({w}, {w2})"
        raise GeometryError(msg)
    numerators = [int(x.p) for x in (w, w2) if x]
    denominators = [int(x.q) for x in (w, w2) if x]
    factor = sympy.Rational(math.lcm(*denominators), math.gcd(*numerators))
    return Join(
        w * factor,
        w2 * factor,
        left if w else None,
        right if w2 else None,
    )


def farey_weights(order: int) -> list[tuple[sympy.Rational, sympy.Rational]]:
    """Weight pairs ``(1 - f, f)`` for the Farey fractions f of an order."""
    fractions = sorted(
        {
            sympy.Rational(p, q)
            for q in range(1, max(order, 1) + 1)
            for p in range(q + 1)
        }
    )
    return [(1 - f, f) for f in fractions]


@dataclass(frozen=True)
class ProductModel(ModelSpace):
    """The product M x M' with the product metric and the product action."""

    group: DirectProduct
    left: ModelSpace
    right: ModelSpace

    def __post_init__(self) -> None:
        if not isinstance(self.group, DirectProduct):
            msg = (
                "A product model needs a direct product group, "
                f"got {self.group.name()}"
            )
            raise GeometryError(msg)
        if self.left.group != self.group.left or self.right.group != self.group.right:
            msg = "Factor models must act through the factors of the product group"
            raise ModelMismatchError(msg)

    def name(self) -> str:
        return f"{self.left.name()} x {self.right.name()}"

    @property
    def base_point(self) -> tuple[Any, Any]:
        return (self.left.base_point, self.right.base_point)

    @property
    def is_translation(self) -> bool:
        return self.left.is_translation and self.right.is_translation

    def character(self, e: Join, g: Form) -> sympy.Rational:
        """Weighted sum of the factor characters (translation factors only)."""
        value = sympy.Integer(0)
        if e.w:
            value += e.w * self.left.character(e.left, g[0])
        if e.w2:
            value += e.w2 * self.right.character(e.right, g[1])
        return value

    def act_point(self, g: Form, p: tuple[Any, Any]) -> tuple[Any, Any]:
        return (self.left.act_point(g[0], p[0]), self.right.act_point(g[1], p[1]))

    def act_boundary(self, g: Form, e: Join) -> Join:
        return Join(
            e.w,
            e.w2,
            self.left.act_boundary(g[0], e.left) if e.w else None,
            self.right.act_boundary(g[1], e.right) if e.w2 else None,
        )

    def check_direction(self, e: Any) -> None:
        if not isinstance(e, Join):
            msg = f"{e!r} is not a join direction of {self.name()}"
            raise ModelMismatchError(msg)
        if e.w:
            self.left.check_direction(e.left)
        if e.w2:
            self.right.check_direction(e.right)

    def busemann(self, e: Join, p: tuple[Any, Any]) -> sympy.Rational:
        value = sympy.Integer(0)
        if e.w:
            value += e.w * self.left.busemann(e.left, p[0])
        if e.w2:
            value += e.w2 * self.right.busemann(e.right, p[1])
        return value

    def distance(self, p: tuple[Any, Any], q: tuple[Any, Any]) -> Length:
        return Length(
            self.left.distance(p[0], q[0]).squared
            + self.right.distance(p[1], q[1]).squared
        )

    def lipschitz_squared(self, e: Join) -> sympy.Rational:
        """Square of the Lipschitz constant of the joined Busemann function."""
        value = sympy.Integer(0)
        if e.w:
            value += e.w**2 * self.left.lipschitz_squared(e.left)
        if e.w2:
            value += e.w2**2 * self.right.lipschitz_squared(e.right)
        return value

    def orbit_closure_sample(
        self, e: Join, depth: int, generators: list[Form] | None = None
    ) -> list[Join]:
        self.check_direction(e)
        left_generators = right_generators = None
        if generators is not None:
            left_generators = [g[0] for g in generators]
            right_generators = [g[1] for g in generators]
        lefts = (
            self.left.orbit_closure_sample(e.left, depth, left_generators)
            if e.w
            else [None]
        )
        rights = (
            self.right.orbit_closure_sample(e.right, depth, right_generators)
            if e.w2
            else [None]
        )
        return [Join(e.w, e.w2, a, b) for a, b in cartesian(lefts, rights)]

    def scale_direction(self, e: Join) -> Join:
        self.check_direction(e)
        return canonical_join(
            e.w,
            e.w2,
            self.left.scale_direction(e.left) if e.w else None,
            self.right.scale_direction(e.right) if e.w2 else None,
        )

    def sample_directions(self, count: int, seed: int = 0) -> list[Join]:
        if count < 1:
            msg = "At least one direction must be sampled"
            raise GeometryError(msg)
        side = max(1, math.isqrt(count - 1) + 1)
        pairs = list(
            cartesian(
                self.left.sample_directions(side, seed),
                self.right.sample_directions(side, seed),
            )
        )
        order = 1
        while len(farey_weights(order)) * len(pairs) < 2 * count and order < count:
            order += 1
        weights = farey_weights(order)
        samples: list[Join] = []
        seen: set[Join] = set()
        for k in range(len(weights) * len(pairs)):
            w, w2 = weights[k % len(weights)]
            left, right = pairs[(k // len(weights)) % len(pairs)]
            join = canonical_join(w, w2, left, right)
            if join not in seen:
                seen.add(join)
                samples.append(join)
            if len(samples) == count:
                break
        return samples

    def parse_direction(self, text: str) -> Join:
        parts = [part.strip() for part in _SEPARATOR.split(text)]
        if len(parts) != 3:  # noqa: PLR2004
            msg = f"Join directions look like 'w,w2 | e | e2', got '{text}'"
            raise GeometryError(msg)
        weights = [rational(x) for x in parts[0].replace(",", " ").split()]
        if len(weights) != 2:  # noqa: PLR2004
            msg = f"Expected two join weights, got '{parts[0]}'"
            raise GeometryError(msg)
        w, w2 = weights
        left = self.left.parse_direction(parts[1]) if w else None
        right = self.right.parse_direction(parts[2]) if w2 else None
        join = canonical_join(w, w2, left, right)
        self.check_direction(join)
        return join

    def format_direction(self, e: Join) -> str:
        left = self.left.format_direction(e.left) if e.w else "-"
        right = self.right.format_direction(e.right) if e.w2 else "-"
        return f"[{e.w}:{e.w2}] {left} * {right}"

    def direction_to_json(self, e: Join) -> dict[str, Any]:
        return {
            "weights": [str(e.w), str(e.w2)],
            "left": self.left.direction_to_json(e.left) if e.w else None,
            "right": self.right.direction_to_json(e.right) if e.w2 else None,
        }

    def direction_from_json(self, data: Any) -> Join:
        w, w2 = (rational(x) for x in data["weights"])
        left = self.left.direction_from_json(data["left"]) if w else None
        right = self.right.direction_from_json(data["right"]) if w2 else None
        return canonical_join(w, w2, left, right)

    def point_to_json(self, p: tuple[Any, Any]) -> list[Any]:
        return [self.left.point_to_json(p[0]), self.right.point_to_json(p[1])]

    def point_from_json(self, data: Any) -> tuple[Any, Any]:
        return (self.left.point_from_json(data[0]), self.right.point_from_json(data[1]))

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "product",
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }
