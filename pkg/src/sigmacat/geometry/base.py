from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import total_ordering
from typing import Any

import sympy

from sigmacat.algebra import Form, GroupBackend
from sigmacat.utils.exact import Length

Point = Any
Direction = Any


class GeometryError(Exception):
    """Base exception for model spaces, directions and control maps."""


class ModelMismatchError(GeometryError):
    """Raised when points, directions or groups of different models meet."""


@total_ordering
@dataclass(frozen=True)
class ScaledValuation:
    """An exact valuation value, or +infinity for the zero chain.

    ``witness`` is the (unnormalized) direction the value was measured
    against; values at one direction are comparable and scale together.
    """

    value: sympy.Rational | None
    witness: Any = None

    @property
    def is_infinite(self) -> bool:
        """Whether this is the valuation of the zero chain."""
        return self.value is None

    def as_expr(self) -> sympy.Expr:
        """The value as a sympy number, with ``oo`` for infinity."""
        return sympy.oo if self.value is None else self.value

    def __lt__(self, other: ScaledValuation) -> bool:
        return self.as_expr() < other.as_expr()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScaledValuation):
            return NotImplemented
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return "+inf" if self.value is None else str(self.value)


class ModelSpace(ABC):
    """A proper CAT(0) space with a cellular isometric action of a group.

    Points and boundary directions are plain immutable values owned by the
    model; all metric data is exact.
    """

    group: GroupBackend

    @abstractmethod
    def name(self) -> str:
        """Short description of the model."""

    @property
    @abstractmethod
    def base_point(self) -> Point:
        """Default base point b."""

    @property
    def is_translation(self) -> bool:
        """Whether the group acts by translations fixing every direction."""
        return False

    @abstractmethod
    def act_point(self, g: Form, p: Point) -> Point:
        """Image of a point under a group element."""

    @abstractmethod
    def act_boundary(self, g: Form, e: Direction) -> Direction:
        """Image of a boundary direction under a group element."""

    @abstractmethod
    def busemann(self, e: Direction, p: Point) -> sympy.Rational:
        """A Busemann function toward ``e``, up to an additive constant."""

    def busemann_delta(self, e: Direction, p: Point, q: Point) -> sympy.Rational:
        """Exact difference ``beta_e(p) - beta_e(q)``."""
        self.check_direction(e)
        return self.busemann(e, p) - self.busemann(e, q)

    @abstractmethod
    def distance(self, p: Point, q: Point) -> Length:
        """Exact distance between two points."""

    def lipschitz_squared(self, e: Direction) -> sympy.Rational:  # noqa: ARG002
        """Square of the Lipschitz constant of the Busemann function toward e."""
        return sympy.Integer(1)

    @abstractmethod
    def orbit_closure_sample(
        self, e: Direction, depth: int, generators: list[Form] | None = None
    ) -> list[Direction]:
        """Directions ``g e`` for ``|g| <= depth`` plus detected limit directions.

        ``generators`` restricts the orbit to the subgroup they generate.
        """

    @abstractmethod
    def check_direction(self, e: Direction) -> None:
        """Raise :class:`ModelMismatchError` for a direction of another model."""

    @abstractmethod
    def scale_direction(self, e: Direction) -> Direction:
        """Positive rescaling making base-orbit valuations coprime integers."""

    @abstractmethod
    def sample_directions(self, count: int, seed: int = 0) -> list[Direction]:
        """Deterministic sample of ``count`` directions."""

    @abstractmethod
    def parse_direction(self, text: str) -> Direction:
        """Parse a direction given on the command line."""

    @abstractmethod
    def format_direction(self, e: Direction) -> str:
        """Readable rendering of a direction."""

    @abstractmethod
    def direction_to_json(self, e: Direction) -> Any:
        """Serializable form of a direction."""

    @abstractmethod
    def direction_from_json(self, data: Any) -> Direction:
        """Inverse of :meth:`direction_to_json`."""

    @abstractmethod
    def point_to_json(self, p: Point) -> Any:
        """Serializable form of a point."""

    @abstractmethod
    def point_from_json(self, data: Any) -> Point:
        """Inverse of :meth:`point_to_json`."""

    @abstractmethod
    def to_json(self) -> dict[str, Any]:
        """Serializable descriptor of the model."""


def orbit_elements(
    group: GroupBackend, depth: int, generators: list[Form] | None = None
) -> list[Form]:
    """Elements of word length <= depth over ``generators`` (all letters by default)."""
    if generators is None:
        return group.ball(depth)
    letters = []
    for g in generators:
        letters.extend([g, group.inverse(g)])
    seen = {group.identity: None}
    frontier = [group.identity]
    for _ in range(depth):
        fresh = []
        for x in frontier:
            for letter in letters:
                y = group.mul(x, letter)
                if y not in seen:
                    seen[y] = None
                    fresh.append(y)
        frontier = fresh
    return list(seen)


def sample_points(model: ModelSpace, count: int) -> list[Point]:
    """The first ``count`` distinct points of the base orbit, by word length."""
    points: dict[Any, None] = {}
    radius = 0
    while len(points) < count:
        before = len(points)
        for g in model.group.ball(radius):
            points.setdefault(model.act_point(g, model.base_point), None)
            if len(points) >= count:
                break
        if radius > 0 and len(points) == before:
            break
        radius += 1
    return list(points)
