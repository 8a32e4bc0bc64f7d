from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Any

import sympy

from sigmacat.algebra import Form, GroupBackend
from sigmacat.utils.exact import ZERO, Length, rational

from .base import GeometryError, ModelMismatchError, ModelSpace

Vector = tuple[sympy.Rational, ...]


def parse_vector(text: str) -> Vector:
    """Parse ``"1,0"``, ``"(1, -1/2)"`` or ``"1 0"`` into a rational vector."""
    cleaned = text.strip().strip("()[]").replace(",", " ")
    try:
        return tuple(rational(part) for part in cleaned.split())
    except (ValueError, TypeError, sympy.SympifyError) as err:
        msg = f"Invalid rational vector '{text}'"
        raise GeometryError(msg) from err


def rational_gcd(values: list[sympy.Rational]) -> sympy.Rational:
    """Largest positive rational r with every value an integer multiple of r."""
    numerators = [abs(int(v.p)) for v in values if v]
    denominators = [int(v.q) for v in values if v]
    if not numerators:
        return sympy.Integer(1)
    return sympy.Rational(math.gcd(*numerators), math.lcm(*denominators))


def inner(p: Vector, q: Vector) -> sympy.Rational:
    """Exact inner product."""
    return sum((a * b for a, b in zip(p, q, strict=True)), ZERO)


@dataclass(frozen=True)
class EuclideanModel(ModelSpace):
    """R^d with G acting by translations given on generators.

    Generator ``i`` translates by ``translations[i]``; the action is the
    homomorphism through exponent sums, so generators without a well-defined
    exponent sum (``a`` in BS(1,m)) must translate by zero.
    """

    group: GroupBackend
    translations: tuple[Vector, ...]
    origin: Vector | None = field(default=None)

    def __post_init__(self) -> None:
        if len(self.translations) != self.group.rank():
            msg = (
                f"{self.group.name()} has {self.group.rank()} generators but "
                f"{len(self.translations)} translation vectors were given"
            )
            raise GeometryError(msg)
        dimensions = {len(v) for v in self.translations}
        if len(dimensions) != 1 or 0 in dimensions:
            msg = f"Translation vectors must share one positive dimension: {dimensions}"
            raise GeometryError(msg)
        object.__setattr__(
            self,
            "translations",
            tuple(tuple(rational(c) for c in v) for v in self.translations),
        )
        for index, vector in enumerate(self.translations):
            own = self.group.exponent_sums(self.group.letter(index))[index]
            if own == 0 and any(vector):
                symbol = self.group.generators[index]
                msg = (
                    f"Generator '{symbol}' of {self.group.name()} has no invariant "
                    "exponent sum; its translation must be zero"
                )
                raise GeometryError(msg)
        if self.origin is None:
            object.__setattr__(self, "origin", (ZERO,) * self.dimension)
        else:
            object.__setattr__(self, "origin", tuple(rational(c) for c in self.origin))

    @property
    def dimension(self) -> int:
        """Dimension d of R^d."""
        return len(self.translations[0])

    def name(self) -> str:
        return f"Euclidean({self.dimension})"

    @property
    def base_point(self) -> Vector:
        return self.origin

    @property
    def is_translation(self) -> bool:
        return True

    def translation(self, g: Form) -> Vector:
        """Translation vector of a group element."""
        result = [ZERO] * self.dimension
        for exponent, vector in zip(
            self.group.exponent_sums(g), self.translations, strict=True
        ):
            if exponent:
                for i, c in enumerate(vector):
                    result[i] += exponent * c
        return tuple(result)

    def character(self, e: Vector, g: Form) -> sympy.Rational:
        """The character chi_e(g) = <tau(g), e>."""
        return inner(self.translation(g), e)

    def act_point(self, g: Form, p: Vector) -> Vector:
        return tuple(a + b for a, b in zip(p, self.translation(g), strict=True))

    def act_boundary(self, g: Form, e: Vector) -> Vector:  # noqa: ARG002
        return e

    def check_direction(self, e: Any) -> None:
        if not isinstance(e, tuple) or len(e) != self.dimension:
            msg = f"{e!r} is not a direction of {self.name()}"
            raise ModelMismatchError(msg)
        if not any(e):
            msg = "The zero vector is not a direction"
            raise GeometryError(msg)

    def busemann(self, e: Vector, p: Vector) -> sympy.Rational:
        return inner(p, e)

    def distance(self, p: Vector, q: Vector) -> Length:
        return Length(sum(((a - b) ** 2 for a, b in zip(p, q, strict=True)), ZERO))

    def lipschitz_squared(self, e: Vector) -> sympy.Rational:
        return inner(e, e)

    def orbit_closure_sample(
        self,
        e: Vector,
        depth: int,  # noqa: ARG002
        generators: list[Form] | None = None,  # noqa: ARG002
    ) -> list[Vector]:
        self.check_direction(e)
        return [e]

    def scale_direction(self, e: Vector) -> Vector:
        self.check_direction(e)
        values = [inner(v, e) for v in self.translations]
        factor = rational_gcd(values) if any(values) else rational_gcd(list(e))
        return tuple(c / factor for c in e)

    def sample_directions(
        self,
        count: int,
        seed: int = 0,  # noqa: ARG002
    ) -> list[Vector]:
        if count < 1:
            msg = "At least one direction must be sampled"
            raise GeometryError(msg)
        if self.dimension == 1:
            return [(sympy.Integer(1),), (sympy.Integer(-1),)][:count]
        bound = 1
        while True:
            candidates = _primitive_vectors(self.dimension, bound)
            if len(candidates) >= count:
                break
            bound += 1
        step = sympy.Rational(len(candidates), count)
        chosen = [candidates[int(sympy.floor(i * step))] for i in range(count)]
        return [tuple(sympy.Integer(c) for c in v) for v in chosen]

    def parse_direction(self, text: str) -> Vector:
        vector = parse_vector(text)
        self.check_direction(vector)
        return vector

    def format_direction(self, e: Vector) -> str:
        return "(" + ", ".join(str(c) for c in e) + ")"

    def direction_to_json(self, e: Vector) -> list[str]:
        return [str(c) for c in e]

    def direction_from_json(self, data: Any) -> Vector:
        vector = tuple(rational(c) for c in data)
        self.check_direction(vector)
        return vector

    def point_to_json(self, p: Vector) -> list[str]:
        return [str(c) for c in p]

    def point_from_json(self, data: Any) -> Vector:
        point = tuple(rational(c) for c in data)
        if len(point) != self.dimension:
            msg = f"Point {data!r} does not live in {self.name()}"
            raise ModelMismatchError(msg)
        return point

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "euclidean",
            "translations": {
                symbol: [str(c) for c in vector]
                for symbol, vector in zip(
                    self.group.generators, self.translations, strict=True
                )
            },
            "origin": self.point_to_json(self.origin),
        }


def _primitive_vectors(dimension: int, bound: int) -> list[tuple[int, ...]]:
    """Primitive integer vectors of max-norm <= bound, starting at (1, 0, ...)."""
    vectors = [
        v
        for v in product(range(-bound, bound + 1), repeat=dimension)
        if any(v) and math.gcd(*v) == 1
    ]
    if dimension == 2:  # noqa: PLR2004
        vectors.sort(key=lambda v: math.atan2(v[1], v[0]) % (2 * math.pi))
        return vectors
    first = tuple(1 if i == 0 else 0 for i in range(dimension))
    vectors.sort(key=lambda v: (v != first, max(map(abs, v)), [-c for c in v]))
    return vectors
