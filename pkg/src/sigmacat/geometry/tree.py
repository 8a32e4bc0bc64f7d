from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Any

import sympy

from sigmacat.algebra import BaumslagSolitar, Form, GroupBackend
from sigmacat.utils.exact import Length, rational

from .base import GeometryError, ModelMismatchError, ModelSpace, orbit_elements

Vertex = tuple[int, sympy.Rational]
OMEGA_NAMES = ("omega", "ω", "w", "down")
_DIGIT_WORD = re.compile(r"^([0-9]*)\(([0-9]+)\)$")


@dataclass(frozen=True)
class TreeEnd:
    """An end of the Bass-Serre tree of BS(1,m).

    ``upper is None`` is the lower end omega fixed by the whole group. Otherwise
    the end is the limit of the vertices ``(n, X mod m^n)`` as n grows, for the
    rational ``X`` read m-adically; rationals are exactly the ends with
    eventually periodic digit words.
    """

    upper: sympy.Rational | None = None

    @property
    def is_omega(self) -> bool:
        """Whether this is the end fixed by the group."""
        return self.upper is None


OMEGA = TreeEnd()


def m_adic_order(delta: sympy.Rational, m: int) -> int | None:
    """Largest integer l with ``delta`` in ``m^l Z_m``; ``None`` for zero."""
    if delta == 0:
        return None
    numerator, denominator = int(delta.p), int(delta.q)
    m_part, rest = 1, denominator
    while (common := math.gcd(rest, m)) > 1:
        rest //= common
        m_part *= common
    depth = 0
    while m**depth % m_part:
        depth += 1
    numerator *= m**depth // m_part
    order = 0
    while numerator % m == 0:
        numerator //= m
        order += 1
    return order - depth


def digits_to_rational(prefix: str, period: str, m: int) -> sympy.Rational:
    """Value of the m-adic digit word ``prefix (period)^infinity``."""
    if any(int(d) >= m for d in prefix + period):
        msg = f"Digits must be smaller than {m}"
        raise GeometryError(msg)
    value = sum(
        (int(d) * sympy.Integer(m) ** i for i, d in enumerate(prefix)),
        sympy.Integer(0),
    )
    block = sum(
        (int(d) * sympy.Integer(m) ** i for i, d in enumerate(period)),
        sympy.Integer(0),
    )
    return value + sympy.Integer(m) ** len(prefix) * block / (1 - m ** len(period))


@dataclass(frozen=True)
class TreeModel(ModelSpace):
    """The Bass-Serre tree of BS(1,m), vertices only, unit edge lengths.

    A vertex is the coset ``g<a>`` stored as ``(n, x mod m^n)`` where ``g`` acts
    as ``z -> m^n z + x``. Each vertex has one neighbour one level down and
    m neighbours one level up; ``t`` moves the base vertex up.
    """

    group: GroupBackend

    def __post_init__(self) -> None:
        if not isinstance(self.group, BaumslagSolitar):
            msg = f"The tree model needs a BS(1,m) group, got {self.group.name()}"
            raise GeometryError(msg)

    @property
    def m(self) -> int:
        """The parameter m of BS(1,m)."""
        return self.group.m

    def name(self) -> str:
        return f"Tree(BS(1,{self.m}))"

    @property
    def base_point(self) -> Vertex:
        return (0, sympy.Integer(0))

    def reduce(self, x: sympy.Rational, level: int) -> sympy.Rational:
        """Representative of ``x mod m^level`` in ``[0, m^level)``."""
        modulus = sympy.Integer(self.m) ** level
        return x - modulus * sympy.floor(x / modulus)

    def vertex(self, level: int, x: object) -> Vertex:
        """Canonical vertex at a level with a coordinate in Z[1/m]."""
        return (int(level), self.reduce(rational(x), int(level)))

    def neighbours(self, v: Vertex) -> list[Vertex]:
        """The lower neighbour first, then the m upper neighbours."""
        level, x = v
        step = sympy.Integer(self.m) ** level
        return [self.vertex(level - 1, x)] + [
            self.vertex(level + 1, x + j * step) for j in range(self.m)
        ]

    def act_point(self, g: Form, p: Vertex) -> Vertex:
        y, k = self.group.affine(g)
        level, x = p
        return self.vertex(level + k, y + sympy.Integer(self.m) ** k * x)

    def act_boundary(self, g: Form, e: TreeEnd) -> TreeEnd:
        if e.is_omega:
            return e
        y, k = self.group.affine(g)
        return TreeEnd(sympy.Integer(self.m) ** k * e.upper + y)

    def check_direction(self, e: Any) -> None:
        if not isinstance(e, TreeEnd):
            msg = f"{e!r} is not an end of {self.name()}"
            raise ModelMismatchError(msg)

    def confluence(self, p: Vertex, q: Vertex) -> int:
        """Level of the highest common ancestor of two vertices."""
        order = m_adic_order(p[1] - q[1], self.m)
        low = min(p[0], q[0])
        return low if order is None else min(low, order)

    def busemann(self, e: TreeEnd, p: Vertex) -> sympy.Rational:
        level, x = p
        if e.is_omega:
            return sympy.Integer(-level)
        order = m_adic_order(x - e.upper, self.m)
        meet = level if order is None else min(level, order)
        return sympy.Integer(2 * meet - level)

    def distance(self, p: Vertex, q: Vertex) -> Length:
        return Length.of(p[0] + q[0] - 2 * self.confluence(p, q))

    def orbit_closure_sample(
        self, e: TreeEnd, depth: int, generators: list[Form] | None = None
    ) -> list[TreeEnd]:
        self.check_direction(e)
        if e.is_omega:
            return [e]
        found: set[TreeEnd] = set()
        for g in orbit_elements(self.group, depth, generators):
            found.add(self.act_boundary(g, e))
            y, k = self.group.affine(g)
            fixed = y / (1 - sympy.Integer(self.m) ** k) if k else None
            if k > 0:
                found.add(TreeEnd(fixed))
            elif k < 0 and e.upper != fixed:
                found.add(OMEGA)
        return sorted(found, key=_end_key)

    def scale_direction(self, e: TreeEnd) -> TreeEnd:
        self.check_direction(e)
        return e

    def sample_directions(
        self,
        count: int,
        seed: int = 0,  # noqa: ARG002
    ) -> list[TreeEnd]:
        if count < 1:
            msg = "At least one direction must be sampled"
            raise GeometryError(msg)
        ends = [OMEGA, TreeEnd(sympy.Integer(0))]
        height = 1
        while len(ends) < count:
            for q in range(1, height + 1):
                for p in range(-height, height + 1):
                    if p and max(abs(p), q) == height and math.gcd(p, q) == 1:
                        ends.append(TreeEnd(sympy.Rational(p, q)))
            height += 1
        return ends[:count]

    def digits(self, e: TreeEnd, count: int) -> str:
        """First ``count`` m-adic digits of an upper end, from level 0.

        Ends whose rational has a denominator sharing factors with m start
        below level 0 and are rendered by value instead.
        """
        if e.is_omega:
            return "ω"
        numerator, denominator = int(e.upper.p), int(e.upper.q)
        if math.gcd(denominator, self.m) != 1:
            return self.format_direction(e)
        word = []
        for _ in range(count):
            digit = numerator * pow(denominator, -1, self.m) % self.m
            word.append(str(digit))
            numerator = (numerator - digit * denominator) // self.m
        return "".join(word)

    def parse_direction(self, text: str) -> TreeEnd:
        cleaned = text.strip()
        if cleaned.lower() in OMEGA_NAMES:
            return OMEGA
        if cleaned.startswith("X="):
            cleaned = cleaned[2:]
        match = _DIGIT_WORD.match(cleaned)
        if match:
            return TreeEnd(digits_to_rational(match.group(1), match.group(2), self.m))
        try:
            return TreeEnd(rational(cleaned))
        except (ValueError, TypeError, sympy.SympifyError) as err:
            msg = (
                f"Invalid tree end '{text}'; "
                "use omega, a rational or a word like 01(10)"
            )
            raise GeometryError(msg) from err

    def format_direction(self, e: TreeEnd) -> str:
        return "ω" if e.is_omega else f"end({e.upper})"

    def direction_to_json(self, e: TreeEnd) -> str:
        return "omega" if e.is_omega else str(e.upper)

    def direction_from_json(self, data: Any) -> TreeEnd:
        return self.parse_direction(str(data))

    def point_to_json(self, p: Vertex) -> list[Any]:
        return [p[0], str(p[1])]

    def point_from_json(self, data: Any) -> Vertex:
        try:
            level, x = data
            return self.vertex(int(level), x)
        except (TypeError, ValueError) as err:
            msg = f"Invalid tree vertex {data!r}"
            raise ModelMismatchError(msg) from err

    def to_json(self) -> dict[str, Any]:
        return {"kind": "tree"}


def _end_key(e: TreeEnd) -> tuple[int, sympy.Rational]:
    return (0, sympy.Integer(0)) if e.is_omega else (1, e.upper)
