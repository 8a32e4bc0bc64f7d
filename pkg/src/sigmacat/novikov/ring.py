"""Truncated elements of the Novikov completion of a group ring."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import sympy

from sigmacat.algebra import Form, GroupRingElem
from sigmacat.geometry import Direction, ModelSpace


class NovikovError(Exception):
    """Base exception for Novikov ring and homology computations."""


class NonUnitError(NovikovError):
    """Raised when an element has no inverse detectable from its lowest term."""


class UnsupportedDirectionError(NovikovError):
    """Raised for directions whose Novikov ring is not handled."""


@dataclass(frozen=True, eq=False)
class NovikovRing:
    """Completion of KG allowing infinite sums going up toward e.

    Only translation actions are supported: then G fixes e, the
    valuation of a group element is the character chi_e(g), and every
    element is stored as a finite part known modulo terms of valuation
    at least a floor.
    """

    model: ModelSpace
    e: Direction

    def __post_init__(self) -> None:
        if not self.model.is_translation:
            msg = (
                f"{self.model.name()} does not act by translations; the Novikov "
                "ring is only handled when G fixes e"
            )
            raise UnsupportedDirectionError(msg)
        self.model.check_direction(self.e)

    @property
    def group(self) -> Any:
        """The group of the model."""
        return self.model.group

    def valuation(self, g: Form) -> sympy.Rational:
        """chi_e(g)."""
        return _character(self.model, self.e, g)

    def element(
        self, part: GroupRingElem, floor: Any = sympy.oo
    ) -> TruncatedNovikovElem:
        """A truncated element; terms at or above ``floor`` are dropped."""
        return TruncatedNovikovElem(self, truncate(self, part, floor), floor)

    def zero(self, ground: Any) -> TruncatedNovikovElem:
        """Exact zero over a ground ring."""
        return self.element(GroupRingElem.zero(self.group, ground))

    def one(self, ground: Any) -> TruncatedNovikovElem:
        """Exact one over a ground ring."""
        return self.element(GroupRingElem.one(self.group, ground))


@lru_cache(maxsize=1 << 16)
def _character(model: ModelSpace, e: Direction, g: Form) -> sympy.Rational:
    return sympy.Rational(model.character(e, g))


def truncate(ring: NovikovRing, part: GroupRingElem, floor: Any) -> GroupRingElem:
    """Drop the terms of valuation >= floor."""
    if floor is sympy.oo:
        return part
    return GroupRingElem(
        part.group,
        part.ring,
        {g: c for g, c in part.terms.items() if ring.valuation(g) < floor},
    )


@dataclass(frozen=True, eq=False)
class TruncatedNovikovElem:
    """An element known modulo the terms of valuation >= ``floor``.

    ``floor`` is ``oo`` for elements of the group ring itself.
    """

    ring: NovikovRing
    part: GroupRingElem
    floor: Any = sympy.oo

    @property
    def valuation(self) -> Any:
        """Least valuation of a term; ``oo`` when the known part is zero."""
        if not self.part.terms:
            return sympy.oo
        return min(self.ring.valuation(g) for g in self.part.terms)

    def is_zero(self) -> bool:
        """Whether the element vanishes modulo its floor."""
        return not self.part.terms

    def lowest_terms(self) -> dict[Form, Any]:
        """Terms of least valuation."""
        m = self.valuation
        return {g: c for g, c in self.part.terms.items() if self.ring.valuation(g) == m}

    def truncated(self, floor: Any) -> TruncatedNovikovElem:
        """The same element read modulo a lower floor."""
        floor = min(floor, self.floor)
        part = truncate(self.ring, self.part, floor)
        return TruncatedNovikovElem(self.ring, part, floor)

    def __add__(self, other: TruncatedNovikovElem) -> TruncatedNovikovElem:
        return nov_add(self, other)

    def __neg__(self) -> TruncatedNovikovElem:
        return TruncatedNovikovElem(self.ring, -self.part, self.floor)

    def __sub__(self, other: TruncatedNovikovElem) -> TruncatedNovikovElem:
        return nov_add(self, -other)

    def __mul__(self, other: TruncatedNovikovElem) -> TruncatedNovikovElem:
        return nov_mul(self, other)

    def format(self) -> str:
        """The known part followed by the floor."""
        if self.floor is sympy.oo:
            return self.part.format()
        return f"{self.part.format()} + O(>={self.floor})"

    def __str__(self) -> str:
        return self.format()


def _check(u: TruncatedNovikovElem, v: TruncatedNovikovElem) -> None:
    if u.ring.model is not v.ring.model or u.ring.e != v.ring.e:
        msg = "Novikov elements toward different directions cannot be combined"
        raise NovikovError(msg)


def nov_add(u: TruncatedNovikovElem, v: TruncatedNovikovElem) -> TruncatedNovikovElem:
    """Sum, known modulo the lower of the two floors."""
    _check(u, v)
    floor = min(u.floor, v.floor)
    return TruncatedNovikovElem(u.ring, truncate(u.ring, u.part + v.part, floor), floor)


def nov_mul(u: TruncatedNovikovElem, v: TruncatedNovikovElem) -> TruncatedNovikovElem:
    """Product uv; unknown tails of one factor meet the lowest terms of the other."""
    _check(u, v)
    floor = min(u.floor + v.valuation, v.floor + u.valuation, u.floor + v.floor)
    return TruncatedNovikovElem(u.ring, truncate(u.ring, u.part * v.part, floor), floor)


def invert_if_unit(u: TruncatedNovikovElem, floor: Any) -> TruncatedNovikovElem:
    """Inverse of u when its lowest stratum is a single unit term c g.

    With w = (c g)^-1 the element w u is 1 - r with r going strictly up, so
    u^-1 = (1 + r + r^2 + ...) w. The result is known modulo
    min(floor, floor(u) - 2 v(u)).
    """
    if u.is_zero():
        msg = "Zero is not a unit"
        raise NonUnitError(msg)
    lowest = u.lowest_terms()
    ground = u.part.ring
    if len(lowest) != 1:
        msg = f"{u.format()} has {len(lowest)} terms of least valuation"
        raise NonUnitError(msg)
    g, c = next(iter(lowest.items()))
    if not ground.is_unit(c):
        msg = f"Leading coefficient {ground.dump(c)} of {u.format()} is not a unit"
        raise NonUnitError(msg)
    ring = u.ring
    group = ring.group
    m = u.valuation
    target = min(floor, u.floor - 2 * m)
    w = ring.element(
        GroupRingElem(group, ground, {group.inverse(g): ground.inverse(c)})
    )
    one = ring.one(ground)
    r = one - w * u
    depth = target + m
    series = one.truncated(depth)
    if not r.is_zero() and depth is not sympy.oo:
        power = (one * r).truncated(depth)
        while not power.is_zero():
            series = series + power
            power = (power * r).truncated(depth)
    elif not r.is_zero():
        msg = "An exact inverse of a non-monomial element needs a finite floor"
        raise NonUnitError(msg)
    result = (series * w).truncated(target)
    return TruncatedNovikovElem(ring, result.part, target)
