"""Seeded property checks behind ``sigma selftest``."""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass, field

from .algebra import (
    BaumslagSolitar,
    FreeAbelian,
    FreeGroup,
    GroundRing,
    GroupBackend,
    GroupRingElem,
)
from .complexes import Cell, Chain, Presentation, fox_resolution
from .config import default_relators
from .finitary import Window, identity_map, multiplication_map
from .geometry import EuclideanModel, build_control
from .novikov import NovikovRing

RATIONALS = GroundRing("rationals")


@dataclass
class SelftestReport:
    results: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.results)


def _pick(rng: random.Random, group: GroupBackend, radius: int = 3) -> object:
    return rng.choice(group.ball(radius))


def _element(rng: random.Random, group: GroupBackend) -> GroupRingElem:
    pairs = [(_pick(rng, group, 2), rng.randint(-3, 3)) for _ in range(3)]
    return GroupRingElem.of(group, RATIONALS, pairs)


def check_group_laws(rng: random.Random, samples: int) -> str:
    """Associativity, inverses and the identity in every built-in backend."""
    for group in (
        FreeAbelian(("a", "b")),
        FreeGroup(("a", "b")),
        BaumslagSolitar(2),
    ):
        for _ in range(samples):
            x, y, z = (_pick(rng, group) for _ in range(3))
            mul = group.mul
            if mul(mul(x, y), z) != mul(x, mul(y, z)):
                return f"associativity fails in {group.name()}"
            if mul(x, group.inverse(x)) != group.identity:
                return f"inverse fails in {group.name()}"
            if mul(group.identity, x) != x:
                return f"identity fails in {group.name()}"
    return ""


def check_ring_axioms(rng: random.Random, samples: int) -> str:
    """Distributivity and associativity of the group ring of F2."""
    group = FreeGroup(("a", "b"))
    for _ in range(samples):
        u, v, w = (_element(rng, group) for _ in range(3))
        if u * (v + w) != u * v + u * w:
            return "distributivity fails"
        if (u * v) * w != u * (v * w):
            return "associativity fails"
    return ""


def check_valuation_laws(rng: random.Random, samples: int) -> str:
    """v(c + c') >= min, v(gc) = v(c) + chi(g) and v(lc) = v(c) on Z^2."""
    group = FreeAbelian(("a", "b"))
    complex_ = fox_resolution(
        Presentation(group, RATIONALS, tuple(default_relators(group)))
    )
    model = EuclideanModel(group, ((1, 0), (0, 1)))
    cm = build_control(model, complex_)
    e = (1, 2)

    def chain() -> Chain:
        terms = {
            Cell(rng.choice(complex_.basis(1)), _pick(rng, group)): RATIONALS.scalar(
                rng.randint(1, 4)
            )
            for _ in range(3)
        }
        return Chain(group, RATIONALS, 1, terms)

    for _ in range(samples):
        c, c2 = chain(), chain()
        g = _pick(rng, group)
        if (c + c2).terms and cm.value(e, c + c2) < min(
            cm.value(e, c), cm.value(e, c2)
        ):
            return "ultrametric inequality fails"
        if cm.value(e, c.translate(g)) != cm.value(e, c) + model.character(e, g):
            return "translation law fails"
        if cm.value(e, c.scale(RATIONALS.scalar(-2))) != cm.value(e, c):
            return "scaling law fails"
    return ""


def check_truncation(rng: random.Random, samples: int) -> str:
    """Truncating a product equals the product of truncations, truncated."""
    group = FreeAbelian(("a", "b"))
    ring = NovikovRing(EuclideanModel(group, ((1, 0), (0, 1))), (1, 0))
    floor = 2
    for _ in range(samples):
        pairs = [
            ((rng.randint(0, 3), rng.randint(-2, 2)), rng.randint(-2, 2))
            for _ in range(3)
        ]
        u = ring.element(GroupRingElem.of(group, RATIONALS, pairs))
        v = ring.element(GroupRingElem.of(group, RATIONALS, reversed(pairs)))
        left = (u * v).truncated(floor)
        right = (u.truncated(floor) * v.truncated(floor)).truncated(floor)
        if left.part != right.part:
            return "truncation is not multiplicative"
    return ""


def check_chain_maps(rng: random.Random, samples: int) -> str:  # noqa: ARG001
    """Identity and central translations are chain maps on a window of Z^2."""
    group = FreeAbelian(("a", "b"))
    complex_ = fox_resolution(
        Presentation(group, RATIONALS, tuple(default_relators(group)))
    )
    window = Window(1, (0, 1, 2))
    if not identity_map(complex_).is_chain_map(window):
        return "identity is not a chain map"
    for g in group.ball(1):
        if not multiplication_map(complex_, g).is_chain_map(window):
            return f"multiplication by {group.format(g)} is not a chain map"
    return ""


CHECKS: dict[str, Callable[[random.Random, int], str]] = {
    "group laws": check_group_laws,
    "group ring axioms": check_ring_axioms,
    "valuation laws": check_valuation_laws,
    "Novikov truncation": check_truncation,
    "finitary chain maps": check_chain_maps,
}


def run_selftest(seed: int = 0, samples: int = 20) -> SelftestReport:
    """Run every property check with one seeded generator."""
    rng = random.Random(seed)
    report = SelftestReport()
    for name, check in CHECKS.items():
        failure = check(rng, samples)
        report.results.append((name, not failure, failure))
    return report
