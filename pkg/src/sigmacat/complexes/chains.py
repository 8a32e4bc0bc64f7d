from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from sigmacat.algebra import (
    BackendMismatchError,
    Form,
    GroundRing,
    GroundRingMismatchError,
    GroupBackend,
    GroupRingElem,
)


class ComplexError(Exception):
    """Base exception for chain and chain-complex errors."""


class DimensionMismatchError(ComplexError):
    """Raised when chains of different dimensions are combined."""

    def __init__(self, left: int, right: int) -> None:
        super().__init__(f"Cannot combine chains of dimensions {left} and {right}")


class Cell(NamedTuple):
    """The translate ``g * x`` of a basis symbol ``x``."""

    symbol: str
    form: Form


@dataclass(frozen=True)
class Chain:
    """A finite K-linear combination of cells of one dimension."""

    group: GroupBackend
    ring: GroundRing
    dimension: int
    terms: Mapping[Cell, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "terms",
            {Cell(*cell): c for cell, c in self.terms.items() if c},
        )

    @classmethod
    def zero(cls, group: GroupBackend, ring: GroundRing, dimension: int) -> Chain:
        """The zero chain."""
        return cls(group, ring, dimension, {})

    @classmethod
    def cell(
        cls,
        group: GroupBackend,
        ring: GroundRing,
        dimension: int,
        cell: Cell,
        coefficient: object = 1,
    ) -> Chain:
        """A single cell with a coefficient."""
        return cls(group, ring, dimension, {cell: ring.scalar(coefficient)})

    @classmethod
    def from_components(
        cls,
        group: GroupBackend,
        ring: GroundRing,
        dimension: int,
        components: Mapping[str, GroupRingElem],
    ) -> Chain:
        """Assemble ``sum_x lambda_x * x`` from group-ring coefficients."""
        terms: dict[Cell, Any] = {}
        for symbol, element in components.items():
            for form, c in element.terms.items():
                terms[Cell(symbol, form)] = c
        return cls(group, ring, dimension, terms)

    def _check(self, other: Chain) -> None:
        if self.group != other.group:
            raise BackendMismatchError(self.group, other.group)
        if self.ring != other.ring:
            raise GroundRingMismatchError(self.ring, other.ring)
        if self.dimension != other.dimension and self.terms and other.terms:
            raise DimensionMismatchError(self.dimension, other.dimension)

    def __add__(self, other: Chain) -> Chain:
        self._check(other)
        terms = dict(self.terms)
        zero = self.ring.domain.zero
        for cell, c in other.terms.items():
            terms[cell] = terms.get(cell, zero) + c
        dimension = self.dimension if self.terms else other.dimension
        return Chain(self.group, self.ring, dimension, terms)

    def __neg__(self) -> Chain:
        return self.scale(-self.ring.domain.one)

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (
            self.group == other.group
            and self.ring == other.ring
            and dict(self.terms) == dict(other.terms)
            and (self.dimension == other.dimension or not self.terms)
        )

    def __hash__(self) -> int:
        return hash((self.dimension, frozenset(self.terms.items())))

    def scale(self, scalar: Any) -> Chain:
        """Multiply every coefficient by a scalar of the ground ring."""
        value = self.ring.scalar(scalar)
        return Chain(
            self.group,
            self.ring,
            self.dimension,
            {cell: c * value for cell, c in self.terms.items()},
        )

    def translate(self, g: Form) -> Chain:
        """Left action of a group element on every cell."""
        mul = self.group.mul
        return Chain(
            self.group,
            self.ring,
            self.dimension,
            {Cell(cell.symbol, mul(g, cell.form)): c for cell, c in self.terms.items()},
        )

    def act(self, element: GroupRingElem) -> Chain:
        """Left multiplication by a group-ring element."""
        result = Chain.zero(self.group, self.ring, self.dimension)
        for g, c in element.terms.items():
            result = result + self.translate(g).scale(c)
        return result

    def support(self) -> list[Cell]:
        """Cells with nonzero coefficient, sorted."""
        return sorted(self.terms)

    def symbols(self) -> set[str]:
        """Basis symbols occurring in the chain."""
        return {cell.symbol for cell in self.terms}

    def component(self, symbol: str) -> GroupRingElem:
        """The group-ring coefficient of a basis symbol."""
        return GroupRingElem(
            self.group,
            self.ring,
            {cell.form: c for cell, c in self.terms.items() if cell.symbol == symbol},
        )

    def coefficient(self, cell: Cell) -> Any:
        """Coefficient of one cell (zero when absent)."""
        return self.terms.get(Cell(*cell), self.ring.domain.zero)

    def format(self) -> str:
        """Readable rendering grouped by basis symbol."""
        if not self.terms:
            return "0"
        pieces = []
        for symbol in sorted(self.symbols()):
            component = self.component(symbol)
            text = component.format()
            if len(component.terms) > 1:
                text = f"({text})"
            elif text == "1":
                text = ""
            elif text == "-1":
                text = "-"
            pieces.append(f"{text}{' ' if text not in ('', '-') else ''}{symbol}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()


def chain_sum(
    group: GroupBackend, ring: GroundRing, dimension: int, chains: Iterable[Chain]
) -> Chain:
    """Sum of any number of chains."""
    terms: dict[Cell, Any] = {}
    zero = ring.domain.zero
    for chain in chains:
        for cell, c in chain.terms.items():
            terms[cell] = terms.get(cell, zero) + c
    return Chain(group, ring, dimension, terms)
