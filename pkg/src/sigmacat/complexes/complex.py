from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from sigmacat.algebra import (
    Form,
    GroundRing,
    GroupBackend,
    GroupRingElem,
    Word,
    fox_derivative,
)

from .chains import Cell, Chain, ComplexError, chain_sum

DEFAULT_TOP = 3
BASE_SYMBOL = "x0"


class BoundaryValidationError(ComplexError):
    """Raised when a complex fails the dd = 0 or augmentation checks."""

    def __init__(self, symbol: str, reason: str) -> None:
        self.symbol = symbol
        super().__init__(f"Validation failed at basis cell '{symbol}': {reason}")


class NonTrivialModuleError(ComplexError):
    """Raised when the Fox construction is asked for a non-trivial module."""


@dataclass(frozen=True)
class Presentation:
    """Generators and relators of a group plus the rank and kind of the module A."""

    group: GroupBackend
    ring: GroundRing
    relators: tuple[Word, ...] = ()
    module_rank: int = 1
    trivial_module: bool = True


@dataclass(frozen=True)
class Provenance:
    """How an expansion cell was created: ``x`` and the chains ``c`` and ``d``."""

    x: Chain
    c: Chain
    d: Chain | None = None


@dataclass(frozen=True)
class ChainComplex:
    """A based free chain complex of KG-modules resolving A = K^r.

    ``bases[k]`` lists the symbols of X_k; ``boundaries`` maps every symbol of
    dimension >= 1 to the chain of its boundary; ``augmentation`` maps every
    symbol of X_0 to its image in K^r as a tuple of scalars. Dimensions up to
    ``top`` are known; ``complete`` marks complexes with nothing above.
    """

    group: GroupBackend
    ring: GroundRing
    bases: tuple[tuple[str, ...], ...]
    boundaries: Mapping[str, Chain]
    augmentation: Mapping[str, tuple[Any, ...]]
    module_rank: int = 1
    top: int = DEFAULT_TOP
    complete: bool = False
    provenance: Mapping[str, Provenance] = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.group, self.ring, self.bases, self.module_rank))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (
            self.group == other.group
            and self.ring == other.ring
            and self.bases == other.bases
            and dict(self.boundaries) == dict(other.boundaries)
            and dict(self.augmentation) == dict(other.augmentation)
            and self.module_rank == other.module_rank
        )

    @property
    def length(self) -> int:
        """Highest dimension with basis symbols."""
        filled = [k for k, basis in enumerate(self.bases) if basis]
        return filled[-1] if filled else -1

    def basis(self, k: int) -> tuple[str, ...]:
        """Symbols of X_k (empty outside the stored range)."""
        if 0 <= k < len(self.bases):
            return self.bases[k]
        return ()

    def rank(self, k: int) -> int:
        """Number of basis symbols in dimension k."""
        return len(self.basis(k))

    def dimension_of(self, symbol: str) -> int:
        """Dimension of a basis symbol."""
        for k, basis in enumerate(self.bases):
            if symbol in basis:
                return k
        msg = f"Unknown basis symbol '{symbol}'"
        raise ComplexError(msg)

    def zero(self, dimension: int) -> Chain:
        """The zero chain in a dimension."""
        return Chain.zero(self.group, self.ring, dimension)

    def chain(self, dimension: int, pairs: Iterable[tuple[Cell, object]]) -> Chain:
        """Build a chain from ``(cell, coefficient)`` pairs."""
        terms: dict[Cell, Any] = {}
        for cell, coefficient in pairs:
            key = Cell(*cell)
            terms[key] = terms.get(key, self.ring.domain.zero) + self.ring.scalar(
                coefficient
            )
        return Chain(self.group, self.ring, dimension, terms)

    def basis_cell(self, symbol: str, form: Form | None = None) -> Chain:
        """The chain ``g * x`` for a basis symbol (``g`` defaults to 1)."""
        form = self.group.identity if form is None else form
        return Chain.cell(
            self.group, self.ring, self.dimension_of(symbol), Cell(symbol, form)
        )

    def cells(self, dimension: int, forms: Iterable[Form]) -> list[Cell]:
        """All cells ``g * x`` with ``x`` in X_dimension and ``g`` in ``forms``."""
        forms = list(forms)
        return [Cell(symbol, g) for symbol in self.basis(dimension) for g in forms]

    def boundary_of_cell(self, cell: Cell) -> Chain:
        """Boundary of ``g * x`` as ``g`` times the stored boundary of ``x``."""
        stored = self.boundaries.get(cell.symbol)
        if stored is None:
            return self.zero(self.dimension_of(cell.symbol) - 1)
        return stored.translate(cell.form)

    def boundary(self, chain: Chain) -> Chain:
        """Boundary of a chain; zero-dimensional chains map to zero."""
        if chain.dimension == 0 or not chain.terms:
            return self.zero(chain.dimension - 1)
        return chain_sum(
            self.group,
            self.ring,
            chain.dimension - 1,
            (self.boundary_of_cell(cell).scale(c) for cell, c in chain.terms.items()),
        )

    def augment(self, chain: Chain) -> tuple[Any, ...]:
        """Image of a 0-chain in A = K^r; G acts trivially on A."""
        result = [self.ring.domain.zero] * self.module_rank
        for cell, c in chain.terms.items():
            for i, value in enumerate(self.augmentation.get(cell.symbol, ())):
                result[i] += c * value
        return tuple(result)

    def validate(self) -> ChainComplex:
        """Check dd = 0 and the augmentation identities; return self."""
        symbols = [symbol for basis in self.bases for symbol in basis]
        if len(set(symbols)) != len(symbols):
            msg = f"Duplicate basis symbols in {symbols}"
            raise ComplexError(msg)
        for symbol in self.basis(0):
            values = self.augmentation.get(symbol)
            if values is None or len(values) != self.module_rank:
                raise BoundaryValidationError(symbol, "augmentation missing")
        for k, basis in enumerate(self.bases):
            for symbol in basis:
                if k == 0:
                    continue
                stored = self.boundaries.get(symbol, self.zero(k - 1))
                if stored.terms and stored.dimension != k - 1:
                    raise BoundaryValidationError(
                        symbol,
                        f"boundary has dimension {stored.dimension}, expected {k - 1}",
                    )
                unknown = stored.symbols() - set(self.basis(k - 1))
                if unknown:
                    raise BoundaryValidationError(
                        symbol, f"boundary uses unknown symbols {sorted(unknown)}"
                    )
                if k == 1 and any(self.augment(stored)):
                    raise BoundaryValidationError(
                        symbol, "augmentation of boundary != 0"
                    )
                if k >= 2 and self.boundary(stored).terms:  # noqa: PLR2004
                    raise BoundaryValidationError(symbol, "boundary of boundary != 0")
        return self


def resolution_from_tables(
    group: GroupBackend,
    ring: GroundRing,
    bases: Sequence[Sequence[str]],
    boundaries: Mapping[str, Chain],
    augmentation: Mapping[str, Sequence[object]],
    *,
    module_rank: int = 1,
    top: int = DEFAULT_TOP,
    complete: bool = False,
) -> ChainComplex:
    """Validated complex from explicit basis, boundary and augmentation tables."""
    return ChainComplex(
        group=group,
        ring=ring,
        bases=tuple(tuple(basis) for basis in bases),
        boundaries=dict(boundaries),
        augmentation={
            symbol: tuple(ring.scalar(v) for v in values)
            for symbol, values in augmentation.items()
        },
        module_rank=module_rank,
        top=top,
        complete=complete,
    ).validate()


def _is_proper_power(word: Word) -> bool:
    letters = [
        (index, 1 if exponent > 0 else -1)
        for index, exponent in word
        for _ in range(abs(exponent))
    ]
    size = len(letters)
    return any(
        size % period == 0 and letters == letters[:period] * (size // period)
        for period in range(1, size)
    )


def fox_resolution(presentation: Presentation) -> ChainComplex:
    """The 2-skeleton of the free resolution of K built by Fox calculus.

    ``x0`` spans dimension 0, ``x_s`` dimension 1 for each generator ``s``
    and ``x_r1, x_r2, ...`` dimension 2 for the relators. For A = K^r the
    result is the direct sum of r copies.
    """
    if not presentation.trivial_module:
        msg = "Fox resolutions only resolve trivial modules; use tables instead"
        raise NonTrivialModuleError(msg)
    group, ring = presentation.group, presentation.ring
    one = GroupRingElem.one(group, ring)
    edge_symbols = tuple(f"x_{symbol}" for symbol in group.generators)
    boundaries: dict[str, Chain] = {}
    for index, symbol in enumerate(edge_symbols):
        s = GroupRingElem(group, ring, {group.letter(index): ring.domain.one})
        boundaries[symbol] = Chain.from_components(
            group, ring, 0, {BASE_SYMBOL: s - one}
        )
    relator_symbols = []
    for number, relator in enumerate(presentation.relators, start=1):
        symbol = f"x_r{number}" if len(presentation.relators) > 1 else "x_r"
        relator_symbols.append(symbol)
        if group.evaluate(relator) != group.identity:
            msg = f"Relator {number} is not trivial in {group.name()}"
            raise ComplexError(msg)
        boundaries[symbol] = Chain.from_components(
            group,
            ring,
            1,
            {
                edge: fox_derivative(list(relator), index, group, ring)
                for index, edge in enumerate(edge_symbols)
            },
        )
    complete = len(presentation.relators) == 0 or (
        len(presentation.relators) == 1
        and not _is_proper_power(presentation.relators[0])
    )
    single = resolution_from_tables(
        group,
        ring,
        [(BASE_SYMBOL,), edge_symbols, tuple(relator_symbols)],
        boundaries,
        {BASE_SYMBOL: (1,)},
        top=2,
        complete=complete,
    )
    if presentation.module_rank == 1:
        return single
    return direct_sum_complex(single, presentation.module_rank)


def direct_sum_complex(complex_: ChainComplex, copies: int) -> ChainComplex:
    """Resolution of K^copies as the direct sum of copies of a resolution of K.

    Copy ``i`` renames every symbol ``x`` to ``x#i``. Zero copies give the
    zero complex resolving the zero module.
    """
    if complex_.module_rank != 1:
        msg = "direct_sum_complex expects a resolution of K"
        raise ComplexError(msg)

    def rename(chain: Chain, i: int) -> Chain:
        return Chain(
            chain.group,
            chain.ring,
            chain.dimension,
            {
                Cell(f"{cell.symbol}#{i}", cell.form): c
                for cell, c in chain.terms.items()
            },
        )

    bases = tuple(
        tuple(f"{symbol}#{i}" for i in range(copies) for symbol in basis)
        for basis in complex_.bases
    )
    boundaries = {
        f"{symbol}#{i}": rename(chain, i)
        for symbol, chain in complex_.boundaries.items()
        for i in range(copies)
    }
    zero, one = complex_.ring.domain.zero, complex_.ring.domain.one
    augmentation = {}
    for symbol in complex_.basis(0):
        value = complex_.augmentation[symbol][0]
        for i in range(copies):
            vector = [zero] * copies
            vector[i] = value * one
            augmentation[f"{symbol}#{i}"] = tuple(vector)
    return ChainComplex(
        group=complex_.group,
        ring=complex_.ring,
        bases=bases,
        boundaries=boundaries,
        augmentation=augmentation,
        module_rank=copies,
        top=complex_.top,
        complete=complex_.complete,
    ).validate()
