from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product

from sigmacat.complexes import Cell, Chain, ChainComplex, chain_sum

from .windows import FinitaryError

COMBINATION_CAP = 4096


class IncompatibleVolleysError(FinitaryError):
    """Raised when volleys of mismatched complexes or degrees are composed."""


class VolleyTooLargeError(FinitaryError):
    """Raised when the union formula would produce too many candidate chains."""


@dataclass(frozen=True, eq=False)
class Volley:
    """A G-volley: a finite nonempty set of candidate images per basis symbol.

    Cells are handled by the canonical extension Phi(g x) = g Phi(x).
    """

    source: ChainComplex
    target: ChainComplex
    degree: int
    table: Mapping[str, tuple[Chain, ...]]

    def __post_init__(self) -> None:
        for k, basis in enumerate(self.source.bases):
            for symbol in basis:
                candidates = self.table.get(symbol)
                if not candidates:
                    msg = f"Volley has no candidates for basis cell '{symbol}'"
                    raise FinitaryError(msg)
                for chain in candidates:
                    if chain.terms and chain.dimension != k + self.degree:
                        msg = (
                            f"Candidate for '{symbol}' has dimension "
                            f"{chain.dimension}, "
                            f"expected {k + self.degree}"
                        )
                        raise FinitaryError(msg)

    def images(self, cell: Cell) -> tuple[Chain, ...]:
        """Phi(g x) = g Phi(x)."""
        return tuple(chain.translate(cell.form) for chain in self.table[cell.symbol])

    def images_of_chain(self, chain: Chain, cap: int = COMBINATION_CAP) -> list[Chain]:
        """Phi(c): every sum of coefficient times one candidate per support cell."""
        cells = chain.support()
        options = [self.images(cell) for cell in cells]
        total = 1
        for choice in options:
            total *= len(choice)
        if total > cap:
            msg = f"Volley image of a chain would have {total} candidates (cap {cap})"
            raise VolleyTooLargeError(msg)
        dimension = chain.dimension + self.degree
        found: dict[Chain, None] = {}
        for picks in product(*options):
            image = chain_sum(
                self.target.group,
                self.target.ring,
                dimension,
                (
                    pick.scale(chain.terms[cell])
                    for pick, cell in zip(picks, cells, strict=True)
                ),
            )
            found.setdefault(image, None)
        return list(found) or [self.target.zero(dimension)]

    def contains(self, cell: Cell, chain: Chain) -> bool:
        """Whether ``chain`` is one of the candidates at ``cell``."""
        return chain in self.images(cell)

    def size(self) -> int:
        """Largest number of candidates at a basis symbol."""
        return max((len(v) for v in self.table.values()), default=0)


def singleton_volley(
    source: ChainComplex,
    target: ChainComplex,
    degree: int,
    images: Mapping[str, Chain],
) -> Volley:
    """The volley of an equivariant map: one candidate per basis symbol."""
    table = {}
    for k, basis in enumerate(source.bases):
        for symbol in basis:
            table[symbol] = (images.get(symbol, target.zero(k + degree)),)
    return Volley(source, target, degree, table)


def identity_volley(complex_: ChainComplex) -> Volley:
    """x -> {x}."""
    return singleton_volley(
        complex_,
        complex_,
        0,
        {
            symbol: complex_.basis_cell(symbol)
            for basis in complex_.bases
            for symbol in basis
        },
    )


def compose_volleys(psi: Volley, phi: Volley, cap: int = COMBINATION_CAP) -> Volley:
    """Psi Phi(x) = union of Psi(t) over t in Phi(x)."""
    if phi.target is not psi.source and phi.target != psi.source:
        msg = "The target of the first volley is not the source of the second"
        raise IncompatibleVolleysError(msg)
    table = {}
    for symbol, candidates in phi.table.items():
        found: dict[Chain, None] = {}
        for chain in candidates:
            for image in psi.images_of_chain(chain, cap):
                found.setdefault(image, None)
        if len(found) > cap:
            msg = f"Composite volley at '{symbol}' exceeds {cap} candidates"
            raise VolleyTooLargeError(msg)
        table[symbol] = tuple(found)
    return Volley(phi.source, psi.target, phi.degree + psi.degree, table)
