from __future__ import annotations

from typing import Any

from sigmacat.algebra import DirectProduct

from .chains import Cell, Chain, ComplexError
from .complex import ChainComplex


class GroundRingNotFieldError(ComplexError):
    """Raised when a tensor product is requested over a non-field."""


def tensor_symbol(left: str, right: str) -> str:
    """Name of the basis cell ``left (x) right``."""
    return f"{left}⊗{right}"


def _left_times(chain: Chain, right: str, group: DirectProduct) -> dict[Cell, Any]:
    return {
        Cell(tensor_symbol(cell.symbol, right), group.embed(cell.form, 0)): c
        for cell, c in chain.terms.items()
    }


def _right_times(left: str, chain: Chain, group: DirectProduct) -> dict[Cell, Any]:
    return {
        Cell(tensor_symbol(left, cell.symbol), group.embed(cell.form, 1)): c
        for cell, c in chain.terms.items()
    }


def tensor_complex(first: ChainComplex, second: ChainComplex) -> ChainComplex:
    """The tensor product over K of resolutions for G and H, over K[G x H].

    The boundary follows the Koszul rule
    ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``. Dimensions are kept up to
    the smaller skeleton bound, or all of them when both inputs are complete.
    """
    if first.ring != second.ring:
        msg = f"Ground rings differ: {first.ring} vs {second.ring}"
        raise ComplexError(msg)
    if not first.ring.is_field:
        msg = f"Tensor products need a field; got {first.ring}"
        raise GroundRingNotFieldError(msg)
    ring = first.ring
    group = DirectProduct(first.group, second.group)
    complete = first.complete and second.complete
    top = first.length + second.length if complete else min(first.top, second.top)

    bases: list[tuple[str, ...]] = []
    boundaries: dict[str, Chain] = {}
    for n in range(top + 1):
        basis = []
        for p in range(n + 1):
            for left in first.basis(p):
                for right in second.basis(n - p):
                    symbol = tensor_symbol(left, right)
                    basis.append(symbol)
                    if n == 0:
                        continue
                    terms: dict[Cell, Any] = {}
                    if p > 0:
                        lower = first.boundaries.get(left, first.zero(p - 1))
                        terms.update(_left_times(lower, right, group))
                    if n - p > 0:
                        sign = -ring.domain.one if p % 2 else ring.domain.one
                        upper = second.boundaries.get(right, second.zero(n - p - 1))
                        for cell, c in _right_times(left, upper, group).items():
                            terms[cell] = terms.get(cell, ring.domain.zero) + sign * c
                    boundaries[symbol] = Chain(group, ring, n - 1, terms)
        bases.append(tuple(basis))
    while len(bases) > 1 and not bases[-1]:
        bases.pop()

    augmentation = {}
    for left in first.basis(0):
        for right in second.basis(0):
            augmentation[tensor_symbol(left, right)] = tuple(
                a * b
                for a in first.augmentation[left]
                for b in second.augmentation[right]
            )
    return ChainComplex(
        group=group,
        ring=ring,
        bases=tuple(bases),
        boundaries=boundaries,
        augmentation=augmentation,
        module_rank=first.module_rank * second.module_rank,
        top=top,
        complete=complete,
    ).validate()
