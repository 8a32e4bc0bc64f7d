from __future__ import annotations

from dataclasses import dataclass, field, replace

from sigmacat.utils.linalg import rank

from .chains import Cell, Chain, ComplexError
from .complex import BoundaryValidationError, ChainComplex, Provenance


class InadmissibleError(ComplexError):
    """Raised when a complex cannot be made admissible without changing homology."""


class ExpansionError(ComplexError):
    """Raised when the data of an elementary expansion is inconsistent."""


@dataclass(frozen=True)
class AdmissibilityReport:
    """Verdict of :func:`is_admissible` with the offending basis symbols."""

    admissible: bool
    offending: tuple[str, ...] = field(default_factory=tuple)


def is_admissible(complex_: ChainComplex) -> AdmissibilityReport:
    """Whether no basis cell is killed by the boundary or the augmentation."""
    offending = [
        symbol for symbol in complex_.basis(0) if not any(complex_.augmentation[symbol])
    ]
    for k in range(1, len(complex_.bases)):
        offending.extend(
            symbol
            for symbol in complex_.basis(k)
            if not complex_.boundaries.get(symbol, complex_.zero(k - 1)).terms
        )
    return AdmissibilityReport(admissible=not offending, offending=tuple(offending))


def _rename_in(chain: Chain, symbol: str, partner: Chain) -> Chain:
    """Rewrite a higher boundary after the basis change x -> x + x'.

    ``lam * x`` becomes ``lam * (x + x') - lam * x'``; the new cell keeps the
    name of ``x``.
    """
    component = chain.component(symbol)
    if not component.terms:
        return chain
    return chain - partner.act(component)


def _is_dead(complex_: ChainComplex, symbol: str, k: int) -> bool:
    if k == 0:
        return not any(complex_.augmentation[symbol])
    return not complex_.boundaries.get(symbol, complex_.zero(k - 1)).terms


def _delete(current: ChainComplex, symbol: str) -> ChainComplex:
    return replace(
        current,
        bases=tuple(tuple(s for s in basis if s != symbol) for basis in current.bases),
        boundaries={s: chain for s, chain in current.boundaries.items() if s != symbol},
        augmentation={
            s: value for s, value in current.augmentation.items() if s != symbol
        },
    )


def _substitute(current: ChainComplex, symbol: str, partner: str) -> ChainComplex:
    """Basis change x -> x + x' keeping the name of x."""
    k = current.dimension_of(symbol)
    group, ring = current.group, current.ring
    partner_cell = Chain.cell(group, ring, k, Cell(partner, group.identity))
    boundaries = dict(current.boundaries)
    augmentation = dict(current.augmentation)
    if k == 0:
        augmentation[symbol] = tuple(
            a + b
            for a, b in zip(augmentation[symbol], augmentation[partner], strict=True)
        )
    else:
        boundaries[symbol] = (
            boundaries.get(symbol, current.zero(k - 1)) + boundaries[partner]
        )
    for other in current.basis(k + 1):
        if other in boundaries:
            boundaries[other] = _rename_in(boundaries[other], symbol, partner_cell)
    return replace(current, boundaries=boundaries, augmentation=augmentation)


def make_admissible(complex_: ChainComplex) -> ChainComplex:
    """Return an admissible complex chain-homotopy equivalent to the input.

    A dead cell ``x`` (zero boundary, or zero augmentation in dimension 0) is
    replaced by ``x + x'`` for a live cell ``x'`` of the same dimension. With
    no live cell around, ``x`` is deleted when no higher boundary uses it and
    the homology in its dimension stays the same.
    """
    report = is_admissible(complex_)
    if report.admissible:
        return complex_
    current = complex_
    for symbol in report.offending:
        k = current.dimension_of(symbol)
        live = [other for other in current.basis(k) if not _is_dead(current, other, k)]
        if live:
            current = _substitute(current, symbol, live[0])
            continue
        used = any(
            current.boundaries[other].component(symbol).terms
            for other in current.basis(k + 1)
            if other in current.boundaries
        )
        if used:
            msg = (
                f"Every basis cell in dimension {k} is dead and '{symbol}' is used; "
                "deleting it would change homology"
            )
            raise InadmissibleError(msg)
        pruned = _delete(current, symbol)
        if not pruned.basis(0) or homology_rank_change(current, pruned, k):
            msg = f"Deleting '{symbol}' in dimension {k} would change homology"
            raise InadmissibleError(msg)
        current = pruned
    result = current.validate()
    remaining = is_admissible(result)
    if not remaining.admissible:
        msg = f"Could not repair cells {list(remaining.offending)}"
        raise InadmissibleError(msg)
    return result


def elementary_expansion(  # noqa: PLR0913
    complex_: ChainComplex,
    x: Cell,
    c: Chain,
    d: Chain,
    *,
    xi: str | None = None,
    eta: str | None = None,
) -> ChainComplex:
    """Add cells xi and eta with boundaries ``x - c`` and ``d - xi``.

    ``x`` is a cell of dimension k; ``c`` is a k-chain with the same boundary
    (the same augmentation when k = 0); ``d`` is a (k+1)-chain with
    ``d(d) = x - c``. The expansion does not change homology.
    """
    k = complex_.dimension_of(x.symbol)
    x_chain = Chain.cell(complex_.group, complex_.ring, k, x)
    difference = x_chain - c
    if k == 0:
        if any(complex_.augment(difference)):
            msg = "Augmentation of c differs from that of x"
            raise ExpansionError(msg)
    elif complex_.boundary(difference).terms:
        msg = "Boundary of c differs from that of x"
        raise ExpansionError(msg)
    if complex_.boundary(d) != difference:
        msg = f"d(d) must equal x - c, got {complex_.boundary(d)}"
        raise ExpansionError(msg)
    count = len(complex_.provenance) // 2 + 1
    xi = xi or f"xi{count}"
    eta = eta or f"eta{count}"
    bases = [list(basis) for basis in complex_.bases]
    while len(bases) < k + 3:
        bases.append([])
    bases[k + 1].append(xi)
    bases[k + 2].append(eta)
    xi_chain = Chain.cell(
        complex_.group, complex_.ring, k + 1, Cell(xi, complex_.group.identity)
    )
    boundaries = dict(complex_.boundaries)
    boundaries[xi] = difference
    boundaries[eta] = d - xi_chain
    provenance = dict(complex_.provenance)
    provenance[xi] = Provenance(x=x_chain, c=c)
    provenance[eta] = Provenance(x=x_chain, c=c, d=d)
    result = replace(
        complex_,
        bases=tuple(tuple(basis) for basis in bases),
        boundaries=boundaries,
        provenance=provenance,
        top=max(complex_.top, k + 2),
    )
    try:
        result.validate()
    except BoundaryValidationError as err:
        raise ExpansionError(str(err)) from err
    if not difference.terms:
        msg = f"Expansion cell '{xi}' would have zero boundary (c = x)"
        raise ExpansionError(msg)
    return result


def homology_rank_change(before: ChainComplex, after: ChainComplex, k: int) -> int:
    """Difference of K-ranks of the trivial-coefficient homology in dimension k.

    Computed on K tensor_G F, where every group element acts as 1; used to
    confirm that deleting a dead cell keeps the homology.
    """

    def betti(complex_: ChainComplex, k: int) -> int:
        def matrix(dim: int) -> list[dict[int, object]]:
            rows = {symbol: i for i, symbol in enumerate(complex_.basis(dim - 1))}
            columns = []
            for symbol in complex_.basis(dim):
                column: dict[int, object] = {}
                stored = complex_.boundaries.get(symbol)
                if stored is not None:
                    for cell, c in stored.terms.items():
                        row = rows[cell.symbol]
                        column[row] = column.get(row, complex_.ring.domain.zero) + c
                columns.append(column)
            return columns

        domain = complex_.ring.domain
        outgoing = rank(dict(enumerate(matrix(k))), domain) if k > 0 else 0
        incoming = rank(dict(enumerate(matrix(k + 1))), domain)
        return complex_.rank(k) - outgoing - incoming

    return betti(after, k) - betti(before, k)
