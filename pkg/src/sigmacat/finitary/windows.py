"""Finite windows of cells and the exact solves performed on them."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

from sigmacat.algebra import Form, GroupBackend
from sigmacat.complexes import Cell, Chain, ChainComplex
from sigmacat.utils.linalg import solve


class FinitaryError(Exception):
    """Base exception for volleys, finitary maps and their constructions."""


class WindowExhaustedError(FinitaryError):
    """Raised when no solution exists inside the largest window tried."""

    def __init__(self, cell: Cell | str, radius: int) -> None:
        self.cell = cell
        self.radius = radius
        super().__init__(f"No solution for {cell} within window radius {radius}")


@dataclass(frozen=True)
class Window:
    """Cells ``g x`` of a complex with ``g`` in a word-metric ball."""

    radius: int
    dimensions: tuple[int, ...] = (0, 1, 2)

    def forms(self, group: GroupBackend) -> list[Form]:
        """Group elements of the window."""
        return group.ball(self.radius)

    def cells(self, complex_: ChainComplex, dimension: int) -> list[Cell]:
        """Window cells of one dimension."""
        return complex_.cells(dimension, self.forms(complex_.group))

    def all_cells(self, complex_: ChainComplex) -> list[Cell]:
        """Window cells in every tracked dimension present in the complex."""
        cells: list[Cell] = []
        for k in self.dimensions:
            cells.extend(self.cells(complex_, k))
        return cells

    def describe(self) -> str:
        """Human-readable label used in reports."""
        return f"ball({self.radius})"


def neighbourhood(
    group: GroupBackend, forms: Iterable[Form], radius: int
) -> list[Form]:
    """Elements ``f b`` with ``f`` in ``forms`` and ``|b| <= radius``, in order."""
    ball = group.ball(radius)
    seen: dict[Form, None] = {}
    for f in sorted(set(forms)):
        for b in ball:
            seen.setdefault(group.mul(f, b), None)
    return list(seen)


def solve_boundary(
    complex_: ChainComplex,
    dimension: int,
    target: Chain,
    forms: Iterable[Form],
    *,
    admit: Callable[[Cell], bool] | None = None,
    preference: Callable[[Cell], object] | None = None,
) -> Chain | None:
    """A chain ``c`` on the cells over ``forms`` with dc = target.

    ``admit`` filters the usable cells; ``preference`` orders them, earlier
    cells being used first.
    """
    cells = complex_.cells(dimension, forms)
    if admit is not None:
        cells = [cell for cell in cells if admit(cell)]
    if preference is not None:
        cells.sort(key=preference)
    if not target.terms:
        return complex_.zero(dimension)
    columns = {cell: complex_.boundary_of_cell(cell).terms for cell in cells}
    solution = solve(columns, target.terms, complex_.ring.domain)
    if solution is None:
        return None
    return Chain(complex_.group, complex_.ring, dimension, solution)


def solve_augmentation(
    complex_: ChainComplex,
    target: tuple,
    forms: Iterable[Form],
    *,
    admit: Callable[[Cell], bool] | None = None,
    preference: Callable[[Cell], object] | None = None,
) -> Chain | None:
    """A 0-chain over ``forms`` whose augmentation is ``target`` in K^r."""
    cells = complex_.cells(0, forms)
    if admit is not None:
        cells = [cell for cell in cells if admit(cell)]
    if preference is not None:
        cells.sort(key=preference)
    if not any(target):
        return complex_.zero(0)
    columns = {
        cell: dict(enumerate(complex_.augmentation[cell.symbol])) for cell in cells
    }
    wanted = {i: value for i, value in enumerate(target) if value}
    solution = solve(columns, wanted, complex_.ring.domain)
    if solution is None:
        return None
    return Chain(complex_.group, complex_.ring, 0, solution)


def support_forms(chain: Chain) -> list[Form]:
    """Distinct group elements occurring in a chain, sorted."""
    return sorted({cell.form for cell in chain.terms})
