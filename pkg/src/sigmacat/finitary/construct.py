"""Constructive comparison: lifts of id_A, chain homotopies, pushes at limits."""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

import sympy

from sigmacat.complexes import Cell, Chain, ChainComplex, is_admissible
from sigmacat.geometry import ControlledModel, Direction
from sigmacat.utils.exact import ZERO_LENGTH, Length

from .maps import FinitaryMap, equivariant_map, map_with_overrides, translate_map
from .metrics import shift_report
from .windows import (
    FinitaryError,
    Window,
    WindowExhaustedError,
    neighbourhood,
    solve_augmentation,
    solve_boundary,
    support_forms,
)

CHOOSERS = ("policy", "nearest", "lexicographic")
DEFAULT_MAX_RADIUS = 4


class PreconditionError(FinitaryError):
    """Raised when the inputs of a construction violate its hypotheses."""


class NoAdequateTranslateError(FinitaryError):
    """Raised when no translate of a map pushes toward a limit direction."""


def _lexicographic(cell: Cell) -> tuple:
    return (cell.symbol, cell.form)


def _drop(
    cm: ControlledModel,
    cm2: ControlledModel,
    e: Direction | None,
    symbol: str,
    chain: Chain,
) -> Any:
    """Valuation lost by sending the basis cell ``symbol`` to ``chain``.

    Without a direction this is the worst loss over all unit directions, the
    largest distance from h(x) to a point of h'(chain).
    """
    cell = Cell(symbol, cm.complex.group.identity)
    if e is None:
        own = cm.points(cell)
        return max(
            (
                min(cm.model.distance(p, q) for q in own)
                for p in cm2.points_of(chain)
            ),
            default=ZERO_LENGTH,
        )
    return max(sympy.Integer(0), cm.cell_value(e, cell) - cm2.value(e, chain))


def _policy_key(
    cm: ControlledModel,
    cm2: ControlledModel,
    e: Direction | None,
    symbol: str,
) -> Callable[[Chain], tuple]:
    """Least valuation drop, then smallest support, then lexicographic cells."""

    def key(chain: Chain) -> tuple:
        cells = tuple(sorted(_lexicographic(cell) for cell in chain.terms))
        return (_drop(cm, cm2, e, symbol, chain), len(cells), cells)

    return key


def _orders(
    cm: ControlledModel,
    cm2: ControlledModel,
    e: Direction | None,
    symbol: str,
    chooser: str,
) -> list[Callable[[Cell], object]]:
    """Cell orderings handed to the solver, one solution per ordering."""
    if chooser not in CHOOSERS:
        msg = f"Unknown chooser '{chooser}'. Known: {', '.join(CHOOSERS)}"
        raise FinitaryError(msg)
    if chooser == "lexicographic":
        return [_lexicographic]
    if chooser == "policy":
        group = cm2.complex.group

        def by_drop(cell: Cell) -> tuple:
            unit = Chain.cell(group, cm2.complex.ring, 0, cell)
            return (_drop(cm, cm2, e, symbol, unit), _lexicographic(cell))

        return [by_drop, _lexicographic]
    own = cm.points(Cell(symbol, cm.complex.group.identity))

    def nearest(cell: Cell) -> tuple[Length, int]:
        gap = min(cm.model.distance(p, q) for p in cm2.points(cell) for q in own)
        return (gap, 0 if cell.symbol == symbol else 1)

    return [nearest]


def _chosen(
    solve_with: Callable[[Callable[[Cell], object]], Chain | None],
    orders: list[Callable[[Cell], object]],
    key: Callable[[Chain], tuple] | None,
) -> Chain | None:
    """The best solution over the orderings; the first one without a key."""
    solutions = []
    for order in orders:
        value = solve_with(order)
        if value is not None:
            if key is None:
                return value
            solutions.append(value)
    return min(solutions, key=key, default=None)


def lift_finitary(  # noqa: PLR0913
    source: ChainComplex,
    target: ChainComplex,
    cm: ControlledModel,
    cm2: ControlledModel,
    *,
    chooser: str = "policy",
    e: Direction | None = None,
    max_radius: int = DEFAULT_MAX_RADIUS,
    top: int | None = None,
) -> FinitaryMap:
    """An equivariant chain map from ``source`` to ``target`` lifting id_A.

    Values on basis symbols are found dimension by dimension by exact solves
    over growing neighbourhoods: eps' phi(x) = eps(x) in dimension 0 and
    d' phi(x) = phi(dx) above. The ``policy`` chooser takes, among the
    solutions of the smallest window, the one with the least valuation drop
    toward ``e``, then the smallest support, then the first in lexicographic
    cell order. ``nearest`` and ``lexicographic`` take the single solution
    found with that cell ordering.
    """
    for name, complex_ in (("source", source), ("target", target)):
        report = is_admissible(complex_)
        if not report.admissible:
            msg = f"The {name} complex is not admissible at {list(report.offending)}"
            raise PreconditionError(msg)
    if source.module_rank != target.module_rank:
        msg = "Both complexes must resolve the same module"
        raise PreconditionError(msg)
    group = target.group
    last = source.length if top is None else min(top, source.length)
    images: dict[str, Chain] = {}
    for k in range(last + 1):
        for symbol in source.basis(k):
            orders = _orders(cm, cm2, e, symbol, chooser)
            key = _policy_key(cm, cm2, e, symbol) if chooser == "policy" else None
            value = None
            if k == 0:
                wanted = source.augmentation[symbol]
                for radius in range(max_radius + 1):
                    forms = group.ball(radius)
                    value = _chosen(
                        lambda order, forms=forms: solve_augmentation(
                            target, wanted, forms, preference=order
                        ),
                        orders,
                        key,
                    )
                    if value is not None:
                        break
            else:
                partial = equivariant_map(source, target, 0, images)
                goal = partial(source.boundary(source.basis_cell(symbol)))
                value = _chosen(
                    lambda order, goal=goal, k=k: solve_around(
                        target, k, goal, max_radius, order
                    ),
                    orders,
                    key,
                )
            if value is None:
                raise WindowExhaustedError(symbol, max_radius)
            images[symbol] = value
    lift = equivariant_map(source, target, 0, images)
    defects = lift.chain_map_defects(
        [
            Cell(symbol, group.identity)
            for k in range(last + 1)
            for symbol in source.basis(k)
        ]
    )
    if defects:
        msg = f"Lift fails the chain-map identities at {defects}"
        raise FinitaryError(msg)
    return lift


def solve_around(
    target: ChainComplex,
    dimension: int,
    goal: Chain,
    max_radius: int,
    preference: Callable[[Cell], object] | None = None,
    admit: Callable[[Cell], bool] | None = None,
) -> Chain | None:
    """A chain with boundary ``goal`` on growing neighbourhoods of its support."""
    if not goal.terms:
        return target.zero(dimension)
    if not target.basis(dimension):
        return None
    centres = support_forms(goal)
    for radius in range(max_radius + 1):
        forms = neighbourhood(target.group, centres, radius)
        value = solve_boundary(
            target, dimension, goal, forms, preference=preference, admit=admit
        )
        if value is not None:
            return value
    return None


def _boundary_hits(source: ChainComplex, k: int, tainted: set[Cell]) -> set[Cell]:
    """Cells of dimension k whose boundary meets a tainted cell."""
    group = source.group
    hits: set[Cell] = set()
    for symbol in source.basis(k):
        stored = source.boundaries.get(symbol)
        if stored is None:
            continue
        for face in stored.terms:
            for cell in tainted:
                if cell.symbol == face.symbol:
                    form = group.mul(cell.form, group.inverse(face.form))
                    hits.add(Cell(symbol, form))
    return hits


def homotopy_between(  # noqa: C901, PLR0912
    phi: FinitaryMap,
    psi: FinitaryMap,
    *,
    max_radius: int = DEFAULT_MAX_RADIUS,
    top: int | None = None,
    window: Window | None = None,
) -> FinitaryMap:
    """A degree-1 finitary map sigma with phi - psi = d sigma + sigma d.

    Dimension 0 solves d' sigma(x) = (phi - psi)(x); dimension n solves
    d' sigma(x) = (phi - psi - sigma d)(x). Cells where phi or psi deviate from
    their equivariant values, and cells whose boundary meets such cells, are
    solved individually. The identity is re-checked on ``window``.
    """
    if phi.selector is not None or psi.selector is not None:
        msg = "Homotopies are built between maps without selectors"
        raise PreconditionError(msg)
    if phi.source != psi.source or phi.target != psi.target:
        msg = "Both maps must share source and target"
        raise PreconditionError(msg)
    if phi.degree != 0 or psi.degree != 0:
        msg = "Homotopies connect degree-0 maps"
        raise PreconditionError(msg)
    source, target = phi.source, phi.target
    for symbol in source.basis(0):
        if any(target.augment(phi.on_basis(symbol) - psi.on_basis(symbol))):
            msg = f"eps'(phi - psi) is not zero at '{symbol}'"
            raise PreconditionError(msg)
    last = source.length if top is None else min(top, source.length)
    if not target.complete:
        last = min(last, target.top - 1)

    defaults: dict[str, Chain] = {}
    overrides: dict[Cell, Chain] = {}

    def sigma_of(chain: Chain) -> Chain:
        current = map_with_overrides(source, target, 1, defaults, overrides)
        return current(chain)

    tainted: set[Cell] = set()
    for k in range(last + 1):
        for symbol in source.basis(k):
            cell = source.basis_cell(symbol)
            goal = phi.defaults[symbol] - psi.defaults[symbol]
            if k > 0:
                goal = goal - map_with_overrides(source, target, 1, defaults, {})(
                    source.boundary(cell)
                )
            value = solve_around(target, k + 1, goal, max_radius)
            if value is None:
                raise WindowExhaustedError(symbol, max_radius)
            defaults[symbol] = value
        layer = {
            cell
            for cell in (*phi.overrides, *psi.overrides)
            if source.dimension_of(cell.symbol) == k
        }
        if k > 0:
            layer |= _boundary_hits(source, k, tainted)
        for cell in sorted(layer):
            chain = Chain.cell(source.group, source.ring, k, cell)
            goal = phi(chain) - psi(chain)
            if k > 0:
                goal = goal - sigma_of(source.boundary(chain))
            value = solve_around(target, k + 1, goal, max_radius)
            if value is None:
                raise WindowExhaustedError(cell, max_radius)
            overrides[cell] = value
        tainted = layer

    sigma = map_with_overrides(source, target, 1, defaults, overrides)
    check = window or Window(1, tuple(range(last + 1)))
    for k in check.dimensions:
        if k > last:
            continue
        for cell in check.cells(source, k):
            chain = Chain.cell(source.group, source.ring, k, cell)
            expected = phi(chain) - psi(chain)
            achieved = target.boundary(sigma(chain))
            if k > 0:
                achieved = achieved + sigma(source.boundary(chain))
            if achieved != expected:
                msg = f"Homotopy identity fails at {cell}"
                raise FinitaryError(msg)
    return sigma


def push_at_limit(  # noqa: PLR0913
    cm: ControlledModel,
    phi: FinitaryMap,
    e: Direction,
    e_hat: Direction,
    window: Window,
    *,
    delta: sympy.Expr | None = None,
    budget: int = 2,
) -> FinitaryMap:
    """A translate g phi with windowed guaranteed shift >= delta/2 toward e_hat.

    ``delta`` defaults to the guaranteed shift of phi toward e. Equivariant
    maps are their own translates, so they are checked as they are.
    """
    if delta is None:
        delta = shift_report(cm, cm, e, phi, window).gsh
    if delta <= 0:
        msg = f"push_at_limit needs a positive guaranteed shift, got {delta}"
        raise PreconditionError(msg)
    if cm.model.is_translation:
        return phi
    group = phi.source.group
    candidates = [group.identity] if phi.is_equivariant else group.ball(budget)
    for g in candidates:
        moved = translate_map(phi, g) if g != group.identity else phi
        report = shift_report(cm, cm, e_hat, moved, window)
        if report.gsh >= delta / 2:
            return moved
    msg = f"No translate within ball({budget}) pushes toward {e_hat} by {delta / 2}"
    raise NoAdequateTranslateError(msg)
