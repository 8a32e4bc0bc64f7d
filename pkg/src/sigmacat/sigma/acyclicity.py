"""Controlled acyclicity over directions and points, with observed lags."""

from __future__ import annotations

import logging
from collections.abc import Callable, Hashable, Iterable, Sequence
from typing import Any

import sympy

from sigmacat.algebra import Form, GroupRingElem
from sigmacat.complexes import Cell, Chain, ChainComplex, QuotientModule, as_column
from sigmacat.finitary import neighbourhood, solve_augmentation, solve_around
from sigmacat.geometry import ControlledModel, Direction, Point
from sigmacat.utils.exact import Length, compare, exact_max
from sigmacat.utils.linalg import RequiresRationalCoefficientsError, kernel, solve

from .budgets import Budgets
from .certificates import BoundingCertificate, LagEstimate, PushCertificate
from .push import NotFound, ascending_letters

logger = logging.getLogger(__name__)

_MAX_CENTRE_STEPS = 64


def level_centre(cm: ControlledModel, e: Direction, s: Any) -> Form:
    """A group element whose dimension-0 basis cells sit at valuation about s.

    Powers of the ascending word are used; without ascending letters the
    identity is returned.
    """
    group = cm.complex.group
    letters = ascending_letters(cm, e)
    if not letters:
        return group.identity
    word = group.identity
    for letter in letters:
        word = group.mul(word, letter)
    step = word if s >= 0 else group.inverse(word)
    g = group.identity

    def level(h: Form) -> Any:
        return min(cm.cell_value(e, Cell(x, h)) for x in cm.complex.basis(0))

    for _ in range(_MAX_CENTRE_STEPS):
        if (s >= 0 and level(g) >= s) or (s < 0 and level(g) <= s):
            return g
        g = group.mul(g, step)
    return g


def spanning_cycles(
    complex_: ChainComplex, dimension: int, cells: Sequence[Cell], cap: int
) -> list[Chain]:
    """Up to ``cap`` kernel vectors of d (of eps in dimension 0) on ``cells``."""
    if not cells:
        return []
    if dimension == 0:
        columns = {
            cell: dict(enumerate(complex_.augmentation[cell.symbol])) for cell in cells
        }
    else:
        columns = {cell: complex_.boundary_of_cell(cell).terms for cell in cells}
    group, ring = complex_.group, complex_.ring
    cycles = []
    for vector in kernel(columns, ring.domain):
        cycles.append(Chain(group, ring, dimension, vector))
        if len(cycles) >= cap:
            break
    return cycles


def _first_bounding(
    complex_: ChainComplex,
    z: Chain,
    radius: int,
    admits: Iterable[Callable[[Cell], bool]],
) -> Chain | None:
    for admit in admits:
        try:
            found = solve_around(complex_, z.dimension + 1, z, radius, admit=admit)
        except RequiresRationalCoefficientsError:
            found = None
        if found is not None:
            return found
    return None


def _thresholds(top: Any, bottom: Any) -> list[Any]:
    values = []
    t = top
    while t >= bottom:
        values.append(t)
        t -= 1
    return values or [bottom]


def ca_check(
    cm: ControlledModel,
    e: Direction,
    n: int,
    budgets: Budgets | None = None,
) -> LagEstimate:
    """Windowed CA^{n-1} over e: bound horoball cycles and record the lags.

    For every level s and i <= n - 1, cycles on window cells of valuation
    >= s are enumerated around a centre at level s. Each is bounded by a
    chain on cells above a threshold lowered one unit at a time from v(z)
    down to s minus the lag budget; the level lag is max(0, s - v(c)).
    Dimension -1 asks for eps-preimages of the unit vectors of A.
    """
    budgets = budgets or Budgets()
    e = cm.model.scale_direction(e)
    complex_ = cm.complex
    group = complex_.group
    domain = complex_.ring.domain
    estimate = LagEstimate()
    for s in budgets.levels:
        centre = level_centre(cm, e, s)
        forms = neighbourhood(group, [centre], budgets.window)
        for i in range(-1, n):
            if i == -1:
                for j in range(complex_.module_rank):
                    unit = tuple(
                        domain.one if k == j else domain.zero
                        for k in range(complex_.module_rank)
                    )
                    found = None
                    for t in _thresholds(s, s - budgets.lag_budget):
                        found = solve_augmentation(
                            complex_,
                            unit,
                            forms,
                            admit=lambda cell, t=t: cm.cell_value(e, cell) >= t,
                        )
                        if found is not None:
                            break
                    if found is None:
                        estimate.record(-1, s, None)
                    else:
                        value = cm.value(e, found)
                        estimate.record(-1, s, sympy.Max(0, s - value))
                continue
            cells = [
                cell
                for cell in complex_.cells(i, forms)
                if cm.cell_value(e, cell) >= s
            ]
            for z in spanning_cycles(complex_, i, cells, budgets.samples):
                value_z = cm.value(e, z)
                admits = [
                    (lambda cell, t=t: cm.cell_value(e, cell) >= t)
                    for t in _thresholds(value_z, s - budgets.lag_budget)
                ]
                c = _first_bounding(complex_, z, budgets.window, admits)
                if c is None:
                    logger.debug("Cycle %s at level %s is not bounded", z, s)
                    estimate.record(i, s, None)
                    continue
                value_c = cm.value(e, c)
                estimate.certificates.append(
                    BoundingCertificate(
                        z=z,
                        c=c,
                        level=s,
                        value_z=value_z,
                        value_c=value_c,
                        lag=sympy.Max(0, value_z - value_c),
                    )
                )
                estimate.record(i, s, sympy.Max(0, s - value_c))
    return estimate


def lag_from_push(cert: PushCertificate, budgets: Budgets | None = None) -> LagEstimate:
    """Constant lag ||sigma|| of a push, checked against observed lags.

    The bound is measured in valuation units: ||sigma|| times the Lipschitz
    constant of the Busemann function. Observed bounding lags above it are
    collected as violations.
    """
    estimate = ca_check(cert.cm, cert.e, cert.n, budgets)
    estimate.bound = cert.lag_bound
    estimate.violations = [
        bounding
        for bounding in estimate.certificates
        if compare(bounding.lag, estimate.bound.value) > 0
    ]
    if estimate.violations:
        logger.warning(
            "%d observed lags exceed the push bound %s",
            len(estimate.violations),
            estimate.bound,
        )
    return estimate


def point_centre(cm: ControlledModel, b: Point, search: int) -> Form:
    """A group element moving the base point to ``b``, or the identity."""
    group = cm.complex.group
    for g in group.ball(search):
        if cm.model.act_point(g, cm.base) == b:
            return g
    return group.identity


def ca_over_point(
    cm: ControlledModel,
    b: Point,
    n: int,
    budgets: Budgets | None = None,
    centre: Form | None = None,
) -> LagEstimate:
    """Windowed CA^{n-1} over a point: D_b(c) <= D_b(z) + lag.

    Cycles on the window around b are bounded by chains on cells whose
    distance to b is at most D_b(z) + t, t = 0, 1, ... up to the lag budget.
    Lags are recorded at level 0.
    """
    budgets = budgets or Budgets()
    complex_ = cm.complex
    group = complex_.group
    domain = complex_.ring.domain
    if centre is None:
        centre = point_centre(cm, b, budgets.window + budgets.max_radius)
    forms = neighbourhood(group, [centre], budgets.window)
    estimate = LagEstimate()

    def within(bound: Any) -> Callable[[Cell], bool]:
        return lambda cell: compare(cm.cell_distance(b, cell).value, bound) <= 0

    for i in range(-1, n):
        if i == -1:
            radii = sorted(
                {cm.cell_distance(b, cell) for cell in complex_.cells(0, forms)}
            )
            for j in range(complex_.module_rank):
                unit = tuple(
                    domain.one if k == j else domain.zero
                    for k in range(complex_.module_rank)
                )
                found = None
                for radius in radii:
                    found = solve_augmentation(
                        complex_, unit, forms, admit=within(radius.value)
                    )
                    if found is not None:
                        break
                estimate.record(
                    -1, 0, None if found is None else cm.dist_to_base(found, b).value
                )
            continue
        cells = complex_.cells(i, forms)
        for z in spanning_cycles(complex_, i, cells, budgets.samples):
            distance_z = cm.dist_to_base(z, b).value
            admits = [within(distance_z + t) for t in range(budgets.lag_budget + 1)]
            c = _first_bounding(complex_, z, budgets.window, admits)
            if c is None:
                estimate.record(i, 0, None)
                continue
            distance_c = cm.dist_to_base(c, b).value
            lag = exact_max([sympy.Integer(0), distance_c - distance_z])
            estimate.certificates.append(
                BoundingCertificate(
                    z=z,
                    c=c,
                    level=0,
                    value_z=distance_z,
                    value_c=distance_c,
                    lag=lag,
                    toward="point",
                    point=b,
                )
            )
            estimate.record(i, 0, lag)
    return estimate


def uniform_point_lag(
    cm: ControlledModel,
    points: Sequence[Point],
    n: int,
    budgets: Budgets | None = None,
) -> tuple[Any, list[LagEstimate]]:
    """CA over each sampled point; the common lag, or ``None`` if some cycle failed."""
    estimates = [ca_over_point(cm, b, n, budgets) for b in points]
    if not all(estimate.complete for estimate in estimates):
        return None, estimates
    return exact_max([estimate.constant for estimate in estimates]), estimates


def _represents(
    module: QuotientModule,
    complex_: ChainComplex,
    sample: Sequence[GroupRingElem],
    cells: list[Cell],
    forms: list[Form],
) -> bool:
    """Whether eps(c) - sample lies in the relations for some c on ``cells``."""
    columns: dict[Hashable, Any] = {
        cell: module.cell_column(cell, complex_.augmentation[cell.symbol])
        for cell in cells
    }
    columns.update(module.relation_columns(forms))
    target = as_column(tuple(sample))
    return solve(columns, target, complex_.ring.domain) is not None


def bounded_support_check(
    cm: ControlledModel,
    samples: Sequence[Sequence[Any]],
    radius_budget: int,
    b: Point | None = None,
    module: QuotientModule | None = None,
) -> Length | NotFound:
    """Least r such that every sampled a in A is eps(c) with h(c) in B_r(b).

    Candidate radii are the distances from b to the dimension-0 cells over
    the word ball of radius ``radius_budget``. Samples are K^r tuples; with a
    quotient ``module`` they are columns of group-ring elements, and eps(c)
    only has to agree with them modulo the relation translates over the
    same ball.
    """
    complex_ = cm.complex
    b = cm.base if b is None else b
    forms = complex_.group.ball(radius_budget)
    cells = complex_.cells(0, forms)
    radii = sorted({cm.cell_distance(b, cell) for cell in cells})
    worst = Length(sympy.Integer(0))
    ring = complex_.ring
    for sample in samples:
        for radius in radii:
            near = [cell for cell in cells if cm.cell_distance(b, cell) <= radius]
            if module is None:
                wanted = tuple(ring.scalar(value) for value in sample)
                admitted = set(near)
                chain = solve_augmentation(
                    complex_, wanted, forms, admit=admitted.__contains__
                )
                found = chain is not None
            else:
                found = _represents(module, complex_, sample, near, forms)
            if found:
                worst = max(worst, radius)
                break
        else:
            return NotFound(
                f"{sample} is not the augmentation of a chain within word radius "
                f"{radius_budget}"
            )
    return worst
