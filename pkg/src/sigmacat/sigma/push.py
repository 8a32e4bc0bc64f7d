"""Search for finitary chain maps pushing the n-skeleton toward a direction."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from sigmacat.algebra import Form
from sigmacat.complexes import Cell, Chain
from sigmacat.finitary import (
    FinitaryError,
    PreconditionError,
    Window,
    equivariant_map,
    homotopy_between,
    identity_map,
    norm,
    shift_report,
    solve_around,
)
from sigmacat.geometry import ControlledModel, Direction

from .budgets import Budgets
from .certificates import PushCertificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NotFound:
    """No push was found within the budgets."""

    reason: str
    budgets: dict[str, Any] = field(default_factory=dict)


def ascending_letters(cm: ControlledModel, e: Direction) -> list[Form]:
    """Generators and inverses moving every dimension-0 basis cell up toward e."""
    complex_ = cm.complex
    group = complex_.group
    found = []
    for letter in group.letters():
        if all(
            cm.cell_value(e, Cell(symbol, letter))
            > cm.cell_value(e, Cell(symbol, group.identity))
            for symbol in complex_.basis(0)
        ):
            found.append(letter)
    return found


def _skeleton_images(
    cm: ControlledModel,
    e: Direction,
    n: int,
    g: Form,
    nu: int,
    max_radius: int,
) -> dict[str, Chain] | None:
    """Values on basis cells through dimension n starting from ``x -> g x``."""
    complex_ = cm.complex
    group, ring = complex_.group, complex_.ring
    identity = group.identity
    images: dict[str, Chain] = {}
    for symbol in complex_.basis(0):
        floor = cm.cell_value(e, Cell(symbol, identity)) + nu
        if cm.cell_value(e, Cell(symbol, g)) < floor:
            return None
        images[symbol] = Chain.cell(group, ring, 0, Cell(symbol, g))
    for k in range(1, n + 1):
        for symbol in complex_.basis(k):
            floor = cm.cell_value(e, Cell(symbol, identity)) + nu
            partial = equivariant_map(complex_, complex_, 0, images)
            goal = partial(complex_.boundary(complex_.basis_cell(symbol)))
            value = solve_around(
                complex_,
                k,
                goal,
                max_radius,
                preference=lambda cell, symbol=symbol: cell.symbol != symbol,
                admit=lambda cell, floor=floor: cm.cell_value(e, cell) >= floor,
            )
            if value is None:
                logger.debug("No lift of '%s' above valuation %s", symbol, floor)
                return None
            images[symbol] = value
    return images


def find_push(
    cm: ControlledModel,
    e: Direction,
    n: int,
    budgets: Budgets | None = None,
) -> PushCertificate | NotFound:
    """Look for phi on the n-skeleton with gsh_e(phi) >= nu and phi homotopic to id.

    Dimension 0 sends every basis cell x to w^k x for the product w of the
    ascending letters, k = 1, 2, ... up to the push budget; higher
    dimensions are solved on cells whose valuation clears v(x) + nu. The
    homotopy sigma with id - phi = d sigma + sigma d comes from exact solves.
    """
    budgets = budgets or Budgets()
    if budgets.nu <= 0:
        msg = f"The required shift must be positive, got {budgets.nu}"
        raise PreconditionError(msg)
    complex_ = cm.complex
    if n < 0 or n > complex_.length:
        msg = f"Dimension {n} is outside the complex (length {complex_.length})"
        raise PreconditionError(msg)
    if not complex_.complete and n >= complex_.top:
        msg = (
            f"The complex only resolves A through dimension {complex_.top}; "
            f"a homotopy on the {n}-skeleton needs dimension {n + 1}"
        )
        raise PreconditionError(msg)
    e = cm.model.scale_direction(e)
    tried = budgets.to_json()
    letters = ascending_letters(cm, e)
    if not letters:
        return NotFound("no generator moves the base cells toward e", tried)
    group = complex_.group
    word = group.identity
    for letter in letters:
        word = group.mul(word, letter)
    dims = tuple(range(n + 1))
    window = Window(budgets.window, dims)
    for power in range(1, budgets.push_budget + 1):
        g = group.power(word, power)
        images = _skeleton_images(cm, e, n, g, budgets.nu, budgets.max_radius)
        if images is None:
            continue
        phi = equivariant_map(complex_, complex_, 0, images)
        report = shift_report(cm, cm, e, phi, window, dims)
        if report.gsh < budgets.nu:
            logger.debug("Power %d shifts only by %s", power, report.gsh)
            continue
        try:
            sigma = homotopy_between(
                identity_map(complex_),
                phi,
                max_radius=budgets.max_radius,
                top=n,
                window=Window(min(budgets.window, 1), dims),
            )
        except FinitaryError as err:
            logger.debug("No homotopy for power %d: %s", power, err)
            continue
        return PushCertificate(
            cm=cm,
            e=e,
            n=n,
            nu=budgets.nu,
            phi=phi,
            sigma=sigma,
            gsh=report.gsh,
            label=report.label,
            window=budgets.window,
            power=power,
            sigma_norm=norm(cm, cm, sigma),
        )
    return NotFound(
        f"no push of the {n}-skeleton up to power {budgets.push_budget} "
        f"of {group.format(word)}",
        tried,
    )
