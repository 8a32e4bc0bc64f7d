"""Elementary expansions that turn pushes into zero-lag bounding."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

from sigmacat.complexes import Cell, Chain, ChainComplex, elementary_expansion
from sigmacat.finitary import Volley
from sigmacat.geometry import ControlledModel, Direction

from .budgets import Budgets
from .certificates import HypothesisNotEstablishedError, PushCertificate, Verdict
from .membership import membership

logger = logging.getLogger(__name__)


@dataclass
class ExpansionResult:
    """Expanded complex, its control map and the monotone homotopy volley.

    ``cells`` maps (direction, x) to the name of the cell xi added for it.
    """

    complex: ChainComplex
    control: ControlledModel
    homotopy: Volley
    cells: dict[tuple[Direction, str], str] = field(default_factory=dict)
    violations: list[tuple[Direction, Cell, Any, Any]] = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        """Whether v(xi) >= v(x) held on every checked cell."""
        return not self.violations


def _lower_push(
    cm: ControlledModel,
    e: Direction,
    n: int,
    lower: Mapping[Direction, Verdict],
    budgets: Budgets,
) -> PushCertificate:
    verdict = lower.get(e)
    if verdict is None:
        verdict = membership(cm, e, n - 1, budgets)
    if not verdict.is_member:
        msg = (
            f"Membership of {cm.model.format_direction(e)} in dimension {n - 1} "
            f"is not certified ({verdict.status}: {verdict.reason})"
        )
        raise HypothesisNotEstablishedError(msg)
    if not isinstance(verdict.certificate, PushCertificate):
        msg = f"The verdict at {cm.model.format_direction(e)} carries no push"
        raise HypothesisNotEstablishedError(msg)
    return verdict.certificate


def zero_lag_transform(
    cm: ControlledModel,
    directions: Iterable[Direction],
    n: int,
    budgets: Budgets | None = None,
    lower: Mapping[Direction, Verdict] | None = None,
) -> ExpansionResult:
    """Expand the complex so that (n-1)-cycles over horoballs bound with lag 0.

    Every direction needs a certified push phi of the (n-1)-skeleton with a
    homotopy sigma, id - phi = d sigma + sigma d; it is taken from ``lower``
    or computed. For each basis cell x of dimension k < n cells xi and eta
    are added with d(xi) = x - c and d(eta) = sigma(x) - xi, where
    c = phi(x) + sigma(dx). Then xi is controlled by h(x) and h(c), so it
    never lowers the valuation of x.
    """
    budgets = budgets or Budgets()
    model = cm.model
    lower = {model.scale_direction(e): v for e, v in (lower or {}).items()}
    scaled = list(dict.fromkeys(model.scale_direction(e) for e in directions))
    if n < 1:
        scaled = []
    elif not scaled:
        msg = "The zero-lag transform needs at least one direction"
        raise HypothesisNotEstablishedError(msg)
    original = cm.complex
    group, ring = original.group, original.ring
    current = original
    cells: dict[tuple[Direction, str], str] = {}
    for e in scaled:
        cert = _lower_push(cm, e, n, lower, budgets)
        for k in range(n):
            for symbol in original.basis(k):
                x = Chain.cell(group, ring, k, Cell(symbol, group.identity))
                c = cert.phi(x)
                if k > 0:
                    c = c + cert.sigma(original.boundary(x))
                d = cert.sigma(x)
                before = set(current.basis(k + 1))
                current = elementary_expansion(
                    current, Cell(symbol, group.identity), c, d
                )
                (xi,) = set(current.basis(k + 1)) - before
                cells[(e, symbol)] = xi
                logger.debug("Added %s over '%s' toward %s", xi, symbol, e)
    control = cm.extend(current)
    table: dict[str, tuple[Chain, ...]] = {}
    for k, basis in enumerate(current.bases):
        for symbol in basis:
            candidates = [
                Chain.cell(group, ring, k + 1, Cell(xi, group.identity))
                for (_, x), xi in cells.items()
                if x == symbol
            ]
            table[symbol] = tuple(candidates) or (current.zero(k + 1),)
    result = ExpansionResult(
        complex=current,
        control=control,
        homotopy=Volley(current, current, 1, table),
        cells=cells,
    )
    forms = group.ball(budgets.window)
    for (e, symbol), xi in cells.items():
        for g in forms:
            before = control.cell_value(e, Cell(symbol, g))
            after = control.cell_value(e, Cell(xi, g))
            if after < before:
                result.violations.append((e, Cell(symbol, g), before, after))
    if result.violations:
        logger.warning("%d expansion cells lower the valuation", len(result.violations))
    return result
