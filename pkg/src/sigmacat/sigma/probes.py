"""Consistency probes: product formula, openness margins and invariance."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import sympy

from sigmacat.complexes import Cell, tensor_complex
from sigmacat.finitary import (
    FinitaryError,
    Window,
    compose_maps,
    iterate,
    lift_finitary,
    norm,
    shift_report,
)
from sigmacat.geometry import (
    ControlledModel,
    Direction,
    EuclideanModel,
    Join,
    ProductModel,
    build_control,
    inner,
)
from sigmacat.utils.exact import Length, compare, rational

from .budgets import Budgets
from .certificates import (
    MEMBER,
    NON_MEMBER,
    UNKNOWN,
    CheckReport,
    HypothesisNotEstablishedError,
    PushCertificate,
    SigmaError,
    Verdict,
)
from .membership import membership

logger = logging.getLogger(__name__)


class UnsupportedProbeError(SigmaError):
    """Raised when a probe is asked about a model or map it cannot handle."""


def product_control(left: ControlledModel, right: ControlledModel) -> ControlledModel:
    """The tensor resolution over the product model, with the left preset."""
    complex_ = tensor_complex(left.complex, right.complex)
    model = ProductModel(complex_.group, left.model, right.model)
    return build_control(
        model, complex_, preset=left.preset, base=(left.base, right.base)
    )


@dataclass(frozen=True)
class ProductRow:
    """Predicted and computed verdict at one join direction."""

    join: Join
    predicted: str
    actual: Verdict

    @property
    def mismatch(self) -> bool:
        """Whether both outcomes are definite and disagree."""
        return UNKNOWN not in (self.predicted, self.actual.status) and (
            self.predicted != self.actual.status
        )


@dataclass
class ProductReport:
    rows: list[ProductRow] = field(default_factory=list)

    @property
    def mismatches(self) -> list[ProductRow]:
        """Rows contradicting the product formula."""
        return [row for row in self.rows if row.mismatch]


class _FactorVerdicts:
    """Memoized factor verdicts by (direction, dimension)."""

    def __init__(self, cm: ControlledModel, budgets: Budgets) -> None:
        self.cm = cm
        self.budgets = budgets
        self.cache: dict[tuple[Any, int], str] = {}

    def status(self, e: Direction, p: int) -> str:
        key = (e, p)
        if key not in self.cache:
            self.cache[key] = membership(self.cm, e, p, self.budgets).status
        return self.cache[key]


def _predict(
    join: Join, n: int, left: _FactorVerdicts, right: _FactorVerdicts
) -> str:
    """Product verdict from the factors: the complement in dimension n is the
    union over p of joins of the left complement in dimension p with the
    right complement in dimension n - p.
    """
    if not join.w2:
        return left.status(join.left, n)
    if not join.w:
        return right.status(join.right, n)
    outcome = MEMBER
    for p in range(n + 1):
        first, second = left.status(join.left, p), right.status(join.right, n - p)
        if first == NON_MEMBER and second == NON_MEMBER:
            return NON_MEMBER
        if MEMBER not in (first, second):
            outcome = UNKNOWN
    return outcome


def product_complement_check(
    left: ControlledModel,
    right: ControlledModel,
    n: int,
    joins: Sequence[Join] | None = None,
    budgets: Budgets | None = None,
) -> ProductReport:
    """Compare product verdicts with the prediction from factor verdicts.

    Both factors must be certified Member in dimension 0 at every factor
    direction used; the product side is computed on the tensor resolution.
    """
    budgets = budgets or Budgets()
    if not left.complex.ring.is_field:
        msg = f"The product formula needs a field, got {left.complex.ring}"
        raise HypothesisNotEstablishedError(msg)
    product = product_control(left, right)
    if joins is None:
        joins = product.model.sample_directions(budgets.samples)
    joins = [product.model.scale_direction(join) for join in joins]
    verdicts = (_FactorVerdicts(left, budgets), _FactorVerdicts(right, budgets))
    for join in joins:
        for side, e in zip(verdicts, (join.left, join.right), strict=True):
            if e is not None and side.status(e, 0) != MEMBER:
                msg = (
                    f"Dimension 0 membership of {side.cm.model.format_direction(e)} "
                    f"is not certified in {side.cm.model.name()}"
                )
                raise HypothesisNotEstablishedError(msg)
    report = ProductReport()
    for join in joins:
        predicted = _predict(join, n, *verdicts)
        actual = membership(product, join, n, budgets)
        row = ProductRow(join, predicted, actual)
        if row.mismatch:
            logger.warning(
                "Join %s: predicted %s, computed %s",
                product.model.format_direction(join),
                predicted,
                actual.status,
            )
        report.rows.append(row)
    return report


@dataclass
class OpennessReport:
    """Shift of an equivariant push at perturbed directions.

    ``margin`` is a radius within which every perturbation keeps a positive
    shift; ``inconsistent`` lists samples inside it that did not.
    """

    margin: Length
    samples: list[tuple[tuple, Any]] = field(default_factory=list)
    failures: list[tuple] = field(default_factory=list)
    inconsistent: list[tuple] = field(default_factory=list)


def _shift_data(cert: PushCertificate) -> list[tuple[tuple, tuple]]:
    """(h(phi(x)), h(x)) for basis cells with a nonzero image."""
    cm = cert.cm
    identity = cm.complex.group.identity
    data = []
    for k in range(min(cert.n, cm.complex.length) + 1):
        for symbol in cm.complex.basis(k):
            cell = Cell(symbol, identity)
            image = cert.phi.image(cell)
            if image.terms:
                data.append((tuple(cm.points_of(image)), cm.points(cell)))
    return data


def _gsh_at(data: list[tuple[tuple, tuple]], e: tuple) -> Any:
    return min(
        min(inner(q, e) for q in targets) - min(inner(p, e) for p in own)
        for targets, own in data
    )


def tits_openness_probe(
    cert: PushCertificate, radius: Any, samples: int = 4
) -> OpennessReport:
    """Check gsh > 0 at rational perturbations e + t * radius * (+-u_i).

    On a Euclidean model gsh of an equivariant map is, as a function of the
    direction, a minimum of finitely many maxima of linear forms q - p. Each
    form active at e gives a positive margin <e, q - p> / |q - p|.
    """
    model = cert.cm.model
    if not isinstance(model, EuclideanModel):
        msg = f"The openness probe needs a Euclidean model, got {model.name()}"
        raise UnsupportedProbeError(msg)
    if not cert.phi.is_equivariant:
        msg = "The openness probe needs an equivariant push"
        raise UnsupportedProbeError(msg)
    e = cert.e
    data = _shift_data(cert)
    margins = []
    for targets, own in data:
        for q in targets:
            p = min(own, key=lambda point: inner(point, e))
            form = tuple(a - b for a, b in zip(q, p, strict=True))
            value = inner(form, e)
            margins.append(
                sympy.Integer(0) if value <= 0 else value**2 / inner(form, form)
            )
    report = OpennessReport(margin=Length(min(margins)))
    radius = rational(radius)
    steps = [sympy.Rational(j, samples) for j in range(1, samples + 1)]
    perturbations = [tuple(sympy.Integer(0) for _ in e)]
    if radius:
        for i in range(len(e)):
            for sign in (1, -1):
                for t in steps:
                    delta = [sympy.Integer(0)] * len(e)
                    delta[i] = sign * t * radius
                    perturbations.append(tuple(delta))
    for delta in perturbations:
        moved = tuple(a + b for a, b in zip(e, delta, strict=True))
        if not any(moved):
            continue
        value = _gsh_at(data, moved)
        report.samples.append((moved, value))
        if value <= 0:
            report.failures.append(moved)
            if Length(inner(delta, delta)) < report.margin:
                report.inconsistent.append(moved)
    return report


@dataclass(frozen=True)
class InvarianceRow:
    """Verdicts from two resolutions and the transported push, when built."""

    e: Direction
    first: Verdict
    second: Verdict
    power: int | None = None
    transported: CheckReport | None = None
    error: str = ""

    @property
    def agree(self) -> bool:
        """Whether both resolutions gave the same verdict."""
        return self.first.status == self.second.status


@dataclass
class InvarianceReport:
    rows: list[InvarianceRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Whether verdicts agree and every transported push verified."""
        return all(
            row.agree
            and not row.error
            and (row.transported is None or row.transported.ok)
            for row in self.rows
        )


def transported_push(
    cert: PushCertificate,
    first: ControlledModel,
    second: ControlledModel,
    budgets: Budgets,
) -> tuple[int, CheckReport]:
    """Build alpha phi^k beta on the second resolution and check it.

    alpha and beta are lifts of id_A between the resolutions; k exceeds
    (|alpha| + |beta|) Lip / gsh(phi), so the shift bound
    k gsh(phi) - (|alpha| + |beta|) Lip is positive.
    """
    n, e = cert.n, cert.e
    alpha = lift_finitary(
        first.complex,
        second.complex,
        first,
        second,
        max_radius=budgets.max_radius,
        top=n,
    )
    beta = lift_finitary(
        second.complex,
        first.complex,
        second,
        first,
        max_radius=budgets.max_radius,
        top=n,
    )
    lip = sympy.sqrt(first.model.lipschitz_squared(e))
    loss = (norm(first, second, alpha).value + norm(second, first, beta).value) * lip
    k = int(sympy.floor(loss / cert.gsh)) + 1
    moved = compose_maps(alpha, compose_maps(iterate(cert.phi, k), beta))
    dims = tuple(range(n + 1))
    window = Window(budgets.window, dims)
    report = CheckReport()
    defects = moved.chain_map_defects(window.all_cells(second.complex))
    report.add("transported map is a chain map", not defects, f"at {defects[:3]}")
    shifts = shift_report(second, second, e, moved, window, dims)
    bound = k * cert.gsh - loss
    report.add(
        "shift bound",
        compare(shifts.gsh, bound) >= 0 and compare(shifts.gsh, 0) > 0,
        f"gsh {shifts.gsh}, bound {bound}",
    )
    return k, report


def invariance_crosscheck(
    first: ControlledModel,
    second: ControlledModel,
    directions: Sequence[Direction],
    n: int,
    budgets: Budgets | None = None,
) -> InvarianceReport:
    """Verdicts from two resolutions (or control maps) of the same module.

    They must agree; a push on the first side is transported to the second.
    """
    budgets = budgets or Budgets()
    report = InvarianceReport()
    for e in directions:
        one = membership(first, e, n, budgets)
        two = membership(second, e, n, budgets)
        power, transported, error = None, None, ""
        if isinstance(one.certificate, PushCertificate):
            try:
                power, transported = transported_push(
                    one.certificate, first, second, budgets
                )
            except FinitaryError as err:
                error = str(err)
                logger.warning("Could not transport the push at %s: %s", e, err)
        report.rows.append(
            InvarianceRow(one.e, one, two, power, transported, error)
        )
    return report
