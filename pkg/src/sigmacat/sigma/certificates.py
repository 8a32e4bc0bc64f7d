"""Certificates produced by the Sigma procedures and their JSON envelope."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

import sympy

from sigmacat.complexes import Chain, chain_from_json, chain_to_json
from sigmacat.finitary import (
    FinitaryMap,
    Window,
    identity_map,
    map_from_json,
    map_to_json,
    shift_report,
)
from sigmacat.geometry import (
    ControlledModel,
    Direction,
    ModelSpace,
    Point,
    control_to_json,
    load_control,
)
from sigmacat.utils.codec import digest
from sigmacat.utils.exact import Length, compare, exact_max

ENVELOPE_SCHEMA = 1
CERTIFICATE_KINDS = ("push", "bounding", "obstruction", "verdict")

MEMBER = "Member"
NON_MEMBER = "NonMember"
UNKNOWN = "Unknown"
VERDICT_STATUSES = (MEMBER, NON_MEMBER, UNKNOWN)


class SigmaError(Exception):
    """Base class for errors of the membership procedures."""


class CertificateError(SigmaError):
    """Raised when a certificate cannot be read or fails verification."""


class HypothesisNotEstablishedError(CertificateError):
    """Raised when a procedure is called before its hypotheses are certified."""


def expr_to_json(value: Any) -> str:
    """Exact value as a string; ``oo`` for infinity."""
    return str(sympy.sympify(value))


def expr_from_json(text: str) -> sympy.Expr:
    """Inverse of :func:`expr_to_json`."""
    try:
        return sympy.sympify(text, rational=True)
    except (sympy.SympifyError, TypeError) as err:
        msg = f"Not an exact value: {text!r}"
        raise CertificateError(msg) from err


@dataclass(frozen=True, eq=False)
class PushCertificate:
    """A finitary chain map phi on the n-skeleton pushing toward e.

    ``phi`` lifts id_A with guaranteed shift ``gsh >= nu``; ``sigma`` is a
    finitary homotopy with id - phi = d sigma + sigma d through dimension n.
    ``power`` is the exponent of the ascending word used in dimension 0.
    """

    cm: ControlledModel
    e: Direction
    n: int
    nu: int
    phi: FinitaryMap
    sigma: FinitaryMap
    gsh: sympy.Expr
    label: str
    window: int
    power: int
    sigma_norm: Length

    @property
    def lag_bound(self) -> Length:
        """Lag implied by the homotopy: ||sigma|| times the Lipschitz constant."""
        return self.sigma_norm.scaled(self.cm.model.lipschitz_squared(self.e))

    def to_json(self) -> dict[str, Any]:
        """Certificate payload."""
        return {
            "control": control_to_json(self.cm),
            "direction": self.cm.model.direction_to_json(self.e),
            "n": self.n,
            "nu": self.nu,
            "phi": map_to_json(self.phi),
            "sigma": map_to_json(self.sigma),
            "gsh": expr_to_json(self.gsh),
            "label": self.label,
            "window": self.window,
            "power": self.power,
            "sigma_norm_squared": expr_to_json(self.sigma_norm.squared),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> PushCertificate:
        """Inverse of :meth:`to_json`."""
        try:
            cm = load_control(data["control"])
            complex_ = cm.complex
            return cls(
                cm=cm,
                e=cm.model.direction_from_json(data["direction"]),
                n=int(data["n"]),
                nu=int(data["nu"]),
                phi=map_from_json(data["phi"], complex_, complex_),
                sigma=map_from_json(data["sigma"], complex_, complex_),
                gsh=expr_from_json(data["gsh"]),
                label=data["label"],
                window=int(data["window"]),
                power=int(data["power"]),
                sigma_norm=Length(expr_from_json(data["sigma_norm_squared"])),
            )
        except KeyError as err:
            msg = f"Push certificate is missing {err}"
            raise CertificateError(msg) from err


@dataclass(frozen=True, eq=False)
class BoundingCertificate:
    """A cycle z with v(z) >= s and a chain c with dc = z.

    The achieved lag is ``max(0, v(z) - v(c))``; toward a point the values are
    D_b and the lag is ``max(0, D_b(c) - D_b(z))``.
    """

    z: Chain
    c: Chain
    level: Any
    value_z: sympy.Expr
    value_c: sympy.Expr
    lag: sympy.Expr
    toward: str = "direction"
    point: Point | None = None

    def to_json(self, model: ModelSpace | None = None) -> dict[str, Any]:
        """Certificate payload; ``model`` writes the point of a point certificate."""
        data = {
            "z": chain_to_json(self.z),
            "c": chain_to_json(self.c),
            "level": expr_to_json(self.level),
            "value_z": expr_to_json(self.value_z),
            "value_c": expr_to_json(self.value_c),
            "lag": expr_to_json(self.lag),
            "toward": self.toward,
        }
        if self.point is not None and model is not None:
            data["point"] = model.point_to_json(self.point)
        return data

    @classmethod
    def from_json(
        cls, data: dict[str, Any], cm: ControlledModel
    ) -> BoundingCertificate:
        """Inverse of :meth:`to_json` over the complex of ``cm``."""
        group, ring = cm.complex.group, cm.complex.ring
        try:
            return cls(
                z=chain_from_json(data["z"], group, ring),
                c=chain_from_json(data["c"], group, ring),
                level=expr_from_json(data["level"]),
                value_z=expr_from_json(data["value_z"]),
                value_c=expr_from_json(data["value_c"]),
                lag=expr_from_json(data["lag"]),
                toward=data.get("toward", "direction"),
                point=(
                    None
                    if data.get("point") is None
                    else cm.model.point_from_json(data["point"])
                ),
            )
        except KeyError as err:
            msg = f"Bounding certificate is missing {err}"
            raise CertificateError(msg) from err


@dataclass
class LagEstimate:
    """Observed lags per (dimension, level); ``None`` marks an unbounded cycle."""

    lags: dict[tuple[int, Any], Any] = field(default_factory=dict)
    certificates: list[BoundingCertificate] = field(default_factory=list)
    unknown: list[tuple[int, Any]] = field(default_factory=list)
    bound: Length | None = None
    violations: list[BoundingCertificate] = field(default_factory=list)

    def record(self, dimension: int, level: Any, lag: Any) -> None:
        """Keep the worst lag seen at a dimension and level."""
        key = (dimension, level)
        if lag is None:
            self.lags[key] = None
            if key not in self.unknown:
                self.unknown.append(key)
            return
        if key in self.lags and self.lags[key] is None:
            return
        current = self.lags.get(key)
        self.lags[key] = lag if current is None else exact_max([current, lag])

    @property
    def complete(self) -> bool:
        """Whether every sampled cycle was bounded within the budgets."""
        return not self.unknown

    @property
    def constant(self) -> Any:
        """The largest observed lag when all levels were bounded, else ``None``."""
        if not self.complete:
            return None
        return exact_max([sympy.Integer(0), *self.lags.values()])

    def is_constant(self, tolerance: Any = 0) -> bool:
        """Whether the lag does not grow with the level in any dimension."""
        if not self.complete:
            return False
        by_dimension: dict[int, list[tuple[Any, Any]]] = {}
        for (dimension, level), lag in self.lags.items():
            by_dimension.setdefault(dimension, []).append((level, lag))
        for values in by_dimension.values():
            lags = [lag for _, lag in sorted(values, key=lambda item: item[0])]
            if lags and compare(lags[-1], lags[0] + tolerance) > 0:
                return False
        return True

    def to_json(self) -> dict[str, Any]:
        """Serializable summary."""
        return {
            "lags": [
                [
                    dimension,
                    expr_to_json(level),
                    None if lag is None else expr_to_json(lag),
                ]
                for (dimension, level), lag in sorted(
                    self.lags.items(), key=lambda item: (item[0][0], str(item[0][1]))
                )
            ],
            "complete": self.complete,
            "constant": None if self.constant is None else expr_to_json(self.constant),
            "bound": None if self.bound is None else expr_to_json(self.bound.value),
            "violations": len(self.violations),
        }


@dataclass(frozen=True, eq=False)
class Verdict:
    """Outcome of a membership query with its supporting certificate."""

    status: str
    e: Direction
    n: int
    certificate: Any = None
    reason: str = ""
    budgets: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status not in VERDICT_STATUSES:
            msg = f"Unknown verdict '{self.status}'"
            raise CertificateError(msg)

    @property
    def is_member(self) -> bool:
        """Whether the verdict is Member."""
        return self.status == MEMBER

    @property
    def is_non_member(self) -> bool:
        """Whether the verdict is NonMember."""
        return self.status == NON_MEMBER


def envelope(
    kind: str,
    payload: dict[str, Any],
    *,
    scenario: str | None = None,
    direction: Any = None,
    n: int | None = None,
) -> dict[str, Any]:
    """Wrap a payload with schema, kind, provenance and a content digest.

    The digest covers everything except the creation time and the digest.
    """
    if kind not in CERTIFICATE_KINDS:
        msg = f"Unknown certificate kind '{kind}'"
        raise CertificateError(msg)
    document = {
        "schema": ENVELOPE_SCHEMA,
        "kind": kind,
        "scenario": scenario,
        "direction": direction,
        "n": n,
        "payload": payload,
    }
    document["digest"] = digest(document)
    document["created"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return document


def check_envelope(document: dict[str, Any]) -> str:
    """Validate schema and digest of an envelope and return its kind."""
    if not isinstance(document, dict):
        msg = "A certificate must be a JSON object"
        raise CertificateError(msg)
    if document.get("schema") != ENVELOPE_SCHEMA:
        msg = (
            f"Unsupported certificate schema {document.get('schema')!r}, "
            f"expected {ENVELOPE_SCHEMA}"
        )
        raise CertificateError(msg)
    kind = document.get("kind")
    if kind not in CERTIFICATE_KINDS:
        msg = f"Unknown certificate kind {kind!r}"
        raise CertificateError(msg)
    content = {
        key: value
        for key, value in document.items()
        if key not in ("digest", "created")
    }
    if digest(content) != document.get("digest"):
        msg = "Certificate digest does not match its content"
        raise CertificateError(msg)
    return kind


@dataclass
class CheckReport:
    """Named checks of a verification run."""

    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:  # noqa: FBT001
        """Record one check."""
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        """Whether every check passed."""
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        """Names and details of failing checks."""
        return [
            f"{name}: {detail}" if detail else name
            for name, ok, detail in self.checks
            if not ok
        ]


def verify_push(cert: PushCertificate, window: int | None = None) -> CheckReport:
    """Recheck a push certificate from its data alone."""
    report = CheckReport()
    complex_ = cert.cm.complex
    dims = tuple(range(min(cert.n, complex_.length) + 1))
    checked = Window(cert.window if window is None else window, dims)
    defects = cert.phi.chain_map_defects(checked.all_cells(complex_))
    report.add(
        "phi is a chain map lifting id_A", not defects, f"defects at {defects[:3]}"
    )
    shifts = shift_report(cert.cm, cert.cm, cert.e, cert.phi, checked, dims)
    report.add(
        "guaranteed shift",
        shifts.gsh >= cert.nu and shifts.gsh == cert.gsh,
        f"recomputed {shifts.gsh}, recorded {cert.gsh}, required {cert.nu}",
    )
    failing = []
    identity = identity_map(complex_)
    for k in dims:
        for cell in checked.cells(complex_, k):
            chain = Chain.cell(complex_.group, complex_.ring, k, cell)
            achieved = complex_.boundary(cert.sigma(chain))
            if k > 0:
                achieved = achieved + cert.sigma(complex_.boundary(chain))
            if achieved != identity(chain) - cert.phi(chain):
                failing.append(cell)
    report.add("id - phi = d sigma + sigma d", not failing, f"fails at {failing[:3]}")
    return report


def verify_bounding(
    cert: BoundingCertificate, cm: ControlledModel, e: Direction
) -> CheckReport:
    """Recheck dc = z, the recorded valuations or distances, and the lag."""
    report = CheckReport()
    complex_ = cm.complex
    report.add("dc = z", complex_.boundary(cert.c) == cert.z)
    if cert.toward == "direction":
        value_z, value_c = cm.value(e, cert.z), cm.value(e, cert.c)
        report.add(
            "valuations",
            value_z == cert.value_z and value_c == cert.value_c,
            f"recomputed v(z)={value_z}, v(c)={value_c}",
        )
        report.add("cycle above level", value_z >= cert.level)
        lag = exact_max([sympy.Integer(0), value_z - value_c])
    else:
        b = cm.base if cert.point is None else cert.point
        value_z = cm.dist_to_base(cert.z, b).value
        value_c = cm.dist_to_base(cert.c, b).value
        report.add(
            "distances",
            compare(value_z, cert.value_z) == 0 and compare(value_c, cert.value_c) == 0,
            f"recomputed D_b(z)={value_z}, D_b(c)={value_c}",
        )
        lag = exact_max([sympy.Integer(0), value_c - value_z])
    report.add(
        "lag", compare(lag, cert.lag) == 0, f"recomputed lag {lag}, recorded {cert.lag}"
    )
    return report
