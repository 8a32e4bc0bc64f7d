"""Standalone re-verification of certificate documents."""

from __future__ import annotations

import logging
from typing import Any

from sigmacat.complexes import ComplexError
from sigmacat.finitary import FinitaryError
from sigmacat.geometry import (
    ControlledModel,
    Direction,
    GeometryError,
    control_to_json,
    load_control,
)
from sigmacat.novikov import (
    NovikovError,
    ObstructionClass,
    obstruction_from_json,
    verify_obstruction,
)
from sigmacat.utils.exact import compare

from .certificates import (
    MEMBER,
    NON_MEMBER,
    BoundingCertificate,
    CertificateError,
    CheckReport,
    LagEstimate,
    PushCertificate,
    check_envelope,
    expr_from_json,
    verify_bounding,
    verify_push,
)

logger = logging.getLogger(__name__)


def bounding_payload(
    estimate: LagEstimate, cm: ControlledModel, e: Direction | None
) -> dict[str, Any]:
    """Payload of a ``bounding`` certificate; ``e`` is ``None`` toward points."""
    return {
        "control": control_to_json(cm),
        "direction": None if e is None else cm.model.direction_to_json(e),
        "estimate": estimate.to_json(),
        "certificates": [cert.to_json(cm.model) for cert in estimate.certificates],
    }


def obstruction_payload(
    obstruction: ObstructionClass, cm: ControlledModel, window: int
) -> dict[str, Any]:
    """Payload of an ``obstruction`` certificate."""
    return {
        "control": control_to_json(cm),
        "window": window,
        "obstruction": obstruction.to_json(cm.model),
    }


def _check_bounding(payload: dict[str, Any], report: CheckReport) -> None:
    cm = load_control(payload["control"])
    direction = payload.get("direction")
    e = None if direction is None else cm.model.direction_from_json(direction)
    bound = payload["estimate"].get("bound")
    for index, data in enumerate(payload["certificates"]):
        cert = BoundingCertificate.from_json(data, cm)
        sub = verify_bounding(cert, cm, e)
        for name, ok, detail in sub.checks:
            report.add(f"bounding {index}: {name}", ok, detail)
        if bound is not None:
            report.add(
                f"bounding {index}: lag within bound",
                compare(cert.lag, expr_from_json(bound)) <= 0,
                f"lag {cert.lag}, bound {bound}",
            )


def _check_obstruction(
    data: dict[str, Any], cm: ControlledModel, window: int, report: CheckReport
) -> None:
    obstruction = obstruction_from_json(data, cm.complex, cm.model)
    report.add("obstruction is stable", obstruction.stable)
    failures = verify_obstruction(obstruction, cm.complex, cm.model, window)
    report.add("obstruction replays", not failures, "; ".join(failures))


def _merge(report: CheckReport, other: CheckReport) -> None:
    for name, ok, detail in other.checks:
        report.add(name, ok, detail)


def verify_document(document: dict[str, Any]) -> CheckReport:
    """Recheck any certificate envelope from its content alone.

    Raises :class:`CertificateError` for documents that are not readable
    certificates; failed mathematical checks are reported, not raised.
    """
    kind = check_envelope(document)
    payload = document["payload"]
    report = CheckReport()
    report.add("envelope digest", ok=True)
    try:
        if kind == "push":
            _merge(report, verify_push(PushCertificate.from_json(payload)))
        elif kind == "bounding":
            _check_bounding(payload, report)
        elif kind == "obstruction":
            cm = load_control(payload["control"])
            _check_obstruction(
                payload["obstruction"], cm, int(payload.get("window", 2)), report
            )
        else:
            _check_verdict(payload, report)
    except (
        KeyError,
        TypeError,
        ValueError,
        ComplexError,
        FinitaryError,
        GeometryError,
        NovikovError,
    ) as err:
        msg = f"Malformed {kind} certificate: {err}"
        raise CertificateError(msg) from err
    logger.debug("Verified %s certificate: %s", kind, report.ok)
    return report


def _check_verdict(payload: dict[str, Any], report: CheckReport) -> None:
    status = payload["status"]
    evidence = payload.get("evidence")
    if status == MEMBER and int(payload["n"]) >= 0:
        if evidence is None or evidence.get("kind") != "push":
            report.add("Member verdict carries a push", ok=False)
            return
        _merge(report, verify_push(PushCertificate.from_json(evidence["payload"])))
    elif status == NON_MEMBER:
        if evidence is None or evidence.get("kind") != "obstruction":
            report.add("NonMember verdict carries an obstruction", ok=False)
            return
        cm = load_control(payload["control"])
        window = int(payload.get("budgets", {}).get("window", 2))
        _check_obstruction(evidence["payload"], cm, window, report)
