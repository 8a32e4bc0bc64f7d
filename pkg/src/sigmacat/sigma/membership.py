"""Membership verdicts: push certificates for Member, Novikov witnesses otherwise."""

from __future__ import annotations

import logging
from typing import Any

from sigmacat.finitary import PreconditionError
from sigmacat.geometry import ControlledModel, Direction, control_to_json
from sigmacat.novikov import ObstructionClass, tor_vanishing_test

from .budgets import Budgets
from .certificates import (
    MEMBER,
    NON_MEMBER,
    UNKNOWN,
    PushCertificate,
    Verdict,
    expr_to_json,
)
from .push import NotFound, find_push

logger = logging.getLogger(__name__)


def novikov_obstruction(
    cm: ControlledModel,
    e: Direction,
    n: int,
    budgets: Budgets | None = None,
) -> ObstructionClass | None:
    """A stable Novikov obstruction in some dimension k <= n at a direction
    of the sampled orbit closure of e, if one is found.

    Only translation models are searched; there the orbit closure is {e}.
    """
    budgets = budgets or Budgets()
    model = cm.model
    if not model.is_translation:
        return None
    for direction in model.orbit_closure_sample(e, budgets.orbit_depth):
        for k in range(n + 1):
            result = tor_vanishing_test(
                cm.complex, model, direction, k, budgets.truncation, budgets.window
            )
            if isinstance(result, ObstructionClass) and result.stable:
                return result
            logger.debug("Tor_%d toward %s: %s", k, direction, result.status)
    return None


def membership(
    cm: ControlledModel,
    e: Direction,
    n: int,
    budgets: Budgets | None = None,
) -> Verdict:
    """Decide e in the dynamical invariant of dimension n as far as budgets allow.

    A verified push gives Member. A stable Novikov obstruction at a point of
    the orbit closure gives NonMember. Anything else is Unknown, carrying the
    budgets that were tried.
    """
    budgets = budgets or Budgets()
    cm.model.check_direction(e)
    e = cm.model.scale_direction(e)
    tried = budgets.to_json()
    if n < 0:
        return Verdict(MEMBER, e, n, reason="every direction lies in dimension -1")
    reasons = []
    try:
        push = find_push(cm, e, n, budgets)
    except PreconditionError as err:
        push = NotFound(str(err), tried)
    if isinstance(push, PushCertificate):
        return Verdict(
            MEMBER, e, n, push, f"push with shift {push.gsh}", budgets=tried
        )
    reasons.append(push.reason)
    obstruction = novikov_obstruction(cm, e, n, budgets)
    if obstruction is not None:
        return Verdict(
            NON_MEMBER,
            e,
            n,
            obstruction,
            f"Novikov H_{obstruction.dimension} does not vanish",
            budgets=tried,
        )
    if cm.model.is_translation:
        reasons.append(f"no stable Novikov witness through dimension {n}")
    else:
        reasons.append("Novikov tests need a translation model")
    return Verdict(UNKNOWN, e, n, reason="; ".join(reasons), budgets=tried)


def verdict_to_json(verdict: Verdict, cm: ControlledModel) -> dict[str, Any]:
    """Payload of a ``verdict`` certificate; evidence is embedded in full."""
    evidence: dict[str, Any] | None = None
    if isinstance(verdict.certificate, PushCertificate):
        evidence = {"kind": "push", "payload": verdict.certificate.to_json()}
    elif isinstance(verdict.certificate, ObstructionClass):
        evidence = {
            "kind": "obstruction",
            "payload": verdict.certificate.to_json(cm.model),
        }
    return {
        "status": verdict.status,
        "direction": cm.model.direction_to_json(verdict.e),
        "n": verdict.n,
        "reason": verdict.reason,
        "budgets": verdict.budgets,
        "evidence": evidence,
        "control": None if evidence is None else control_to_json(cm),
    }


def push_summary(cert: PushCertificate) -> dict[str, Any]:
    """Short description of a push for console output."""
    return {
        "power": cert.power,
        "gsh": expr_to_json(cert.gsh),
        "label": cert.label,
        "sigma_norm_squared": expr_to_json(cert.sigma_norm.squared),
    }

