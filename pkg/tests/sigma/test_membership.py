import pytest
import sympy

from sigmacat.config import load_scenario
from sigmacat.novikov import ObstructionClass
from sigmacat.sigma import (
    MEMBER,
    NON_MEMBER,
    UNKNOWN,
    CertificateError,
    PushCertificate,
    Verdict,
    membership,
    novikov_obstruction,
    push_summary,
    verdict_to_json,
)
from tests.conftest import SCENARIO_DIR

R = sympy.Rational


def test_z2_directions_are_members(z2_control):
    verdict = membership(z2_control, (R(2), R(4)), 1)

    assert verdict.is_member
    assert verdict.e == (R(1), R(2))
    assert isinstance(verdict.certificate, PushCertificate)


def test_negative_dimension_is_always_member(f2_control):
    verdict = membership(f2_control, (R(1), R(0)), -1)

    assert verdict.status == MEMBER
    assert verdict.certificate is None


def test_free_group_is_not_a_member_in_dimension_one(f2_control):
    """The commutator survives in the Novikov H_1."""
    verdict = membership(f2_control, (R(1), R(0)), 1)

    assert verdict.is_non_member
    assert isinstance(verdict.certificate, ObstructionClass)
    assert verdict.certificate.dimension == 1
    assert verdict.certificate.stable
    assert verdict.budgets["truncation"] == 8


def test_novikov_obstruction_is_absent_on_z2(z2_control):
    assert novikov_obstruction(z2_control, (R(0), R(1)), 1) is None


def test_baumslag_solitar_splits_the_line():
    """One height direction is a member, the other carries an obstruction."""
    scenario = load_scenario(SCENARIO_DIR / "bs12.toml")
    verdicts = {
        sign: membership(scenario.control, (R(sign),), 1, scenario.budgets).status
        for sign in (-1, 1)
    }

    assert sorted(verdicts.values()) == [MEMBER, NON_MEMBER]


def test_verdict_rejects_unknown_status():
    with pytest.raises(CertificateError, match="Unknown verdict"):
        Verdict("Maybe", (R(1),), 1)


def test_verdict_json_embeds_the_push(z2_control):
    verdict = membership(z2_control, (R(1), R(0)), 1)

    data = verdict_to_json(verdict, z2_control)

    assert data["status"] == MEMBER
    assert data["direction"] == ["1", "0"]
    assert data["evidence"]["kind"] == "push"
    assert data["control"] is not None


def test_unknown_verdict_json_has_no_evidence(z2_control):
    verdict = Verdict(UNKNOWN, (R(1), R(0)), 1, reason="budget exhausted")

    data = verdict_to_json(verdict, z2_control)

    assert data["evidence"] is None
    assert data["control"] is None
    assert data["reason"] == "budget exhausted"


def test_push_summary(z2_control):
    verdict = membership(z2_control, (R(1), R(0)), 1)

    summary = push_summary(verdict.certificate)

    assert summary["power"] == 1
    assert summary["gsh"] == "1"
    assert summary["label"] == "exact"
