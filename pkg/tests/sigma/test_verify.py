import copy

import pytest
import sympy

from sigmacat.sigma import (
    ENVELOPE_SCHEMA,
    CertificateError,
    CheckReport,
    PushCertificate,
    bounding_payload,
    ca_check,
    ca_over_point,
    check_envelope,
    envelope,
    find_push,
    membership,
    obstruction_payload,
    verdict_to_json,
    verify_document,
)

R = sympy.Rational


@pytest.fixture
def push_document(z2_control):
    cert = find_push(z2_control, (R(1), R(0)), 1)
    assert isinstance(cert, PushCertificate)
    return envelope("push", cert.to_json(), scenario="z2", direction=["1", "0"], n=1)


def test_envelope_carries_provenance():
    document = envelope("verdict", {"status": "Unknown"}, scenario="abc", n=2)

    assert document["schema"] == ENVELOPE_SCHEMA
    assert document["kind"] == "verdict"
    assert document["scenario"] == "abc"
    assert document["created"]
    assert check_envelope(document) == "verdict"


def test_envelope_rejects_unknown_kind():
    with pytest.raises(CertificateError, match="Unknown certificate kind"):
        envelope("proof", {})


@pytest.mark.parametrize(
    ("change", "message"),
    [
        (lambda d: d.update(schema=99), "Unsupported certificate schema"),
        (lambda d: d.update(kind="proof"), "Unknown certificate kind"),
        (lambda d: d["payload"].update(status="Member"), "digest does not match"),
    ],
)
def test_tampered_envelopes_are_rejected(change, message):
    document = envelope("verdict", {"status": "Unknown"})
    change(document)

    with pytest.raises(CertificateError, match=message):
        check_envelope(document)


def test_creation_time_is_outside_the_digest():
    document = envelope("verdict", {"status": "Unknown"})
    document["created"] = "1970-01-01T00:00:00+00:00"

    assert check_envelope(document) == "verdict"


def test_non_object_is_not_a_certificate():
    with pytest.raises(CertificateError, match="JSON object"):
        check_envelope([1, 2])


def test_push_document_verifies(push_document):
    report = verify_document(push_document)

    assert report.ok
    assert report.failures() == []


def test_forged_push_fails_its_checks(push_document):
    """A push recorded with a larger shift than it achieves is caught."""
    payload = copy.deepcopy(push_document["payload"])
    payload["gsh"] = "2"
    forged = envelope("push", payload, n=1)

    report = verify_document(forged)

    assert not report.ok
    assert any("guaranteed shift" in failure for failure in report.failures())


def test_malformed_payload_raises(push_document):
    payload = dict(push_document["payload"])
    payload.pop("phi")

    with pytest.raises(CertificateError, match="missing"):
        verify_document(envelope("push", payload))


def test_bounding_document_verifies(z2_control):
    e = (R(1), R(0))
    estimate = ca_check(z2_control, e, 1)
    document = envelope("bounding", bounding_payload(estimate, z2_control, e))

    report = verify_document(document)

    assert report.ok
    assert len(report.checks) > 1


def test_tampered_lag_is_rejected(z2_control):
    """A bounding certificate claiming a lag it does not achieve fails."""
    e = (R(1), R(0))
    payload = bounding_payload(ca_check(z2_control, e, 1), z2_control, e)
    payload["certificates"][0]["lag"] = "7"

    report = verify_document(envelope("bounding", payload))

    assert not report.ok
    assert any(
        failure.startswith("bounding 0: lag: recomputed lag")
        for failure in report.failures()
    )


def test_point_bounding_rechecks_distances(z2_control):
    b = (R(1, 2), R(0))
    payload = bounding_payload(ca_over_point(z2_control, b, 1), z2_control, None)
    assert payload["certificates"]
    assert payload["certificates"][0]["point"] == ["1/2", "0"]
    assert verify_document(envelope("bounding", payload)).ok

    payload["certificates"][0]["value_z"] = "100"
    report = verify_document(envelope("bounding", payload))

    assert not report.ok
    assert any("distances" in failure for failure in report.failures())


def test_member_verdict_document_verifies(z2_control):
    verdict = membership(z2_control, (R(0), R(1)), 1)
    document = envelope("verdict", verdict_to_json(verdict, z2_control), n=1)

    assert verify_document(document).ok


def test_member_verdict_without_push_fails():
    payload = {"status": "Member", "n": 1, "evidence": None, "control": None}

    report = verify_document(envelope("verdict", payload))

    assert report.failures() == ["Member verdict carries a push"]


def test_obstruction_document_replays(f2_control):
    verdict = membership(f2_control, (R(1), R(0)), 1)
    payload = obstruction_payload(verdict.certificate, f2_control, 2)

    report = verify_document(envelope("obstruction", payload))

    assert report.ok


def test_check_report_collects_failures():
    report = CheckReport()
    report.add("first", ok=True)
    report.add("second", ok=False, detail="off by one")
    report.add("third", ok=False)

    assert not report.ok
    assert report.failures() == ["second: off by one", "third"]
