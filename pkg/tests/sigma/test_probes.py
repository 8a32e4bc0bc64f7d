from dataclasses import replace

import pytest
import sympy

from sigmacat.config import load_scenario, parse_scenario
from sigmacat.geometry import canonical_join
from sigmacat.sigma import (
    MEMBER,
    HypothesisNotEstablishedError,
    PushCertificate,
    UnsupportedProbeError,
    find_push,
    invariance_crosscheck,
    product_complement_check,
    product_control,
    tits_openness_probe,
)
from sigmacat.utils.exact import Length
from tests.conftest import SCENARIO_DIR

R = sympy.Rational


@pytest.fixture
def line():
    return load_scenario(SCENARIO_DIR / "z.toml")


@pytest.fixture
def z2_push(z2_control) -> PushCertificate:
    cert = find_push(z2_control, (R(1), R(0)), 1)
    assert isinstance(cert, PushCertificate)
    return cert


def test_product_control_resolves_the_product(line):
    product = product_control(line.control, line.control)

    assert product.complex.length == 2
    assert product.model.name() == "Euclidean(1) x Euclidean(1)"


def test_line_times_line_has_no_mismatches(line):
    """Every join of two full spheres is predicted to be a member."""
    joins = [
        canonical_join(1, 1, (R(1),), (R(-1),)),
        canonical_join(1, 0, (R(-1),), (R(1),)),
    ]

    report = product_complement_check(
        line.control, line.control, 1, joins, line.budgets
    )

    assert [row.predicted for row in report.rows] == [MEMBER, MEMBER]
    assert not report.mismatches


def test_product_formula_needs_a_field(line):
    raw = dict(line.raw, ring="integers")
    scenario = parse_scenario(raw, root=SCENARIO_DIR)

    with pytest.raises(HypothesisNotEstablishedError, match="needs a field"):
        product_complement_check(scenario.control, line.control, 1, [])


def test_openness_margin_is_positive(z2_push):
    report = tits_openness_probe(z2_push, R(1, 2))

    assert report.margin > Length(0)
    assert not report.inconsistent
    assert report.samples[0] == ((R(1), R(0)), z2_push.gsh)


def test_openness_without_radius_checks_the_direction(z2_push):
    report = tits_openness_probe(z2_push, 0)

    assert len(report.samples) == 1
    assert not report.failures


def test_openness_fails_past_the_orthogonal_direction(z2_push):
    """Rotating e by a quarter turn or more loses the shift of a."""
    report = tits_openness_probe(z2_push, 2, samples=2)

    assert (R(-1), R(0)) in report.failures
    assert not report.inconsistent


def test_openness_needs_a_euclidean_model(z2_push):
    tree = load_scenario(SCENARIO_DIR / "bs12_tree.toml")

    with pytest.raises(UnsupportedProbeError, match="Euclidean"):
        tits_openness_probe(replace(z2_push, cm=tree.control), 1)


def test_resolutions_with_different_controls_agree(z2_control):
    boundary = load_scenario(SCENARIO_DIR / "z2_boundary.toml")

    report = invariance_crosscheck(
        z2_control, boundary.control, [(R(1), R(0))], 1, boundary.budgets
    )

    (row,) = report.rows
    assert row.agree
    assert row.first.is_member
    assert row.power is not None
    assert report.ok
