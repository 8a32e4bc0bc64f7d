import pytest
import sympy

from sigmacat.complexes import QuotientModule
from sigmacat.config import load_scenario, parse_scenario
from sigmacat.geometry import sample_points
from sigmacat.sigma import (
    LagEstimate,
    NotFound,
    PushCertificate,
    bounded_support_check,
    ca_check,
    find_push,
    lag_from_push,
    level_centre,
    uniform_point_lag,
)
from sigmacat.utils.exact import Length
from tests.conftest import SCENARIO_DIR

R = sympy.Rational


def test_level_centre_reaches_the_level(z2_control):
    e = (R(1), R(0))
    for s in (0, 1, 2):
        centre = level_centre(z2_control, e, s)
        point = z2_control.model.act_point(centre, z2_control.base)
        assert z2_control.model.busemann(e, point) >= s


def test_horoball_cycles_on_z2_bound_without_lag(z2_control):
    estimate = ca_check(z2_control, (R(1), R(0)), 1)

    assert estimate.complete
    assert estimate.constant == 0
    assert estimate.is_constant()
    assert estimate.certificates


def test_lag_estimate_keeps_the_worst_value():
    estimate = LagEstimate()
    estimate.record(0, 0, R(1))
    estimate.record(0, 0, R(3))
    estimate.record(0, 1, None)
    estimate.record(0, 1, R(2))

    assert estimate.lags[(0, 0)] == 3
    assert estimate.lags[(0, 1)] is None
    assert not estimate.complete
    assert estimate.constant is None
    assert estimate.to_json()["complete"] is False


def test_growing_lag_is_not_constant():
    estimate = LagEstimate()
    for level, lag in ((0, 0), (1, 1), (2, 2)):
        estimate.record(0, level, R(lag))

    assert not estimate.is_constant()
    assert estimate.is_constant(tolerance=2)


def test_push_bound_with_base_control(z2_control):
    """Observed lags stay under the bound implied by the homotopy."""
    cert = find_push(z2_control, (R(1), R(0)), 1)
    assert isinstance(cert, PushCertificate)

    estimate = lag_from_push(cert)

    assert estimate.bound == cert.lag_bound
    assert not estimate.violations


def test_push_bound_with_boundary_control():
    """Edges reach the neighbouring vertex, so the homotopy moves at least one unit."""
    scenario = load_scenario(SCENARIO_DIR / "z2_boundary.toml")
    cert = find_push(scenario.control, (R(1), R(0)), 1, scenario.budgets)
    assert isinstance(cert, PushCertificate)

    estimate = lag_from_push(cert, scenario.budgets)

    assert estimate.bound >= Length(1)
    assert not estimate.violations


def test_uniform_lag_over_points(z2_control):
    points = sample_points(z2_control.model, 3)

    common, estimates = uniform_point_lag(z2_control, points, 1)

    assert len(estimates) == len(points)
    assert common is not None
    assert common >= 0


def test_bounded_support_on_z2(z2_control):
    radius = bounded_support_check(z2_control, [(1,), (2,), (-1,)], 1)

    assert radius == Length(0)


def test_bounded_support_from_a_far_point(z2_control):
    result = bounded_support_check(z2_control, [(1,)], 0, b=(R(5), R(5)))

    assert isinstance(result, Length)
    assert result == Length(50)


def test_no_samples_need_no_radius(f2_control):
    assert bounded_support_check(f2_control, [], 1) == Length(0)


@pytest.fixture
def coset_plane():
    """Z^2 on the plane with A = K[Z^2]/(b - 1), spanned by the cosets of <b>."""
    return parse_scenario(
        {
            "group": {"backend": "free_abelian", "generators": ["a", "b"]},
            "model": {
                "kind": "euclidean",
                "translations": {"a": [1, 0], "b": [0, 1]},
            },
            "module": {"relations": [[[0, "b", 1], [0, "1", -1]]]},
            "resolution": {
                "tables": {
                    "bases": [["x0"], ["x_b"]],
                    "boundaries": {"x_b": [["x0", "b", 1], ["x0", "1", -1]]},
                    "augmentation": {"x0": [1]},
                }
            },
        }
    )


def test_bounded_support_of_a_translated_generator(coset_plane):
    """The generator moved by a^3 needs a cell three units from the base point."""
    module, group = coset_plane.module, coset_plane.group
    far = module.generator(0, group.letter(0, 3))
    along = module.generator(0, group.letter(1, 3))

    assert bounded_support_check(
        coset_plane.control, [far], 3, module=module
    ) == Length(9)
    assert bounded_support_check(
        coset_plane.control, [along], 3, module=module
    ) == Length(0)
    assert isinstance(
        bounded_support_check(coset_plane.control, [far], 2, module=module),
        NotFound,
    )


def test_translates_vanish_into_the_trivial_module(z2_control, z2, rationals):
    module = QuotientModule.trivial_module(z2, rationals)
    far = module.generator(0, z2.letter(0, 3))

    assert bounded_support_check(z2_control, [far], 3, module=module) == Length(0)
