import pytest
import sympy

from sigmacat.config import load_scenario
from sigmacat.novikov import (
    OBSTRUCTION,
    VANISHES,
    NovikovError,
    NovikovUnknown,
    ObstructionClass,
    Vanishes,
    les_consistency,
    lipschitz_check,
    obstruction_from_json,
    tor_vanishing_test,
    verify_obstruction,
)
from sigmacat.sigma import PushCertificate, find_push
from tests.conftest import SCENARIO_DIR

R = sympy.Rational
E = (R(1), R(0))


@pytest.fixture
def f2_obstruction(f2_control) -> ObstructionClass:
    result = tor_vanishing_test(f2_control.complex, f2_control.model, E, 1)
    assert isinstance(result, ObstructionClass)
    return result


@pytest.mark.parametrize("k", [0, 1])
@pytest.mark.parametrize("direction", [E, (R(1), R(1)), (R(-2), R(3))])
def test_z2_novikov_homology_vanishes(z2_control, direction, k):
    result = tor_vanishing_test(z2_control.complex, z2_control.model, direction, k)

    assert isinstance(result, Vanishes)
    assert result.status == VANISHES


def test_z2_vanishing_holds_at_a_doubled_floor(z2_control):
    result = tor_vanishing_test(z2_control.complex, z2_control.model, E, 1, 12)

    assert isinstance(result, Vanishes)


def test_z2_is_sigma_one_over_sampled_directions(z2_control):
    """Tor_0 and Tor_1 vanish at floors 8 and 16 and pushes exist for n = 1."""
    complex_, model = z2_control.complex, z2_control.model
    for direction in model.sample_directions(64):
        assert isinstance(find_push(z2_control, direction, 1), PushCertificate)
        for k in (0, 1):
            for floor in (8, 16):
                result = tor_vanishing_test(complex_, model, direction, k, floor)
                assert isinstance(result, Vanishes), (direction, k, floor)


def test_free_group_vertices_cancel(f2_control):
    result = tor_vanishing_test(f2_control.complex, f2_control.model, E, 0)

    assert isinstance(result, Vanishes)


def test_free_group_has_a_stable_h1_obstruction(f2_obstruction):
    """The edge b survives with witness (1 - b)(a - 1)^-1 x_a + x_b."""
    assert f2_obstruction.status == OBSTRUCTION
    assert f2_obstruction.dimension == 1
    assert f2_obstruction.stable
    assert f2_obstruction.digest
    assert f2_obstruction.witness.dimension == 1


def test_obstruction_replays(f2_control, f2_obstruction):
    failures = verify_obstruction(f2_obstruction, f2_control.complex, f2_control.model)
    assert failures == []


def test_obstruction_survives_json(f2_control, f2_obstruction):
    data = f2_obstruction.to_json(f2_control.model)

    reloaded = obstruction_from_json(data, f2_control.complex, f2_control.model)

    assert reloaded.digest == f2_obstruction.digest
    assert verify_obstruction(reloaded, f2_control.complex, f2_control.model) == []


def test_tampered_obstruction_is_caught(f2_control, f2_obstruction):
    data = f2_obstruction.to_json(f2_control.model)
    data["survivors"] = ["x_a"]

    reloaded = obstruction_from_json(data, f2_control.complex, f2_control.model)
    failures = verify_obstruction(reloaded, f2_control.complex, f2_control.model)

    assert "recorded digest does not match the content" in failures


def test_malformed_obstruction_raises(f2_control):
    with pytest.raises(NovikovError, match="Malformed obstruction"):
        obstruction_from_json({"dimension": 1}, f2_control.complex, f2_control.model)


def test_floor_must_be_positive(z2_control):
    with pytest.raises(NovikovError, match="must be positive"):
        tor_vanishing_test(z2_control.complex, z2_control.model, E, 0, 0)


@pytest.mark.parametrize("k", [-1, 3])
def test_dimensions_outside_the_complex_vanish(z2_control, k):
    assert isinstance(
        tor_vanishing_test(z2_control.complex, z2_control.model, E, k), Vanishes
    )


def test_tree_model_is_unknown():
    tree = load_scenario(SCENARIO_DIR / "bs12_tree.toml")
    e = tree.model.sample_directions(1)[0]

    result = tor_vanishing_test(tree.complex, tree.model, e, 1)

    assert isinstance(result, NovikovUnknown)
    assert "translations" in result.reason


def test_split_sequence_on_z2(z2_control):
    report = les_consistency(z2_control.complex, z2_control.model, E, 1)

    assert report.ok
    assert [row["k"] for row in report.rows] == [0, 1, 2]
    assert all(row["A"] == VANISHES for row in report.rows[:2])


def test_split_sequence_on_f2(f2_control):
    """Obstructions add up: the sum obstructs exactly where a summand does."""
    report = les_consistency(f2_control.complex, f2_control.model, E, 1)

    assert report.ok
    assert report.rows[1]["A"] == OBSTRUCTION


def test_push_homotopy_is_lipschitz(z2_control):
    cert = find_push(z2_control, E, 1)
    assert isinstance(cert, PushCertificate)

    report = lipschitz_check(z2_control, E, cert.sigma, cert.lag_bound.value + 1)

    assert report.ok
    assert report.checked > 0


def test_negative_allowance_is_violated(z2_control):
    cert = find_push(z2_control, E, 1)
    assert isinstance(cert, PushCertificate)

    report = lipschitz_check(z2_control, E, cert.sigma, -5)

    assert not report.ok
