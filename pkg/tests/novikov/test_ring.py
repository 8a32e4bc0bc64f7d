import pytest
import sympy

from sigmacat.algebra import FreeAbelian, GroundRing, GroupRingElem
from sigmacat.config import load_scenario
from sigmacat.geometry import EuclideanModel
from sigmacat.novikov import (
    NonUnitError,
    NovikovError,
    NovikovRing,
    UnsupportedDirectionError,
    invert_if_unit,
    nov_add,
    truncate,
)
from tests.conftest import SCENARIO_DIR

R = sympy.Rational
QQ_RING = GroundRing("rationals")
GROUP = FreeAbelian(("a", "b"))
MODEL = EuclideanModel(GROUP, ((1, 0), (0, 1)))
TOWARD_A = NovikovRing(MODEL, (R(1), R(0)))


def elem(*pairs):
    return GroupRingElem.of(GROUP, QQ_RING, pairs)


def test_valuation_is_the_character():
    assert TOWARD_A.valuation(GROUP.letter(0, 3)) == 3
    assert TOWARD_A.valuation(GROUP.letter(1, -2)) == 0


def test_truncation_drops_high_terms():
    part = elem(("1", 1), ("a", 2), ("a^3", 5), ("a^-1 b", 1))

    assert truncate(TOWARD_A, part, 2) == elem(("1", 1), ("a", 2), ("a^-1 b", 1))


def test_truncated_element_reports_its_floor():
    u = TOWARD_A.element(elem(("a", 1), ("a^4", 1)), 3)

    assert u.part == elem(("a", 1))
    assert u.valuation == 1
    assert u.format() == "a + O(>=3)"


def test_geometric_series_inverts_one_minus_a():
    """(1 - a)^-1 = 1 + a + a^2 + ... going up toward e."""
    u = TOWARD_A.element(elem(("1", 1), ("a", -1)))

    inverse = invert_if_unit(u, 4)

    assert inverse.floor == 4
    assert inverse.part == elem(("1", 1), ("a", 1), ("a^2", 1), ("a^3", 1))
    assert (u * inverse).part == elem(("1", 1))


def test_inverse_of_a_monomial_is_exact():
    u = TOWARD_A.element(elem(("a^-1 b", 3)))

    inverse = invert_if_unit(u, sympy.oo)

    assert inverse.part == elem(("a b^-1", R(1, 3)))


@pytest.mark.parametrize(
    ("pairs", "message"),
    [
        ((("1", 1), ("b", -1)), "terms of least valuation"),
        ((), "Zero is not a unit"),
    ],
)
def test_non_units_are_rejected(pairs, message):
    with pytest.raises(NonUnitError, match=message):
        invert_if_unit(TOWARD_A.element(elem(*pairs)), 4)


def test_integral_leading_coefficient_must_be_a_unit():
    integers = GroundRing("integers")
    u = TOWARD_A.element(GroupRingElem.of(GROUP, integers, [("1", 2), ("a", 1)]))

    with pytest.raises(NonUnitError, match="is not a unit"):
        invert_if_unit(u, 4)


def test_directions_cannot_be_mixed():
    toward_b = NovikovRing(MODEL, (R(0), R(1)))

    with pytest.raises(NovikovError, match="different directions"):
        nov_add(TOWARD_A.one(QQ_RING), toward_b.one(QQ_RING))


def test_tree_actions_are_not_supported():
    tree = load_scenario(SCENARIO_DIR / "bs12_tree.toml")

    with pytest.raises(UnsupportedDirectionError, match="translations"):
        NovikovRing(tree.model, tree.model.sample_directions(1)[0])
