import pytest

from sigmacat.algebra import (
    AlgebraError,
    FreeAbelian,
    FreeGroup,
    GroundRing,
    GroundRingMismatchError,
    GroupRingElem,
    fox_derivative,
)

QQ_RING = GroundRing("rationals")
GROUP = FreeGroup(("a", "b"))


def elem(*pairs):
    return GroupRingElem.of(GROUP, QQ_RING, pairs)


def test_zero_coefficients_are_dropped():
    assert not elem(("a", 1), ("a", -1))
    assert elem(("a", 2), ("b", 0)).terms == {GROUP.letter(0): QQ_RING.scalar(2)}


def test_multiplication_is_convolution():
    """(1 + a)(1 - a) = 1 - a^2 in the free group ring."""
    product = elem(("1", 1), ("a", 1)) * elem(("1", 1), ("a", -1))
    assert product == elem(("1", 1), ("a^2", -1))


def test_group_ring_of_free_group_is_noncommutative():
    a, b = elem(("a", 1)), elem(("b", 1))
    assert a * b != b * a


def test_augmentation_and_translation():
    u = elem(("a", 3), ("b a", -1))
    assert u.augmentation() == QQ_RING.scalar(2)
    moved = u.translate(GROUP.letter(1, -1))
    assert moved.coefficient(GROUP.evaluate(GROUP.parse("a"))) == QQ_RING.scalar(-1)


def test_format():
    assert elem(("1", 1), ("a", -2)).format() == "1 - 2 a"
    assert GroupRingElem.zero(GROUP, QQ_RING).format() == "0"


def test_mismatched_rings_are_rejected():
    other = GroupRingElem.one(GROUP, GroundRing("prime", 5))
    with pytest.raises(GroundRingMismatchError):
        _ = elem(("a", 1)) + other


@pytest.mark.parametrize(
    ("ring", "value", "invertible"),
    [
        (GroundRing("integers"), -1, True),
        (GroundRing("integers"), 2, False),
        (GroundRing("rationals"), 2, True),
        (GroundRing("prime", 7), 3, True),
        (GroundRing("rationals"), 0, False),
    ],
)
def test_units(ring, value, invertible):
    assert ring.is_unit(ring.scalar(value)) is invertible


def test_integer_ring_rejects_fractions():
    with pytest.raises(AlgebraError, match="is not an integer"):
        GroundRing("integers").scalar("1/2")


def test_prime_field_needs_a_prime():
    with pytest.raises(AlgebraError):
        GroundRing("prime", 6)


@pytest.mark.parametrize(
    "data", ["rationals", {"prime": 3}, {"kind": "integers", "prime": None}]
)
def test_ground_ring_from_json(data):
    ring = GroundRing.from_json(data)
    assert GroundRing.from_json(ring.to_json()) == ring


def test_fox_derivatives_of_commutator():
    """d/da [a, b] = 1 - a b a^-1 in Z^2 collapses to 1 - b."""
    group = FreeAbelian(("a", "b"))
    word = group.parse("a b a^-1 b^-1")
    da = fox_derivative(word, 0, group, QQ_RING)
    db = fox_derivative(word, 1, group, QQ_RING)
    one = GroupRingElem.one(group, QQ_RING)
    assert da == one - GroupRingElem.of(group, QQ_RING, [("b", 1)])
    assert db == GroupRingElem.of(group, QQ_RING, [("a", 1)]) - one
