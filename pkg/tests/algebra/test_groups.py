import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigmacat.algebra import (
    AlgebraError,
    BaumslagSolitar,
    DirectProduct,
    FreeAbelian,
    FreeGroup,
    UnknownGeneratorError,
    build_group,
)

GROUPS = [
    FreeAbelian(("a", "b")),
    FreeGroup(("a", "b")),
    BaumslagSolitar(2),
    DirectProduct(FreeGroup(("a", "b")), FreeAbelian(("c",))),
]

words = st.lists(
    st.tuples(st.integers(0, 1), st.integers(-3, 3).filter(bool)), max_size=6
)


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.name())
def test_ball_elements_satisfy_group_laws(group):
    """Associativity, identity and inverses hold on a small ball."""
    ball = group.ball(2)
    for x in ball:
        assert group.mul(x, group.inverse(x)) == group.identity
        assert group.mul(group.identity, x) == x
        for y in ball[:6]:
            for z in ball[:6]:
                assert group.mul(group.mul(x, y), z) == group.mul(x, group.mul(y, z))


@given(words, words)
def test_free_group_evaluation_is_a_homomorphism(u, v):
    """Evaluating a concatenation multiplies the evaluations."""
    group = FreeGroup(("a", "b"))
    assert group.evaluate(u + v) == group.mul(group.evaluate(u), group.evaluate(v))


@given(words)
def test_baumslag_solitar_inverse(word):
    """Every normal form times its inverse is trivial."""
    group = BaumslagSolitar(2)
    x = group.evaluate(word)
    assert group.mul(x, group.inverse(x)) == group.identity


def test_baumslag_solitar_relation():
    """Conjugating a by t squares it."""
    group = BaumslagSolitar(2)
    assert group.evaluate(group.parse("t a t^-1")) == group.evaluate(group.parse("a^2"))
    assert group.evaluate(group.parse("t a t^-1")) != group.evaluate(group.parse("a"))


def test_baumslag_solitar_exponent_sums():
    """The height character counts t-exponents."""
    group = BaumslagSolitar(2)
    x = group.evaluate(group.parse("t^-1 a t^3 a^-2"))
    assert group.exponent_sums(x)[1] == 2


def test_free_group_reduces_words():
    group = FreeGroup(("a", "b"))
    assert group.evaluate(group.parse("a b b^-1 a^-1")) == group.identity
    assert group.format(group.evaluate(group.parse("a a b^-1"))) == "a^2 b^-1"


def test_free_abelian_commutes():
    group = FreeAbelian(("a", "b"))
    assert group.evaluate(group.parse("a b")) == group.evaluate(group.parse("b a"))
    assert group.exponent_sums(group.evaluate(group.parse("a^2 b^-1"))) == (2, -1)


def test_free_group_ball_sizes():
    """Balls of F2 have 1, 5 and 17 elements."""
    group = FreeGroup(("a", "b"))
    assert [len(group.ball(r)) for r in range(3)] == [1, 5, 17]


def test_direct_product_factors_commute():
    group = DirectProduct(FreeGroup(("a", "b")), FreeGroup(("c", "d")))
    a, c = group.letter(0), group.letter(2)
    assert group.mul(a, c) == group.mul(c, a)


@pytest.mark.parametrize(
    "group",
    [*GROUPS, BaumslagSolitar(3)],
    ids=lambda g: g.name(),
)
def test_length_agrees_with_spheres(group):
    """Closed-form lengths put every element on the sphere it was found in."""
    for radius in range(5):
        for x in group.sphere(radius):
            assert group.length(x) == radius


def test_baumslag_solitar_length_of_far_elements():
    """a^1024 is spelled t^9 a^2 t^-9."""
    group = BaumslagSolitar(2)
    assert group.length(group.letter(0, 1024)) == 20
    assert group.length(group.letter(1, -40)) == 40


def test_parse_unknown_generator():
    with pytest.raises(UnknownGeneratorError):
        FreeGroup(("a", "b")).parse("a z")


@pytest.mark.parametrize(
    ("descriptor", "expected"),
    [
        ({"backend": "free_abelian", "rank": 3}, "Z^3"),
        ({"backend": "free", "generators": ["x", "y"]}, "F2"),
        ({"backend": "baumslag_solitar", "m": 3}, "BS(1,3)"),
    ],
)
def test_build_group(descriptor, expected):
    assert build_group(descriptor).name() == expected


@pytest.mark.parametrize(
    "descriptor",
    [
        {"backend": "surface"},
        {"backend": "free"},
        {"backend": "free_abelian", "rank": 2, "generators": ["a"]},
        {"backend": "baumslag_solitar", "m": 1},
        {"backend": "product", "factors": [{"backend": "free", "rank": 1}]},
    ],
)
def test_build_group_rejects(descriptor):
    with pytest.raises(AlgebraError):
        build_group(descriptor)
