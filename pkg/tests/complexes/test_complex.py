import pytest

from sigmacat.algebra import BaumslagSolitar, FreeAbelian, FreeGroup, GroundRing
from sigmacat.complexes import (
    BASE_SYMBOL,
    Cell,
    Chain,
    ComplexError,
    DimensionMismatchError,
    GroundRingNotFieldError,
    NonTrivialModuleError,
    Presentation,
    complex_from_json,
    complex_to_json,
    fox_resolution,
    tensor_complex,
)
from sigmacat.config import default_relators


def test_fox_resolution_of_z2(z2_complex):
    """One vertex, two edges and the commutator square."""
    assert [z2_complex.rank(k) for k in range(3)] == [1, 2, 1]
    assert z2_complex.complete
    assert z2_complex.boundary(z2_complex.basis_cell("x_r")).terms
    assert not z2_complex.boundary(
        z2_complex.boundary(z2_complex.basis_cell("x_r"))
    ).terms


def test_fox_resolution_of_free_group_is_a_graph(rationals):
    complex_ = fox_resolution(Presentation(FreeGroup(("a", "b")), rationals))
    assert complex_.length == 1
    assert complex_.complete


def test_fox_resolution_of_baumslag_solitar(rationals):
    group = BaumslagSolitar(2)
    complex_ = fox_resolution(
        Presentation(group, rationals, tuple(default_relators(group)))
    )
    assert [complex_.rank(k) for k in range(3)] == [1, 2, 1]
    assert complex_.complete


def test_fox_resolution_rejects_nontrivial_relator(rationals):
    group = FreeAbelian(("a", "b"))
    with pytest.raises(ComplexError, match="not trivial"):
        fox_resolution(Presentation(group, rationals, (group.parse("a b"),)))


def test_fox_resolution_needs_trivial_module(z2, rationals):
    with pytest.raises(NonTrivialModuleError):
        fox_resolution(Presentation(z2, rationals, trivial_module=False))


def test_fox_resolution_of_free_module(z2, rationals):
    """A = K^2 gives two renamed copies."""
    complex_ = fox_resolution(
        Presentation(z2, rationals, tuple(default_relators(z2)), module_rank=2)
    )
    assert complex_.module_rank == 2
    assert complex_.basis(0) == (f"{BASE_SYMBOL}#0", f"{BASE_SYMBOL}#1")
    assert complex_.augment(complex_.basis_cell(f"{BASE_SYMBOL}#1")) == (
        rationals.scalar(0),
        rationals.scalar(1),
    )


def test_boundary_of_translated_cell(z2_complex, z2):
    a = z2.letter(0)
    moved = z2_complex.boundary(z2_complex.basis_cell("x_b", a))
    expected = z2_complex.chain(
        0,
        [
            (Cell(BASE_SYMBOL, z2.mul(a, z2.letter(1))), 1),
            (Cell(BASE_SYMBOL, a), -1),
        ],
    )
    assert moved == expected


def test_chains_of_different_dimensions_do_not_add(z2_complex):
    with pytest.raises(DimensionMismatchError):
        _ = z2_complex.basis_cell("x_a") + z2_complex.basis_cell(BASE_SYMBOL)


def test_chain_format(z2_complex, z2, rationals):
    chain = Chain(
        z2,
        rationals,
        1,
        {
            Cell("x_a", z2.identity): rationals.scalar(1),
            Cell("x_b", z2.letter(0)): rationals.scalar(-2),
        },
    )
    assert chain.format() == "x_a - 2 a x_b"
    assert z2_complex.zero(1).format() == "0"


def test_tensor_of_lines_resolves_the_plane(rationals):
    line = fox_resolution(Presentation(FreeAbelian(("a",)), rationals))
    product = tensor_complex(line, line)
    assert [product.rank(k) for k in range(3)] == [1, 2, 1]
    assert product.complete
    assert product.module_rank == 1


def test_tensor_needs_a_field():
    ring = GroundRing("integers")
    line = fox_resolution(Presentation(FreeAbelian(("a",)), ring))
    with pytest.raises(GroundRingNotFieldError):
        tensor_complex(line, line)


def test_complex_json_preserves_the_complex(z2_complex):
    assert complex_from_json(complex_to_json(z2_complex)) == z2_complex
