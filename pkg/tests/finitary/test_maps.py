import pytest
import sympy

from sigmacat.algebra import FreeAbelian
from sigmacat.complexes import BASE_SYMBOL, Cell, resolution_from_tables
from sigmacat.finitary import (
    EXACT,
    FinitaryError,
    Volley,
    Window,
    compose_maps,
    equivariant_map,
    homotopy_between,
    identity_map,
    iterate,
    lift_finitary,
    map_from_json,
    map_to_json,
    map_with_overrides,
    multiplication_map,
    norm,
    shift_report,
    solve_augmentation,
    translate_map,
)
from sigmacat.geometry import EuclideanModel, build_control
from sigmacat.utils.exact import Length

R = sympy.Rational
WINDOW = Window(1, (0, 1, 2))


def test_identity_and_central_translations_are_chain_maps(z2_complex, z2):
    assert identity_map(z2_complex).is_chain_map(WINDOW)
    for g in z2.ball(1):
        assert multiplication_map(z2_complex, g).is_chain_map(WINDOW)


def test_broken_map_has_defects(z2_complex):
    images = {BASE_SYMBOL: z2_complex.basis_cell(BASE_SYMBOL).scale(2)}
    phi = equivariant_map(z2_complex, z2_complex, 0, images)
    assert Cell(BASE_SYMBOL, z2_complex.group.identity) in phi.chain_map_defects(
        WINDOW.cells(z2_complex, 0)
    )


def test_norm_and_shift_of_a_translation(z2_control, z2):
    phi = multiplication_map(z2_control.complex, z2.letter(0))
    assert norm(z2_control, z2_control, phi) == Length(1)
    report = shift_report(z2_control, z2_control, (R(1), R(0)), phi, WINDOW)
    assert report.gsh == 1
    assert report.label == EXACT
    backwards = shift_report(z2_control, z2_control, (R(-1), R(1)), phi, WINDOW)
    assert backwards.gsh == -1


def test_norm_counts_defaults_under_an_override(z2_control, z2):
    """The translates of x0 still move two units when x0 itself is fixed."""
    complex_ = z2_control.complex
    defaults = {s: complex_.basis_cell(s) for b in complex_.bases for s in b}
    defaults[BASE_SYMBOL] = complex_.basis_cell(BASE_SYMBOL, z2.letter(0, 2))
    phi = map_with_overrides(
        complex_,
        complex_,
        0,
        defaults,
        {Cell(BASE_SYMBOL, z2.identity): complex_.basis_cell(BASE_SYMBOL)},
    )

    assert norm(z2_control, z2_control, phi) == Length(4)

def test_compose_and_iterate(z2_complex, z2):
    a, b = z2.letter(0), z2.letter(1)
    phi = multiplication_map(z2_complex, a)
    psi = multiplication_map(z2_complex, b)
    composite = compose_maps(psi, phi)
    assert composite.on_basis(BASE_SYMBOL) == z2_complex.basis_cell(
        BASE_SYMBOL, z2.mul(a, b)
    )
    cubed = iterate(phi, 3)
    assert cubed.on_basis("x_b") == z2_complex.basis_cell("x_b", z2.letter(0, 3))
    assert iterate(phi, 0).on_basis("x_r") == z2_complex.basis_cell("x_r")
    with pytest.raises(FinitaryError):
        iterate(phi, -1)


def test_translate_map_moves_overrides(z2_complex, z2):
    a = z2.letter(0)
    cell = Cell("x_a", z2.identity)
    phi = map_with_overrides(
        z2_complex,
        z2_complex,
        0,
        {s: z2_complex.basis_cell(s) for b in z2_complex.bases for s in b},
        {cell: z2_complex.basis_cell("x_a").scale(3)},
    )
    assert not phi.is_equivariant
    moved = translate_map(phi, a)
    assert moved.image(Cell("x_a", a)) == z2_complex.basis_cell("x_a", a).scale(3)
    assert moved.image(cell) == z2_complex.basis_cell("x_a")


def test_composition_keeps_overrides_on_their_cells(z2_complex, z2):
    """An override of psi at x0 must not leak into the translates of x0."""
    moved = z2_complex.basis_cell(BASE_SYMBOL, z2.letter(0))
    psi = map_with_overrides(
        z2_complex,
        z2_complex,
        0,
        {s: z2_complex.basis_cell(s) for b in z2_complex.bases for s in b},
        {Cell(BASE_SYMBOL, z2.identity): moved},
    )

    composite = compose_maps(psi, identity_map(z2_complex))
    squared = iterate(psi, 2)

    assert composite.on_basis(BASE_SYMBOL) == moved
    assert composite(moved) == moved
    assert squared.on_basis(BASE_SYMBOL) == moved
    assert squared(moved) == moved


def test_lift_of_identity_is_a_chain_map(z2_control):
    complex_ = z2_control.complex
    lift = lift_finitary(complex_, complex_, z2_control, z2_control)
    assert lift.is_chain_map(WINDOW)
    assert lift.is_equivariant


@pytest.fixture
def two_vertex_line(rationals):
    """Z acting on R, with a target offering two vertices over the same point."""
    group = FreeAbelian(("a",))
    model = EuclideanModel(group, ((1,),))
    source = resolution_from_tables(
        group, rationals, [(BASE_SYMBOL,)], {}, {BASE_SYMBOL: (1,)}
    )
    target = resolution_from_tables(
        group, rationals, [("u", "w")], {}, {"u": (1,), "w": (1,)}
    )
    return group, model, source, target


def _image(lift):
    return set(lift.on_basis(BASE_SYMBOL).terms)


def test_lift_policy_prefers_the_smallest_valuation_drop(two_vertex_line):
    group, model, source, target = two_vertex_line
    cm = build_control(model, source)
    cm2 = build_control(model, target, table={"u": [(R(-1),)], "w": [(R(0),)]})
    e = (R(1),)
    w = Cell("w", group.identity)
    u = Cell("u", group.identity)
    assert _image(lift_finitary(source, target, cm, cm2, e=e)) == {w}
    lex = lift_finitary(source, target, cm, cm2, chooser="lexicographic", e=e)
    assert _image(lex) == {u}
    nearest = lift_finitary(source, target, cm, cm2, chooser="nearest")
    assert _image(nearest) == {w}


def test_lift_policy_breaks_ties_lexicographically(two_vertex_line):
    """Equal drop and equal support fall back to the first cell in order."""
    group, model, source, target = two_vertex_line
    cm = build_control(model, source)
    cm2 = build_control(model, target)
    lift = lift_finitary(source, target, cm, cm2, e=(R(1),))
    assert _image(lift) == {Cell("u", group.identity)}
    unaimed = lift_finitary(source, target, cm, cm2)
    assert _image(unaimed) == {Cell("u", group.identity)}


def test_lift_rejects_an_unknown_chooser(two_vertex_line):
    _, model, source, target = two_vertex_line
    cm = build_control(model, source)
    with pytest.raises(FinitaryError, match="Unknown chooser"):
        lift_finitary(source, target, cm, build_control(model, target), chooser="x")


def test_homotopy_between_identity_and_translation(z2_complex, z2):
    phi = identity_map(z2_complex)
    psi = multiplication_map(z2_complex, z2.letter(0))
    sigma = homotopy_between(phi, psi, window=WINDOW)
    assert sigma.degree == 1
    x = z2_complex.basis_cell(BASE_SYMBOL)
    assert z2_complex.boundary(sigma(x)) == phi(x) - psi(x)


def test_homotopy_needs_matching_augmentation(z2_complex):
    images = {BASE_SYMBOL: z2_complex.basis_cell(BASE_SYMBOL).scale(2)}
    broken = equivariant_map(z2_complex, z2_complex, 0, images)
    with pytest.raises(FinitaryError, match="is not zero"):
        homotopy_between(identity_map(z2_complex), broken)


def test_volley_needs_candidates(z2_complex):
    with pytest.raises(FinitaryError, match="no candidates"):
        Volley(z2_complex, z2_complex, 0, {})


def test_solve_augmentation(z2_complex, z2, rationals):
    chain = solve_augmentation(z2_complex, (rationals.scalar(3),), z2.ball(0))
    assert chain == z2_complex.basis_cell(BASE_SYMBOL).scale(3)


def test_map_json_restores_values(z2_complex, z2):
    phi = multiplication_map(z2_complex, z2.letter(1, -1))
    again = map_from_json(map_to_json(phi), z2_complex, z2_complex)
    for basis in z2_complex.bases:
        for symbol in basis:
            assert again.on_basis(symbol) == phi.on_basis(symbol)
