import pytest
import sympy

from sigmacat.utils.exact import (
    Length,
    UndecidedSignError,
    compare,
    exact_max,
    rational,
    sign,
)


def test_sign_of_rationals_and_roots():
    assert sign(rational("-3/4")) == -1
    assert sign(sympy.sqrt(2) - 1) == 1
    assert sign(sympy.sqrt(2) - sympy.sqrt(3)) == -1
    assert sign(sympy.sqrt(2) * sympy.sqrt(8) - 4) == 0


def test_sign_refuses_to_guess():
    """An expression whose sign is not determined is an error, not a float."""
    with pytest.raises(UndecidedSignError, match="Cannot decide"):
        sign(sympy.Symbol("t"))


def test_compare_and_max_of_roots():
    values = [sympy.sqrt(2), sympy.Rational(3, 2), sympy.sqrt(5) / 2]
    assert exact_max(values) == sympy.sqrt(5) / 2
    assert compare(sympy.sqrt(2), sympy.Rational(7, 5)) == 1
    assert Length(2) < Length.of(sympy.Rational(3, 2))
