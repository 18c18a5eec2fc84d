# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import pytest
import sympy as sp

from khoveq.exceptions import KhovEqException
from khoveq.polynomials import LaurentPoly


@pytest.mark.parametrize(
    "coefficients, string",
    [
        ({}, "0"),
        ({0: 1}, "1"),
        ({0: -2}, "-2"),
        ({1: 1, -1: 1}, "q+q^-1"),
        ({9: -1, 5: 1, 3: 1, 1: 1}, "-q^9+q^5+q^3+q"),
        ({3: 1, 1: 3, -1: 3, -3: 1}, "q^3+3q+3q^-1+q^-3"),
        ({2: 1, 0: -1, -2: 2}, "q^2-1+2q^-2"),
    ],
)
def test_str_and_parse(coefficients, string):
    poly = LaurentPoly(coefficients)
    assert str(poly) == string
    assert LaurentPoly.parse(string) == poly


def test_parse_spacing_and_repeats():
    assert LaurentPoly.parse("q + q - 2") == LaurentPoly({1: 2, 0: -2})


@pytest.mark.parametrize("text", ["q^", "x+q", "q q", "+", "2q^1.5"])
def test_parse_invalid(text):
    with pytest.raises(KhovEqException):
        LaurentPoly.parse(text)


def test_arithmetic():
    p = LaurentPoly.parse("q+q^-1")
    assert str(p * p) == "q^2+2+q^-2"
    assert str(p - p) == "0"
    assert (p - p).is_zero()
    assert str(3 * p) == "3q+3q^-1"
    assert p.coefficient(-1) == 1
    assert p.coefficient(5) == 0
    with pytest.raises(KhovEqException):
        p + LaurentPoly({1: 1}, "A")


def test_sympy_conversion():
    A = sp.Symbol("A")
    expression = -(A**2) - A**-2 + 3
    poly = LaurentPoly.from_sympy(expression, A)
    assert poly == LaurentPoly({2: -1, 0: 3, -2: -1}, "A")
    assert sp.expand(poly.to_sympy() - expression) == 0
    with pytest.raises(KhovEqException):
        LaurentPoly.from_sympy(A / 2, A)


def test_hashable():
    assert len({LaurentPoly({1: 1}), LaurentPoly({1: 1, 2: 0})}) == 1
