# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import collections
import re
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import sympy as sp

from khoveq.exceptions import KhovEqException
from khoveq.formatter import formatted


class LaurentPoly(collections.abc.Hashable):
    """
    Laurent polynomial in one variable with integer coefficients.

    Attributes:
        variable: Name of the variable, used for printing and sympy conversion.
    """

    _term = re.compile(r"([+-]?)(\d*)(?:([A-Za-z_]\w*)(?:\^(-?\d+))?)?")

    def __init__(
        self, coefficients: Optional[Mapping[int, int]] = None, variable: str = "q"
    ) -> None:
        self.variable = variable
        self._coefficients: Dict[int, int] = {
            e: c for e, c in (coefficients or {}).items() if c
        }

    def _key(self) -> tuple:
        return self.variable, tuple(sorted(self._coefficients.items()))

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._key() == other._key()

    @formatted
    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._coefficients.items()))!r}, {self.variable!r})"

    def __str__(self) -> str:
        if not self._coefficients:
            return "0"
        result = ""
        for exponent, coefficient in self.terms():
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            if exponent == 0:
                body = str(magnitude)
            else:
                power = self.variable if exponent == 1 else f"{self.variable}^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            result += sign + body
        return result[1:] if result.startswith("+") else result

    @classmethod
    def parse(cls, text: str, variable: str = "q") -> "LaurentPoly":
        """
        Parses the string format produced by `str()`.

        Raises:
            KhovEqException: If the string is not a sum of monomials in `variable`.
        """
        text = text.replace(" ", "")
        if text == "0":
            return cls({}, variable)
        coefficients: Dict[int, int] = collections.Counter()
        position = 0
        while position < len(text):
            m = cls._term.match(text, position)
            if not m or m.end() == position or (position and not m.group(1)):
                raise KhovEqException(f"Unparseable polynomial: {text!r}")
            sign, digits, name, exponent = m.groups()
            if name is not None and name != variable:
                raise KhovEqException(f"Unexpected variable {name!r} in {text!r}")
            if name is None and not digits:
                raise KhovEqException(f"Empty term in {text!r}")
            value = int(digits) if digits else 1
            power = 0 if name is None else int(exponent) if exponent else 1
            coefficients[power] += -value if sign == "-" else value
            position = m.end()
        return cls(coefficients, variable)

    @classmethod
    def monomial(
        cls, exponent: int, coefficient: int = 1, variable: str = "q"
    ) -> "LaurentPoly":
        return cls({exponent: coefficient}, variable)

    @classmethod
    def from_sympy(cls, expression: sp.Expr, symbol: sp.Symbol) -> "LaurentPoly":
        """
        Converts an expanded sympy Laurent polynomial.

        Raises:
            KhovEqException: If a term is not an integer multiple of a power of `symbol`.
        """
        coefficients: Dict[int, int] = collections.Counter()
        for term, coefficient in sp.expand(expression).as_coefficients_dict().items():
            if term == 1:
                exponent = 0
            else:
                base, power = term.as_base_exp()
                if base != symbol or not power.is_Integer:
                    raise KhovEqException(f"Term {term} is not a power of {symbol}")
                exponent = int(power)
            if not coefficient.is_Integer:
                raise KhovEqException(f"Coefficient {coefficient} is not an integer")
            coefficients[exponent] += int(coefficient)
        return cls(coefficients, symbol.name)

    def to_sympy(self, symbol: sp.Symbol = None) -> sp.Expr:
        symbol = symbol if symbol is not None else sp.Symbol(self.variable)
        return sp.Add(*(c * symbol**e for e, c in self.terms()))

    def terms(self) -> Iterable[Tuple[int, int]]:
        """(exponent, coefficient) pairs in decreasing exponent order."""
        return sorted(self._coefficients.items(), reverse=True)

    def coefficient(self, exponent: int) -> int:
        return self._coefficients.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coefficients

    def _check(self, other: "LaurentPoly") -> None:
        if self.variable != other.variable:
            raise KhovEqException(
                f"Mixing polynomials in {self.variable} and {other.variable}"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        result = collections.Counter(self._coefficients)
        for e, c in other._coefficients.items():
            result[e] += c
        return LaurentPoly(result, self.variable)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coefficients.items()}, self.variable)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(
                {e: c * other for e, c in self._coefficients.items()}, self.variable
            )
        self._check(other)
        result: Dict[int, int] = collections.Counter()
        for e1, c1 in self._coefficients.items():
            for e2, c2 in other._coefficients.items():
                result[e1 + e2] += c1 * c2
        return LaurentPoly(result, self.variable)

    __rmul__ = __mul__
