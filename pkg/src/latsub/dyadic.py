"""Exact dyadic rationals ``mantissa * 2**exponent``."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

Number = Union["DyadicValue", int, Fraction]

_DECIMAL_RE = re.compile(r"^\s*(\d+)(?:\.(\d*))?\s*$")
_POWER_RE = re.compile(r"^\s*(\d+)\s*\*\s*2\s*\^\s*\(?\s*(-?\d+)\s*\)?\s*$")


@total_ordering
class DyadicValue:
    """A nonnegative dyadic rational kept as an exact ``(mantissa, exponent)`` pair.

    Equality, ordering and hashing are by value, so ``DyadicValue(166, -1)``
    equals ``DyadicValue(83, 0)`` and equals the int ``83``.
    """

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int, exponent: int = 0) -> None:
        if mantissa < 0:
            raise ValueError(f"mantissa must be nonnegative, got {mantissa}")
        self.mantissa = int(mantissa)
        self.exponent = int(exponent)

    @classmethod
    def parse(cls, text: str) -> "DyadicValue":
        """Read ``"83"``, ``"97.375"``, ``"1558*2^-4"`` or ``"331/4"``."""
        m = _POWER_RE.match(text)
        if m:
            return cls(int(m[1]), int(m[2]))
        m = _DECIMAL_RE.match(text)
        if m:
            frac = m[2] or ""
            return cls.from_fraction(Fraction(int(m[1] + frac), 10 ** len(frac)))
        if "/" in text:
            return cls.from_fraction(Fraction(text.strip()))
        raise ValueError(f"not a dyadic number: {text!r}")

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "DyadicValue":
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, -(den.bit_length() - 1))

    def normalized(self) -> "DyadicValue":
        """Same value with an odd mantissa (or ``0 * 2**0``)."""
        m, e = self.mantissa, self.exponent
        if m == 0:
            return DyadicValue(0, 0)
        tz = (m & -m).bit_length() - 1
        return DyadicValue(m >> tz, e + tz)

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def to_decimal(self, min_fraction_digits: int = 16) -> str:
        """Exact base-10 expansion, right-padded to ``min_fraction_digits``."""
        m, e = self.mantissa, self.exponent
        if e >= 0:
            whole, digits = str(m << e), ""
        else:
            # m / 2^k == m * 5^k / 10^k
            k = -e
            scaled = str(m * 5**k).rjust(k + 1, "0")
            whole, digits = scaled[:-k], scaled[-k:].rstrip("0")
        return f"{whole}.{digits.ljust(min_fraction_digits, '0')}"

    def power_form(self) -> str:
        return f"{self.mantissa}*2^{self.exponent}"

    def _cmp_key(self, other: Number) -> tuple[int, int]:
        """Cross-multiplied integers ``(lhs, rhs)`` comparable by value."""
        if isinstance(other, DyadicValue):
            e = min(self.exponent, other.exponent)
            return (self.mantissa << (self.exponent - e), other.mantissa << (other.exponent - e))
        other = Fraction(other)
        lhs = Fraction(self.mantissa) * other.denominator
        rhs = Fraction(other.numerator)
        if self.exponent >= 0:
            lhs *= 1 << self.exponent
        else:
            rhs *= 1 << -self.exponent
        return int(lhs), int(rhs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (DyadicValue, int, Fraction)):
            return NotImplemented
        lhs, rhs = self._cmp_key(other)
        return lhs == rhs

    def __lt__(self, other: Number) -> bool:
        if not isinstance(other, (DyadicValue, int, Fraction)):
            return NotImplemented
        lhs, rhs = self._cmp_key(other)
        return lhs < rhs

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __mul__(self, other: "DyadicValue | int") -> "DyadicValue":
        if isinstance(other, int):
            other = DyadicValue(other)
        return DyadicValue(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __repr__(self) -> str:
        return f"DyadicValue({self.mantissa}, {self.exponent})"

    def __str__(self) -> str:
        n = self.normalized()
        if n.exponent >= 0:
            return str(n.mantissa << n.exponent)
        return self.to_decimal(0)
