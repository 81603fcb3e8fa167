"""Coefficient fields: the rationals and prime fields."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import CoefficientError

MAX_PRIME = 2**31


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """QQ when ``characteristic`` is 0, otherwise the prime field F_p.

    Elements of QQ are :class:`fractions.Fraction`; elements of F_p are
    ints in ``range(p)``.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (not _is_prime(p) or p >= MAX_PRIME):
            raise CoefficientError(f"{p} is not a prime below 2^31")

    @property
    def kind(self):
        return "rationals" if self.characteristic == 0 else "prime-field"

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise CoefficientError(f"{value} is not an element of {self}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("division by zero in " + str(self))
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        return 1 / Fraction(c)

    def format(self, c):
        return str(c)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"FF({self.characteristic})"

    def __repr__(self):
        return str(self)


QQ = Field(0)


def FF(p):
    return Field(p)
