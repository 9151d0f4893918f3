from fractions import Fraction
from typing import TYPE_CHECKING, Any

from gammoidkit.field import BaseField, is_exact_number

if TYPE_CHECKING:
    from gammoidkit.utils import SplitMix64  # noqa:F401

# seeded rational weights are k/l with k, l in [1, RANDOM_BOUND]
RANDOM_BOUND = 97


class RationalField(BaseField):
    """
    The rationals, as ``fractions.Fraction`` (always lowest terms, positive denominator).
    """

    NAME = "rational"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value: Any) -> Fraction:
        if not is_exact_number(value):
            raise self._reject(value)
        return Fraction(value)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return a / b

    def random_nonzero(self, rng: "SplitMix64") -> Fraction:
        return Fraction(rng.randint(1, RANDOM_BOUND), rng.randint(1, RANDOM_BOUND))

    def render(self, a: Fraction) -> str:
        return f"{a.numerator}/{a.denominator}"
