from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict

from gammoidkit.field import BaseField, is_exact_number

if TYPE_CHECKING:
    from gammoidkit.utils import SplitMix64  # noqa:F401

# Mersenne prime 2^61 - 1
MODULUS = (1 << 61) - 1


class FpField(BaseField):
    """
    Integers modulo the Mersenne prime 2^61 - 1, stored as reduced ``int`` residues.

    Random evaluation here stands in for algebraically independent weights: a nonzero
    polynomial of degree d vanishes at a uniform point with probability at most d / p.
    """

    NAME = "fp"
    modulus = MODULUS

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def coerce(self, value: Any) -> int:
        if not is_exact_number(value):
            raise self._reject(value)
        if isinstance(value, Fraction):
            if value.denominator % MODULUS == 0:
                raise self._reject(value)
            return value.numerator % MODULUS * pow(value.denominator, -1, MODULUS) % MODULUS
        return value % MODULUS

    def add(self, a: int, b: int) -> int:
        return (a + b) % MODULUS

    def sub(self, a: int, b: int) -> int:
        return (a - b) % MODULUS

    def mul(self, a: int, b: int) -> int:
        return a * b % MODULUS

    def neg(self, a: int) -> int:
        return -a % MODULUS

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, MODULUS)

    def random_nonzero(self, rng: "SplitMix64") -> int:
        return rng.randint(1, MODULUS - 1)

    def render(self, a: int) -> str:
        return str(a)

    def describe(self) -> Dict[str, Any]:
        return {"name": self.NAME, "modulus": MODULUS}
