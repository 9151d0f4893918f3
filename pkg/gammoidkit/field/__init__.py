import importlib
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict

from gammoidkit.exceptions import FieldMismatchError

if TYPE_CHECKING:
    from gammoidkit.utils import SplitMix64  # noqa:F401


class BaseField:
    """
    Scalar arithmetic of one field.

    Matrices store raw values (``Fraction`` or ``int``) and delegate every operation to
    their field, so a matrix never holds scalars of two fields.
    """

    NAME = "field"
    modulus: int = 0

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def coerce(self, value: Any) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Any) -> bool:
        return a == 0

    def random_nonzero(self, rng: "SplitMix64") -> Any:
        raise NotImplementedError

    def render(self, a: Any) -> str:
        raise NotImplementedError

    def describe(self) -> Dict[str, Any]:
        return {"name": self.NAME}

    def _reject(self, value: Any) -> FieldMismatchError:
        return FieldMismatchError(
            f"{type(value).__name__} value {value!r} does not belong to field {self.NAME}"
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BaseField)
            and self.NAME == other.NAME
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.NAME, self.modulus))

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


def is_exact_number(value: Any) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def load_field(mode: str) -> BaseField:
    """
    instantiate the field for a mode name ("fp" or "rational")
    :param mode:
    :return:
    """
    try:
        field_module = importlib.import_module(f"gammoidkit.field.{mode}")
    except ModuleNotFoundError:
        raise ValueError(f"Unknown field mode {mode!r}") from None
    return getattr(field_module, f"{mode.capitalize()}Field")()
