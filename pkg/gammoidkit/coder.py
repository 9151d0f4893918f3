import json
from fractions import Fraction
from typing import Any, Optional, Union

from pydantic import BaseModel

from gammoidkit.linalg import FieldMatrix
from gammoidkit.matroid import Matroid

MATROID_KEYS = {"n", "rank", "bases"}


class JsonEncoder(json.JSONEncoder):
    def default(self, obj) -> Any:
        if isinstance(obj, Fraction):
            return f"{obj.numerator}/{obj.denominator}"
        elif isinstance(obj, Matroid):
            return obj.to_dict()
        elif isinstance(obj, FieldMatrix):
            return obj.render()
        elif isinstance(obj, BaseModel):
            return obj.model_dump(by_alias=True)
        elif isinstance(obj, (set, frozenset)):
            return sorted(obj)
        else:
            return super().default(obj)


def object_hook(obj) -> Any:
    if set(obj) == MATROID_KEYS:
        return Matroid.from_dict(obj)
    return obj


def encoder(obj: Any, indent: Optional[int] = None) -> str:
    return json.dumps(obj, cls=JsonEncoder, indent=indent)


def decoder(obj: Union[str, bytes]) -> Any:
    return json.loads(obj, object_hook=object_hook)
