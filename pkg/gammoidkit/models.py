from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from gammoidkit.enums import CheckName, CommandName, FieldMode, OutputFormat

MAX_SEED = (1 << 64) - 1


class ExchangeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    counterexample: Optional[Tuple[Tuple[int, ...], Tuple[int, ...], int]] = None


class LgvReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    subset: Tuple[int, ...]
    determinant: Any
    signed_sum: Any
    routings: int
    equal: bool


class OrthogonalityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    product_is_zero: bool
    rank_x: int
    rank_y: int
    r: int
    n: int
    rows_satisfy_recurrence: bool = True
    complementary: bool


class DualityReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    equal: bool
    left: Any
    right: Any
    diff: List[Any] = []


class CheckReport(BaseModel):
    """
    one entry of `verify` output, rendered as {"check": ..., "pass": ..., "details": ...}
    """

    model_config = ConfigDict(populate_by_name=True)

    check: str
    passed: bool = Field(alias="pass")
    details: Dict[str, Any] = {}


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: CommandName
    input: Optional[str] = None
    field: FieldMode = FieldMode.fp
    seed: int = 1
    format: OutputFormat = OutputFormat.text
    check: CheckName = CheckName.all
    max_retries: int = 3
    subset: Optional[Tuple[int, ...]] = None
    normalize: bool = False

    @field_validator("seed")
    @classmethod
    def seed_in_range(cls, value: int) -> int:
        if not 0 <= value <= MAX_SEED:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {value}")
        return value

    @field_validator("max_retries")
    @classmethod
    def retries_non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("max_retries must be non-negative")
        return value
