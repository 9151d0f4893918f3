from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Tuple, Union

import tomlkit
from asyncclick import BadOptionUsage
from tomlkit.exceptions import ParseError as TomlParseError

from gammoidkit.exceptions import OutOfRangeError

MASK64 = (1 << 64) - 1
CONFIG_TABLE = "gammoidkit"
CONFIG_KEYS = ("seed", "field", "format", "max_retries")

Subset = Tuple[int, ...]


class SplitMix64:
    """
    Deterministic 64-bit mixing generator.

    Every randomized operation in the package draws from one of these, seeded explicitly,
    so identical seeds give identical weights on every platform.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int = 1) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randbelow(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        # rejection keeps the draw uniform
        limit = ((MASK64 + 1) // bound) * bound
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def randint(self, low: int, high: int) -> int:
        """
        uniform integer in [low, high]
        """
        return low + self.randbelow(high - low + 1)


def canonical_subset(elements: Iterable[int], n: int) -> Subset:
    """
    sorted, duplicate-free tuple of elements of [n]
    :param elements:
    :param n: ground set size
    :return:
    """
    subset = tuple(sorted(set(elements)))
    for e in subset:
        if not 1 <= e <= n:
            raise OutOfRangeError(f"element {e} is outside [1, {n}]")
    return subset


def subsets_of_size(n: int, k: int) -> Iterator[Subset]:
    """
    all k-subsets of [n] in lexicographic order
    """
    return combinations(range(1, n + 1), k)


def parse_subset(text: str) -> Subset:
    """
    parse "1,2,5" (spaces allowed, empty string is the empty set)
    """
    parts = [part.strip() for part in text.replace(" ", ",").split(",")]
    try:
        return tuple(sorted({int(part) for part in parts if part}))
    except ValueError as e:
        raise BadOptionUsage(option_name="--subset", message=f"Invalid subset {text!r}") from e


def get_run_defaults(config: Union[str, Path]) -> Dict[str, Any]:
    """
    read the [tool.gammoidkit] table of a toml file
    :param config: path of the config file, missing file means no defaults
    :return: dict with a subset of CONFIG_KEYS
    """
    config_path = Path(config)
    if not config_path.exists():
        return {}
    try:
        doc: dict = tomlkit.parse(config_path.read_text("utf-8"))
    except TomlParseError as e:
        raise BadOptionUsage(option_name="--config", message=f"Invalid config file: {e}") from e
    table = doc.get("tool", {}).get(CONFIG_TABLE)
    if table is None:
        return {}
    unknown = sorted(set(table) - set(CONFIG_KEYS))
    if unknown:
        raise BadOptionUsage(
            option_name="--config",
            message=f"Unknown keys in [tool.{CONFIG_TABLE}]: {', '.join(unknown)}",
        )
    return {key: _unwrap(table[key]) for key in CONFIG_KEYS if key in table}


def write_run_defaults(config: Union[str, Path], values: Dict[str, Any]) -> None:
    """
    create or replace the [tool.gammoidkit] table, keeping the rest of the file
    """
    config_path = Path(config)
    content = config_path.read_text("utf-8") if config_path.exists() else ""
    doc: dict = tomlkit.parse(content)
    table = tomlkit.table()
    for key in CONFIG_KEYS:
        if key in values:
            table[key] = values[key]
    try:
        doc["tool"][CONFIG_TABLE] = table
    except KeyError:
        tool = tomlkit.table(is_super_table=True)
        tool[CONFIG_TABLE] = table
        doc["tool"] = tool
    config_path.write_text(tomlkit.dumps(doc), encoding="utf-8")


def _unwrap(value: Any) -> Any:
    # tomlkit items subclass the builtins; unwrap() returns the plain value
    return value.unwrap() if hasattr(value, "unwrap") else value
