from enum import Enum


class Color(str, Enum):
    green = "green"
    red = "red"
    yellow = "yellow"


class FieldMode(str, Enum):
    fp = "fp"
    rational = "rational"


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class CommandName(str, Enum):
    bases = "bases"
    rank = "rank"
    represent = "represent"
    dualize = "dualize"
    convert = "convert"
    verify = "verify"


class CheckName(str, Enum):
    exchange = "exchange"
    lgv = "lgv"
    orthogonal = "orthogonal"
    duality = "duality"
    all = "all"
