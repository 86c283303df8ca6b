"""Unexpanded syntax trees produced by the grammar.

Parameters, bus indices, big operators and macro calls are still symbolic
here; Parsers.py expands them into ltl formulas.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from moby.ltl.Formula import _Unary


# --- index arithmetic ---


@dataclass(frozen=True)
class IndexConst:
    value: int


@dataclass(frozen=True)
class IndexName:
    name: str


@dataclass(frozen=True)
class IndexBinary:
    op: str
    left: object
    right: object


# --- index sets ---


@dataclass(frozen=True)
class SetRange:
    first: object
    second: Optional[object]
    last: object


@dataclass(frozen=True)
class SetList:
    items: Tuple[object, ...]


@dataclass(frozen=True)
class SetDiff:
    left: object
    right: object


@dataclass(frozen=True)
class RangeBinder:
    var: str
    low: object
    low_strict: bool
    high: object
    high_strict: bool


@dataclass(frozen=True)
class SetBinder:
    var: str
    values: object


# --- formulas ---


@dataclass(frozen=True)
class RawConst:
    value: bool


@dataclass(frozen=True)
class RawName:
    name: str
    index: Optional[object] = None


@dataclass(frozen=True)
class RawCall:
    macro: str
    argument: str


@dataclass(frozen=True)
class RawUnary:
    op: str
    arg: object


@dataclass(frozen=True)
class RawBinary:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class RawBigOp:
    op: str
    binder: object
    body: object


# --- sections ---


@dataclass(frozen=True)
class Declaration:
    name: str
    width: Optional[object] = None


@dataclass(frozen=True)
class Macro:
    name: str
    parameter: str
    body: object


@dataclass(frozen=True)
class Section:
    name: str
    entries: Tuple[object, ...]


@dataclass(frozen=True)
class ModeBlock:
    name: str
    fields: Tuple[Tuple[str, object], ...]
    line: int


@dataclass(frozen=True)
class RelationEntry:
    source: str
    target: str
    line: int


class Always(_Unary):
    """G wrapper; only lives between expansion and item splitting."""

    __slots__ = ()
    _tag = "always"


@dataclass(frozen=True)
class ParamDef:
    name: str
    value: object
