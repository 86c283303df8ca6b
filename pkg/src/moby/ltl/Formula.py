"""Abstract syntax of LTL formulas whose only temporal operator is Next.

Nodes are immutable and compare structurally. Hash, Next-depth and node
count are computed once at construction, so formulas can be used freely as
dictionary keys and set members (the solver stores thousands of them).
"""

import enum
from typing import FrozenSet, Iterable, Iterator, Tuple


class AtomKind(str, enum.Enum):
    INPUT = "input"
    OUTPUT = "output"
    FRESH = "fresh"


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ("_hash", "_depth", "_size")

    def _init(self, key_hash: int, depth: int, size: int) -> None:
        object.__setattr__(self, "_hash", key_hash)
        object.__setattr__(self, "_depth", depth)
        object.__setattr__(self, "_size", size)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def children(self) -> Tuple["Formula", ...]:
        return ()

    def _key(self) -> tuple:
        raise NotImplementedError

    @property
    def x_depth(self) -> int:
        """Maximum number of nested Next operators on any root-to-leaf path."""
        return self._depth

    @property
    def size(self) -> int:
        """Number of AST nodes."""
        return self._size

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._key() == other._key()

    def __ne__(self, other) -> bool:
        return not self == other

    def __reduce__(self):
        return (type(self), self._key())

    # Operator sugar: p & q, p | q, ~p, p >> q
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __str__(self) -> str:
        from .printer import to_tlsf

        return to_tlsf(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}<{self}>"


class Constant(Formula):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        object.__setattr__(self, "value", bool(value))
        self._init(hash(("const", self.value)), 0, 1)

    def _key(self) -> tuple:
        return (self.value,)


class Atom(Formula):
    """A signal. The kind is metadata and does not take part in equality."""

    __slots__ = ("name", "kind")

    def __init__(self, name: str, kind: AtomKind | None = None):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "kind", kind)
        self._init(hash(("atom", name)), 0, 1)

    def _key(self) -> tuple:
        return (self.name,)

    def __reduce__(self):
        return (Atom, (self.name, self.kind))


class _Unary(Formula):
    __slots__ = ("arg",)
    _tag = ""

    def __init__(self, arg: Formula):
        object.__setattr__(self, "arg", arg)
        self._init(
            hash((self._tag, arg._hash)),
            arg._depth + (1 if self._tag == "next" else 0),
            arg._size + 1,
        )

    def children(self) -> Tuple[Formula, ...]:
        return (self.arg,)

    def _key(self) -> tuple:
        return (self.arg,)


class Not(_Unary):
    __slots__ = ()
    _tag = "not"


class Next(_Unary):
    __slots__ = ()
    _tag = "next"


class _Binary(Formula):
    __slots__ = ("left", "right")
    _tag = ""

    def __init__(self, left: Formula, right: Formula):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._init(
            hash((self._tag, left._hash, right._hash)),
            max(left._depth, right._depth),
            left._size + right._size + 1,
        )

    def children(self) -> Tuple[Formula, ...]:
        return (self.left, self.right)

    def _key(self) -> tuple:
        return (self.left, self.right)


class And(_Binary):
    __slots__ = ()
    _tag = "and"


class Or(_Binary):
    __slots__ = ()
    _tag = "or"


class Implies(_Binary):
    __slots__ = ()
    _tag = "implies"


TRUE = Constant(True)
FALSE = Constant(False)

BINARY_TYPES = (And, Or, Implies)


def is_true(f: Formula) -> bool:
    return isinstance(f, Constant) and f.value


def is_false(f: Formula) -> bool:
    return isinstance(f, Constant) and not f.value


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.arg, Atom))


def literal(name: str, positive: bool = True, kind: AtomKind | None = None) -> Formula:
    atom = Atom(name, kind)
    return atom if positive else Not(atom)


def next_chain(f: Formula, steps: int) -> Formula:
    for _ in range(steps):
        f = Next(f)
    return f


def conj(items: Iterable[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is true."""
    items = list(items)
    if not items:
        return TRUE
    result = items[-1]
    for item in reversed(items[:-1]):
        result = And(item, result)
    return result


def disj(items: Iterable[Formula]) -> Formula:
    """Right-nested disjunction; the empty disjunction is false."""
    items = list(items)
    if not items:
        return FALSE
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Or(item, result)
    return result


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def atoms(f: Formula) -> FrozenSet[str]:
    """Names of all atoms occurring in the formula."""
    return frozenset(node.name for node in walk(f) if isinstance(node, Atom))


def rebuild(f: Formula, children: Tuple[Formula, ...]) -> Formula:
    """Same node type with new children (identity kept when nothing changed)."""
    if all(new is old for new, old in zip(children, f.children())):
        return f
    if isinstance(f, _Unary):
        return type(f)(children[0])
    return type(f)(children[0], children[1])
