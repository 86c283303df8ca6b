"""Timed-atom expansion and Tseitin clause encoding."""

from typing import Dict, List

from moby.ltl.Formula import (
    And,
    Atom,
    Constant,
    Formula,
    Implies,
    Next,
    Not,
    Or,
    rebuild,
)
from moby.ltl.rewriting import simpl

TIME_SEPARATOR = "@"


def timed_name(name: str, offset: int) -> str:
    return f"{name}{TIME_SEPARATOR}{offset}"


def split_timed(name: str) -> tuple[str, int]:
    atom, _, offset = name.rpartition(TIME_SEPARATOR)
    return atom, int(offset)


def expand(f: Formula, offset: int = 0) -> Formula:
    """Replace every X^k p by the timed atom p@k, leaving a purely Boolean formula."""
    if isinstance(f, Atom):
        return Atom(timed_name(f.name, offset), f.kind)
    if isinstance(f, Next):
        return expand(f.arg, offset + 1)
    if isinstance(f, Constant):
        return f
    return rebuild(f, tuple(expand(child, offset) for child in f.children()))


def _flatten(f: Formula, kind: type) -> List[Formula]:
    parts: List[Formula] = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, kind):
            stack.append(node.right)
            stack.append(node.left)
        else:
            parts.append(node)
    return parts


class CnfEncoder:
    """Tseitin encoding of Boolean formulas into integer clauses.

    Every gate gets both implication directions, so once all atom variables
    are fixed the gate variables follow by unit propagation alone.
    """

    def __init__(self):
        self.var_of: Dict[str, int] = {}
        self.clauses: List[List[int]] = []
        self.num_vars = 0
        self._gates: Dict[Formula, int] = {}
        self._constant_var = 0

    def variable(self, name: str) -> int:
        var = self.var_of.get(name)
        if var is None:
            var = self._fresh()
            self.var_of[name] = var
        return var

    def _fresh(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def assert_formula(self, f: Formula) -> None:
        f = simpl(f)
        if isinstance(f, Constant):
            if not f.value:
                self.clauses.append([])
            return
        self.clauses.append([self.literal(f)])

    def literal(self, f: Formula) -> int:
        if isinstance(f, Atom):
            return self.variable(f.name)
        if isinstance(f, Not):
            return -self.literal(f.arg)
        if isinstance(f, Constant):
            return self._constant(f.value)
        if isinstance(f, Next):
            raise ValueError(f"Expand timed atoms before encoding: {f}")

        cached = self._gates.get(f)
        if cached is not None:
            return cached

        if isinstance(f, Implies):
            lit = self._gate_or([-self.literal(f.left), self.literal(f.right)])
        elif isinstance(f, And):
            lit = self._gate_and([self.literal(g) for g in _flatten(f, And)])
        else:
            lit = self._gate_or([self.literal(g) for g in _flatten(f, Or)])
        self._gates[f] = lit
        return lit

    def _constant(self, value: bool) -> int:
        if not self._constant_var:
            self._constant_var = self._fresh()
            self.clauses.append([self._constant_var])
        return self._constant_var if value else -self._constant_var

    def _gate_and(self, lits: List[int]) -> int:
        out = self._fresh()
        for lit in lits:
            self.clauses.append([-out, lit])
        self.clauses.append([out] + [-lit for lit in lits])
        return out

    def _gate_or(self, lits: List[int]) -> int:
        out = self._fresh()
        self.clauses.append([-out] + lits)
        for lit in lits:
            self.clauses.append([out, -lit])
        return out
