from typing import Set

from moby.core.exceptions import NotANextFormula, UnsupportedShape

from .Formula import Atom, AtomKind, Formula, Next, Not, is_literal


def asf(f: Formula) -> Set[Formula]:
    """Maximal next-free subformulas.

    Works on NNF and on surface formulas alike: Implies is walked like any
    other Boolean connective. Nothing below a Next is collected.
    """
    found: Set[Formula] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if node.x_depth == 0:
            found.add(node)
        elif not isinstance(node, Next):
            stack.extend(node.children())
    return found


def nsf(f: Formula) -> Set[Formula]:
    """Maximal subformulas whose root is Next."""
    found: Set[Formula] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Next):
            found.add(node)
        else:
            stack.extend(node.children())
    return found


def rm_next(f: Formula) -> Formula:
    if not isinstance(f, Next):
        raise NotANextFormula(f"Expected a Next formula, got {f}")
    return f.arg


def split_next_chain(f: Formula) -> tuple[int, Formula]:
    """X^i g -> (i, g)."""
    steps = 0
    while isinstance(f, Next):
        steps += 1
        f = f.arg
    return steps, f


def obligation_name(steps: int, lit: Formula) -> str:
    # s_X_p for X p, s_Xn_p for X !p, s_XX_p for X X p
    negated = isinstance(lit, Not)
    atom = lit.arg if negated else lit
    marker = "X" * steps + ("n" if negated else "")
    return f"s_{marker}_{atom.name}"


def obligation_var(f: Formula) -> Formula:
    """The obligation atom standing for X^i l, or the literal itself when i = 0."""
    steps, inner = split_next_chain(f)
    if not is_literal(inner):
        raise UnsupportedShape(f"No obligation variable for {f}")
    if steps == 0:
        return f
    return Atom(obligation_name(steps, inner), AtomKind.FRESH)
