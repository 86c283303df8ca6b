"""Normal forms, simplification and substitution on formulas."""

from typing import AbstractSet, Mapping

from .Formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    Constant,
    Formula,
    Implies,
    Next,
    Not,
    Or,
    next_chain,
    rebuild,
)


# --- Smart constructors (constant folding, double negation, idempotence) ---


def make_not(a: Formula) -> Formula:
    if isinstance(a, Constant):
        return FALSE if a.value else TRUE
    if isinstance(a, Not):
        return a.arg
    return Not(a)


def make_and(a: Formula, b: Formula) -> Formula:
    if isinstance(a, Constant):
        return b if a.value else FALSE
    if isinstance(b, Constant):
        return a if b.value else FALSE
    if a == b:
        return a
    return And(a, b)


def make_or(a: Formula, b: Formula) -> Formula:
    if isinstance(a, Constant):
        return TRUE if a.value else b
    if isinstance(b, Constant):
        return TRUE if b.value else a
    if a == b:
        return a
    return Or(a, b)


def make_implies(a: Formula, b: Formula) -> Formula:
    if isinstance(a, Constant):
        return b if a.value else TRUE
    if isinstance(b, Constant):
        return TRUE if b.value else make_not(a)
    if a == b:
        return TRUE
    return Implies(a, b)


def make_next(a: Formula) -> Formula:
    return a if isinstance(a, Constant) else Next(a)


_MAKERS = {And: make_and, Or: make_or, Implies: make_implies}


def simpl(f: Formula) -> Formula:
    """Bottom-up Boolean simplification.

    The result is either a constant or contains no constant at all.
    """
    if isinstance(f, (Constant, Atom)):
        return f
    if isinstance(f, Not):
        return make_not(simpl(f.arg))
    if isinstance(f, Next):
        return make_next(simpl(f.arg))
    return _MAKERS[type(f)](simpl(f.left), simpl(f.right))


def nnf(f: Formula) -> Formula:
    """Negation normal form with Next pushed down to the literals.

    Implies is eliminated, Not only sits directly above atoms and Next only
    appears in chains X^i l over a literal l.
    """
    return _nnf(f, False, 0)


def _nnf(f: Formula, negated: bool, shift: int) -> Formula:
    if isinstance(f, Constant):
        return Constant(f.value != negated)
    if isinstance(f, Atom):
        return next_chain(Not(f) if negated else f, shift)
    if isinstance(f, Not):
        return _nnf(f.arg, not negated, shift)
    if isinstance(f, Next):
        return _nnf(f.arg, negated, shift + 1)
    if isinstance(f, Implies):
        left = _nnf(f.left, not negated, shift)
        right = _nnf(f.right, negated, shift)
        return And(left, right) if negated else Or(left, right)
    left = _nnf(f.left, negated, shift)
    right = _nnf(f.right, negated, shift)
    conjunctive = isinstance(f, And) != negated
    return And(left, right) if conjunctive else Or(left, right)


def substitute(f: Formula, target: Formula, replacement: Formula) -> Formula:
    """Replace every occurrence of target, outermost first."""
    return replace(f, {target: replacement})


def replace(f: Formula, mapping: Mapping[Formula, Formula]) -> Formula:
    """Simultaneous outside-in replacement; replacements are not revisited."""
    hit = mapping.get(f)
    if hit is not None:
        return hit
    children = f.children()
    if not children:
        return f
    return rebuild(f, tuple(replace(child, mapping) for child in children))


def progress(f: Formula, letter: AbstractSet[str]) -> Formula:
    """Consume one instant: decide the atoms of the current letter and drop one Next.

    Atoms outside any Next refer to the current letter; an atom absent from
    the letter is false.
    """
    if isinstance(f, Constant):
        return f
    if isinstance(f, Atom):
        return TRUE if f.name in letter else FALSE
    if isinstance(f, Next):
        return f.arg
    if isinstance(f, Not):
        return make_not(progress(f.arg, letter))
    return _MAKERS[type(f)](progress(f.left, letter), progress(f.right, letter))


def partial_eval(f: Formula, known: Mapping[str, bool]) -> Formula:
    """Fix current-instant atoms listed in known; everything under Next is kept."""
    if isinstance(f, (Constant, Next)):
        return f
    if isinstance(f, Atom):
        if f.name in known:
            return TRUE if known[f.name] else FALSE
        return f
    if isinstance(f, Not):
        return make_not(partial_eval(f.arg, known))
    return _MAKERS[type(f)](partial_eval(f.left, known), partial_eval(f.right, known))


def present_atoms(f: Formula) -> set[str]:
    """Names of atoms that refer to the current instant (not under any Next)."""
    found: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node.name)
        elif not isinstance(node, Next):
            stack.extend(node.children())
    return found
