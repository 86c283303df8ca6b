from typing import Iterable, List

from moby.core.exceptions import InconsistentMode
from moby.ltl.Formula import FALSE, TRUE, Formula, Implies, Next, Not, is_false, is_true, rebuild
from moby.ltl.rewriting import simpl
from moby.propcheck.validity import is_valid


def rm_modes(f: Formula, mode: Formula) -> Formula:
    """Specialize f to the instants where mode holds.

    Next-free subformulas decided by the mode become constants, searching
    from the root down; nothing below a Next is touched.
    """
    return simpl(_rm_modes(f, mode))


def _rm_modes(f: Formula, mode: Formula) -> Formula:
    if isinstance(f, Next):
        return f
    if f.x_depth == 0:
        if is_valid(Implies(mode, f)):
            return TRUE
        if is_valid(Implies(mode, Not(f))):
            return FALSE
    children = f.children()
    if not children:
        return f
    return rebuild(f, tuple(_rm_modes(child, mode) for child in children))


def reduce(items: Iterable[Formula], mode: Formula, mode_name: str = "") -> List[Formula]:
    """rm_modes over a guarantee list, dropping items that become true.

    Raises:
        InconsistentMode: an item is false everywhere in the mode (1-based index)
    """
    reduced: List[Formula] = []
    for index, item in enumerate(items, start=1):
        g = rm_modes(item, mode)
        if is_false(g):
            raise InconsistentMode(mode_name or str(mode), index)
        if not is_true(g):
            reduced.append(g)
    return reduced
