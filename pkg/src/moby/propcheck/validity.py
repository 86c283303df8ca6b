"""Validity and satisfiability of Next-bounded formulas.

A formula of Next-depth d is valid over all traces iff its timed-atom
expansion is a propositional tautology, which is what is decided here.
"""

import functools
from typing import Dict, Optional

from moby.ltl.Formula import Formula, Not

from .Cnf import CnfEncoder, expand, split_timed
from .DpllSolver import DpllSolver


def _solve(f: Formula) -> Optional[Dict[str, bool]]:
    encoder = CnfEncoder()
    encoder.assert_formula(expand(f))
    primary = sorted(encoder.var_of.items())
    solver = DpllSolver(
        encoder.num_vars, encoder.clauses, [var for _, var in primary]
    )
    model = solver.solve()
    if model is None:
        return None
    return {name: model[var] for name, var in primary}


@functools.lru_cache(maxsize=8192)
def is_sat(f: Formula) -> bool:
    return _solve(f) is not None


def is_valid(f: Formula) -> bool:
    return not is_sat(Not(f))


def find_model(f: Formula) -> Optional[Dict[str, Dict[int, bool]]]:
    """A satisfying valuation as {atom: {offset: value}}, or None when unsatisfiable."""
    model = _solve(f)
    if model is None:
        return None
    valuation: Dict[str, Dict[int, bool]] = {}
    for name, value in model.items():
        atom, offset = split_timed(name)
        valuation.setdefault(atom, {})[offset] = value
    return valuation
