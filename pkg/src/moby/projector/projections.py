"""Mode-based projection of a specification into one sub-specification per mode."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Set

from moby.core.exceptions import FreshNameClash
from moby.frontend.ModeDecomposition import ModeDecomposition
from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.ltl.Formula import (
    And,
    Atom,
    AtomKind,
    Formula,
    Implies,
    Next,
    Not,
    atoms,
    conj,
    disj,
)
from moby.ltl.rewriting import nnf, replace
from moby.ltl.subformulas import nsf, obligation_var, rm_next
from moby.propcheck.validity import is_valid

from .Projection import DONE, Projection, jump_name
from .reduction import reduce

logger = logging.getLogger(__name__)


def state_invariant(spec: ReactiveSpec) -> Formula:
    """Conjunction of the guarantees that only talk about the current instant."""
    return conj(g for g in spec.guarantees if g.x_depth == 0)


def obligation_closure(items: Sequence[Formula]) -> List[Formula]:
    """Next subformulas of items, closed under rm_next down to depth 1, sorted by text."""
    found: Set[Formula] = set()
    for item in items:
        for f in nsf(item):
            while isinstance(f, Next) and f not in found:
                found.add(f)
                f = rm_next(f)
    return sorted(found, key=str)


def select_start_mode(spec: ReactiveSpec, decomposition: ModeDecomposition) -> int:
    """The first mode whose initial condition and predicate follow from the system preset."""
    for i, mode in enumerate(decomposition.modes, start=1):
        if is_valid(Implies(spec.preset, And(mode.initial, mode.predicate))):
            return i
    logger.warning(
        f"No mode is implied by the preset, starting in '{decomposition.modes[0].name}'"
    )
    return 1


def _check_fresh(spec: ReactiveSpec, names: Sequence[str]) -> None:
    declared = set(spec.signals)
    clashes = sorted(declared.intersection(names))
    if clashes:
        raise FreshNameClash(f"Generated names collide with declared signals: {clashes}")


def project(
    spec: ReactiveSpec,
    decomposition: ModeDecomposition,
    index: int,
    guarantees: Sequence[Formula] | None = None,
) -> Projection:
    """Build the projection of one mode (1-based index)."""
    mode = decomposition.mode(index)
    if guarantees is None:
        guarantees = [nnf(g) for g in spec.guarantees]

    reduced = reduce(guarantees, mode.predicate, mode.name)
    oblig = obligation_closure(reduced)
    variables = {f: obligation_var(f) for f in oblig}
    targets = decomposition.related(index)
    jumps = {j: jump_name(j) for j in targets}
    _check_fresh(spec, [v.name for v in variables.values()] + list(jumps.values()) + [DONE])

    done = Atom(DONE, AtomKind.FRESH)
    not_done = Not(done)
    anchor = Implies(not_done, mode.predicate)
    specialized = [Implies(not_done, replace(psi, variables)) for psi in reduced]

    bookkeeping: List[Formula] = []
    for f in oblig:
        bookkeeping.append(
            Implies(And(not_done, variables[f]), Next(obligation_var(rm_next(f))))
        )
    for j in targets:
        arrival = decomposition.mode(j).initial
        jump = Atom(jumps[j], AtomKind.FRESH)
        for f in oblig:
            if not is_valid(Implies(arrival, rm_next(f))):
                bookkeeping.append(Implies(jump, Not(variables[f])))

    jump_atoms = [Atom(jumps[j], AtomKind.FRESH) for j in targets]
    bookkeeping.append(Implies(done, Next(done)))
    if jump_atoms:
        any_jump = disj(jump_atoms)
        bookkeeping.append(Implies(any_jump, Next(done)))
        bookkeeping.append(Implies(Not(any_jump), Implies(not_done, Next(not_done))))
        for a, first in enumerate(jump_atoms):
            for second in jump_atoms[a + 1 :]:
                bookkeeping.append(Implies(first, Not(second)))
    else:
        bookkeeping.append(Implies(not_done, Next(not_done)))

    preset = And(mode.initial, not_done)
    mentioned = set(atoms(preset))
    for g in [anchor] + specialized + bookkeeping + list(spec.assumptions):
        mentioned |= atoms(g)
    outputs = [a for a in spec.outputs if a.name in mentioned]
    outputs += [variables[f] for f in oblig if isinstance(variables[f], Atom)]
    outputs += jump_atoms + [done]

    projection = Projection(
        mode_index=index,
        mode_name=mode.name,
        inputs=spec.inputs,
        outputs=_unique(outputs),
        initially=mode.arrival,
        preset=preset,
        assumptions=spec.assumptions,
        anchor=anchor,
        specialized=specialized,
        bookkeeping=bookkeeping,
        obligations=[variables[f].name for f in oblig if isinstance(variables[f], Atom)],
        jumps=jumps,
    )
    logger.debug(f"Projected {projection!r}")
    return projection


def _unique(items: List[Atom]) -> List[Atom]:
    seen: Set[str] = set()
    unique = []
    for a in items:
        if a.name not in seen:
            seen.add(a.name)
            unique.append(a)
    return unique


def compute_projections(
    spec: ReactiveSpec, decomposition: ModeDecomposition, jobs: int = 1
) -> List[Projection]:
    """One projection per mode, in mode order.

    Raises:
        InconsistentMode: a guarantee is false everywhere in some mode
        FreshNameClash: a generated name is already a declared signal
    """
    guarantees = [nnf(g) for g in spec.guarantees]
    indices = range(1, len(decomposition) + 1)
    if jobs <= 1:
        projections = [project(spec, decomposition, i, guarantees) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            projections = list(
                pool.map(lambda i: project(spec, decomposition, i, guarantees), indices)
            )
    logger.info(
        f"Projected {len(projections)} modes: "
        + ", ".join(f"{p.mode_name}={len(p.guarantees)} items" for p in projections)
    )
    return projections
