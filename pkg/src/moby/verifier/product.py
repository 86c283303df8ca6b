"""Exhaustive check of a Mealy machine against a specification.

Explores the product of the machine with a window of the most recent
letters. Requirements come from the same objective the game solvers use,
but are decided by direct evaluation on the window instead of by
progression or window substitution.
"""

import logging
from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from moby.core.exceptions import AlphabetMismatch, UndeclaredAtom
from moby.frontend.Objective import Requirement, meaning
from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.ltl.Trace import Letter, Trace, evaluate
from moby.synth.MealyMachine import MealyMachine, input_letters

from .Counterexample import Counterexample

logger = logging.getLogger(__name__)

# (machine state, last letters restricted to spec signals, current instant capped at the horizon)
_Node = Tuple[str, Tuple[Letter, ...], int]


def check_alphabets(machine: MealyMachine, spec: ReactiveSpec) -> None:
    if set(machine.inputs) != set(spec.input_names):
        raise AlphabetMismatch(
            f"Machine inputs {sorted(machine.inputs)} differ from "
            f"specification inputs {sorted(spec.input_names)}"
        )
    missing = sorted(set(spec.output_names) - set(machine.outputs))
    if missing:
        raise AlphabetMismatch(f"Machine does not drive outputs {missing}")


def _violated(
    requirements: Sequence[Requirement], recent: Sequence[Letter], instant: int
) -> Optional[Requirement]:
    """First requirement decided false by the last letter of `recent`."""
    for r in requirements:
        if r.decided(instant) and not evaluate(r.formula, recent, len(recent) - 1 - r.depth):
            return r
    return None


def product_check(machine: MealyMachine, spec: ReactiveSpec) -> Optional[Counterexample]:
    """The shortest counterexample, or None when the machine realizes the spec.

    Initial conditions are decided once their depth is reached and invariant
    bodies at every instant from their depth on, each on the letters ending
    with the current one. A false assumption ends the play for good.

    Raises:
        AlphabetMismatch: inputs differ or some spec output is not a machine output
    """
    check_alphabets(machine, spec)
    objective = meaning(spec)
    depth, horizon = objective.depth, objective.horizon
    assumptions, guarantees = objective.assumptions, objective.guarantees
    signals = set(spec.signals)

    letters = list(input_letters(spec.input_names))
    root: _Node = (machine.initial, (), 0)
    parents: Dict[_Node, Tuple[Optional[_Node], Letter, Letter]] = {
        root: (None, frozenset(), frozenset())
    }
    queue = deque([root])
    while queue:
        node = queue.popleft()
        state, window, instant = node
        for letter in letters:
            output, target = machine.step(state, letter)
            full = (letter | output) & signals
            recent = window + (full,)
            if _violated(assumptions, recent, instant):
                continue
            broken = _violated(guarantees, recent, instant)
            if broken is not None:
                logger.info(f"Counterexample found after {len(parents)} product states")
                return _counterexample(parents, node, letter, full, broken)
            child: _Node = (target, recent[-depth:] if depth else (), min(instant + 1, horizon))
            if child not in parents:
                parents[child] = (node, letter, full)
                queue.append(child)
    logger.info(f"Machine verified on {len(parents)} product states")
    return None


def _counterexample(
    parents: Dict[_Node, Tuple[Optional[_Node], Letter, Letter]],
    node: _Node,
    letter: Letter,
    full: Letter,
    broken: Requirement,
) -> Counterexample:
    inputs: List[Letter] = [letter]
    trace: List[Letter] = [full]
    current = node
    while True:
        parent, in_letter, full_letter = parents[current]
        if parent is None:
            break
        inputs.append(in_letter)
        trace.append(full_letter)
        current = parent
    inputs.reverse()
    trace.reverse()
    return Counterexample(
        inputs=tuple(inputs),
        trace=Trace(trace),
        step=len(trace) - 1,
        requirement=broken.formula,
        kind=broken.label,
    )


def simulate(machine: MealyMachine, inputs: Iterable[Iterable[str]]) -> Trace:
    """Run the machine from its initial state; each letter is input plus output.

    Raises:
        UndeclaredAtom: an input letter names a signal the machine does not read
    """
    given = Trace(inputs)
    foreign = given.undeclared(machine.inputs)
    if foreign:
        raise UndeclaredAtom(f"Signals {sorted(foreign)} are not machine inputs")
    state = machine.initial
    letters = []
    for letter in given:
        output, state = machine.step(state, letter)
        letters.append(letter | output)
    return Trace(letters)
