"""Safety game over progression states, explored on the fly.

An arena state keeps, for every requirement instance still in flight, the
part of its body not yet decided together with the number of letters left
before it completes. Two plays reaching equal pending sets are
indistinguishable for the objective, so the pending set stands in for the
window of recent letters. Only states reachable through safe answers are
ever built.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from moby.core.exceptions import ArenaTooLarge
from moby.frontend.Objective import ASSUMPTION, GUARANTEE, meaning
from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.ltl.Formula import Formula, Not, Or, atoms, conj, is_true
from moby.ltl.rewriting import partial_eval, present_atoms, progress, simpl
from moby.propcheck.Cnf import CnfEncoder
from moby.propcheck.DpllSolver import DpllSolver

from .IGame import IGame
from .MealyMachine import Letter
from .SafetyGame import DEFAULT_ARENA_BUDGET, lookback

logger = logging.getLogger(__name__)

INIT = "init"
RUN = "run"
RELIEVED = "relieved"


@dataclass(frozen=True)
class Pending:
    kind: str
    formula: Formula
    remaining: int


@dataclass(frozen=True)
class ArenaState:
    phase: str
    pending: FrozenSet[Pending] = frozenset()

    def __str__(self) -> str:
        shown = ", ".join(
            sorted(f"{p.kind[0].upper()}[{p.remaining}] {p.formula}" for p in self.pending)
        )
        return f"{self.phase}{{{shown}}}"


RELIEVED_STATE = ArenaState(RELIEVED)


class ProgressionGame(IGame):
    """The game of a ReactiveSpec with the objective decided by progression.

    Raises:
        ArenaTooLarge: statically when the lookback exceeds the budget, and
            while exploring once more states than the budget are discovered
    """

    def __init__(self, spec: ReactiveSpec, budget: int = DEFAULT_ARENA_BUDGET):
        self.spec = spec
        self.budget = budget
        self._inputs = spec.input_names
        self._outputs = spec.output_names
        objective = meaning(spec)
        self._bodies: List[Pending] = [
            Pending(r.kind, r.formula, r.depth) for r in objective.requirements if not r.once
        ]
        self._initial_bodies: List[Pending] = [
            Pending(r.kind, r.formula, r.depth) for r in objective.requirements if r.once
        ]

        memory = lookback([r.formula for r in objective.requirements])
        if (1 << memory) > budget:
            raise ArenaTooLarge(
                f"Arena needs up to 2^{memory} states, budget is {budget}"
            )
        # Without initial conditions the first letter is like any other
        self._initial = ArenaState(INIT if self._initial_bodies else RUN)
        self._seen = {self._initial}
        logger.debug(
            f"Game over {len(self._inputs)} inputs, {len(self._outputs)} outputs, "
            f"lookback {memory}"
        )

    @property
    def inputs(self) -> Sequence[str]:
        return self._inputs

    @property
    def outputs(self) -> Sequence[str]:
        return self._outputs

    def initial(self) -> ArenaState:
        return self._initial

    def discovered(self) -> int:
        return len(self._seen)

    def _instances(self, state: ArenaState) -> List[Pending]:
        instances = list(state.pending) + self._bodies
        if state.phase == INIT:
            instances += self._initial_bodies
        return instances

    def successor(self, state: ArenaState, letter: Letter) -> Optional[ArenaState]:
        """The state after reading a full letter, or None when a guarantee is violated."""
        if state.phase == RELIEVED:
            return state
        kept = set()
        assumption_failed = guarantee_failed = False
        for p in self._instances(state):
            g = progress(p.formula, letter)
            if p.remaining == 0:
                if not is_true(g):
                    if p.kind == ASSUMPTION:
                        assumption_failed = True
                    else:
                        guarantee_failed = True
            elif not is_true(g):
                kept.add(Pending(p.kind, g, p.remaining - 1))
        if assumption_failed:
            return RELIEVED_STATE
        if guarantee_failed:
            return None
        return ArenaState(RUN, frozenset(kept))

    def _register(self, state: ArenaState) -> None:
        if state not in self._seen:
            self._seen.add(state)
            if len(self._seen) > self.budget:
                raise ArenaTooLarge(f"Discovered more than {self.budget} arena states")

    def moves(self, state: ArenaState, letter: Letter) -> Iterator[Tuple[Letter, ArenaState]]:
        if state.phase == RELIEVED:
            yield frozenset(), state
            return

        known = {name: name in letter for name in self._inputs}
        completing = {ASSUMPTION: [], GUARANTEE: []}
        continuing: List[Formula] = []
        for p in self._instances(state):
            f = partial_eval(p.formula, known)
            if p.remaining == 0:
                completing[p.kind].append(f)
            else:
                continuing.append(f)

        safe = simpl(Or(Not(conj(completing[ASSUMPTION])), conj(completing[GUARANTEE])))
        encoder = CnfEncoder()
        encoder.assert_formula(safe)
        variables = [encoder.variable(name) for name in self._outputs]
        solver = DpllSolver(encoder.num_vars, encoder.clauses, variables)

        forced = solver.implied()
        if forced is None:
            return
        fixed = {
            name: forced[var] for name, var in zip(self._outputs, variables) if var in forced
        }
        relevant = set()
        for f in continuing:
            relevant |= present_atoms(partial_eval(f, fixed))
        for f in completing[ASSUMPTION]:
            relevant |= atoms(partial_eval(f, fixed))
        project = [var for name, var in zip(self._outputs, variables) if name in relevant]

        for model in solver.models(project):
            answer = frozenset(
                name for name, var in zip(self._outputs, variables) if model[var]
            )
            target = self.successor(state, letter | answer)
            if target is None:
                logger.debug(f"Answer {sorted(answer)} in {state} violates a guarantee")
                continue
            self._register(target)
            yield answer, target
