"""Explicit safety game over windows of recent letters.

An arena state pairs the current instant, capped at the objective's
horizon, with the values the last letters gave to every atom a requirement
may still read: an atom at offset k in a body of depth d is kept for d - k
letters. The arena holds every such window, reachable or not, so its size
is known before solving and grows exponentially with the remembered atoms.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Collection, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from moby.core.exceptions import ArenaTooLarge
from moby.frontend.Objective import meaning
from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.ltl.Formula import FALSE, TRUE, Atom, Constant, Formula, Next, Not, Or, atoms, conj, is_true, rebuild
from moby.ltl.rewriting import partial_eval, simpl
from moby.propcheck.Cnf import CnfEncoder
from moby.propcheck.DpllSolver import DpllSolver

from .IArena import IArena
from .MealyMachine import Letter

logger = logging.getLogger(__name__)

DEFAULT_ARENA_BUDGET = 2**24

# (atom, age): the value the atom had that many letters ago
Pair = Tuple[str, int]


@dataclass(frozen=True)
class Window:
    instant: int
    recent: FrozenSet[Pair] = frozenset()

    def __str__(self) -> str:
        shown = ", ".join(f"{name}-{age}" for name, age in sorted(self.recent))
        return f"{self.instant}[{shown}]"


# Reached once an assumption fails; the system wins from there on
RELIEVED = Window(-1)


def atom_offsets(f: Formula, offset: int = 0) -> Iterator[Tuple[str, int]]:
    if isinstance(f, Atom):
        yield f.name, offset
    elif isinstance(f, Next):
        yield from atom_offsets(f.arg, offset + 1)
    else:
        for child in f.children():
            yield from atom_offsets(child, offset)


def lags(bodies: Iterable[Formula]) -> Dict[str, int]:
    """Per atom, the most letters back some body may still read it (atoms never read late are left out)."""
    found: Dict[str, int] = {}
    for f in bodies:
        depth = f.x_depth
        for name, offset in atom_offsets(f):
            if depth > offset:
                found[name] = max(found.get(name, 0), depth - offset)
    return found


def lookback(bodies: Sequence[Formula]) -> int:
    """How many (atom, age) pairs the arena has to remember."""
    return sum(lags(bodies).values())


def instantiate(f: Formula, depth: int, recent: FrozenSet[Pair], offset: int = 0) -> Formula:
    """The instance of a body of `depth` that completes at the current letter.

    Atoms read before the current letter take their value from the window;
    the others stay, as atoms of the current letter.
    """
    if isinstance(f, Atom):
        age = depth - offset
        if age == 0:
            return f
        return TRUE if (f.name, age) in recent else FALSE
    if isinstance(f, Next):
        return instantiate(f.arg, depth, recent, offset + 1)
    if isinstance(f, Constant):
        return f
    return rebuild(f, tuple(instantiate(child, depth, recent, offset) for child in f.children()))


class SafetyGame(IArena):
    """The game of a ReactiveSpec: the system loses when a guarantee instance
    completes false while every assumption instance completed so far held.

    Raises:
        ArenaTooLarge: when the arena has more states than the budget
    """

    def __init__(self, spec: ReactiveSpec, budget: int = DEFAULT_ARENA_BUDGET):
        self.spec = spec
        self.objective = meaning(spec)
        self.budget = budget
        self._inputs = spec.input_names
        self._outputs = spec.output_names
        self._lags = lags(r.formula for r in self.objective.requirements)
        self._horizon = self.objective.horizon

        remembered = sorted(self._lags.items())
        self._pairs: List[List[Pair]] = [
            [(name, age) for name, lag in remembered for age in range(1, min(lag, instant) + 1)]
            for instant in range(self._horizon + 1)
        ]
        memory = len(self._pairs[-1])
        self._size = 1 + sum(1 << len(pairs) for pairs in self._pairs)
        if self._size > budget:
            raise ArenaTooLarge(
                f"Arena has {self._size} states (2^{memory} windows), budget is {budget}"
            )
        self._completing = [self.objective.completing(i) for i in range(self._horizon + 1)]
        logger.debug(
            f"Window arena over {len(self._inputs)} inputs, {len(self._outputs)} outputs: "
            f"{memory} remembered values, horizon {self._horizon}, {self._size} states"
        )

    @property
    def inputs(self) -> Sequence[str]:
        return self._inputs

    @property
    def outputs(self) -> Sequence[str]:
        return self._outputs

    def initial(self) -> Window:
        return Window(0)

    def size(self) -> int:
        return self._size

    def states(self) -> Iterator[Window]:
        yield RELIEVED
        for instant, pairs in enumerate(self._pairs):
            for bits in itertools.product((False, True), repeat=len(pairs)):
                yield Window(instant, frozenset(p for p, bit in zip(pairs, bits) if bit))

    def successor(self, state: Window, letter: Letter) -> Window:
        """The window after a full letter, whatever the requirements say about it."""
        kept = {(name, age + 1) for name, age in state.recent if age < self._lags[name]}
        kept |= {(name, 1) for name in letter if name in self._lags}
        return Window(min(state.instant + 1, self._horizon), frozenset(kept))

    def answer(
        self, state: Window, letter: Letter, avoid: Collection[Letter] = ()
    ) -> Optional[Tuple[Letter, Window]]:
        if state == RELIEVED:
            return frozenset(), RELIEVED

        known = {name: name in letter for name in self._inputs}
        assumed: List[Formula] = []
        required: List[Formula] = []
        for r in self._completing[state.instant]:
            f = partial_eval(instantiate(r.formula, r.depth, state.recent), known)
            (assumed if r.is_assumption else required).append(f)
        held = simpl(conj(assumed))
        safe = simpl(Or(Not(held), conj(required)))

        encoder = CnfEncoder()
        encoder.assert_formula(safe)
        variables = {name: encoder.variable(name) for name in self._outputs}
        # Answers agreeing on these outputs lead to the same successor
        decisive = atoms(held)
        watched = [name for name in self._outputs if name in self._lags or name in decisive]
        order = [variables[name] for name in watched] + [
            variables[name] for name in self._outputs if name not in watched
        ]
        solver = DpllSolver(encoder.num_vars, encoder.clauses, order)
        for earlier in avoid:
            solver.add_clause(
                [-variables[name] if name in earlier else variables[name] for name in watched]
            )

        model = solver.solve()
        if model is None:
            return None
        answer = frozenset(name for name in self._outputs if model[variables[name]])
        assignment = {name: name in answer for name in self._outputs}
        if not is_true(simpl(partial_eval(held, assignment))):
            return answer, RELIEVED
        return answer, self.successor(state, letter | answer)
