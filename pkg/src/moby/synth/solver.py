"""Winning-region computation and strategy extraction for safety games."""

import logging
import time
from collections import deque
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict

from moby.core.exceptions import SynthTimeout
from moby.frontend.ReactiveSpec import ReactiveSpec

from .IArena import IArena
from .IGame import IGame
from .MealyMachine import Letter, MealyMachine, input_letters
from .ProgressionGame import ProgressionGame
from .SafetyGame import DEFAULT_ARENA_BUDGET, SafetyGame

logger = logging.getLogger(__name__)

REALIZABLE = "realizable"
UNREALIZABLE = "unrealizable"

# Solving methods: the full window arena, or progression states explored on the fly
WINDOW = "window"
LAZY = "lazy"
METHODS = (WINDOW, LAZY)

Move = Tuple[Letter, Hashable]


class SynthStats(BaseModel):
    arena_states: int = 0
    losing_states: int = 0
    iterations: int = 0
    seconds: float = 0.0


class SynthResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    verdict: str
    machine: Optional[MealyMachine] = None
    stats: SynthStats

    @property
    def realizable(self) -> bool:
        return self.verdict == REALIZABLE


class _Choice:
    """The system answers to one (state, letter) pair, consumed lazily in preference order."""

    def __init__(self, moves: Iterator[Move]):
        self._moves = moves
        self.current: Optional[Move] = next(moves, None)

    def settle(self, losing: Set[Hashable]) -> Optional[Move]:
        while self.current is not None and self.current[1] in losing:
            self.current = next(self._moves, None)
        return self.current


class _Deadline:
    def __init__(self, timeout: Optional[float]):
        self.started = time.monotonic()
        self.timeout = timeout

    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def check(self) -> None:
        if self.timeout is not None and self.elapsed() > self.timeout:
            raise SynthTimeout(f"No verdict after {self.timeout:g} s")


def build_game(
    spec: ReactiveSpec, budget: int = DEFAULT_ARENA_BUDGET, method: str = WINDOW
) -> Union[SafetyGame, ProgressionGame]:
    """
    Raises:
        ValueError: for an unknown method
        ArenaTooLarge: the arena does not fit the budget
    """
    if method == WINDOW:
        return SafetyGame(spec, budget)
    if method == LAZY:
        return ProgressionGame(spec, budget)
    raise ValueError(f"Unknown solving method '{method}', expected one of {', '.join(METHODS)}")


def solve(game: Union[IArena, IGame], timeout: Optional[float] = None) -> SynthResult:
    """Greatest fixpoint of the states from which the system can stay safe.

    A state with some input letter for which every safe answer leads into a
    losing state becomes losing itself. Losing states only grow, so the
    passes stop once one of them changes nothing. An explicit arena is swept
    in full on every pass; other games only over the states reachable from
    the initial one through the currently preferred answers.

    Raises:
        SynthTimeout: the time allowance ran out before a verdict
        ArenaTooLarge: the game discovered more states than its budget
    """
    if isinstance(game, IArena):
        return _solve_arena(game, _Deadline(timeout))
    return _solve_reachable(game, _Deadline(timeout))


def _solve_arena(game: IArena, deadline: _Deadline) -> SynthResult:
    letters = list(input_letters(game.inputs))
    states = list(game.states())
    initial = game.initial()

    # Lay out the arena: the preferred answer to every letter in every state
    choices: Dict[Tuple[Hashable, Letter], Optional[Move]] = {}
    for state in states:
        for letter in letters:
            deadline.check()
            choices[(state, letter)] = game.answer(state, letter)
    logger.debug(f"Arena laid out: {len(states)} states, {len(choices)} choices")

    rejected: Dict[Tuple[Hashable, Letter], List[Letter]] = {}
    losing: Set[Hashable] = set()
    iterations = 0
    changed = True
    while changed and initial not in losing:
        iterations += 1
        changed = False
        for state in states:
            if state in losing:
                continue
            for letter in letters:
                deadline.check()
                key = (state, letter)
                move = choices[key]
                while move is not None and move[1] in losing:
                    rejected.setdefault(key, []).append(move[0])
                    move = game.answer(state, letter, rejected[key])
                choices[key] = move
                if move is None:
                    losing.add(state)
                    changed = True
                    break
        logger.debug(f"Pass {iterations}: {len(losing)} of {len(states)} states losing")

    stats = SynthStats(
        arena_states=game.size(),
        losing_states=len(losing),
        iterations=iterations,
        seconds=deadline.elapsed(),
    )
    return _result(game, stats, initial in losing, lambda state, letter: choices[(state, letter)])


def _solve_reachable(game: IGame, deadline: _Deadline) -> SynthResult:
    letters = list(input_letters(game.inputs))
    choices: Dict[Tuple[Hashable, Letter], _Choice] = {}
    losing: Set[Hashable] = set()
    initial = game.initial()
    iterations = 0

    while initial not in losing:
        iterations += 1
        changed = False
        visited = {initial}
        queue = deque([initial])
        while queue:
            deadline.check()
            state = queue.popleft()
            targets = []
            for letter in letters:
                choice = choices.get((state, letter))
                if choice is None:
                    choice = _Choice(game.moves(state, letter))
                    choices[(state, letter)] = choice
                move = choice.settle(losing)
                if move is None:
                    losing.add(state)
                    changed = True
                    break
                targets.append(move[1])
            else:
                for target in targets:
                    if target not in visited:
                        visited.add(target)
                        queue.append(target)
        logger.debug(
            f"Pass {iterations}: {len(visited)} reachable, {len(losing)} losing"
        )
        if not changed:
            break

    stats = SynthStats(
        arena_states=game.discovered(),
        losing_states=len(losing),
        iterations=iterations,
        seconds=deadline.elapsed(),
    )
    return _result(
        game, stats, initial in losing, lambda state, letter: choices[(state, letter)].current
    )


def _result(
    game: Union[IArena, IGame],
    stats: SynthStats,
    lost: bool,
    chosen: Callable[[Hashable, Letter], Move],
) -> SynthResult:
    if lost:
        logger.info(f"Unrealizable after {stats.iterations} passes ({stats.arena_states} states)")
        return SynthResult(verdict=UNREALIZABLE, stats=stats)
    machine = _extract(game, chosen)
    logger.info(
        f"Realizable after {stats.iterations} passes ({stats.arena_states} states), "
        f"machine has {len(machine)} states"
    )
    return SynthResult(verdict=REALIZABLE, machine=machine, stats=stats)


def _extract(game: Union[IArena, IGame], chosen: Callable[[Hashable, Letter], Move]) -> MealyMachine:
    """Breadth-first from the initial state over the chosen answers; states are named q0, q1, ..."""
    letters = list(input_letters(game.inputs))
    initial = game.initial()
    names = {initial: "q0"}
    order = [initial]
    transitions = {}
    queue = deque([initial])
    while queue:
        state = queue.popleft()
        for letter in letters:
            answer, target = chosen(state, letter)
            if target not in names:
                names[target] = f"q{len(names)}"
                order.append(target)
                queue.append(target)
            transitions[(names[state], letter)] = (answer, names[target])
    return MealyMachine(
        [names[s] for s in order], "q0", game.inputs, game.outputs, transitions
    )


def synthesize(
    spec: ReactiveSpec,
    budget: int = DEFAULT_ARENA_BUDGET,
    timeout: Optional[float] = None,
    method: str = WINDOW,
) -> SynthResult:
    return solve(build_game(spec, budget, method), timeout)
