"""Synthesis of independent specifications in a bounded process pool."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, NamedTuple, Optional, Sequence

from moby.core.exceptions import ArenaTooLarge, SynthTimeout
from moby.frontend.ReactiveSpec import ReactiveSpec

from .MealyMachine import MealyMachine
from .SafetyGame import DEFAULT_ARENA_BUDGET
from .solver import REALIZABLE, WINDOW, synthesize

logger = logging.getLogger(__name__)

TIMEOUT = "timeout"
BUDGET = "budget"


class SynthOutcome(NamedTuple):
    verdict: str
    # JSON, so that it crosses process boundaries unchanged
    machine: Optional[str]
    seconds: float

    @property
    def realizable(self) -> bool:
        return self.verdict == REALIZABLE

    def load_machine(self) -> MealyMachine:
        if self.machine is None:
            raise ValueError(f"No machine for a {self.verdict} outcome")
        return MealyMachine.from_json(self.machine)


def synth_task(
    spec: ReactiveSpec,
    budget: int = DEFAULT_ARENA_BUDGET,
    timeout: Optional[float] = None,
    method: str = WINDOW,
) -> SynthOutcome:
    """Timeouts and exhausted budgets become verdicts instead of exceptions."""
    started = time.monotonic()
    try:
        result = synthesize(spec, budget, timeout, method)
    except SynthTimeout:
        return SynthOutcome(TIMEOUT, None, time.monotonic() - started)
    except ArenaTooLarge:
        return SynthOutcome(BUDGET, None, time.monotonic() - started)
    machine = result.machine.to_json() if result.machine is not None else None
    return SynthOutcome(result.verdict, machine, result.stats.seconds)


def synthesize_batch(
    specs: Sequence[ReactiveSpec],
    budget: int = DEFAULT_ARENA_BUDGET,
    timeout: Optional[float] = None,
    jobs: int = 1,
    method: str = WINDOW,
) -> List[SynthOutcome]:
    """Outcomes in input order; results do not depend on jobs."""
    if jobs <= 1 or len(specs) <= 1:
        return [synth_task(s, budget, timeout, method) for s in specs]
    logger.info(f"Synthesizing {len(specs)} specifications on {jobs} workers")
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(synth_task, s, budget, timeout, method) for s in specs]
        return [f.result() for f in futures]
