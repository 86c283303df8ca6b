from dataclasses import dataclass
from typing import Sequence, Tuple

from moby.core.documents import CounterexampleDocument
from moby.ltl.Formula import Formula
from moby.ltl.Trace import Letter, Trace


@dataclass(frozen=True)
class Counterexample:
    """A finite play on which the machine breaks a requirement.

    `trace` holds the full letters (inputs and outputs) and ends at `step`,
    the instant at which `requirement` became decidably false.
    """

    inputs: Tuple[Letter, ...]
    trace: Trace
    step: int
    requirement: Formula
    kind: str = "guarantee"

    def describe(self) -> str:
        what = "preset" if self.kind == "preset" else "guarantee"
        return f"{what} '{self.requirement}' fails at step {self.step}"

    def to_document(self, signals: Sequence[str] = ()) -> CounterexampleDocument:
        def ordered(letter: Letter) -> list:
            if signals:
                return [s for s in signals if s in letter]
            return sorted(letter)

        return CounterexampleDocument(
            inputs=[ordered(l) for l in self.inputs],
            trace=[ordered(l) for l in self.trace],
            step=self.step,
            requirement=str(self.requirement),
            kind=self.kind,
            description=self.describe(),
        )
