from typing import Dict, Iterable, Tuple

from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.ltl.Formula import Atom, Formula

DONE = "done"


def jump_name(target: int) -> str:
    return f"jump_{target}"


class Projection(ReactiveSpec):
    """The sub-specification of one mode.

    Guarantees are ordered: anchor, specialized items, obligation dynamics,
    jump restrictions, then the done/jump plumbing. The first two groups
    are kept apart so size metrics can leave the bookkeeping out.
    """

    def __init__(
        self,
        mode_index: int,
        mode_name: str,
        inputs: Iterable[Atom],
        outputs: Iterable[Atom],
        initially: Formula,
        preset: Formula,
        assumptions: Iterable[Formula],
        anchor: Formula,
        specialized: Iterable[Formula],
        bookkeeping: Iterable[Formula],
        obligations: Iterable[str],
        jumps: Dict[int, str],
    ):
        self.anchor = anchor
        self.specialized: Tuple[Formula, ...] = tuple(specialized)
        self.bookkeeping: Tuple[Formula, ...] = tuple(bookkeeping)
        super().__init__(
            inputs,
            outputs,
            initially,
            preset,
            assumptions,
            (anchor,) + self.specialized + self.bookkeeping,
        )
        self.mode_index = mode_index
        self.mode_name = mode_name
        self.obligations: Tuple[str, ...] = tuple(obligations)
        self.jumps: Dict[int, str] = dict(sorted(jumps.items()))

    @property
    def fresh_atoms(self) -> Tuple[str, ...]:
        """Obligation, jump and done atoms, none of which exists in the original spec."""
        return self.obligations + tuple(self.jumps.values()) + (DONE,)

    def as_spec(self) -> ReactiveSpec:
        return ReactiveSpec(
            self.inputs,
            self.outputs,
            self.initially,
            self.preset,
            self.assumptions,
            self.guarantees,
        )

    def file_name(self) -> str:
        return f"mode_{self.mode_index}.tlsf"

    def __repr__(self) -> str:
        return (
            f"Projection(mode={self.mode_index}:{self.mode_name}, "
            f"outputs={list(self.output_names)}, guarantees={len(self.guarantees)})"
        )
