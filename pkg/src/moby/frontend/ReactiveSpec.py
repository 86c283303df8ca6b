from typing import FrozenSet, Iterable, Tuple

from moby.ltl.Formula import TRUE, Atom, AtomKind, Formula, atoms


class ReactiveSpec:
    """Environment assumptions and system guarantees over a split signal set.

    Assumption and guarantee bodies hold implicitly under G; the meaning is
    initially -> (preset && G(assumptions -> guarantees)).
    """

    def __init__(
        self,
        inputs: Iterable[Atom],
        outputs: Iterable[Atom],
        initially: Formula = TRUE,
        preset: Formula = TRUE,
        assumptions: Iterable[Formula] = (),
        guarantees: Iterable[Formula] = (),
    ):
        self.inputs: Tuple[Atom, ...] = tuple(
            Atom(a.name, a.kind or AtomKind.INPUT) for a in inputs
        )
        self.outputs: Tuple[Atom, ...] = tuple(
            Atom(a.name, a.kind or AtomKind.OUTPUT) for a in outputs
        )
        self.initially = initially
        self.preset = preset
        self.assumptions: Tuple[Formula, ...] = tuple(assumptions)
        self.guarantees: Tuple[Formula, ...] = tuple(guarantees)

    @property
    def input_names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.inputs)

    @property
    def output_names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.outputs)

    @property
    def signals(self) -> Tuple[str, ...]:
        """Inputs then outputs, in declaration order."""
        return self.input_names + self.output_names

    @property
    def depth(self) -> int:
        """Largest Next-depth over every body and initial condition."""
        return max(
            (f.x_depth for f in (self.initially, self.preset) + self.assumptions + self.guarantees),
            default=0,
        )

    def used_atoms(self) -> FrozenSet[str]:
        used: set[str] = set()
        for f in (self.initially, self.preset) + self.assumptions + self.guarantees:
            used |= atoms(f)
        return frozenset(used)

    def _key(self) -> tuple:
        return (
            self.input_names,
            self.output_names,
            self.initially,
            self.preset,
            self.assumptions,
            self.guarantees,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, ReactiveSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(inputs={list(self.input_names)}, "
            f"outputs={list(self.output_names)}, "
            f"assumptions={len(self.assumptions)}, guarantees={len(self.guarantees)})"
        )
