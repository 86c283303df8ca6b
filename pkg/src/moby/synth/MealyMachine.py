import itertools
import logging
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from graphviz import Digraph

from moby.core.documents import MachineDocument, TransitionDocument

logger = logging.getLogger(__name__)

Letter = FrozenSet[str]


def input_letters(inputs: Sequence[str]) -> Iterator[Letter]:
    """All letters over inputs, lexicographic with false first (first input most significant)."""
    for bits in itertools.product((False, True), repeat=len(inputs)):
        yield frozenset(name for name, bit in zip(inputs, bits) if bit)


def _ordered(letter: Iterable[str], order: Sequence[str]) -> List[str]:
    members = set(letter)
    return [name for name in order if name in members]


class MealyMachine:
    """A deterministic, total transducer from input letters to output letters.

    `transitions[(state, letter)] = (output, successor)` for every state and
    every letter over `inputs`.
    """

    def __init__(
        self,
        states: Sequence[str],
        initial: str,
        inputs: Sequence[str],
        outputs: Sequence[str],
        transitions: Dict[Tuple[str, Letter], Tuple[Letter, str]],
    ):
        self.states: Tuple[str, ...] = tuple(states)
        self.initial = initial
        self.inputs: Tuple[str, ...] = tuple(inputs)
        self.outputs: Tuple[str, ...] = tuple(outputs)
        self.transitions = dict(transitions)

    def step(self, state: str, letter: Iterable[str]) -> Tuple[Letter, str]:
        key = frozenset(a for a in letter if a in self.inputs)
        return self.transitions[(state, key)]

    def __len__(self) -> int:
        return len(self.states)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MealyMachine)
            and self.states == other.states
            and self.initial == other.initial
            and self.inputs == other.inputs
            and self.outputs == other.outputs
            and self.transitions == other.transitions
        )

    def __repr__(self) -> str:
        return (
            f"MealyMachine(states={len(self.states)}, inputs={list(self.inputs)}, "
            f"outputs={list(self.outputs)})"
        )

    # --- serialization ---

    def to_document(self) -> MachineDocument:
        transitions = []
        for state in self.states:
            for letter in input_letters(self.inputs):
                output, target = self.transitions[(state, letter)]
                transitions.append(
                    TransitionDocument(
                        source=state,
                        input=_ordered(letter, self.inputs),
                        output=_ordered(output, self.outputs),
                        target=target,
                    )
                )
        return MachineDocument(
            states=list(self.states),
            initial=self.initial,
            inputs=list(self.inputs),
            outputs=list(self.outputs),
            transitions=transitions,
        )

    def to_json(self) -> str:
        return self.to_document().model_dump_json(indent=2) + "\n"

    @staticmethod
    def from_document(document: MachineDocument) -> "MealyMachine":
        transitions = {
            (t.source, frozenset(t.input)): (frozenset(t.output), t.target)
            for t in document.transitions
        }
        return MealyMachine(
            document.states,
            document.initial,
            document.inputs,
            document.outputs,
            transitions,
        )

    @staticmethod
    def from_json(text: str) -> "MealyMachine":
        return MealyMachine.from_document(MachineDocument.model_validate_json(text))

    def to_dot(self, name: str = "MealyMachine") -> Digraph:
        """Graphviz rendering; transitions between the same two states share one edge."""
        dot = Digraph(
            name=name,
            graph_attr={"rankdir": "LR", "nodesep": "0.5"},
            node_attr={"shape": "circle"},
            edge_attr={"fontname": "mono"},
        )
        # State labels may contain ":", which graphviz reads as a port separator
        ids = {state: f"n{i}" for i, state in enumerate(self.states)}
        dot.node("init", "", shape="point")
        for state in self.states:
            dot.node(ids[state], state)
        dot.edge("init", ids[self.initial])

        labels: Dict[Tuple[str, str], List[str]] = {}
        for state in self.states:
            for letter in input_letters(self.inputs):
                output, target = self.transitions[(state, letter)]
                shown_in = " ".join(_ordered(letter, self.inputs)) or "-"
                shown_out = " ".join(_ordered(output, self.outputs)) or "-"
                labels.setdefault((state, target), []).append(f"{shown_in} / {shown_out}")
        for (source, target), lines in labels.items():
            dot.edge(ids[source], ids[target], "\n".join(lines))
        return dot
