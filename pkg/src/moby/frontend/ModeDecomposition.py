from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from moby.core.exceptions import EmptyModeList, InvalidModeRelation
from moby.ltl.Formula import TRUE, Formula


@dataclass(frozen=True)
class Mode:
    name: str
    predicate: Formula
    initial: Formula
    arrival: Formula = TRUE


class ModeDecomposition:
    """Modes with their initial conditions and the related-modes relation.

    Mode indices are 1-based everywhere: relation pairs, jump atoms and
    projection file names all count from 1.
    """

    def __init__(
        self,
        modes: Sequence[Mode],
        relation: Optional[Iterable[Tuple[int, int]]] = None,
    ):
        if not modes:
            raise EmptyModeList("A decomposition needs at least one mode")
        self.modes: Tuple[Mode, ...] = tuple(modes)
        count = len(self.modes)
        if relation is None:
            pairs = {
                (i, j)
                for i in range(1, count + 1)
                for j in range(1, count + 1)
                if i != j
            }
        else:
            pairs = set(relation)
        for i, j in pairs:
            if not (1 <= i <= count and 1 <= j <= count):
                raise InvalidModeRelation(f"Relation pair ({i}, {j}) names no mode")
            if i == j:
                raise InvalidModeRelation(
                    f"Mode '{self.modes[i - 1].name}' cannot be related to itself"
                )
        self.relation: FrozenSet[Tuple[int, int]] = frozenset(pairs)

    def __len__(self) -> int:
        return len(self.modes)

    def mode(self, index: int) -> Mode:
        return self.modes[index - 1]

    def names(self) -> List[str]:
        return [m.name for m in self.modes]

    def index_of(self, name: str) -> int:
        for i, m in enumerate(self.modes, start=1):
            if m.name == name:
                return i
        raise KeyError(name)

    def related(self, index: int) -> List[int]:
        """Modes reachable from `index` in one related step, ascending."""
        return sorted(j for i, j in self.relation if i == index)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModeDecomposition)
            and self.modes == other.modes
            and self.relation == other.relation
        )

    def __hash__(self) -> int:
        return hash((self.modes, self.relation))

    def __repr__(self) -> str:
        return f"ModeDecomposition(modes={self.names()}, relation={sorted(self.relation)})"
