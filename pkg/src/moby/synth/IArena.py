from abc import ABC, abstractmethod
from typing import Collection, Hashable, Iterator, Optional, Sequence, Tuple

from .MealyMachine import Letter


class IArena(ABC):
    """A safety game whose state space is laid out in full before solving."""

    @property
    @abstractmethod
    def inputs(self) -> Sequence[str]:
        pass

    @property
    @abstractmethod
    def outputs(self) -> Sequence[str]:
        pass

    @abstractmethod
    def initial(self) -> Hashable:
        pass

    @abstractmethod
    def states(self) -> Iterator[Hashable]:
        """Every arena state, reachable or not."""
        pass

    @abstractmethod
    def size(self) -> int:
        pass

    @abstractmethod
    def answer(
        self, state: Hashable, letter: Letter, avoid: Collection[Letter] = ()
    ) -> Optional[Tuple[Letter, Hashable]]:
        """The preferred safe answer to letter and its successor.

        Answers in `avoid` (earlier results for the same state and letter)
        are skipped together with every answer leading to the same successor.
        None when no safe answer is left.
        """
        pass
