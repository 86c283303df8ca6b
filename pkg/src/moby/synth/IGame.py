from abc import ABC, abstractmethod
from typing import Hashable, Iterator, Sequence, Tuple

from .MealyMachine import Letter


class IGame(ABC):
    """A safety game in which the system answers each input letter with an output letter."""

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
        """The arena state before the first letter."""
        pass

    @abstractmethod
    def moves(self, state: Hashable, letter: Letter) -> Iterator[Tuple[Letter, Hashable]]:
        """Safe system answers to letter with their successors, in preference order.

        Answers leading to the same successor may be collapsed into one.
        """
        pass

    @abstractmethod
    def discovered(self) -> int:
        """Number of distinct arena states seen so far."""
        pass
