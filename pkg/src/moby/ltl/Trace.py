from typing import FrozenSet, Iterable, Iterator, Sequence, Tuple

from moby.core.exceptions import WindowTooShort

from .Formula import Atom, Constant, Formula, Implies, Next, Not, And


Letter = FrozenSet[str]


class Trace:
    """A finite sequence of letters; each letter holds the atoms true at that instant."""

    def __init__(self, letters: Iterable[Iterable[str]] = ()):
        self.letters_: Tuple[Letter, ...] = tuple(frozenset(l) for l in letters)

    def letters(self) -> Tuple[Letter, ...]:
        return self.letters_

    def __len__(self) -> int:
        return len(self.letters_)

    def __getitem__(self, index: int) -> Letter:
        return self.letters_[index]

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters_)

    def __eq__(self, other) -> bool:
        return isinstance(other, Trace) and self.letters_ == other.letters_

    def __hash__(self) -> int:
        return hash(self.letters_)

    def __repr__(self) -> str:
        shown = ", ".join("{" + ", ".join(sorted(l)) + "}" for l in self.letters_)
        return f"Trace([{shown}])"

    def undeclared(self, declared: Iterable[str]) -> set[str]:
        """Atoms used by some letter but missing from the declared signals."""
        used = set().union(*self.letters_) if self.letters_ else set()
        return used - set(declared)


def evaluate(f: Formula, trace: Trace | Sequence[Iterable[str]], i: int = 0) -> bool:
    """Truth of f at position i of a finite trace.

    Raises:
        WindowTooShort: if the trace ends before position i + x_depth(f)
    """
    letters = trace.letters() if isinstance(trace, Trace) else Trace(trace).letters()
    if i < 0 or i + f.x_depth >= len(letters):
        raise WindowTooShort(
            f"Position {i} needs {f.x_depth + 1} letters, trace has {len(letters)}"
        )
    return _eval(f, letters, i)


def _eval(f: Formula, letters: Tuple[Letter, ...], i: int) -> bool:
    if isinstance(f, Constant):
        return f.value
    if isinstance(f, Atom):
        return f.name in letters[i]
    if isinstance(f, Not):
        return not _eval(f.arg, letters, i)
    if isinstance(f, Next):
        return _eval(f.arg, letters, i + 1)
    if isinstance(f, And):
        return _eval(f.left, letters, i) and _eval(f.right, letters, i)
    if isinstance(f, Implies):
        return not _eval(f.left, letters, i) or _eval(f.right, letters, i)
    return _eval(f.left, letters, i) or _eval(f.right, letters, i)
