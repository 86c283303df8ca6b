# src/moby/core/exceptions.py
from typing import Optional, Sequence


class MobyException(Exception):
    """Base exception for every error raised by the moby toolchain."""

    pass


# --- Specification language ---


class SpecError(MobyException):
    """A specification could not be turned into a ReactiveSpec."""

    pass


class SpecSyntaxError(SpecError):
    """The text does not conform to the specification grammar."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        expected: Sequence[str] = (),
    ):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")


class UndeclaredAtom(SpecSyntaxError):
    """A formula refers to a signal that is neither an input nor an output."""

    pass


class ArityError(SpecError):
    """A bus index is outside the declared width, or a macro got a non-bus argument."""

    pass


class UnboundParameter(SpecError):
    """An index expression mentions a name with no binding."""

    pass


class NonSafetyOperator(SpecError):
    """U or F was used, or G appeared below the top of an item."""

    pass


class SignalKindError(SpecError):
    """INITIALLY mentions an output or PRESET mentions an input."""

    pass


class FreshNameClash(SpecError):
    """A generated obligation/jump/done name collides with a declared signal."""

    pass


# --- Modes ---


class ModeError(MobyException):
    """A modes file could not be turned into a ModeDecomposition."""

    pass


class UnknownAtom(ModeError):
    """A mode formula mentions a signal the specification does not declare."""

    pass


class EmptyModeList(ModeError):
    """The modes file declares no mode."""

    pass


class InvalidModeRelation(ModeError):
    """A relation entry names an unknown mode or relates a mode with itself."""

    pass


# --- Formulas ---


class FormulaError(MobyException):
    """An operation received a formula outside its domain."""

    pass


class NotANextFormula(FormulaError):
    """rm_next was called on a formula whose root is not Next."""

    pass


class UnsupportedShape(FormulaError):
    """Obligation variables only exist for literals under a Next chain."""

    pass


class WindowTooShort(FormulaError):
    """The trace ends before the formula can be decided."""

    pass


# --- Projection ---


class ProjectionError(MobyException):
    """Projection of a specification onto a mode failed."""

    pass


class InconsistentMode(ProjectionError):
    """A guarantee reduces to false under a mode predicate."""

    def __init__(self, mode: str, item_index: int):
        self.mode = mode
        self.item_index = item_index
        super().__init__(
            f"Guarantee #{item_index} is false everywhere in mode '{mode}'"
        )


# --- Synthesis ---


class SynthesisError(MobyException):
    """The safety game could not be built or solved."""

    pass


class ArenaTooLarge(SynthesisError):
    """The arena exceeds the configured state budget."""

    pass


class SynthTimeout(SynthesisError):
    """The solver ran out of its time allowance."""

    pass


# --- Composition and verification ---


class CompositionError(MobyException):
    """Per-mode machines cannot be stitched together."""

    pass


class MultipleJumps(CompositionError):
    """A machine asserted two jump outputs on the same transition."""

    pass


class UnknownTargetMode(CompositionError):
    """A jump points to a mode without a machine."""

    pass


class AlphabetMismatch(CompositionError):
    """Machine and specification signals do not line up."""

    pass


# --- Benchmarks ---


class BenchError(MobyException):
    """A benchmark family was asked for something it cannot generate."""

    pass


class InvalidGroupCount(BenchError):
    """The counter machine cannot be split into the requested number of modes."""

    pass


class UnknownFamily(BenchError):
    """No generator is registered under that name."""

    pass


class InvalidFamilySize(BenchError):
    """A toy family was asked for fewer than one fan or call button."""

    pass


# --- Persistence ---


class RepositoryError(MobyException):
    """An error occurred in the artifact persistence layer."""

    pass
