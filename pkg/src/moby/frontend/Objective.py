from dataclasses import dataclass
from typing import Tuple

from moby.ltl.Formula import Formula, conj, is_true
from moby.propcheck.validity import is_sat

from .ReactiveSpec import ReactiveSpec

ASSUMPTION = "assumption"
GUARANTEE = "guarantee"


@dataclass(frozen=True)
class Requirement:
    """One body of the objective.

    Invariant bodies have an instance starting at every position; an initial
    condition (`once`) only has the instance starting at position 0.
    """

    formula: Formula
    kind: str
    once: bool = False

    @property
    def depth(self) -> int:
        return self.formula.x_depth

    @property
    def is_assumption(self) -> bool:
        return self.kind == ASSUMPTION

    def decided(self, instant: int) -> bool:
        """Whether an instance completes at `instant` (capped at the horizon)."""
        return instant == self.depth if self.once else instant >= self.depth

    @property
    def label(self) -> str:
        """How a violation of this requirement is reported."""
        if self.is_assumption:
            return "initially" if self.once else "assumption"
        return "preset" if self.once else "guarantee"


@dataclass(frozen=True)
class Objective:
    """The safety objective env_initial -> (sys_initial && G(env_invariant -> sys_invariant)).

    The invariants are evaluated step by step: the system is bound at a
    position only while every assumption instance completed so far held.
    The game solvers and the verifier all decide requirements through
    `requirements` and `horizon`.
    """

    requirements: Tuple[Requirement, ...]

    @property
    def assumptions(self) -> Tuple[Requirement, ...]:
        return tuple(r for r in self.requirements if r.is_assumption)

    @property
    def guarantees(self) -> Tuple[Requirement, ...]:
        return tuple(r for r in self.requirements if not r.is_assumption)

    def _conj(self, assumption: bool, once: bool) -> Formula:
        return conj(
            r.formula
            for r in self.requirements
            if r.is_assumption == assumption and r.once == once
        )

    @property
    def env_initial(self) -> Formula:
        return self._conj(True, True)

    @property
    def sys_initial(self) -> Formula:
        return self._conj(False, True)

    @property
    def env_invariant(self) -> Formula:
        return self._conj(True, False)

    @property
    def sys_invariant(self) -> Formula:
        return self._conj(False, False)

    @property
    def depth(self) -> int:
        return max((r.depth for r in self.requirements), default=0)

    @property
    def horizon(self) -> int:
        """Cap for the instant counter.

        Past it every invariant is decided at each step and no initial
        condition is left, so later instants behave alike.
        """
        return max((r.depth + 1 if r.once else r.depth for r in self.requirements), default=0)

    def completing(self, instant: int) -> Tuple[Requirement, ...]:
        return tuple(r for r in self.requirements if r.decided(instant))

    @property
    def vacuous(self) -> bool:
        """True when no environment can meet the initial condition."""
        return not is_sat(self.env_initial)

    def __str__(self) -> str:
        return (
            f"({self.env_initial}) -> (({self.sys_initial}) && "
            f"G (({self.env_invariant}) -> ({self.sys_invariant})))"
        )


def meaning(spec: ReactiveSpec) -> Objective:
    """Assumptions first, then guarantees; trivial initial conditions are left out."""
    requirements = [Requirement(a, ASSUMPTION) for a in spec.assumptions]
    if not is_true(spec.initially):
        requirements.append(Requirement(spec.initially, ASSUMPTION, once=True))
    requirements += [Requirement(g, GUARANTEE) for g in spec.guarantees]
    if not is_true(spec.preset):
        requirements.append(Requirement(spec.preset, GUARANTEE, once=True))
    return Objective(tuple(requirements))
