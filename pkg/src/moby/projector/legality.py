import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from moby.frontend.ModeDecomposition import ModeDecomposition
from moby.ltl.Formula import TRUE, And, Formula, Implies, Not, disj
from moby.propcheck.validity import find_model, is_valid

logger = logging.getLogger(__name__)


@dataclass
class LegalityReport:
    """Outcome of the disjointness, completeness and initial-condition checks."""

    mode_names: List[str]
    overlaps: List[Tuple[int, int]] = field(default_factory=list)
    uncovered: Optional[Dict[str, bool]] = None
    bad_initials: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.overlaps and self.uncovered is None and not self.bad_initials

    def _name(self, index: int) -> str:
        return self.mode_names[index - 1]

    def messages(self) -> List[str]:
        lines = [
            f"Modes '{self._name(i)}' and '{self._name(j)}' overlap (disjointness ({i}, {j}))"
            for i, j in self.overlaps
        ]
        if self.uncovered is not None:
            shown = ", ".join(
                f"{name}={int(value)}" for name, value in sorted(self.uncovered.items())
            )
            lines.append(f"No mode covers the valuation {shown or '(any)'} (completeness)")
        lines += [
            f"Initial condition of mode '{self._name(i)}' does not imply its predicate"
            for i in self.bad_initials
        ]
        return lines

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "overlaps": [list(pair) for pair in self.overlaps],
            "uncovered": self.uncovered,
            "bad_initials": self.bad_initials,
            "messages": self.messages(),
        }


def check_legality(
    decomposition: ModeDecomposition, invariant: Formula = TRUE
) -> LegalityReport:
    """Check that the mode predicates partition the valuations allowed by invariant.

    Args:
        decomposition: modes to check
        invariant: state condition assumed everywhere (the spec's depth-0 guarantees)

    Returns:
        A report; `ok` is true iff every check passed
    """
    modes = decomposition.modes
    report = LegalityReport(mode_names=[m.name for m in modes])

    for i in range(1, len(modes) + 1):
        for j in range(i + 1, len(modes) + 1):
            pi = modes[i - 1].predicate
            pj = modes[j - 1].predicate
            if not is_valid(Implies(invariant, Implies(pi, Not(pj)))):
                report.overlaps.append((i, j))

    covered = disj(m.predicate for m in modes)
    if not is_valid(Implies(invariant, covered)):
        model = find_model(And(invariant, Not(covered))) or {}
        report.uncovered = {name: values.get(0, False) for name, values in model.items()}

    for i, m in enumerate(modes, start=1):
        if not is_valid(Implies(And(invariant, m.initial), m.predicate)):
            report.bad_initials.append(i)

    if report.ok:
        logger.info(f"Modes {report.mode_names} are legal")
    else:
        for message in report.messages():
            logger.warning(message)
    return report
