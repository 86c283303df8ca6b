from typing import Iterable

from pydantic import BaseModel

from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.ltl.Formula import Formula, is_true
from moby.projector.Projection import Projection


class SizeMetrics(BaseModel):
    """clause_count counts assumption and guarantee items, length counts formula nodes.

    Absent initial conditions (constant true) contribute nothing to length.
    """

    clause_count: int = 0
    length: int = 0


def _length(formulas: Iterable[Formula]) -> int:
    return sum(f.size for f in formulas if not is_true(f))


def measure(spec: ReactiveSpec, specialized_only: bool = False) -> SizeMetrics:
    """Size of a specification or projection.

    With specialized_only a projection is measured without its obligation,
    jump and done bookkeeping: assumptions, anchor and specialized items only.
    """
    if specialized_only and isinstance(spec, Projection):
        items = list(spec.assumptions) + [spec.anchor] + list(spec.specialized)
    else:
        items = list(spec.assumptions) + list(spec.guarantees)
    return SizeMetrics(
        clause_count=len(items),
        length=_length([spec.initially, spec.preset] + items),
    )
