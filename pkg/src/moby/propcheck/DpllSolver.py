import logging
from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, Optional, Sequence

logger = logging.getLogger(__name__)


class DpllSolver:
    """DPLL over integer clauses with occurrence-list unit propagation.

    Decisions follow `order` (remaining variables afterwards, ascending) and
    always try false first, so the first model found is the lexicographically
    smallest one over that order.
    """

    def __init__(
        self,
        num_vars: int,
        clauses: Iterable[Sequence[int]],
        order: Sequence[int] = (),
    ):
        self.num_vars = num_vars
        self.clauses: List[List[int]] = []
        self._occurs: Dict[int, List[int]] = defaultdict(list)
        seen = set(order)
        self.order = list(order) + [v for v in range(1, num_vars + 1) if v not in seen]
        self._assign: Dict[int, bool] = {}
        self._trail: List[int] = []
        for clause in clauses:
            self.add_clause(clause)

    def add_clause(self, clause: Sequence[int]) -> None:
        index = len(self.clauses)
        self.clauses.append(list(clause))
        for lit in clause:
            self._occurs[lit].append(index)

    # --- assignment bookkeeping ---

    def _value(self, lit: int) -> Optional[bool]:
        value = self._assign.get(abs(lit))
        if value is None:
            return None
        return value if lit > 0 else not value

    def _set(self, lit: int) -> None:
        self._assign[abs(lit)] = lit > 0
        self._trail.append(abs(lit))

    def _undo(self, mark: int) -> None:
        while len(self._trail) > mark:
            del self._assign[self._trail.pop()]

    def _propagate(self, queue: List[int]) -> bool:
        while queue:
            lit = queue.pop()
            for index in self._occurs.get(-lit, ()):
                unassigned = 0
                candidate = 0
                for other in self.clauses[index]:
                    value = self._value(other)
                    if value is True:
                        break
                    if value is None:
                        unassigned += 1
                        candidate = other
                        if unassigned > 1:
                            break
                else:
                    if unassigned == 0:
                        return False
                    self._set(candidate)
                    queue.append(candidate)
        return True

    def _root(self) -> bool:
        self._assign = {}
        self._trail = []
        queue: List[int] = []
        for clause in self.clauses:
            if not clause:
                return False
            if len(clause) == 1:
                value = self._value(clause[0])
                if value is False:
                    return False
                if value is None:
                    self._set(clause[0])
                    queue.append(clause[0])
        return self._propagate(queue)

    def _next_unassigned(self) -> Optional[int]:
        for var in self.order:
            if var not in self._assign:
                return var
        return None

    def _decide(self, var: int, value: bool) -> bool:
        lit = var if value else -var
        self._set(lit)
        return self._propagate([lit])

    def _search(self) -> bool:
        decisions: List[list] = []
        while True:
            var = self._next_unassigned()
            if var is None:
                return True
            decisions.append([var, False, len(self._trail)])
            ok = self._decide(var, False)
            while not ok:
                while decisions and decisions[-1][1]:
                    decisions.pop()
                if not decisions:
                    return False
                var, _, mark = decisions[-1]
                self._undo(mark)
                decisions[-1][1] = True
                ok = self._decide(var, True)

    # --- public API ---

    def implied(self) -> Optional[Dict[int, bool]]:
        """Values forced at the root by unit propagation (None when already conflicting)."""
        if not self._root():
            return None
        return dict(self._assign)

    def solve(self) -> Optional[Dict[int, bool]]:
        if not self._root():
            return None
        if not self._search():
            return None
        return dict(self._assign)

    def models(self, project: Sequence[int]) -> Iterator[Dict[int, bool]]:
        """Models with pairwise distinct values on `project`, in lexicographic order."""
        while True:
            model = self.solve()
            if model is None:
                return
            yield model
            block = [-var if model[var] else var for var in project]
            if not block:
                return
            self.add_clause(block)
