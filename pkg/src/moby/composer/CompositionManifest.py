import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Sequence, Tuple

from moby.core.documents import ManifestDocument
from moby.core.exceptions import CompositionError
from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.projector.Projection import Projection
from moby.synth.MealyMachine import MealyMachine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompositionManifest:
    """Everything compose needs: one machine per mode plus the jump table.

    `jumps[i]` maps every target mode j of mode i to the output atom that
    machine i raises to leave for j.
    """

    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    names: Dict[int, str]
    machines: Dict[int, MealyMachine]
    jumps: Dict[int, Dict[int, str]]
    fresh: FrozenSet[str] = field(default_factory=frozenset)
    start_mode: int = 1

    def __post_init__(self):
        for i, table in self.jumps.items():
            machine = self.machines.get(i)
            if machine is None:
                continue
            missing = sorted(set(table.values()) - set(machine.outputs))
            if missing:
                raise CompositionError(
                    f"Machine of mode '{self.names.get(i, i)}' lacks jump outputs {missing}"
                )

    @staticmethod
    def from_document(
        document: ManifestDocument, load_machine: Callable[[str], MealyMachine]
    ) -> "CompositionManifest":
        """Build from a projector manifest; load_machine resolves a machine file name."""
        machines = {}
        fresh = set()
        for mode in document.modes:
            machines[mode.index] = load_machine(mode.machine)
            fresh.update(mode.fresh_atoms)
        logger.debug(f"Loaded {len(machines)} mode machines")
        return CompositionManifest(
            inputs=tuple(document.inputs),
            outputs=tuple(document.outputs),
            names={mode.index: mode.name for mode in document.modes},
            machines=machines,
            jumps={mode.index: dict(mode.jumps) for mode in document.modes},
            fresh=frozenset(fresh),
            start_mode=document.start_mode,
        )

    @staticmethod
    def from_projections(
        spec: ReactiveSpec,
        projections: Sequence[Projection],
        machines: Sequence[MealyMachine],
        start_mode: int = 1,
    ) -> "CompositionManifest":
        """Pairs each projection with the machine synthesized for it."""
        return CompositionManifest(
            inputs=spec.input_names,
            outputs=spec.output_names,
            names={p.mode_index: p.mode_name for p in projections},
            machines={p.mode_index: m for p, m in zip(projections, machines)},
            jumps={p.mode_index: dict(p.jumps) for p in projections},
            fresh=frozenset(a for p in projections for a in p.fresh_atoms),
            start_mode=start_mode,
        )
