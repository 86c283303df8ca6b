import logging
import pathlib
from typing import List, Optional, Sequence, Tuple

from moby.bench.families import GeneratorFactory
from moby.bench.runner import BenchCase, BenchReport, run_bench
from moby.composer.composition import compose
from moby.composer.CompositionManifest import CompositionManifest
from moby.config import MobyConfig
from moby.core.documents import ManifestDocument, ManifestMode
from moby.core.file_operations import get_sidecar_path
from moby.frontend.ModeDecomposition import ModeDecomposition
from moby.frontend.Parsers import parse_modes, parse_spec
from moby.frontend.ReactiveSpec import ReactiveSpec
from moby.frontend.tlsf_writer import emit_tlsf
from moby.projector.legality import LegalityReport, check_legality
from moby.projector.projections import (
    compute_projections,
    select_start_mode,
    state_invariant,
)
from moby.repository.IArtifactRepository import IArtifactRepository
from moby.synth.batch import SynthOutcome, synthesize_batch
from moby.synth.MealyMachine import MealyMachine
from moby.synth.solver import SynthResult, synthesize
from moby.verifier.Counterexample import Counterexample
from moby.verifier.product import product_check

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"


def machine_file(mode_index: int) -> str:
    return f"mode_{mode_index}.machine.json"


class PipelineManager:
    """The pipeline steps on specification texts, persisting artifacts in a repository."""

    def __init__(self, repository: IArtifactRepository, app_config: Optional[MobyConfig] = None):
        self.repo = repository
        self.config = app_config or MobyConfig()

    def load(self, spec_text: str, modes_text: Optional[str] = None) -> Tuple[ReactiveSpec, Optional[ModeDecomposition]]:
        spec = parse_spec(spec_text)
        decomposition = parse_modes(modes_text, spec) if modes_text is not None else None
        return spec, decomposition

    def check(self, spec_text: str, modes_text: str) -> LegalityReport:
        """Legality of the modes relative to the state invariant of the spec."""
        spec, decomposition = self.load(spec_text, modes_text)
        report = check_legality(decomposition, state_invariant(spec))
        for message in report.messages():
            logger.warning(message)
        return report

    def project(
        self,
        spec_text: str,
        modes_text: str,
        synth: bool = False,
        jobs: Optional[int] = None,
    ) -> Tuple[ManifestDocument, List[SynthOutcome]]:
        """
        Writes one TLSF file per mode plus the manifest, and the mode machines
        when synth is set.

        Returns:
            The manifest and, with synth, one outcome per mode

        Raises:
            ValueError: If the modes are not legal
        """
        spec, decomposition = self.load(spec_text, modes_text)
        report = check_legality(decomposition, state_invariant(spec))
        if not report.ok:
            raise ValueError("Illegal modes: " + "; ".join(report.messages()))

        jobs = jobs or self.config.solver.jobs
        projections = compute_projections(spec, decomposition, jobs)
        for p in projections:
            self.repo.save_text(p.file_name(), emit_tlsf(p))

        outcomes: List[SynthOutcome] = []
        if synth:
            outcomes = synthesize_batch(
                [p.as_spec() for p in projections],
                self.config.solver.arena_budget,
                self.config.solver.timeout,
                jobs,
                self.config.solver.method,
            )
            for p, outcome in zip(projections, outcomes):
                if outcome.machine is not None:
                    name = machine_file(p.mode_index)
                    self.repo.save_text(name, outcome.machine)
                    dot = outcome.load_machine().to_dot(p.mode_name).source
                    self.repo.save_text(get_sidecar_path(pathlib.Path(name)).as_posix(), dot)
                logger.info(f"Mode '{p.mode_name}': {outcome.verdict}")

        manifest = ManifestDocument(
            inputs=list(spec.input_names),
            outputs=list(spec.output_names),
            modes=[
                ManifestMode(
                    index=p.mode_index,
                    name=p.mode_name,
                    projection=p.file_name(),
                    machine=machine_file(p.mode_index),
                    fresh_atoms=list(p.fresh_atoms),
                    jumps=p.jumps,
                )
                for p in projections
            ],
            relation=[list(pair) for pair in sorted(decomposition.relation)],
            start_mode=select_start_mode(spec, decomposition),
        )
        self.repo.save_document(MANIFEST_FILE, manifest)
        return manifest, outcomes

    def synthesize(self, spec_text: str) -> SynthResult:
        spec, _ = self.load(spec_text)
        return synthesize(
            spec,
            self.config.solver.arena_budget,
            self.config.solver.timeout,
            self.config.solver.method,
        )

    def compose(self) -> MealyMachine:
        """Composes the machines listed in the repository's manifest."""
        manifest = self.repo.load_document(MANIFEST_FILE, ManifestDocument)
        composition = CompositionManifest.from_document(
            manifest, lambda name: MealyMachine.from_json(self.repo.load_text(name))
        )
        return compose(composition)

    def verify(self, machine_text: str, spec_text: str) -> Optional[Counterexample]:
        spec, _ = self.load(spec_text)
        return product_check(MealyMachine.from_json(machine_text), spec)

    def generate(self, family: str, params: Sequence[int]) -> Tuple[str, str]:
        """Writes `<family>_<params>.tlsf` and `.modes`, returning their names."""
        spec_text, modes_text = GeneratorFactory.create(family)(*params)
        stem = GeneratorFactory.file_stem(family, params)
        self.repo.save_text(f"{stem}.tlsf", spec_text)
        self.repo.save_text(f"{stem}.modes", modes_text)
        return f"{stem}.tlsf", f"{stem}.modes"

    def bench(
        self,
        cases: Sequence[BenchCase],
        timeout: Optional[float] = None,
        jobs: Optional[int] = None,
    ) -> BenchReport:
        report = run_bench(
            cases,
            self.config.solver.arena_budget,
            timeout or self.config.solver.bench_timeout,
            jobs or self.config.solver.jobs,
            self.config.solver.method,
        )
        self.repo.save_document("bench_report.json", report)
        self.repo.save_text("bench_report.csv", report.to_csv())
        self.repo.save_text("bench_report.md", report.to_markdown())
        return report
