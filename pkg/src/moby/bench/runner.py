"""Monolithic versus mode-decomposed synthesis on generated benchmark cases."""

import csv
import io
import logging
from typing import ClassVar, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from moby.composer.composition import compose
from moby.composer.CompositionManifest import CompositionManifest
from moby.core.documents import SCHEMA_VERSION
from moby.core.exceptions import MobyException
from moby.frontend.Parsers import parse_modes, parse_spec
from moby.projector.projections import compute_projections, select_start_mode
from moby.synth.SafetyGame import DEFAULT_ARENA_BUDGET
from moby.synth.batch import synth_task, synthesize_batch
from moby.synth.solver import REALIZABLE, WINDOW
from moby.verifier.product import product_check

from .families import GeneratorFactory
from .metrics import SizeMetrics, measure

logger = logging.getLogger(__name__)

SKIPPED = "skipped"
ERROR = "error"

DEFAULT_BENCH_TIMEOUT = 60.0


class BenchCase(BaseModel):
    family: str
    params: List[int]
    monolithic: bool = True

    @property
    def label(self) -> str:
        return GeneratorFactory.file_stem(self.family, self.params)


class BenchRow(BaseModel):
    case: str
    modes: int
    monolithic_verdict: str
    monolithic_seconds: Optional[float] = None
    projection_verdicts: List[str] = Field(default_factory=list)
    projection_seconds: List[float] = Field(default_factory=list)
    decomposed_sum: Optional[float] = None
    decomposed_max: Optional[float] = None
    monolithic_size: SizeMetrics
    max_projection_size: SizeMetrics
    max_specialized_size: SizeMetrics
    verified: Optional[bool] = None

    @property
    def decomposed_ok(self) -> bool:
        return bool(self.projection_verdicts) and all(
            v == REALIZABLE for v in self.projection_verdicts
        )


class BenchReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    rows: List[BenchRow] = Field(default_factory=list)

    COLUMNS: ClassVar[Tuple[str, ...]] = (
        "case",
        "modes",
        "monolithic",
        "monolithic_s",
        "decomposed",
        "decomposed_sum_s",
        "decomposed_max_s",
        "mono_clauses",
        "mono_length",
        "proj_clauses",
        "proj_length",
        "spec_clauses",
        "spec_length",
        "verified",
    )

    def _cells(self, row: BenchRow) -> List[str]:
        def seconds(value: Optional[float]) -> str:
            return "" if value is None else f"{value:.3f}"

        decomposed = "realizable" if row.decomposed_ok else ",".join(sorted(set(row.projection_verdicts)))
        verified = "" if row.verified is None else ("pass" if row.verified else "FAIL")
        return [
            row.case,
            str(row.modes),
            row.monolithic_verdict,
            seconds(row.monolithic_seconds),
            decomposed,
            seconds(row.decomposed_sum),
            seconds(row.decomposed_max),
            str(row.monolithic_size.clause_count),
            str(row.monolithic_size.length),
            str(row.max_projection_size.clause_count),
            str(row.max_projection_size.length),
            str(row.max_specialized_size.clause_count),
            str(row.max_specialized_size.length),
            verified,
        ]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for row in self.rows:
            writer.writerow(self._cells(row))
        return buffer.getvalue()

    def to_markdown(self) -> str:
        lines = [
            "| " + " | ".join(self.COLUMNS) + " |",
            "|" + "---|" * len(self.COLUMNS),
        ]
        for row in self.rows:
            lines.append("| " + " | ".join(self._cells(row)) + " |")
        return "\n".join(lines) + "\n"


def _largest(metrics: Sequence[SizeMetrics]) -> SizeMetrics:
    return SizeMetrics(
        clause_count=max((m.clause_count for m in metrics), default=0),
        length=max((m.length for m in metrics), default=0),
    )


def run_case(
    case: BenchCase,
    budget: int = DEFAULT_ARENA_BUDGET,
    timeout: Optional[float] = DEFAULT_BENCH_TIMEOUT,
    jobs: int = 1,
    method: str = WINDOW,
) -> BenchRow:
    spec_text, modes_text = GeneratorFactory.create(case.family)(*case.params)
    spec = parse_spec(spec_text)
    decomposition = parse_modes(modes_text, spec)
    projections = compute_projections(spec, decomposition)

    monolithic_verdict, monolithic_seconds = SKIPPED, None
    if case.monolithic:
        monolithic_verdict, _, monolithic_seconds = synth_task(spec, budget, timeout, method)

    outcomes = synthesize_batch(
        [p.as_spec() for p in projections], budget, timeout, jobs, method
    )
    row = BenchRow(
        case=case.label,
        modes=len(projections),
        monolithic_verdict=monolithic_verdict,
        monolithic_seconds=monolithic_seconds,
        projection_verdicts=[o.verdict for o in outcomes],
        projection_seconds=[o.seconds for o in outcomes],
        decomposed_sum=sum(o.seconds for o in outcomes),
        decomposed_max=max((o.seconds for o in outcomes), default=0.0),
        monolithic_size=measure(spec),
        max_projection_size=_largest([measure(p) for p in projections]),
        max_specialized_size=_largest([measure(p, specialized_only=True) for p in projections]),
    )
    if not row.decomposed_ok:
        logger.warning(f"{case.label}: not every projection is realizable, skipping composition")
        return row

    manifest = CompositionManifest.from_projections(
        spec,
        projections,
        [outcome.load_machine() for outcome in outcomes],
        select_start_mode(spec, decomposition),
    )
    row.verified = product_check(compose(manifest), spec) is None
    logger.info(
        f"{case.label}: monolithic {monolithic_verdict}, decomposed max "
        f"{row.decomposed_max:.3f} s, verified {row.verified}"
    )
    return row


def run_bench(
    cases: Sequence[BenchCase],
    budget: int = DEFAULT_ARENA_BUDGET,
    timeout: Optional[float] = DEFAULT_BENCH_TIMEOUT,
    jobs: int = 1,
    method: str = WINDOW,
) -> BenchReport:
    """One row per case; failures become rows instead of exceptions."""
    report = BenchReport()
    for case in cases:
        try:
            report.rows.append(run_case(case, budget, timeout, jobs, method))
        except MobyException as e:
            logger.error(f"{case.label}: {e}")
            report.rows.append(
                BenchRow(
                    case=case.label,
                    modes=0,
                    monolithic_verdict=ERROR,
                    monolithic_size=SizeMetrics(),
                    max_projection_size=SizeMetrics(),
                    max_specialized_size=SizeMetrics(),
                )
            )
    return report
