"""Command line entry point.

Exit codes: 0 on success (legal, realizable, verified), 1 when the answer is
negative (illegal modes, unrealizable, counterexample), 2 on usage or input
errors.
"""

import argparse
import logging
import os
import pathlib
import sys
from typing import List, Optional, Sequence

from .bench.families import GeneratorFactory
from .bench.runner import BenchCase
from .config import MobyConfig, parse_budget
from .core.exceptions import MobyException
from .core.file_operations import FileOperationError, atomic_write_text
from .repository.FileSystemRepository import FileSystemRepository
from .services.PipelineManager import PipelineManager
from .synth.MealyMachine import MealyMachine
from .synth.solver import METHODS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _read(path: str) -> str:
    return pathlib.Path(path).read_text(encoding="utf-8")


def _manager(config: MobyConfig, directory: Optional[str] = None) -> PipelineManager:
    """A pipeline whose artifacts land in directory (none written without one)."""
    workspace = pathlib.Path(directory) if directory else None
    repo_config = config.model_copy(update={"workspace_path": workspace})
    return PipelineManager(FileSystemRepository(repo_config), config)


def _write_machine(machine: MealyMachine, output: Optional[str], dot: Optional[str]) -> None:
    if output:
        atomic_write_text(pathlib.Path(output), machine.to_json())
        logger.info(f"Machine written to {output}")
    else:
        sys.stdout.write(machine.to_json())
    if dot:
        atomic_write_text(pathlib.Path(dot), machine.to_dot().source)


# --- Subcommands ---


def cmd_check(args, config: MobyConfig) -> int:
    report = _manager(config).check(_read(args.spec), _read(args.modes))
    if report.ok:
        print(f"Modes are legal ({len(report.mode_names)} modes)")
        return EXIT_OK
    for message in report.messages():
        print(message, file=sys.stderr)
    return EXIT_NEGATIVE


def cmd_project(args, config: MobyConfig) -> int:
    manager = _manager(config, args.output)
    spec_text, modes_text = _read(args.spec), _read(args.modes)
    report = manager.check(spec_text, modes_text)
    if not report.ok:
        for message in report.messages():
            print(message, file=sys.stderr)
        return EXIT_NEGATIVE

    manifest, outcomes = manager.project(spec_text, modes_text, synth=args.synth, jobs=args.jobs)
    for mode in manifest.modes:
        print(f"{mode.name}: {mode.projection}")
    if args.synth:
        for mode, outcome in zip(manifest.modes, outcomes):
            print(f"{mode.name}: {outcome.verdict} ({outcome.seconds:.3f} s)")
        if not all(outcome.realizable for outcome in outcomes):
            return EXIT_NEGATIVE
    return EXIT_OK


def cmd_synth(args, config: MobyConfig) -> int:
    result = _manager(config).synthesize(_read(args.spec))
    print(
        f"{result.verdict} ({result.stats.arena_states} arena states, "
        f"{result.stats.iterations} passes, {result.stats.seconds:.3f} s)",
        file=sys.stderr,
    )
    if not result.realizable:
        return EXIT_NEGATIVE
    _write_machine(result.machine, args.output, args.dot)
    return EXIT_OK


def cmd_compose(args, config: MobyConfig) -> int:
    machine = _manager(config, args.directory).compose()
    print(f"Composed machine with {len(machine)} states", file=sys.stderr)
    _write_machine(machine, args.output, args.dot)
    return EXIT_OK


def cmd_verify(args, config: MobyConfig) -> int:
    counterexample = _manager(config).verify(_read(args.machine), _read(args.spec))
    if counterexample is None:
        print("pass", file=sys.stderr)
        return EXIT_OK
    print(f"fail: {counterexample.describe()}", file=sys.stderr)
    text = counterexample.to_document().model_dump_json(indent=2) + "\n"
    if args.counterexample:
        atomic_write_text(pathlib.Path(args.counterexample), text)
    else:
        sys.stdout.write(text)
    return EXIT_NEGATIVE


def _cases(family: str, params: Sequence[int], monolithic: bool) -> List[BenchCase]:
    GeneratorFactory.create(family)
    if family in ("cm", "counter_machine"):
        if len(params) < 2:
            raise ValueError("cm needs a bound and at least one mode count")
        bound, counts = params[0], params[1:]
        return [BenchCase(family="cm", params=[bound, k], monolithic=monolithic) for k in counts]
    return [BenchCase(family=family, params=[n], monolithic=monolithic) for n in params]


def cmd_bench(args, config: MobyConfig) -> int:
    cases = _cases(args.family, args.params, not args.no_monolithic)
    report = _manager(config, args.output).bench(cases, args.timeout, args.jobs)
    sys.stdout.write(report.to_markdown())
    if any(row.verified is False for row in report.rows):
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_export_dot(args, config: MobyConfig) -> int:
    machine = MealyMachine.from_json(_read(args.machine))
    source = machine.to_dot(pathlib.Path(args.machine).stem).source
    if args.output:
        atomic_write_text(pathlib.Path(args.output), source)
    else:
        sys.stdout.write(source)
    return EXIT_OK


def cmd_gen(args, config: MobyConfig) -> int:
    if args.output:
        for name in _manager(config, args.output).generate(args.family, args.params):
            print(name)
        return EXIT_OK
    spec_text, modes_text = GeneratorFactory.create(args.family)(*args.params)
    sys.stdout.write(spec_text + "\n// modes\n" + modes_text)
    return EXIT_OK


def cmd_serve(args, config: MobyConfig) -> int:
    import uvicorn

    from .__main__ import create_app

    if args.workspace:
        config.workspace_path = pathlib.Path(args.workspace)
    uvicorn.run(create_app(config), host=args.host, port=args.port)
    return EXIT_OK


# --- Parser ---


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moby", description="Mode-based decomposition of safety synthesis problems."
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--config", default=None, help="Directory holding moby.toml")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p: argparse.ArgumentParser, jobs: bool = True) -> None:
        p.add_argument("--budget", default=None, help="Arena state budget, e.g. 2^20")
        p.add_argument("--timeout", type=float, default=None, help="Seconds per synthesis")
        p.add_argument(
            "--solver", choices=METHODS, default=None, help="Full window arena (default) or lazy exploration"
        )
        if jobs:
            p.add_argument("--jobs", type=int, default=None, help="Parallel synthesis workers")

    p = sub.add_parser("check", help="Parse a spec and modes file and check legality")
    p.add_argument("spec")
    p.add_argument("modes")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("project", help="Write one projection per mode plus a manifest")
    p.add_argument("spec")
    p.add_argument("modes")
    p.add_argument("-o", "--output", required=True, help="Output directory")
    p.add_argument("--synth", action="store_true", help="Also synthesize every projection")
    solver_flags(p)
    p.set_defaults(handler=cmd_project)

    p = sub.add_parser("synth", help="Synthesize a Mealy machine for a spec or projection")
    p.add_argument("spec")
    p.add_argument("-o", "--output", default=None, help="Machine JSON file (stdout if absent)")
    p.add_argument("--dot", default=None, help="Also write a Graphviz rendering")
    solver_flags(p, jobs=False)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("compose", help="Compose the machines of a projected directory")
    p.add_argument("directory")
    p.add_argument("-o", "--output", default=None, help="Machine JSON file (stdout if absent)")
    p.add_argument("--dot", default=None, help="Also write a Graphviz rendering")
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("verify", help="Check a machine against a spec")
    p.add_argument("machine")
    p.add_argument("spec")
    p.add_argument("--counterexample", default=None, help="Write the counterexample here")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bench", help="Compare monolithic and decomposed synthesis")
    p.add_argument("family", help=", ".join(GeneratorFactory.FAMILIES))
    p.add_argument("params", type=int, nargs="+", help="cm: N k1 k2 ..., toys: n1 n2 ...")
    p.add_argument("-o", "--output", default=None, help="Directory for the report files")
    p.add_argument("--no-monolithic", action="store_true", help="Skip the monolithic runs")
    solver_flags(p)
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("export-dot", help="Render a machine JSON file as Graphviz source")
    p.add_argument("machine")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_export_dot)

    p = sub.add_parser("gen", help="Generate a benchmark spec and modes file")
    p.add_argument("family", help=", ".join(GeneratorFactory.FAMILIES))
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("-o", "--output", default=None, help="Output directory")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("serve", help="Start the HTTP server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--workspace", default=None, help="Artifact directory")
    p.set_defaults(handler=cmd_serve)
    return parser


def load_config(args, env=None) -> MobyConfig:
    """moby.toml, then the environment, then command line flags."""
    config = MobyConfig(workspace_path=pathlib.Path(args.config) if args.config else None)
    config.load_workspace_config()
    config.workspace_path = None
    config.apply_environment(os.environ if env is None else env)
    if getattr(args, "budget", None):
        config.solver.arena_budget = parse_budget(args.budget)
    if getattr(args, "timeout", None):
        config.solver.timeout = args.timeout
        config.solver.bench_timeout = args.timeout
    if getattr(args, "jobs", None):
        config.solver.jobs = args.jobs
    if getattr(args, "solver", None):
        config.solver.method = args.solver
    if args.log_level:
        config.log_level = args.log_level.upper()
    return config


def dispatch(argv: Sequence[str]) -> int:
    from .__main__ import configure_logging

    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK

    try:
        config = load_config(args)
        configure_logging(config.log_level)
        return args.handler(args, config)
    except (MobyException, ValueError, FileNotFoundError, FileOperationError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR
