"""Tests for the moby command line."""

import json

import pytest

from moby.cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, build_parser, dispatch, load_config

RESPONSE = "INPUTS { r; } OUTPUTS { q; } GUARANTEES { G (r -> X q); }"
PREDICTION = "INPUTS { r; } OUTPUTS { q; } GUARANTEES { G (q <-> X r); }"
STRICTER = "INPUTS { r; } OUTPUTS { q; } GUARANTEES { G (r -> X q); G !q; }"


@pytest.fixture
def cm2_files(tmp_path, cm2_texts):
    spec = tmp_path / "cm_2_3.tlsf"
    modes = tmp_path / "cm_2_3.modes"
    spec.write_text(cm2_texts[0], encoding="utf-8")
    modes.write_text(cm2_texts[1], encoding="utf-8")
    return str(spec), str(modes)


@pytest.fixture
def response_file(tmp_path):
    path = tmp_path / "response.tlsf"
    path.write_text(RESPONSE, encoding="utf-8")
    return str(path)


def test_help():
    """--help prints usage and exits cleanly."""
    assert dispatch(["--help"]) == EXIT_OK


def test_unknown_command():
    """Test that an unknown subcommand is a usage error."""
    assert dispatch(["frobnicate"]) == EXIT_ERROR


def test_missing_file(tmp_path):
    """Unreadable input files are reported as errors, not tracebacks."""
    assert dispatch(["check", str(tmp_path / "a.tlsf"), str(tmp_path / "a.modes")]) == EXIT_ERROR


def test_gen(tmp_path, capsys):
    """gen writes the spec and modes files and lists them on stdout."""
    assert dispatch(["gen", "cm", "2", "3", "-o", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "cm_2_3.tlsf").is_file()
    assert (tmp_path / "cm_2_3.modes").is_file()
    assert capsys.readouterr().out.split() == ["cm_2_3.tlsf", "cm_2_3.modes"]


def test_gen_unknown_family():
    """Test that generating an unknown family is an input error."""
    assert dispatch(["gen", "elevator", "2"]) == EXIT_ERROR


def test_check(cm2_files, capsys):
    """Test that legal modes exit cleanly with a summary."""
    assert dispatch(["check", *cm2_files]) == EXIT_OK
    assert "3 modes" in capsys.readouterr().out


def test_check_illegal(cm2_files, tmp_path, capsys):
    """A single mode does not cover the counter, so check answers negatively."""
    modes = tmp_path / "bad.modes"
    modes.write_text("MODE a { pred = counter[0]; init = counter[0]; }", encoding="utf-8")
    assert dispatch(["check", cm2_files[0], str(modes)]) == EXIT_NEGATIVE
    assert "completeness" in capsys.readouterr().err


def test_check_syntax_error(cm2_files, tmp_path, capsys):
    """Test that a broken spec exits with an error."""
    spec = tmp_path / "broken.tlsf"
    spec.write_text("INPUTS { a; } GUARANTEES { G (a && ; }", encoding="utf-8")
    assert dispatch(["check", str(spec), cm2_files[1]]) == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_synth_to_file(response_file, tmp_path):
    """synth writes the machine JSON and its Graphviz rendering."""
    machine = tmp_path / "response.json"
    dot = tmp_path / "response.dot"
    assert dispatch(["synth", response_file, "-o", str(machine), "--dot", str(dot)]) == EXIT_OK
    document = json.loads(machine.read_text(encoding="utf-8"))
    assert document["initial"] == "q0"
    assert len(document["states"]) == 3
    assert dot.read_text(encoding="utf-8").startswith("digraph")


def test_synth_unrealizable(tmp_path, capsys):
    """Test that an unrealizable spec has its own exit code."""
    spec = tmp_path / "prediction.tlsf"
    spec.write_text(PREDICTION, encoding="utf-8")
    assert dispatch(["synth", str(spec)]) == EXIT_NEGATIVE
    assert "unrealizable" in capsys.readouterr().err


def test_synth_budget_exhausted(response_file):
    """An arena over the budget is an error, not a verdict."""
    assert dispatch(["synth", response_file, "--budget", "1"]) == EXIT_ERROR


def test_verify(response_file, tmp_path):
    """A machine passes its own spec and fails a stricter one with a replayable counterexample."""
    machine = tmp_path / "response.json"
    assert dispatch(["synth", response_file, "-o", str(machine)]) == EXIT_OK
    assert dispatch(["verify", str(machine), response_file]) == EXIT_OK

    stricter = tmp_path / "stricter.tlsf"
    stricter.write_text(STRICTER, encoding="utf-8")
    counterexample = tmp_path / "cex.json"
    code = dispatch(["verify", str(machine), str(stricter), "--counterexample", str(counterexample)])
    assert code == EXIT_NEGATIVE
    document = json.loads(counterexample.read_text(encoding="utf-8"))
    assert document["step"] == 1
    assert document["inputs"] == [["r"], []]


def test_export_dot(response_file, tmp_path, capsys):
    """Test that a stored machine exports to dot."""
    machine = tmp_path / "response.json"
    dispatch(["synth", response_file, "-o", str(machine)])
    capsys.readouterr()
    assert dispatch(["export-dot", str(machine)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph response")


def test_load_config_precedence(tmp_path):
    """Flags override the environment, which overrides moby.toml."""
    (tmp_path / "moby.toml").write_text('[solver]\narena_budget = 64\njobs = 2\n', encoding="utf-8")
    args = build_parser().parse_args(["--config", str(tmp_path), "project", "a", "b", "-o", "x", "--jobs", "4"])
    config = load_config(args, env={"MOBY_ARENA_BUDGET": "2^7"})
    assert config.solver.arena_budget == 128
    assert config.solver.jobs == 4
    assert config.workspace_path is None


@pytest.mark.slow
def test_full_pipeline(cm2_files, tmp_path):
    """project --synth, compose and verify on CM(2) with three modes."""
    out = tmp_path / "out"
    assert dispatch(["project", *cm2_files, "-o", str(out), "--synth"]) == EXIT_OK
    assert (out / "manifest.json").is_file()
    assert (out / "mode_3.machine.json").is_file()

    composed = tmp_path / "composed.json"
    assert dispatch(["compose", str(out), "-o", str(composed)]) == EXIT_OK
    assert dispatch(["verify", str(composed), cm2_files[0]]) == EXIT_OK


@pytest.mark.slow
def test_bench(tmp_path, capsys):
    """Test that bench writes its reports."""
    assert dispatch(["bench", "cm", "2", "2", "3", "-o", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "cm_2_2" in out and "cm_2_3" in out
    assert (tmp_path / "bench_report.csv").is_file()
    assert (tmp_path / "bench_report.json").is_file()


def test_synth_lazy_solver(response_file, tmp_path):
    """--solver lazy keeps only the reachable progression states."""
    machine = tmp_path / "response.json"
    assert dispatch(["synth", response_file, "-o", str(machine), "--solver", "lazy"]) == EXIT_OK
    document = json.loads(machine.read_text(encoding="utf-8"))
    assert len(document["states"]) == 2


def test_solver_flag_sets_the_method(tmp_path):
    """Test that --solver overrides the configured method."""
    args = build_parser().parse_args(["--config", str(tmp_path), "synth", "a", "--solver", "lazy"])
    assert load_config(args, env={}).solver.method == "lazy"
    args = build_parser().parse_args(["--config", str(tmp_path), "synth", "a"])
    assert load_config(args, env={}).solver.method == "window"


def test_unknown_solver_is_rejected(response_file):
    """Test that only the known solving methods are accepted."""
    assert dispatch(["synth", response_file, "--solver", "symbolic"]) == EXIT_ERROR


@pytest.mark.slow
def test_project_artifacts_do_not_depend_on_jobs(cm2_files, tmp_path):
    """One worker or four: every file project --synth writes is byte-identical."""
    single, pooled = tmp_path / "single", tmp_path / "pooled"
    assert dispatch(["project", *cm2_files, "-o", str(single), "--synth", "--jobs", "1"]) == EXIT_OK
    assert dispatch(["project", *cm2_files, "-o", str(pooled), "--synth", "--jobs", "4"]) == EXIT_OK

    names = sorted(path.name for path in single.iterdir())
    assert names == sorted(path.name for path in pooled.iterdir())
    assert "manifest.json" in names
    assert "mode_2.machine.json" in names
    for name in names:
        assert (single / name).read_bytes() == (pooled / name).read_bytes(), name
