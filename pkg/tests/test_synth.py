"""Tests for the safety games, the solver and batch synthesis."""

import itertools
import time

import pytest

from moby.bench.families import gen_counter_machine
from moby.bench.runner import BenchCase, run_case
from moby.core.exceptions import ArenaTooLarge, SynthTimeout
from moby.frontend.Parsers import parse_modes, parse_spec
from moby.ltl.Formula import Atom, Implies, Next
from moby.ltl.rewriting import simpl
from moby.projector.projections import compute_projections
from moby.synth.batch import BUDGET, synth_task, synthesize_batch
from moby.synth.IArena import IArena
from moby.synth.IGame import IGame
from moby.synth.MealyMachine import MealyMachine, input_letters
from moby.synth.ProgressionGame import INIT, RUN, ArenaState, ProgressionGame
from moby.synth.ProgressionGame import RELIEVED as RELIEVED_PHASE
from moby.synth.SafetyGame import RELIEVED, SafetyGame, Window, instantiate, lags, lookback
from moby.synth.solver import LAZY, REALIZABLE, UNREALIZABLE, WINDOW, solve, synthesize
from moby.verifier.product import product_check, simulate

RESPONSE = "INPUTS { r; } OUTPUTS { q; } GUARANTEES { G (r -> X q); }"
PREDICTION = "INPUTS { r; } OUTPUTS { q; } GUARANTEES { G (q <-> X r); }"

SMALL_BODIES = ["r -> X q", "r -> X X q", "(r && X r) -> X q", "q -> X !q", "r -> (q || X q)"]


def small_spec(bodies, assumption=""):
    items = " ".join(f"G ({body});" for body in bodies)
    return parse_spec(
        f"INPUTS {{ r; }} OUTPUTS {{ q; }} ASSUMPTIONS {{ {assumption} }} GUARANTEES {{ {items} }}"
    )


class CountingGame(IGame):
    """A game that never closes: every answer leads to a fresh state."""

    def __init__(self):
        self.seen = 1

    @property
    def inputs(self):
        return ()

    @property
    def outputs(self):
        return ()

    def initial(self):
        return 0

    def moves(self, state, letter):
        self.seen = max(self.seen, state + 2)
        yield frozenset(), state + 1

    def discovered(self):
        return self.seen


class SleepyArena(IArena):
    """One state whose only answer takes longer than the allowance."""

    @property
    def inputs(self):
        return ()

    @property
    def outputs(self):
        return ()

    def initial(self):
        return 0

    def states(self):
        yield 0

    def size(self):
        return 1

    def answer(self, state, letter, avoid=()):
        time.sleep(0.05)
        return frozenset(), 0


class TestWindows:
    def test_lags(self):
        """Atoms are remembered for as long as some body still reads them."""
        p, q = Atom("p"), Atom("q")
        assert lags([Implies(p, Next(q))]) == {"p": 1}
        assert lags([Next(Next(p))]) == {}
        assert lags([Implies(p, Next(Next(q))), Implies(q, Next(p))]) == {"p": 2, "q": 1}

    def test_lookback(self):
        """Each atom is remembered for as many letters as some body reads it late."""
        p, q = Atom("p"), Atom("q")
        assert lookback([Implies(p, Next(q))]) == 1
        assert lookback([Next(Next(p))]) == 0
        assert lookback([Implies(p, Next(Next(q))), Implies(q, Next(p))]) == 3

    def test_instantiate(self):
        """Earlier letters come from the window, the current one stays symbolic."""
        body = Implies(Atom("r"), Next(Atom("q")))
        assert simpl(instantiate(body, 1, frozenset({("r", 1)}))) == Atom("q")
        assert simpl(instantiate(body, 1, frozenset())).value is True


class TestSafetyGame:
    def test_arena_is_laid_out_in_full(self):
        """Every reachable window is counted up front."""
        game = SafetyGame(parse_spec(RESPONSE))
        assert game.size() == 4
        assert list(game.states()) == [
            RELIEVED,
            Window(0),
            Window(1),
            Window(1, frozenset({("r", 1)})),
        ]

    def test_static_budget(self):
        """Arenas above the budget are refused before solving."""
        with pytest.raises(ArenaTooLarge, match="budget is 3"):
            SafetyGame(parse_spec(RESPONSE), budget=3)
        assert SafetyGame(parse_spec(RESPONSE), budget=4).size() == 4

    def test_successor_keeps_lagged_atoms(self):
        """Only atoms some requirement still reads are remembered."""
        game = SafetyGame(parse_spec(RESPONSE))
        assert game.successor(Window(0), frozenset({"r", "q"})) == Window(1, frozenset({("r", 1)}))
        assert game.successor(Window(1, frozenset({("r", 1)})), frozenset()) == Window(1)

    def test_answers_in_preference_order(self):
        """Avoided answers are skipped until no safe answer is left."""
        game = SafetyGame(parse_spec("OUTPUTS { q; } GUARANTEES { G (q -> X q); }"))
        assert game.answer(Window(0), frozenset()) == (frozenset(), Window(1))
        assert game.answer(Window(0), frozenset(), [frozenset()]) == (
            frozenset({"q"}),
            Window(1, frozenset({("q", 1)})),
        )
        assert game.answer(Window(0), frozenset(), [frozenset(), frozenset({"q"})]) is None

    def test_completing_guarantee_forces_the_answer(self):
        """A guarantee decided now constrains the answer."""
        game = SafetyGame(parse_spec(RESPONSE))
        assert game.answer(Window(1, frozenset({("r", 1)})), frozenset()) == (
            frozenset({"q"}),
            Window(1),
        )

    def test_failed_assumption_relieves_the_system(self):
        """Breaking an assumption leads to the relieved state."""
        spec = parse_spec("INPUTS { r; } OUTPUTS { q; } ASSUMPTIONS { G !r; } GUARANTEES { G q; }")
        game = SafetyGame(spec)
        assert game.answer(Window(0), frozenset({"r"})) == (frozenset(), RELIEVED)
        assert game.answer(Window(0), frozenset()) == (frozenset({"q"}), Window(0))
        assert game.answer(RELIEVED, frozenset({"r"})) == (frozenset(), RELIEVED)

    def test_unanswerable_letter(self):
        """No answer exists when a guarantee is false for the letter."""
        game = SafetyGame(parse_spec("INPUTS { r; } OUTPUTS { q; } GUARANTEES { G (r && q); }"))
        assert game.answer(Window(0), frozenset()) is None


class TestProgressionGame:
    def test_static_budget(self):
        """The formula arena is refused above the budget too."""
        with pytest.raises(ArenaTooLarge):
            ProgressionGame(parse_spec(RESPONSE), budget=1)

    def test_initial_phase(self):
        """Only specs with initial conditions start in a separate phase."""
        assert ProgressionGame(parse_spec(RESPONSE)).initial() == ArenaState(RUN)
        preset = parse_spec("INPUTS { r; } OUTPUTS { q; } PRESET { q; }")
        assert ProgressionGame(preset).initial() == ArenaState(INIT)

    def test_successor(self):
        """A broken assumption relieves the system, a broken guarantee has no successor."""
        spec = parse_spec("INPUTS { r; } OUTPUTS { q; } ASSUMPTIONS { G !r; } GUARANTEES { G q; }")
        game = ProgressionGame(spec)
        start = game.initial()
        assert game.successor(start, frozenset({"r"})).phase == RELIEVED_PHASE
        assert game.successor(start, frozenset()) is None
        assert game.successor(start, frozenset({"q"})) == ArenaState(RUN)

    def test_moves_are_safe_and_ordered(self):
        """Answers are safe and come smallest first."""
        game = ProgressionGame(parse_spec("INPUTS { r; } OUTPUTS { q; p; } GUARANTEES { G (r -> q); }"))
        answers = [answer for answer, _ in game.moves(game.initial(), frozenset({"r"}))]
        assert answers == [frozenset({"q"})]
        answers = [answer for answer, _ in game.moves(game.initial(), frozenset())]
        # Nothing depends on the outputs, so a single answer stands for all
        assert answers == [frozenset()]


class TestSolver:
    def test_empty_spec(self):
        """Nothing to guarantee is realizable."""
        result = synthesize(parse_spec(""))
        assert result.realizable
        assert len(result.machine) == 1
        assert result.machine.transitions == {("q0", frozenset()): (frozenset(), "q0")}

    def test_depth_zero_spec(self):
        """Present-only guarantees are answered in the same step."""
        result = synthesize(parse_spec("INPUTS { r; } OUTPUTS { q; } GUARANTEES { G (r -> q); }"))
        machine = result.machine
        assert len(machine) == 1
        assert machine.step("q0", {"r"}) == (frozenset({"q"}), "q0")
        assert machine.step("q0", set()) == (frozenset(), "q0")

    def test_response(self):
        """One machine state per window: start, nothing owed, q owed."""
        spec = parse_spec(RESPONSE)
        result = synthesize(spec)
        assert result.verdict == REALIZABLE
        assert len(result.machine) == 3
        assert product_check(result.machine, spec) is None
        trace = simulate(result.machine, [{"r"}, set(), set()])
        assert trace.letters() == (frozenset({"r"}), frozenset({"q"}), frozenset())

    def test_lazy_response(self):
        """The formula arena reaches the same verdict."""
        result = synthesize(parse_spec(RESPONSE), method=LAZY)
        assert result.verdict == REALIZABLE
        assert len(result.machine) == 2
        assert product_check(result.machine, parse_spec(RESPONSE)) is None

    def test_unknown_method(self):
        """Only the known solving methods are accepted."""
        with pytest.raises(ValueError, match="Unknown solving method"):
            synthesize(parse_spec(RESPONSE), method="symbolic")

    @pytest.mark.parametrize("method", [WINDOW, LAZY])
    def test_prediction_is_unrealizable(self, method):
        """Outputs cannot depend on future inputs."""
        result = synthesize(parse_spec(PREDICTION), method=method)
        assert result.verdict == UNREALIZABLE
        assert result.machine is None
        assert result.stats.losing_states >= 1

    def test_contradiction_is_unrealizable(self):
        """A guarantee no letter satisfies is unrealizable."""
        result = synthesize(parse_spec("OUTPUTS { g; } GUARANTEES { G (g && !g); }"))
        assert result.verdict == UNREALIZABLE

    def test_stats(self):
        """Arena size is reported with the verdict."""
        result = synthesize(parse_spec(RESPONSE))
        assert result.stats.arena_states == 4
        assert result.stats.iterations >= 1
        assert result.stats.seconds >= 0

    def test_lazy_timeout(self):
        """The timeout applies to the formula arena."""
        with pytest.raises(SynthTimeout):
            solve(CountingGame(), timeout=0.05)

    def test_arena_timeout(self):
        """The timeout applies while the window arena is laid out."""
        with pytest.raises(SynthTimeout, match="No verdict"):
            solve(SleepyArena(), timeout=0.01)

    def test_environment_unable_to_start(self):
        """A false initial condition is won by any machine."""
        spec = parse_spec("INPUTS { r; } OUTPUTS { q; } INITIALLY { false; } GUARANTEES { G q; G !q; }")
        assert synthesize(spec).realizable
        assert synthesize(spec, method=LAZY).realizable

    def test_deterministic(self, cm2_spec):
        """Synthesis returns the same machine every time."""
        assert synthesize(cm2_spec).machine == synthesize(cm2_spec).machine

    def test_counter_projection(self, cm2_spec, cm2_modes):
        """The first counter projection is realizable."""
        projection = compute_projections(cm2_spec, cm2_modes)[0]
        result = synthesize(projection.as_spec())
        assert result.realizable
        assert product_check(result.machine, projection.as_spec()) is None

    def test_monolithic_counter(self, cm2_spec):
        """The counter spec is realizable in one piece."""
        result = synthesize(cm2_spec)
        assert result.realizable
        assert result.stats.arena_states == 34
        assert product_check(result.machine, cm2_spec) is None


class TestSmallSpecs:
    def test_all_small_specs_agree_with_verifier(self):
        """Every machine found for a small response pattern passes the product check."""
        for body, assumption in itertools.product(SMALL_BODIES, ["", "G !(r && X r);"]):
            spec = small_spec([body], assumption)
            for method in (WINDOW, LAZY):
                result = synthesize(spec, method=method)
                if result.realizable:
                    assert product_check(result.machine, spec) is None, (body, method)

    def test_methods_agree_on_verdicts(self):
        """Window arena and progression states decide the same objective."""
        bodies = SMALL_BODIES + ["q <-> X r", "q && X !q"]
        for pair, assumption in itertools.product(
            itertools.combinations(bodies, 2), ["", "G !(r && X r);"]
        ):
            spec = small_spec(pair, assumption)
            window = synthesize(spec, method=WINDOW).verdict
            assert window == synthesize(spec, method=LAZY).verdict, (pair, assumption)

    def test_adding_a_guarantee_never_helps(self):
        """A realizable conjunction has realizable parts."""
        bodies = SMALL_BODIES + ["q <-> X r", "q && X !q", "r -> !q"]
        verdicts = {body: synthesize(small_spec([body])).verdict for body in bodies}
        for first, second in itertools.combinations(bodies, 2):
            both = synthesize(small_spec([first, second])).verdict
            if both == REALIZABLE:
                assert verdicts[first] == REALIZABLE, (first, second)
                assert verdicts[second] == REALIZABLE, (first, second)

    def test_adding_an_assumption_never_hurts(self):
        """An extra assumption keeps realizable specs realizable."""
        for body in SMALL_BODIES + ["q <-> X r"]:
            if synthesize(small_spec([body])).realizable:
                assert synthesize(small_spec([body], "G !r;")).realizable, body


class TestMealyMachine:
    def test_input_letters(self):
        """Input letters come in binary counting order."""
        assert list(input_letters(["a", "b"])) == [
            frozenset(),
            frozenset({"b"}),
            frozenset({"a"}),
            frozenset({"a", "b"}),
        ]

    def test_json_round_trip(self):
        """Machines survive their JSON form."""
        machine = synthesize(parse_spec(RESPONSE)).machine
        assert MealyMachine.from_json(machine.to_json()) == machine

    def test_step_ignores_foreign_atoms(self):
        """Atoms the machine does not read do not change its step."""
        machine = synthesize(parse_spec(RESPONSE)).machine
        assert machine.step("q0", {"r", "other"}) == machine.step("q0", {"r"})

    def test_dot(self):
        """The dot export labels edges with inputs and outputs."""
        machine = synthesize(parse_spec(RESPONSE)).machine
        source = machine.to_dot("response").source
        assert "digraph response" in source
        assert "n0 -> n1" in source
        assert "r / -" in source


class TestBatch:
    def test_budget_becomes_a_verdict(self):
        """Running over the budget is a verdict, not an error."""
        outcome = synth_task(parse_spec(RESPONSE), budget=1)
        assert outcome.verdict == BUDGET
        assert outcome.machine is None
        with pytest.raises(ValueError):
            outcome.load_machine()

    def test_outcome_carries_machine(self):
        """Realizable outcomes carry the machine as JSON."""
        outcome = synth_task(parse_spec(RESPONSE))
        assert outcome.realizable
        assert len(outcome.load_machine()) == 3

    def test_parallel_matches_sequential(self):
        """Worker processes return the machines a single process finds."""
        specs = [parse_spec(RESPONSE), parse_spec(PREDICTION), parse_spec("")]
        sequential = synthesize_batch(specs)
        parallel = synthesize_batch(specs, jobs=2)
        assert [o.verdict for o in parallel] == [o.verdict for o in sequential]
        assert [o.machine for o in parallel] == [o.machine for o in sequential]
        assert [o.verdict for o in sequential] == [REALIZABLE, UNREALIZABLE, REALIZABLE]

    def test_lazy_batch(self):
        """The batch honours the solving method."""
        outcomes = synthesize_batch([parse_spec(RESPONSE)], method=LAZY)
        assert len(outcomes[0].load_machine()) == 2


@pytest.mark.slow
class TestCounterBlowUp:
    """CM(10): the monolithic arena outgrows every projection at five modes."""

    @pytest.fixture(scope="class")
    def cm10(self):
        spec_text, modes_text = gen_counter_machine(10, 5)
        spec = parse_spec(spec_text)
        return spec, compute_projections(spec, parse_modes(modes_text, spec))

    def test_arena_sizes(self, cm10):
        """The monolithic arena is far larger than any projection arena."""
        spec, projections = cm10
        monolithic = SafetyGame(spec).size()
        largest = max(SafetyGame(p.as_spec()).size() for p in projections)
        assert monolithic > 2**13
        assert largest * 16 < monolithic

    def test_monolithic_runs_out_of_time(self, cm10):
        """The monolithic counter does not finish in a minute."""
        spec, _ = cm10
        with pytest.raises((SynthTimeout, ArenaTooLarge)):
            synthesize(spec, timeout=60)

    def test_decomposed_finishes_within_a_minute(self):
        """The five projections synthesize and verify in under a minute."""
        started = time.monotonic()
        row = run_case(BenchCase(family="cm", params=[10, 5], monolithic=False), timeout=60)
        assert row.decomposed_ok
        assert row.verified is True
        assert time.monotonic() - started < 60
