"""Tests for mode legality, mode reduction and projection."""

import itertools
import random

import pytest

from moby.core.exceptions import FreshNameClash, InconsistentMode
from moby.frontend.ModeDecomposition import Mode, ModeDecomposition
from moby.frontend.Parsers import parse_modes, parse_spec
from moby.frontend.tlsf_writer import emit_tlsf
from moby.ltl.Formula import TRUE, And, Atom, Implies, Next, Not, Or
from moby.ltl.Trace import Trace, evaluate
from moby.projector.legality import check_legality
from moby.projector.projections import (
    compute_projections,
    obligation_closure,
    select_start_mode,
    state_invariant,
)
from moby.projector.reduction import reduce, rm_modes

p, q, r = Atom("p"), Atom("q"), Atom("r")
c0, c1, c2 = (Atom(f"counter_{i}") for i in range(3))
reset, start, trigger = Atom("reset"), Atom("start"), Atom("trigger")
done = Atom("done")
not_done = Not(done)


def traces(names, length):
    letters = [
        frozenset(n for n, bit in zip(names, bits) if bit)
        for bits in itertools.product((False, True), repeat=len(names))
    ]
    for combo in itertools.product(letters, repeat=length):
        yield Trace(combo)


def mode(name, predicate, initial=None):
    return Mode(name, predicate, predicate if initial is None else initial)


class TestLegality:
    def test_counter_modes_are_legal(self, cm2_spec, cm2_modes):
        """The counter modes cover every valuation exactly once."""
        report = check_legality(cm2_modes, state_invariant(cm2_spec))
        assert report.ok
        assert report.messages() == []

    def test_completeness_needs_the_state_invariant(self, cm2_spec):
        """Valuations ruled out by the guarantees do not need a mode."""
        text = "".join(
            f"MODE m{i} {{ pred = counter[{i}]; init = counter[{i}]; }}\n" for i in range(3)
        )
        modes = parse_modes(text, cm2_spec)
        assert not check_legality(modes).ok
        assert check_legality(modes, state_invariant(cm2_spec)).ok

    def test_uncovered_valuation(self):
        """A valuation outside every mode is reported."""
        decomposition = ModeDecomposition([mode("a", p), mode("b", And(Not(p), q))])
        report = check_legality(decomposition)
        assert not report.ok
        assert report.uncovered == {"p": False, "q": False}
        assert report.overlaps == []
        assert any("completeness" in m for m in report.messages())

    def test_overlap(self):
        """Pairs of modes sharing a valuation are reported by index."""
        decomposition = ModeDecomposition([mode("a", p), mode("b", And(p, q)), mode("c", Not(p))])
        report = check_legality(decomposition)
        assert report.overlaps == [(1, 2)]
        assert report.uncovered is None
        assert "overlap" in report.messages()[0]

    def test_initial_condition_outside_predicate(self):
        """A mode whose initial condition leaves its predicate is flagged."""
        decomposition = ModeDecomposition([mode("a", p, Not(p)), mode("b", Not(p))])
        report = check_legality(decomposition)
        assert report.bad_initials == [1]
        assert report.to_dict()["ok"] is False


class TestReduction:
    def test_rm_modes_drops_decided_antecedent(self):
        """An antecedent false in the mode discharges the whole item."""
        m2 = And(c1, Not(c2))
        assert rm_modes(Implies(And(c2, p), q), m2) == TRUE

    def test_rm_modes_keeps_next(self):
        """Atoms under Next are left alone."""
        m1 = And(c0, Not(c1))
        f = Or(Not(reset), Next(c0))
        assert rm_modes(f, m1) == f

    def test_rm_modes_specializes_present_part(self):
        """Present atoms fixed by the mode are folded away."""
        m1 = And(c0, Not(c1))
        f = Or(Or(Not(c0), Not(start)), Next(c1))
        assert rm_modes(f, m1) == Or(Not(start), Next(c1))

    def test_rm_modes_agrees_inside_the_mode(self):
        """Wherever the mode holds, the reduced formula has the original's value."""
        formulas = [
            Or(Not(And(p, q)), Next(r)),
            Implies(Or(p, r), And(q, Next(Not(p)))),
            And(Or(p, Next(q)), Implies(q, r)),
            Or(And(p, Not(q)), Next(Next(Or(p, r)))),
        ]
        modes = [p, Not(p), And(p, q), Or(p, q), And(Not(q), r)]
        for f in formulas:
            for m in modes:
                reduced = rm_modes(f, m)
                for trace in traces(["p", "q", "r"], f.x_depth + 1):
                    if evaluate(m, trace):
                        assert evaluate(reduced, trace) == evaluate(f, trace), (f, m)

    @pytest.mark.slow
    def test_rm_modes_agrees_on_random_formulas(self, random_formula, covering):
        """1,500 random (formula, mode) pairs: equal wherever the mode holds at the first instant."""
        rng = random.Random(1500)
        names = ("p", "q", "r")
        for _ in range(1_500):
            f = random_formula(rng, depth=2, names=names)
            m = random_formula(rng, depth=0, budget=2, names=names)
            reduced = rm_modes(f, m)
            assert reduced.x_depth <= f.x_depth
            for trace in covering(f, m, reduced):
                if evaluate(m, trace):
                    assert evaluate(reduced, trace) == evaluate(f, trace), (f, m)

    def test_reduce_reports_inconsistent_item(self):
        """The first item the mode falsifies is named in the error."""
        with pytest.raises(InconsistentMode) as info:
            reduce([TRUE, c2], Not(c2), "low")
        assert info.value.item_index == 2
        assert info.value.mode == "low"


class TestProjection:
    def test_first_counter_mode(self, cm2_spec, cm2_modes):
        """Projection of the mode counter = 0 onto its own guarantees and bookkeeping."""
        projection = compute_projections(cm2_spec, cm2_modes)[0]
        s0, s1, sr = Atom("s_X_counter_0"), Atom("s_X_counter_1"), Atom("s_X_reset")
        jump = Atom("jump_2")

        assert projection.mode_name == "m1"
        assert projection.anchor == Implies(not_done, cm2_modes.mode(1).predicate)
        assert projection.specialized == (
            Implies(not_done, Or(Not(reset), s0)),
            Implies(not_done, Or(Not(start), Or(s1, sr))),
            Implies(not_done, Not(trigger)),
        )
        assert projection.bookkeeping == (
            Implies(And(not_done, s0), Next(c0)),
            Implies(And(not_done, s1), Next(c1)),
            Implies(And(not_done, sr), Next(reset)),
            Implies(jump, Not(s0)),
            Implies(jump, Not(sr)),
            Implies(done, Next(done)),
            Implies(jump, Next(done)),
            Implies(Not(jump), Implies(not_done, Next(not_done))),
        )
        assert projection.jumps == {2: "jump_2"}
        assert projection.obligations == ("s_X_counter_0", "s_X_counter_1", "s_X_reset")
        assert projection.output_names == (
            "counter_0",
            "counter_1",
            "counter_2",
            "trigger",
            "s_X_counter_0",
            "s_X_counter_1",
            "s_X_reset",
            "jump_2",
            "done",
        )
        assert projection.input_names == ("reset", "start")
        assert projection.initially == TRUE
        assert projection.preset == And(cm2_modes.mode(1).initial, not_done)
        assert projection.assumptions == cm2_spec.assumptions
        assert projection.file_name() == "mode_1.tlsf"

    def test_middle_counter_mode(self, cm2_spec, cm2_modes):
        """Projection of the mode counter = 1, which may leave for both neighbours."""
        projection = compute_projections(cm2_spec, cm2_modes)[1]
        s0, s2, sr = Atom("s_X_counter_0"), Atom("s_X_counter_2"), Atom("s_X_reset")
        jump_1, jump_3 = Atom("jump_1"), Atom("jump_3")

        assert projection.mode_name == "m2"
        assert projection.anchor == Implies(not_done, cm2_modes.mode(2).predicate)
        assert projection.specialized == (
            Implies(not_done, Or(Not(reset), s0)),
            Implies(not_done, Or(reset, Or(s2, sr))),
            Implies(not_done, Not(trigger)),
        )
        assert projection.bookkeeping == (
            Implies(And(not_done, s0), Next(c0)),
            Implies(And(not_done, s2), Next(c2)),
            Implies(And(not_done, sr), Next(reset)),
            Implies(jump_1, Not(s2)),
            Implies(jump_1, Not(sr)),
            Implies(jump_3, Not(s0)),
            Implies(jump_3, Not(sr)),
            Implies(done, Next(done)),
            Implies(Or(jump_1, jump_3), Next(done)),
            Implies(Not(Or(jump_1, jump_3)), Implies(not_done, Next(not_done))),
            Implies(jump_1, Not(jump_3)),
        )
        assert projection.jumps == {1: "jump_1", 3: "jump_3"}
        assert projection.obligations == ("s_X_counter_0", "s_X_counter_2", "s_X_reset")
        assert projection.output_names == (
            "counter_0",
            "counter_1",
            "counter_2",
            "trigger",
            "s_X_counter_0",
            "s_X_counter_2",
            "s_X_reset",
            "jump_1",
            "jump_3",
            "done",
        )
        assert projection.preset == And(cm2_modes.mode(2).initial, not_done)
        assert projection.initially == TRUE

    def test_outputs_read_only_by_assumptions_are_kept(self):
        """A projection written to TLSF parses back even when an output only occurs in an assumption."""
        spec = parse_spec(
            "INPUTS { r; } OUTPUTS { g; h; } "
            "ASSUMPTIONS { G (!h -> X !r); } GUARANTEES { G (r -> X g); }"
        )
        modes = parse_modes("MODE on { pred = g; init = g; } MODE off { pred = !g; init = !g; }", spec)
        for projection in compute_projections(spec, modes):
            assert "h" in projection.output_names
            reparsed = parse_spec(emit_tlsf(projection.as_spec()))
            assert reparsed.output_names == projection.output_names
            assert reparsed.assumptions == projection.assumptions
            assert reparsed.guarantees == projection.guarantees

    def test_jumps_follow_relation(self, cm2_spec, cm2_modes):
        """Each projection gets one jump output per related mode, mutually exclusive."""
        projections = compute_projections(cm2_spec, cm2_modes)
        assert [p.jumps for p in projections] == [
            {2: "jump_2"},
            {1: "jump_1", 3: "jump_3"},
            {1: "jump_1"},
        ]
        second = projections[1]
        jump_1, jump_3 = Atom("jump_1"), Atom("jump_3")
        assert Implies(jump_1, Not(jump_3)) in second.bookkeeping
        assert Implies(Or(jump_1, jump_3), Next(done)) in second.bookkeeping

    def test_last_counter_mode_must_wrap(self, cm2_spec, cm2_modes):
        """The top counter mode owes counter[0] and the trigger."""
        projection = compute_projections(cm2_spec, cm2_modes)[2]
        s0 = Atom("s_X_counter_0")
        assert Implies(not_done, s0) in projection.specialized
        assert Implies(not_done, trigger) in projection.specialized
        # Arriving in the first mode settles the wrap obligation
        assert Implies(Atom("jump_1"), Not(s0)) not in projection.bookkeeping

    def test_parallel_projection_matches_sequential(self, cm2_spec, cm2_modes):
        """Worker processes produce the same projections in the same order."""
        sequential = compute_projections(cm2_spec, cm2_modes)
        parallel = compute_projections(cm2_spec, cm2_modes, jobs=3)
        assert [p.guarantees for p in parallel] == [p.guarantees for p in sequential]

    def test_single_mode_has_no_jumps(self, cm2_spec):
        """One mode never leaves, so done stays low."""
        modes = parse_modes("MODE all { pred = true; init = true; }", cm2_spec)
        projection = compute_projections(cm2_spec, modes)[0]
        assert projection.jumps == {}
        assert projection.bookkeeping[-1] == Implies(not_done, Next(not_done))

    def test_fresh_name_clash(self):
        """A spec already using a fresh name is refused."""
        spec = parse_spec("INPUTS { a; } OUTPUTS { done; } GUARANTEES { G (a -> done); }")
        modes = parse_modes("MODE all { pred = true; init = true; }", spec)
        with pytest.raises(FreshNameClash):
            compute_projections(spec, modes)

    def test_inconsistent_mode(self):
        """A mode falsifying a guarantee outright cannot be projected."""
        spec = parse_spec("INPUTS { a; } OUTPUTS { b; } GUARANTEES { G b; }")
        modes = parse_modes(
            "MODE on { pred = b; init = b; } MODE off { pred = !b; init = !b; }", spec
        )
        with pytest.raises(InconsistentMode):
            compute_projections(spec, modes)

    def test_obligation_closure_descends_chains(self):
        """Nested Next obligations bring their shorter suffixes."""
        closure = obligation_closure([Or(p, Next(Next(q)))])
        assert closure == [Next(Next(q)), Next(q)]

    def test_start_mode(self, cm2_spec, cm2_modes):
        """The start mode is the one holding the initial preset, whatever its position."""
        assert select_start_mode(cm2_spec, cm2_modes) == 1
        reordered = parse_modes(
            "MODE high { pred = counter[2]; init = counter[2]; }\n"
            "MODE low { pred = counter[0]; init = counter[0]; }\n"
            "MODE mid { pred = counter[1]; init = counter[1]; }\n",
            cm2_spec,
        )
        assert select_start_mode(cm2_spec, reordered) == 2
