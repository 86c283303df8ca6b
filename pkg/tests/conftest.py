import itertools
import random

import pytest

from moby.bench.families import gen_counter_machine
from moby.frontend.Parsers import parse_modes, parse_spec
from moby.ltl.Formula import And, Atom, Implies, Next, Not, Or
from moby.ltl.Trace import Trace


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Keep settings from the calling shell out of the tests."""
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    monkeypatch.delenv("MOBY_ARENA_BUDGET", raising=False)


@pytest.fixture
def cm2_texts():
    """Counter machine with N = 2 split into one mode per counter value."""
    return gen_counter_machine(2, 3)


@pytest.fixture
def cm2_spec(cm2_texts):
    return parse_spec(cm2_texts[0])


@pytest.fixture
def cm2_modes(cm2_texts, cm2_spec):
    return parse_modes(cm2_texts[1], cm2_spec)


NAMES = ("a", "b", "c", "d")


def make_random_formula(rng: random.Random, depth: int, budget: int = 3, names=NAMES):
    """Small random formula over names with at most `depth` nested Next."""
    if budget == 0 or rng.random() < 0.25:
        return Atom(rng.choice(names))
    kind = rng.choice(["not", "and", "or", "implies", "next"])
    if kind == "next" and depth > 0:
        return Next(make_random_formula(rng, depth - 1, budget - 1, names))
    if kind == "not":
        return Not(make_random_formula(rng, depth, budget - 1, names))
    left = make_random_formula(rng, depth, budget - 1, names)
    right = make_random_formula(rng, depth, budget - 1, names)
    return {"and": And, "or": Or}.get(kind, Implies)(left, right)


def timed_atoms(f, offset=0):
    """The (atom, offset) pairs a formula reads."""
    if isinstance(f, Atom):
        return {(f.name, offset)}
    if isinstance(f, Next):
        return timed_atoms(f.arg, offset + 1)
    found = set()
    for child in f.children():
        found |= timed_atoms(child, offset)
    return found


def covering_traces(*formulas):
    """Every trace long enough for the formulas, varying only the atom instants they read."""
    pairs = sorted(set().union(*(timed_atoms(f) for f in formulas)))
    length = max(f.x_depth for f in formulas) + 1
    for bits in itertools.product((False, True), repeat=len(pairs)):
        letters = [set() for _ in range(length)]
        for (name, offset), bit in zip(pairs, bits):
            if bit:
                letters[offset].add(name)
        yield Trace(letters)


@pytest.fixture
def random_formula():
    return make_random_formula


@pytest.fixture
def covering():
    return covering_traces
