"""Parametric benchmark specifications and their mode files.

Every generator returns the pair (spec text, modes text) and is
deterministic in its parameters.

Counter machine CM(N, k): a counter over the one-hot outputs counter[0..N]
that leaves 0 on `start`, climbs by one per step, wraps from N to 0, falls
back to 0 on `reset`, and raises `trigger` exactly at N. The modes group
consecutive counter values into k near-equal blocks.

Thermostat(n): `cold` asks for heating and `hot` for cooling on the next
step, otherwise the plant rests; the n fans run exactly while heating or
cooling. Modes idle, heating and cooling follow the heat/cool outputs.

Lift(n): a cabin on three floors (one-hot `at`) moves one floor per step on
`up`/`down` and otherwise stays; each of the n call buttons is acknowledged
in the same step. Modes ground, middle and top follow the floor.
"""

import logging
from typing import Callable, Dict, List, Sequence, Tuple

from moby.core.exceptions import InvalidFamilySize, InvalidGroupCount, UnknownFamily

logger = logging.getLogger(__name__)

Generated = Tuple[str, str]

CM_SPEC = """\
MAIN {{
  PARAMETERS {{ N = {n}; }}
  INPUTS {{ reset; start; }}
  OUTPUTS {{ counter[N+1]; trigger; }}
  INITIALLY {{ !reset && !start; }}
  PRESET {{ counter[0] && (&&[1 <= i <= N] !counter[i]); }}
  DEFINITIONS {{
    mutual(b) = G ||[0 <= i < n] (b[i] && &&[j IN {{0, 1 .. (n-1)}} (\\) {{i}}] !b[j]);
  }}
  ASSUMPTIONS {{
    G !(reset && start);
  }}
  GUARANTEES {{
    mutual(counter);
    G (reset -> X counter[0]);
    G ((counter[0] && start) -> X (counter[1] || reset));
    &&[1 <= i < N] G ((counter[i] && !reset) -> X (counter[i+1] || reset));
    G (counter[N] -> X counter[0]);
    G (counter[N] -> trigger);
    G (!counter[N] -> !trigger);
  }}
}}
"""

THERMOSTAT_SPEC = """\
MAIN {{
  PARAMETERS {{ N = {n}; }}
  INPUTS {{ cold; hot; }}
  OUTPUTS {{ heat; cool; fan[N]; }}
  INITIALLY {{ !cold && !hot; }}
  PRESET {{ !heat && !cool && (&&[0 <= i < N] !fan[i]); }}
  ASSUMPTIONS {{
    G !(cold && hot);
  }}
  GUARANTEES {{
    G !(heat && cool);
    G (cold -> X heat);
    G (hot -> X cool);
    G ((!cold && !hot) -> X (!heat && !cool));
    &&[0 <= i < N] G (fan[i] <-> (heat || cool));
  }}
}}
"""

LIFT_SPEC = """\
MAIN {{
  PARAMETERS {{ N = {n}; }}
  INPUTS {{ up; down; call[N]; }}
  OUTPUTS {{ at[3]; ack[N]; }}
  INITIALLY {{ !up && !down; }}
  PRESET {{ at[0] && !at[1] && !at[2]; }}
  DEFINITIONS {{
    mutual(b) = G ||[0 <= i < n] (b[i] && &&[j IN {{0, 1 .. (n-1)}} (\\) {{i}}] !b[j]);
  }}
  ASSUMPTIONS {{
    G !(up && down);
  }}
  GUARANTEES {{
    mutual(at);
    G ((at[0] && up) -> X at[1]);
    G ((at[1] && up) -> X at[2]);
    G ((at[2] && up) -> X at[2]);
    G ((at[2] && down) -> X at[1]);
    G ((at[1] && down) -> X at[0]);
    G ((at[0] && down) -> X at[0]);
    &&[0 <= i < 3] G ((at[i] && !up && !down) -> X at[i]);
    &&[0 <= i < N] G (ack[i] <-> call[i]);
  }}
}}
"""


def one_hot(bus: str, width: int, chosen: Sequence[int]) -> str:
    """Some bit of `chosen` is set, every other bit is clear (exactly `chosen` when it has one bit)."""
    chosen = list(chosen)
    hit = " || ".join(f"{bus}[{i}]" for i in chosen)
    if len(chosen) > 1:
        hit = f"({hit})"
    rest = [f"!{bus}[{i}]" for i in range(width) if i not in chosen]
    return " && ".join([hit] + rest)


def mode_block(name: str, pred: str, init: str) -> str:
    return f"MODE {name} {{\n  pred = {pred};\n  init = {init};\n}}\n"


def relation_block(pairs: Sequence[Tuple[str, str]]) -> str:
    lines = "".join(f"  {a} -> {b};\n" for a, b in pairs)
    return f"RELATION {{\n{lines}}}\n"


def group_sizes(total: int, groups: int) -> List[int]:
    """Near-equal split of total items into groups, larger groups first."""
    size, extra = divmod(total, groups)
    return [size + 1 if g < extra else size for g in range(groups)]


def gen_counter_machine(n: int, k: int) -> Generated:
    """CM(n) with its counter values split into k modes m1..mk.

    Raises:
        InvalidGroupCount: unless 1 <= k <= n + 1
    """
    if n < 1:
        raise InvalidGroupCount(f"Counter bound must be positive, got {n}")
    if not 1 <= k <= n + 1:
        raise InvalidGroupCount(f"Cannot split {n + 1} counter values into {k} modes")

    width = n + 1
    blocks = []
    start = 0
    for g, size in enumerate(group_sizes(width, k), start=1):
        values = list(range(start, start + size))
        blocks.append(mode_block(f"m{g}", one_hot("counter", width, values), one_hot("counter", width, [start])))
        start += size

    pairs = [(f"m{g}", f"m{g + 1}") for g in range(1, k)]
    pairs += [(f"m{g}", "m1") for g in range(2, k + 1) if (f"m{g}", "m1") not in pairs]
    modes = "\n".join(blocks) + "\n" + relation_block(pairs)
    logger.debug(f"Generated CM({n}) with {k} modes")
    return CM_SPEC.format(n=n), modes


def gen_thermostat(n: int) -> Generated:
    """Raises InvalidFamilySize unless n >= 1."""
    if n < 1:
        raise InvalidFamilySize(f"Thermostat needs at least one fan, got {n}")
    fans_off = " && ".join(f"!fan[{i}]" for i in range(n))
    blocks = [
        mode_block("idle", "!heat && !cool", f"!heat && !cool && {fans_off}"),
        mode_block("heating", "heat && !cool", "heat && !cool"),
        mode_block("cooling", "cool && !heat", "cool && !heat"),
    ]
    names = ["idle", "heating", "cooling"]
    pairs = [(a, b) for a in names for b in names if a != b]
    return THERMOSTAT_SPEC.format(n=n), "\n".join(blocks) + "\n" + relation_block(pairs)


def gen_lift(n: int) -> Generated:
    if n < 1:
        raise InvalidFamilySize(f"Lift needs at least one call button, got {n}")
    names = ["ground", "middle", "top"]
    blocks = [mode_block(name, one_hot("at", 3, [i]), one_hot("at", 3, [i])) for i, name in enumerate(names)]
    pairs = [("ground", "middle"), ("middle", "ground"), ("middle", "top"), ("top", "middle")]
    return LIFT_SPEC.format(n=n), "\n".join(blocks) + "\n" + relation_block(pairs)


TOY_FAMILIES: Dict[str, Callable[[int], Generated]] = {
    "toy_thermostat": gen_thermostat,
    "toy_lift": gen_lift,
}


def gen_toy_families(name: str, n: int) -> Generated:
    """Raises UnknownFamily for names other than toy_thermostat and toy_lift."""
    generator = TOY_FAMILIES.get(name)
    if generator is None:
        raise UnknownFamily(f"Unknown benchmark family '{name}'")
    return generator(n)


class GeneratorFactory:
    """Resolves a family name used on the command line to its generator."""

    FAMILIES = ("cm", "toy_thermostat", "toy_lift")

    @staticmethod
    def create(family: str) -> Callable[..., Generated]:
        if family in ("cm", "counter_machine"):
            return gen_counter_machine
        if family in TOY_FAMILIES:
            return TOY_FAMILIES[family]
        raise UnknownFamily(
            f"Unknown benchmark family '{family}', expected one of {', '.join(GeneratorFactory.FAMILIES)}"
        )

    @staticmethod
    def file_stem(family: str, params: Sequence[int]) -> str:
        return "_".join([family] + [str(p) for p in params])
