from typing import Iterable, List

from moby.ltl.Formula import Formula, is_true

from .ReactiveSpec import ReactiveSpec


def _signals(title: str, names: Iterable[str]) -> List[str]:
    names = list(names)
    if not names:
        return []
    return [f"  {title} {{"] + [f"    {name};" for name in names] + ["  }"]


def _formulas(title: str, items: Iterable[Formula], always: bool) -> List[str]:
    items = list(items)
    if not items:
        return []
    if always:
        body = [f"    G ({item});" for item in items]
    else:
        body = [f"    {item};" for item in items]
    return [f"  {title} {{"] + body + ["  }"]


def emit_tlsf(spec: ReactiveSpec) -> str:
    """Render a specification (or projection) in the subset accepted by parse_spec.

    Buses are written out as their scalar signals. Empty sections and
    trivially true initial conditions are left out.
    """
    lines: List[str] = ["MAIN {"]
    lines += _signals("INPUTS", spec.input_names)
    lines += _signals("OUTPUTS", spec.output_names)
    if not is_true(spec.initially):
        lines += _formulas("INITIALLY", [spec.initially], always=False)
    if not is_true(spec.preset):
        lines += _formulas("PRESET", [spec.preset], always=False)
    lines += _formulas("ASSUMPTIONS", spec.assumptions, always=True)
    lines += _formulas("GUARANTEES", spec.guarantees, always=True)
    lines.append("}")
    return "\n".join(lines) + "\n"
