"""Expansion of raw syntax into ReactiveSpec and ModeDecomposition."""

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Type

from moby.core.exceptions import (
    ArityError,
    InvalidModeRelation,
    NonSafetyOperator,
    SignalKindError,
    SpecSyntaxError,
    UnboundParameter,
    UndeclaredAtom,
    UnknownAtom,
)
from moby.ltl.Formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    AtomKind,
    Formula,
    Implies,
    Next,
    Not,
    Or,
    atoms,
    conj,
    disj,
)

from . import syntax as ast
from .grammar import parse_modes_blocks, parse_spec_sections
from .ModeDecomposition import Mode, ModeDecomposition
from .ReactiveSpec import ReactiveSpec

logger = logging.getLogger(__name__)

MACRO_WIDTH_NAME = "n"


class ParamEnv:
    """Integer bindings for parameters and big-operator variables."""

    def __init__(self, bindings: Optional[Dict[str, int]] = None):
        self.bindings: Dict[str, int] = dict(bindings or {})

    def bind(self, name: str, value: int) -> "ParamEnv":
        return ParamEnv({**self.bindings, name: value})

    def lookup(self, name: str) -> int:
        try:
            return self.bindings[name]
        except KeyError:
            raise UnboundParameter(f"Index name '{name}' is not bound") from None


def eval_index(expr, env: ParamEnv) -> int:
    if isinstance(expr, ast.IndexConst):
        return expr.value
    if isinstance(expr, ast.IndexName):
        return env.lookup(expr.name)
    left = eval_index(expr.left, env)
    right = eval_index(expr.right, env)
    return left + right if expr.op == "+" else left - right


def eval_set(expr, env: ParamEnv) -> List[int]:
    if isinstance(expr, ast.SetDiff):
        removed = set(eval_set(expr.right, env))
        return [v for v in eval_set(expr.left, env) if v not in removed]
    if isinstance(expr, ast.SetList):
        return [eval_index(item, env) for item in expr.items]
    first = eval_index(expr.first, env)
    last = eval_index(expr.last, env)
    step = 1 if expr.second is None else eval_index(expr.second, env) - first
    if step <= 0:
        raise SpecSyntaxError(f"Index range {first} .. {last} must be increasing")
    return list(range(first, last + 1, step))


def binder_values(binder, env: ParamEnv) -> List[int]:
    if isinstance(binder, ast.SetBinder):
        return eval_set(binder.values, env)
    low = eval_index(binder.low, env) + (1 if binder.low_strict else 0)
    high = eval_index(binder.high, env) - (1 if binder.high_strict else 0)
    return list(range(low, high + 1))


class SymbolTable:
    """Declared scalar signals and buses, plus the error raised for unknown names."""

    def __init__(self, missing: Type[Exception] = UndeclaredAtom):
        self.kinds: Dict[str, AtomKind] = {}
        self.buses: Dict[str, int] = {}
        self.macros: Dict[str, ast.Macro] = {}
        self.missing = missing

    def declare(self, name: str, kind: AtomKind) -> Atom:
        if name in self.kinds:
            raise SpecSyntaxError(f"Signal '{name}' is declared twice")
        self.kinds[name] = kind
        return Atom(name, kind)

    def declare_bus(self, name: str, width: int, kind: AtomKind) -> List[Atom]:
        if name in self.buses or name in self.kinds:
            raise SpecSyntaxError(f"Signal '{name}' is declared twice")
        if width < 0:
            raise ArityError(f"Bus '{name}' has negative width {width}")
        self.buses[name] = width
        return [self.declare(f"{name}_{k}", kind) for k in range(width)]

    def resolve(self, name: str, index: Optional[int]) -> Atom:
        if index is None:
            if name in self.buses:
                raise ArityError(f"Bus '{name}' used without an index")
            if name not in self.kinds:
                raise self.missing(f"Signal '{name}' is not declared")
            return Atom(name, self.kinds[name])
        if name in self.buses and not 0 <= index < self.buses[name]:
            raise ArityError(
                f"Index {index} out of range for bus '{name}' of width {self.buses[name]}"
            )
        scalar = f"{name}_{index}"
        if scalar not in self.kinds:
            raise self.missing(f"Signal '{name}[{index}]' is not declared")
        return Atom(scalar, self.kinds[scalar])


class Expander:
    """Turns raw formulas into ltl formulas.

    G is accepted only at the top of an item, where it becomes an
    `Always` marker; conjunctions and &&-operators at the top keep that
    position for their operands so that `G a && G b` yields two items.
    """

    def __init__(self, symbols: SymbolTable):
        self.symbols = symbols

    def expand(
        self,
        node,
        env: ParamEnv,
        top: bool = False,
        aliases: Optional[Dict[str, str]] = None,
    ) -> Formula:
        aliases = aliases or {}
        if isinstance(node, ast.RawConst):
            return TRUE if node.value else FALSE
        if isinstance(node, ast.RawName):
            name = aliases.get(node.name, node.name)
            index = None if node.index is None else eval_index(node.index, env)
            return self.symbols.resolve(name, index)
        if isinstance(node, ast.RawCall):
            return self._call(node, env, top)
        if isinstance(node, ast.RawUnary):
            return self._unary(node, env, top, aliases)
        if isinstance(node, ast.RawBinary):
            return self._binary(node, env, top, aliases)
        if isinstance(node, ast.RawBigOp):
            conjunctive = node.op == "&&"
            parts = [
                self.expand(node.body, env.bind(node.binder.var, value), top and conjunctive, aliases)
                for value in binder_values(node.binder, env)
            ]
            return conj(parts) if conjunctive else disj(parts)
        raise SpecSyntaxError(f"Unexpected syntax node {node!r}")

    def _call(self, node: ast.RawCall, env: ParamEnv, top: bool) -> Formula:
        macro = self.symbols.macros.get(node.macro)
        if macro is None:
            raise SpecSyntaxError(f"Unknown definition '{node.macro}'")
        width = self.symbols.buses.get(node.argument)
        if width is None:
            raise ArityError(
                f"Definition '{node.macro}' expects a bus, got '{node.argument}'"
            )
        local = env.bind(MACRO_WIDTH_NAME, width)
        return self.expand(macro.body, local, top, {macro.parameter: node.argument})

    def _unary(self, node: ast.RawUnary, env, top, aliases) -> Formula:
        if node.op == "F":
            raise NonSafetyOperator("F is not a safety operator")
        if node.op == "G":
            if not top:
                raise NonSafetyOperator("G is only allowed at the top of an item")
            return ast.Always(self.expand(node.arg, env, False, aliases))
        arg = self.expand(node.arg, env, False, aliases)
        return Not(arg) if node.op == "!" else Next(arg)

    def _binary(self, node: ast.RawBinary, env, top, aliases) -> Formula:
        if node.op == "U":
            raise NonSafetyOperator("U is not a safety operator")
        if node.op == "&&":
            return And(
                self.expand(node.left, env, top, aliases),
                self.expand(node.right, env, top, aliases),
            )
        left = self.expand(node.left, env, False, aliases)
        right = self.expand(node.right, env, False, aliases)
        if node.op == "||":
            return Or(left, right)
        if node.op == "->":
            return Implies(left, right)
        return And(Implies(left, right), Implies(right, left))


def split_items(f: Formula) -> Tuple[List[Formula], List[Formula]]:
    """Top-level conjuncts, separated into G bodies and local conditions."""
    always: List[Formula] = []
    local: List[Formula] = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, And) and (_has_always(node.left) or _has_always(node.right)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, ast.Always):
            always.append(node.arg)
        elif node == TRUE:
            continue
        else:
            local.append(node)
    return always, local


def _has_always(f: Formula) -> bool:
    if isinstance(f, ast.Always):
        return True
    return isinstance(f, And) and (_has_always(f.left) or _has_always(f.right))


def _check_kind(f: Formula, allowed: Sequence[str], where: str) -> None:
    stray = sorted(atoms(f) - set(allowed))
    if stray:
        raise SignalKindError(f"{where} mentions {', '.join(stray)}")


def parse_spec(text: str) -> ReactiveSpec:
    """Parse a specification, expanding parameters, buses and indexed operators.

    Raises:
        SpecSyntaxError: malformed text, duplicate declarations or undeclared signals
        ArityError: bus index out of range
        UnboundParameter: index expression with an unbound name
        NonSafetyOperator: U, F, or G below the top of an item
        SignalKindError: INITIALLY over outputs or PRESET over inputs
    """
    sections = parse_spec_sections(text)
    by_name: Dict[str, List[object]] = {}
    for section in sections:
        by_name.setdefault(section.name, []).extend(section.entries)

    env = ParamEnv()
    for param in by_name.get("PARAMETERS", []):
        env = env.bind(param.name, eval_index(param.value, env))

    symbols = SymbolTable()
    inputs = _declare(symbols, by_name.get("INPUTS", []), AtomKind.INPUT, env)
    outputs = _declare(symbols, by_name.get("OUTPUTS", []), AtomKind.OUTPUT, env)
    for macro in by_name.get("DEFINITIONS", []):
        if macro.name in symbols.macros:
            raise SpecSyntaxError(f"Definition '{macro.name}' is given twice")
        symbols.macros[macro.name] = macro

    expander = Expander(symbols)
    initially = [expander.expand(f, env) for f in by_name.get("INITIALLY", [])]
    preset = [expander.expand(f, env) for f in by_name.get("PRESET", [])]

    assumptions: List[Formula] = []
    for raw in by_name.get("ASSUMPTIONS", []):
        always, local = split_items(expander.expand(raw, env, top=True))
        assumptions.extend(always)
        initially.extend(local)

    guarantees: List[Formula] = []
    for raw in by_name.get("GUARANTEES", []):
        always, local = split_items(expander.expand(raw, env, top=True))
        guarantees.extend(always)
        preset.extend(local)

    spec = ReactiveSpec(
        inputs,
        outputs,
        conj(initially),
        conj(preset),
        assumptions,
        guarantees,
    )
    _check_kind(spec.initially, spec.input_names, "INITIALLY")
    _check_kind(spec.preset, spec.output_names, "PRESET")
    logger.debug(f"Parsed {spec!r}")
    return spec


def _declare(symbols: SymbolTable, entries, kind: AtomKind, env: ParamEnv) -> List[Atom]:
    declared: List[Atom] = []
    for entry in entries:
        if entry.width is None:
            declared.append(symbols.declare(entry.name, kind))
        else:
            declared.extend(symbols.declare_bus(entry.name, eval_index(entry.width, env), kind))
    return declared


MODE_FIELDS = ("pred", "init", "arrival")


def parse_modes(text: str, spec: ReactiveSpec) -> ModeDecomposition:
    """Parse a modes file against the signals of an already parsed specification.

    Raises:
        SpecSyntaxError: malformed text, duplicate mode or field names
        UnknownAtom: a formula mentions a signal the specification lacks
        EmptyModeList: the file declares no mode
        InvalidModeRelation: a relation entry names an unknown mode or a self loop
    """
    blocks, entries = parse_modes_blocks(text)

    symbols = SymbolTable(missing=UnknownAtom)
    for a in spec.inputs + spec.outputs:
        symbols.kinds[a.name] = a.kind
    expander = Expander(symbols)

    modes: List[Mode] = []
    seen: Dict[str, int] = {}
    for block in blocks:
        if block.name in seen:
            raise SpecSyntaxError(f"Mode '{block.name}' is declared twice", block.line, 1)
        seen[block.name] = len(seen) + 1
        fields: Dict[str, Formula] = {}
        for name, raw in block.fields:
            if name not in MODE_FIELDS:
                raise SpecSyntaxError(
                    f"Unknown field '{name}' in mode '{block.name}'", block.line, 1, MODE_FIELDS
                )
            if name in fields:
                raise SpecSyntaxError(
                    f"Field '{name}' given twice in mode '{block.name}'", block.line, 1
                )
            f = expander.expand(raw, ParamEnv())
            if f.x_depth:
                raise SpecSyntaxError(
                    f"Field '{name}' of mode '{block.name}' must not use X", block.line, 1
                )
            fields[name] = f
        for required in ("pred", "init"):
            if required not in fields:
                raise SpecSyntaxError(
                    f"Mode '{block.name}' lacks '{required}'", block.line, 1, (required,)
                )
        arrival = fields.get("arrival", TRUE)
        _check_kind(arrival, spec.input_names, f"Arrival condition of mode '{block.name}'")
        modes.append(Mode(block.name, fields["pred"], fields["init"], arrival))

    relation = None
    if entries is not None:
        relation = set()
        for entry in entries:
            for name in (entry.source, entry.target):
                if name not in seen:
                    raise InvalidModeRelation(
                        f"Relation on line {entry.line} names unknown mode '{name}'"
                    )
            relation.add((seen[entry.source], seen[entry.target]))

    decomposition = ModeDecomposition(modes, relation)
    logger.debug(f"Parsed {decomposition!r}")
    return decomposition
