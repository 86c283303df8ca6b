"""pyparsing grammar of the specification and modes languages.

Parse actions build the raw nodes of `syntax`; nothing is expanded here.
Operator precedence, tightest first:

  * ! X G F and the indexed operators &&[..] ||[..]
  * U
  * &&
  * ||
  * ->   (right associative)
  * <->  (right associative)
"""

import logging
from typing import List, Tuple

import pyparsing as pp

from moby.core.exceptions import SpecSyntaxError

from . import syntax as ast

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

###############################################################################
# Symbols and keywords
###############################################################################

LBRACE, RBRACE, LBRACK, RBRACK, LPAR, RPAR, SEMI, COMMA, EQUALS = map(
    pp.Suppress, "{}[]();,="
)
DOTS = pp.Suppress("..")
SET_MINUS = pp.Suppress("(\\)")

RESERVED = pp.MatchFirst(
    [pp.Keyword(word) for word in ("X", "G", "F", "U", "true", "false", "IN")]
)
identifier = (~RESERVED + pp.Word(pp.alphas + "_", pp.alphanums + "_")).set_name(
    "identifier"
)

op_not = pp.Literal("!")
op_next = pp.Keyword("X")
op_globally = pp.Keyword("G")
op_finally = pp.Keyword("F")
op_until = pp.Keyword("U")
op_and = pp.Literal("&&")
op_or = pp.Literal("||")
op_implies = pp.Literal("->")
op_iff = pp.Literal("<->")

###############################################################################
# Index arithmetic and index sets
###############################################################################


def _fold_index(tokens):
    members = tokens[0]
    result = members[0]
    for i in range(1, len(members), 2):
        result = ast.IndexBinary(members[i], result, members[i + 1])
    return result


number = pp.Word(pp.nums).set_parse_action(lambda t: ast.IndexConst(int(t[0])))
index_name = identifier.copy().set_parse_action(lambda t: ast.IndexName(t[0]))

index_expr = pp.infix_notation(
    number | index_name,
    [(pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _fold_index)],
)


def _fold_set_diff(tokens):
    result = tokens[0]
    for right in tokens[1:]:
        result = ast.SetDiff(result, right)
    return result


set_body = (
    (index_expr + COMMA + index_expr + DOTS + index_expr).set_parse_action(
        lambda t: ast.SetRange(t[0], t[1], t[2])
    )
    | (index_expr + DOTS + index_expr).set_parse_action(
        lambda t: ast.SetRange(t[0], None, t[1])
    )
    | pp.Optional(index_expr + pp.ZeroOrMore(COMMA + index_expr)).set_parse_action(
        lambda t: ast.SetList(tuple(t))
    )
)
set_literal = LBRACE + set_body + RBRACE
set_expr = (set_literal + pp.ZeroOrMore(SET_MINUS + set_literal)).set_parse_action(
    _fold_set_diff
)

comparison = pp.Literal("<=") | pp.Literal("<")

range_binder = (
    index_expr + comparison + identifier + comparison + index_expr
).set_parse_action(lambda t: ast.RangeBinder(t[2], t[0], t[1] == "<", t[4], t[3] == "<"))
set_binder = (identifier + pp.Suppress(pp.Keyword("IN")) + set_expr).set_parse_action(
    lambda t: ast.SetBinder(t[0], t[1])
)
big_operator = pp.Group((op_and | op_or) + LBRACK + (set_binder | range_binder) + RBRACK)

###############################################################################
# Formulas
###############################################################################


def _unary(tokens):
    operator, argument = tokens[0]
    if isinstance(operator, pp.ParseResults):
        return ast.RawBigOp(operator[0], operator[1], argument)
    return ast.RawUnary(operator, argument)


def _binary_left(tokens):
    members = tokens[0]
    result = members[0]
    for i in range(1, len(members), 2):
        result = ast.RawBinary(members[i], result, members[i + 1])
    return result


def _binary_right(tokens):
    members = tokens[0]
    result = members[-1]
    for i in range(len(members) - 2, 0, -2):
        result = ast.RawBinary(members[i], members[i - 1], result)
    return result


true = pp.Keyword("true").set_parse_action(lambda: ast.RawConst(True))
false = pp.Keyword("false").set_parse_action(lambda: ast.RawConst(False))
call = (identifier + LPAR + identifier + RPAR).set_parse_action(
    lambda t: ast.RawCall(t[0], t[1])
)
signal = (identifier + pp.Optional(LBRACK + index_expr + RBRACK)).set_parse_action(
    lambda t: ast.RawName(t[0], t[1] if len(t) > 1 else None)
)

formula = pp.infix_notation(
    true | false | call | signal,
    [
        (op_not | op_next | op_globally | op_finally | big_operator, 1, pp.OpAssoc.RIGHT, _unary),
        (op_until, 2, pp.OpAssoc.LEFT, _binary_left),
        (op_and, 2, pp.OpAssoc.LEFT, _binary_left),
        (op_or, 2, pp.OpAssoc.LEFT, _binary_left),
        (op_implies, 2, pp.OpAssoc.RIGHT, _binary_right),
        (op_iff, 2, pp.OpAssoc.RIGHT, _binary_right),
    ],
)

###############################################################################
# Specification sections
###############################################################################


def _section(keyword: str, entry: pp.ParserElement) -> pp.ParserElement:
    body = pp.Group(pp.ZeroOrMore(entry))
    return (pp.Keyword(keyword) + LBRACE + body + RBRACE).set_parse_action(
        lambda t: ast.Section(t[0], tuple(t[1]))
    )


parameter = (identifier + EQUALS + index_expr + SEMI).set_parse_action(
    lambda t: ast.ParamDef(t[0], t[1])
)
declaration = (
    identifier + pp.Optional(LBRACK + index_expr + RBRACK)
).set_parse_action(lambda t: ast.Declaration(t[0], t[1] if len(t) > 1 else None)) + SEMI
macro = (identifier + LPAR + identifier + RPAR + EQUALS + formula + SEMI).set_parse_action(
    lambda t: ast.Macro(t[0], t[1], t[2])
)
item = formula + SEMI

section = (
    _section("PARAMETERS", parameter)
    | _section("INPUTS", declaration)
    | _section("OUTPUTS", declaration)
    | _section("DEFINITIONS", macro)
    | _section("INITIALLY", item)
    | _section("PRESET", item)
    | _section("ASSUMPTIONS", item)
    | _section("GUARANTEES", item)
)

sections = pp.ZeroOrMore(section)
SPEC_GRAMMAR = (
    pp.Suppress(pp.Keyword("MAIN")) + LBRACE + sections + RBRACE | sections
) + pp.StringEnd()
SPEC_GRAMMAR.ignore(pp.cpp_style_comment)

###############################################################################
# Modes files
###############################################################################


def _mode_block(s, loc, tokens):
    fields = tuple((group[0], group[1]) for group in tokens[2])
    return ast.ModeBlock(tokens[1], fields, pp.lineno(loc, s))


def _relation_entry(s, loc, tokens):
    return ast.RelationEntry(tokens[0], tokens[1], pp.lineno(loc, s))


mode_field = pp.Group(identifier + EQUALS + formula + SEMI)
mode_block = (
    pp.Keyword("MODE") + identifier + LBRACE + pp.Group(pp.ZeroOrMore(mode_field)) + RBRACE
).set_parse_action(_mode_block)

relation_entry = (identifier + pp.Suppress("->") + identifier + SEMI).set_parse_action(
    _relation_entry
)
relation = pp.Keyword("RELATION") + LBRACE + pp.ZeroOrMore(relation_entry) + RBRACE

MODES_GRAMMAR = pp.ZeroOrMore(mode_block) + pp.Optional(relation) + pp.StringEnd()
MODES_GRAMMAR.ignore(pp.cpp_style_comment)

###############################################################################
# Entry points
###############################################################################


def _syntax_error(error: pp.ParseBaseException) -> SpecSyntaxError:
    element = getattr(error, "parser_element", None)
    expected = (str(element),) if element is not None else ()
    return SpecSyntaxError(error.msg, error.lineno, error.col, expected)


def parse_spec_sections(text: str) -> List[ast.Section]:
    """Split a specification into raw sections.

    Raises:
        SpecSyntaxError: if the text does not follow the grammar
    """
    try:
        return list(SPEC_GRAMMAR.parse_string(text, parse_all=True))
    except pp.ParseBaseException as e:
        raise _syntax_error(e) from e


def parse_modes_blocks(
    text: str,
) -> Tuple[List[ast.ModeBlock], List[ast.RelationEntry] | None]:
    """Raw MODE blocks plus the RELATION entries (None when the section is absent)."""
    try:
        result = MODES_GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise _syntax_error(e) from e
    blocks = [token for token in result if isinstance(token, ast.ModeBlock)]
    entries = None
    if "RELATION" in list(result):
        entries = [token for token in result if isinstance(token, ast.RelationEntry)]
    return blocks, entries
