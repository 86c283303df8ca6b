from .Formula import (
    And,
    Atom,
    BINARY_TYPES,
    Constant,
    Formula,
    Implies,
    Next,
    Not,
    Or,
)

_OPERATORS = {And: "&&", Or: "||", Implies: "->"}


def to_tlsf(f: Formula) -> str:
    """Render a formula in the TLSF expression syntax understood by the frontend.

    Binary operands are always parenthesized, so parsing the text back yields
    the very same tree.
    """
    if isinstance(f, Constant):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _operand(f.arg)
    if isinstance(f, Next):
        return "X " + _operand(f.arg)
    op = _OPERATORS[type(f)]
    return f"{_operand(f.left)} {op} {_operand(f.right)}"


def _operand(f: Formula) -> str:
    text = to_tlsf(f)
    return f"({text})" if isinstance(f, BINARY_TYPES) else text
