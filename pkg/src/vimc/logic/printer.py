"""Render formulas back into the concrete syntax accepted by the parser."""

from __future__ import annotations

from .ast import (
    Adjacent,
    And,
    Equal,
    ExistsSet,
    ExistsVertex,
    ForallSet,
    ForallVertex,
    Formula,
    Iff,
    Implies,
    Member,
    Named,
    Not,
    NotEqual,
    Or,
)

# binding strength; a quantifier (0) swallows everything to its right
_QUANT, _IFF, _IMPL, _OR, _AND, _NOT, _PRIMARY = range(7)

_QUANT_WORD = {
    ExistsVertex: ("exists", "x"),
    ForallVertex: ("forall", "x"),
    ExistsSet: ("exists", "X"),
    ForallSet: ("forall", "X"),
}

# operator, own level, level required of the left and right operands
_BINARY = {
    Iff: ("<->", _IFF, _IFF, _IMPL),
    Implies: ("->", _IMPL, _OR, _IMPL),
    Or: ("|", _OR, _OR, _AND),
    And: ("&", _AND, _AND, _NOT),
}


def _render(f: Formula) -> tuple[str, int]:
    t = type(f)
    if t in _BINARY:
        op, level, lneed, rneed = _BINARY[t]
        return f"{_wrap(f.left, lneed)} {op} {_wrap(f.right, rneed)}", level
    if t in _QUANT_WORD:
        word, prefix = _QUANT_WORD[t]
        return f"{word} {prefix}{f.var}. {_render(f.body)[0]}", _QUANT
    if t is Not:
        body = f.body
        if isinstance(body, (Not, Named)):
            return "!" + _render(body)[0], _NOT
        return f"!({_render(body)[0]})", _NOT
    if t is Named:
        params = ",".join(f"x{p}" for p in f.params)
        return f"@{f.name}[{params}]({_render(f.body)[0]})", _PRIMARY
    if t is Adjacent:
        return f"x{f.a} ~ x{f.b}", _PRIMARY
    if t is Equal:
        return f"x{f.a} = x{f.b}", _PRIMARY
    if t is NotEqual:
        return f"x{f.a} != x{f.b}", _PRIMARY
    if t is Member:
        return f"x{f.var} in X{f.setvar}", _PRIMARY
    raise TypeError(f"not a formula node: {f!r}")


def _wrap(f: Formula, need: int) -> str:
    text, level = _render(f)
    return text if level >= need else f"({text})"


def print_formula(f: Formula) -> str:
    return _render(f)[0]
