"""Formula AST for monadic second-order logic over graphs.

Vertex variables ``x<i>`` and set variables ``X<i>`` are identified by their
integer index; the two namespaces are disjoint. The seven core node kinds are
ExistsVertex, ExistsSet, Or, Not, Adjacent, Equal and Member; the remaining
kinds are sugar removed by :func:`vimc.logic.transform.desugar`. ``Named``
wraps a subformula with a tag that the cached evaluator uses to tabulate it;
it has no logical meaning of its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

Pos = tuple[int, int] | None


def _pos():
    return field(default=None, compare=False, repr=False)


class Formula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class ExistsVertex(Formula):
    var: int
    body: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class ForallVertex(Formula):
    var: int
    body: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class ExistsSet(Formula):
    var: int
    body: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class ForallSet(Formula):
    var: int
    body: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Adjacent(Formula):
    a: int
    b: int
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Equal(Formula):
    a: int
    b: int
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class NotEqual(Formula):
    a: int
    b: int
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Member(Formula):
    var: int
    setvar: int
    pos: Pos = _pos()


@dataclass(frozen=True, slots=True)
class Named(Formula):
    """Tagged subformula; ``params`` lists its free vertex variables in argument order."""

    name: str
    params: tuple[int, ...]
    body: Formula
    pos: Pos = _pos()


VERTEX_QUANTIFIERS = (ExistsVertex, ForallVertex)
SET_QUANTIFIERS = (ExistsSet, ForallSet)
QUANTIFIERS = VERTEX_QUANTIFIERS + SET_QUANTIFIERS
BINARY = (Or, And, Implies, Iff)
ATOMS = (Adjacent, Equal, NotEqual, Member)
CORE = (ExistsVertex, ExistsSet, Or, Not, Adjacent, Equal, Member)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, (Not, Named) + QUANTIFIERS):
        return (f.body,)
    return ()


def free_variables(f: Formula) -> tuple[frozenset[int], frozenset[int]]:
    """Free vertex variables and free set variables of ``f``."""
    if isinstance(f, (Adjacent, Equal, NotEqual)):
        return frozenset((f.a, f.b)), frozenset()
    if isinstance(f, Member):
        return frozenset((f.var,)), frozenset((f.setvar,))
    if isinstance(f, VERTEX_QUANTIFIERS):
        v, s = free_variables(f.body)
        return v - {f.var}, s
    if isinstance(f, SET_QUANTIFIERS):
        v, s = free_variables(f.body)
        return v, s - {f.var}
    vs, ss = frozenset(), frozenset()
    for c in children(f):
        v, s = free_variables(c)
        vs |= v
        ss |= s
    return vs, ss


def is_sentence(f: Formula) -> bool:
    v, s = free_variables(f)
    return not v and not s


def variables(f: Formula) -> tuple[set[int], set[int]]:
    """Every vertex and set variable index occurring anywhere in ``f``."""
    vs: set[int] = set()
    ss: set[int] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Adjacent, Equal, NotEqual)):
            vs.update((g.a, g.b))
        elif isinstance(g, Member):
            vs.add(g.var)
            ss.add(g.setvar)
        elif isinstance(g, VERTEX_QUANTIFIERS):
            vs.add(g.var)
        elif isinstance(g, SET_QUANTIFIERS):
            ss.add(g.var)
        elif isinstance(g, Named):
            vs.update(g.params)
        stack.extend(children(g))
    return vs, ss


def conj(*fs: Formula) -> Formula:
    """Left-nested conjunction of one or more formulas."""
    return reduce(And, fs)


def disj(*fs: Formula) -> Formula:
    return reduce(Or, fs)


def strip_positions(f: Formula) -> Formula:
    """Copy of ``f`` without source positions (positions never affect equality)."""
    if isinstance(f, BINARY):
        return type(f)(strip_positions(f.left), strip_positions(f.right))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, strip_positions(f.body))
    if isinstance(f, Not):
        return Not(strip_positions(f.body))
    if isinstance(f, Named):
        return Named(f.name, f.params, strip_positions(f.body))
    if isinstance(f, Member):
        return Member(f.var, f.setvar)
    return type(f)(f.a, f.b)


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in children(f))
