"""Desugaring, quantifier accounting, renaming apart and prenex conversion."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotASentenceError
from .ast import (
    ATOMS,
    QUANTIFIERS,
    SET_QUANTIFIERS,
    VERTEX_QUANTIFIERS,
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
    free_variables,
    is_sentence,
    variables,
)


@dataclass(frozen=True)
class QuantifierProfile:
    q1: int  # vertex quantifiers
    q2: int  # set quantifiers

    @property
    def q(self) -> int:
        return self.q1 + self.q2


def desugar(f: Formula) -> Formula:
    """Rewrite into the core connectives (exists, or, not, and the three atoms)."""
    if isinstance(f, (Adjacent, Equal, Member)):
        return f
    if isinstance(f, NotEqual):
        return Not(Equal(f.a, f.b))
    if isinstance(f, Not):
        return Not(desugar(f.body))
    if isinstance(f, Or):
        return Or(desugar(f.left), desugar(f.right))
    if isinstance(f, And):
        return Not(Or(Not(desugar(f.left)), Not(desugar(f.right))))
    if isinstance(f, Implies):
        return Or(Not(desugar(f.left)), desugar(f.right))
    if isinstance(f, Iff):
        return desugar(And(Implies(f.left, f.right), Implies(f.right, f.left)))
    if isinstance(f, ExistsVertex):
        return ExistsVertex(f.var, desugar(f.body))
    if isinstance(f, ExistsSet):
        return ExistsSet(f.var, desugar(f.body))
    if isinstance(f, ForallVertex):
        return Not(ExistsVertex(f.var, Not(desugar(f.body))))
    if isinstance(f, ForallSet):
        return Not(ExistsSet(f.var, Not(desugar(f.body))))
    if isinstance(f, Named):
        return Named(f.name, f.params, desugar(f.body))
    raise TypeError(f"not a formula node: {f!r}")


def quantifier_profile(f: Formula) -> QuantifierProfile:
    """Count vertex and set quantifiers as they appear after desugaring.

    Universal quantifiers count once; each side of a biconditional counts
    twice because desugaring duplicates it.
    """
    q1, q2 = _count(f)
    return QuantifierProfile(q1, q2)


def _count(f: Formula) -> tuple[int, int]:
    if isinstance(f, ATOMS):
        return 0, 0
    if isinstance(f, VERTEX_QUANTIFIERS):
        a, b = _count(f.body)
        return a + 1, b
    if isinstance(f, SET_QUANTIFIERS):
        a, b = _count(f.body)
        return a, b + 1
    if isinstance(f, (Not, Named)):
        return _count(f.body)
    a1, b1 = _count(f.left)
    a2, b2 = _count(f.right)
    if isinstance(f, Iff):
        return 2 * (a1 + a2), 2 * (b1 + b2)
    return a1 + a2, b1 + b2


def has_quantifier(f: Formula) -> bool:
    return _count(f) != (0, 0)


def rename_apart(f: Formula) -> Formula:
    """Give every quantifier its own variable.

    The first binder of an index keeps it; later binders of the same index get
    fresh indices above everything used in ``f``. Free variables are untouched.
    """
    vs, ss = variables(f)
    fv, fs = free_variables(f)
    state = {
        "x": [max(vs, default=0) + 1, set(fv)],
        "X": [max(ss, default=0) + 1, set(fs)],
    }

    def fresh(ns: str, var: int) -> int:
        counter, used = state[ns]
        if var not in used:
            used.add(var)
            return var
        new = counter
        state[ns][0] += 1
        used.add(new)
        return new

    def go(g: Formula, vmap: dict[int, int], smap: dict[int, int]) -> Formula:
        if isinstance(g, (Adjacent, Equal, NotEqual)):
            return type(g)(vmap.get(g.a, g.a), vmap.get(g.b, g.b))
        if isinstance(g, Member):
            return Member(vmap.get(g.var, g.var), smap.get(g.setvar, g.setvar))
        if isinstance(g, VERTEX_QUANTIFIERS):
            new = fresh("x", g.var)
            return type(g)(new, go(g.body, {**vmap, g.var: new}, smap))
        if isinstance(g, SET_QUANTIFIERS):
            new = fresh("X", g.var)
            return type(g)(new, go(g.body, vmap, {**smap, g.var: new}))
        if isinstance(g, Not):
            return Not(go(g.body, vmap, smap))
        if isinstance(g, Named):
            params = tuple(vmap.get(p, p) for p in g.params)
            return Named(g.name, params, go(g.body, vmap, smap))
        return type(g)(go(g.left, vmap, smap), go(g.right, vmap, smap))

    return go(f, {}, {})


_DUAL = {
    ExistsVertex: ForallVertex,
    ForallVertex: ExistsVertex,
    ExistsSet: ForallSet,
    ForallSet: ExistsSet,
}


def _negate(m: Formula) -> Formula:
    return m.body if isinstance(m, Not) else Not(m)


def _expand_quantified_iff(f: Formula) -> Formula:
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, Iff) and has_quantifier(f):
        left = _expand_quantified_iff(f.left)
        right = _expand_quantified_iff(f.right)
        return And(Implies(left, right), Implies(right, left))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, _expand_quantified_iff(f.body))
    if isinstance(f, Not):
        return Not(_expand_quantified_iff(f.body))
    if isinstance(f, Named):
        return Named(f.name, f.params, _expand_quantified_iff(f.body))
    return type(f)(_expand_quantified_iff(f.left), _expand_quantified_iff(f.right))


def _pull(f: Formula) -> tuple[list[tuple[type, int]], Formula]:
    if not has_quantifier(f):
        return [], f
    if isinstance(f, QUANTIFIERS):
        prefix, matrix = _pull(f.body)
        return [(type(f), f.var)] + prefix, matrix
    if isinstance(f, Named):
        return _pull(f.body)
    if isinstance(f, Not):
        prefix, matrix = _pull(f.body)
        return [(_DUAL[q], v) for q, v in prefix], _negate(matrix)
    lp, lm = _pull(f.left)
    rp, rm = _pull(f.right)
    if isinstance(f, Implies):
        return [(_DUAL[q], v) for q, v in lp] + rp, Implies(lm, rm)
    # an Iff still holding quantifiers was expanded beforehand
    return lp + rp, type(f)(lm, rm)


def to_prenex(f: Formula) -> Formula:
    """Equivalent sentence with every quantifier in a leading prefix.

    Sugar is kept where it has no quantifiers below it; biconditionals over
    quantified formulas are expanded first so the quantifier profile is
    preserved. Equivalence assumes a non-empty vertex set, as usual.
    """
    if not is_sentence(f):
        raise NotASentenceError("prenex conversion needs a sentence")
    g = rename_apart(_expand_quantified_iff(f))
    prefix, matrix = _pull(g)
    for q, v in reversed(prefix):
        matrix = q(v, matrix)
    return matrix


def is_prenex(f: Formula) -> bool:
    while isinstance(f, QUANTIFIERS):
        f = f.body
    return not has_quantifier(f)
