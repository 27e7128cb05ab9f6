"""Model checking of MSO formulas on structures.

Two evaluators share one semantics:

* :func:`model_check` walks the desugared formula directly, rule by rule.
  It is deliberately plain and serves as the reference.
* :func:`evaluate_with_cache` compiles the formula into an evaluation plan
  (negation normal form, quantifiers pushed inward, set quantifiers narrowed
  to the vertices they can be tested against) and tabulates ``Named``
  subformulas in a :class:`PredicateCache`.

:func:`check_sentence` uses the planned evaluator unless asked otherwise.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field

from .errors import CapacityError, NotASentenceError, UnboundVariableError
from .graph import Graph, Structure
from .logic.ast import (
    Adjacent,
    Equal,
    ExistsSet,
    ExistsVertex,
    Formula,
    Member,
    Named,
    Not,
    Or,
    free_variables,
)
from .logic.printer import print_formula
from .logic.transform import desugar

DEFAULT_SET_CAP = 24
_MISSING = object()


@dataclass
class Environment:
    vertex: dict[int, int] = field(default_factory=dict)
    sets: dict[int, frozenset[int]] = field(default_factory=dict)


def _bindings(s: Structure, env: Environment | None) -> tuple[dict[int, int], dict[int, frozenset[int]]]:
    env = env or Environment()
    vb = dict(s.labeling)
    for k, v in env.vertex.items():
        if k in vb and vb[k] != v:
            raise ValueError(f"x{k} bound both by the structure and the environment")
        if not 0 <= v < s.graph.n:
            raise ValueError(f"x{k} bound to {v}, not a vertex")
        vb[k] = v
    sb = dict(s.coloring)
    for k, vs in env.sets.items():
        vs = frozenset(vs)
        if k in sb and sb[k] != vs:
            raise ValueError(f"X{k} bound both by the structure and the environment")
        if any(not 0 <= v < s.graph.n for v in vs):
            raise ValueError(f"X{k} is not a vertex subset")
        sb[k] = vs
    return vb, sb


def _check_bound(f: Formula, vb: Mapping, sb: Mapping) -> None:
    fv, fs = free_variables(f)
    missing = [f"x{v}" for v in sorted(fv) if v not in vb] + [f"X{v}" for v in sorted(fs) if v not in sb]
    if missing:
        raise UnboundVariableError(f"unbound free variable(s): {', '.join(missing)}")


# reference evaluator ------------------------------------------------------


def _candidates(g: Graph, bound: Mapping[int, int]) -> list[int]:
    order = []
    seen = set()
    for u in bound.values():
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
    order.extend(v for v in range(g.n) if v not in seen)
    return order


def _subsets(universe: list[int]):
    for r in range(len(universe) + 1):
        yield from itertools.combinations(universe, r)


def model_check(
    s: Structure, f: Formula, env: Environment | None = None, *, set_cap: int = DEFAULT_SET_CAP
) -> bool:
    """Decide ``s, env |= f`` directly from the inductive definition."""
    vb, sb = _bindings(s, env)
    _check_bound(f, vb, sb)
    g = s.graph

    def ev(h: Formula, vb: dict, sb: dict) -> bool:
        if isinstance(h, Adjacent):
            return g.has_edge(vb[h.a], vb[h.b])
        if isinstance(h, Equal):
            return vb[h.a] == vb[h.b]
        if isinstance(h, Member):
            return vb[h.var] in sb[h.setvar]
        if isinstance(h, Or):
            return ev(h.left, vb, sb) or ev(h.right, vb, sb)
        if isinstance(h, Not):
            return not ev(h.body, vb, sb)
        if isinstance(h, ExistsVertex):
            return any(ev(h.body, {**vb, h.var: v}, sb) for v in _candidates(g, vb))
        if isinstance(h, ExistsSet):
            if g.n > set_cap:
                raise CapacityError(
                    f"set quantifier over {g.n} vertices exceeds the cap of {set_cap}; kernelize first"
                )
            return any(ev(h.body, vb, {**sb, h.var: frozenset(c)}) for c in _subsets(list(range(g.n))))
        if isinstance(h, Named):
            return ev(h.body, vb, sb)
        raise TypeError(f"unexpected node after desugaring: {h!r}")

    return ev(desugar(f), vb, sb)


# planned evaluator --------------------------------------------------------


class PredicateCache:
    """Truth tables of named subformulas for one fixed structure.

    Only subformulas without free set variables are tabulated, so entries
    never depend on set bindings and stay valid for the whole structure.
    """

    def __init__(self):
        self.structure: Structure | None = None
        self.tables: dict[str, dict[tuple[int, ...], bool]] = {}
        self.names: dict[str, set[str]] = {}
        self.hits = 0
        self.misses = 0

    def bind(self, s: Structure) -> None:
        if self.structure is not s:
            self.structure = s
            self.tables.clear()
            self.names.clear()

    def table(self, name: str) -> dict[tuple[int, ...], bool]:
        """All entries recorded under tag ``name``."""
        out = {}
        for key in sorted(self.names.get(name, ())):
            out.update(self.tables[key])
        return out


class _Ctx:
    __slots__ = ("g", "n", "masks", "cache", "set_cap")

    def __init__(self, g: Graph, cache: PredicateCache, set_cap: int):
        self.g = g
        self.n = g.n
        self.masks = g.masks
        self.cache = cache
        self.set_cap = set_cap


class _Node:
    __slots__ = ("fv", "fs", "cost")


class _Lit(_Node):
    __slots__ = ("a", "b", "positive")

    def __init__(self, a, b, positive):
        self.a, self.b, self.positive = a, b, positive
        self.cost = 0


class _Adj(_Lit):
    def __init__(self, a, b, positive):
        super().__init__(a, b, positive)
        self.fv, self.fs = frozenset((a, b)), frozenset()

    def ev(self, ctx, vb, sb):
        return ((ctx.masks[vb[self.a]] >> vb[self.b]) & 1 == 1) == self.positive


class _Eq(_Lit):
    def __init__(self, a, b, positive):
        super().__init__(a, b, positive)
        self.fv, self.fs = frozenset((a, b)), frozenset()

    def ev(self, ctx, vb, sb):
        return (vb[self.a] == vb[self.b]) == self.positive


class _Mem(_Lit):
    def __init__(self, a, b, positive):
        super().__init__(a, b, positive)
        self.fv, self.fs = frozenset((a,)), frozenset((b,))

    def ev(self, ctx, vb, sb):
        return ((sb[self.b] >> vb[self.a]) & 1 == 1) == self.positive


class _And(_Node):
    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = sorted(parts, key=lambda p: p.cost)
        self.fv = frozenset().union(*(p.fv for p in parts))
        self.fs = frozenset().union(*(p.fs for p in parts))
        self.cost = max(p.cost for p in parts)

    def ev(self, ctx, vb, sb):
        for p in self.parts:
            if not p.ev(ctx, vb, sb):
                return False
        return True


class _Or(_And):
    def ev(self, ctx, vb, sb):
        for p in self.parts:
            if p.ev(ctx, vb, sb):
                return True
        return False


class _Quant(_Node):
    __slots__ = ("var", "body", "universal")


class _VertexQ(_Quant):
    __slots__ = ("hints",)

    def __init__(self, universal, var, body):
        self.universal, self.var, self.body = universal, var, body
        self.fv = body.fv - {var}
        self.fs = body.fs
        self.hints = tuple(sorted(self.fv))
        self.cost = body.cost + 10

    def ev(self, ctx, vb, sb):
        masks = ctx.masks
        near = 0
        for h in self.hints:
            near |= masks[vb[h]]
        if near:
            first = [v for v in range(ctx.n) if (near >> v) & 1]
            rest = [v for v in range(ctx.n) if not (near >> v) & 1]
            order = itertools.chain(first, rest)
        else:
            order = range(ctx.n)
        var, body, want = self.var, self.body, not self.universal
        old = vb.get(var, _MISSING)
        result = self.universal
        for v in order:
            vb[var] = v
            if body.ev(ctx, vb, sb) == want:
                result = want
                break
        if old is _MISSING:
            vb.pop(var, None)
        else:
            vb[var] = old
        return result


class _Vacuous(_Node):
    """Vertex quantifier whose variable does not occur in its body."""

    __slots__ = ("universal", "body")

    def __init__(self, universal, body):
        self.universal, self.body = universal, body
        self.fv, self.fs, self.cost = body.fv, body.fs, body.cost

    def ev(self, ctx, vb, sb):
        if ctx.n == 0:
            return self.universal
        return self.body.ev(ctx, vb, sb)


class _SetQ(_Quant):
    __slots__ = ("relevant",)

    def __init__(self, universal, var, body):
        self.universal, self.var, self.body = universal, var, body
        self.fv = body.fv
        self.fs = body.fs - {var}
        self.cost = body.cost + 100
        self.relevant = _membership_vars(body, var)

    def ev(self, ctx, vb, sb):
        if self.relevant is None:
            if ctx.n > ctx.set_cap:
                raise CapacityError(
                    f"set quantifier over {ctx.n} vertices exceeds the cap of {ctx.set_cap}; kernelize first"
                )
            universe = list(range(ctx.n))
        else:
            universe = sorted({vb[v] for v in self.relevant})
        var, body, want = self.var, self.body, not self.universal
        old = sb.get(var, _MISSING)
        result = self.universal
        for combo in _subsets(universe):
            m = 0
            for v in combo:
                m |= 1 << v
            sb[var] = m
            if body.ev(ctx, vb, sb) == want:
                result = want
                break
        if old is _MISSING:
            sb.pop(var, None)
        else:
            sb[var] = old
        return result


class _NamedRef(_Node):
    __slots__ = ("key", "args", "params", "plan", "positive")

    def __init__(self, key, args, params, plan, positive):
        self.key, self.args, self.params, self.plan, self.positive = key, args, params, plan, positive
        self.fv, self.fs = frozenset(args), frozenset()
        self.cost = 1

    def ev(self, ctx, vb, sb):
        vals = tuple(vb[a] for a in self.args)
        table = ctx.cache.tables[self.key]
        r = table.get(vals)
        if r is None:
            ctx.cache.misses += 1
            r = self.plan.ev(ctx, dict(zip(self.params, vals)), {})
            table[vals] = r
        else:
            ctx.cache.hits += 1
        return r == self.positive


def _membership_vars(node: _Node, setvar: int) -> tuple[int, ...] | None:
    """Vertex variables tested for membership in ``setvar`` below ``node``.

    Returns None when some such variable is bound inside ``node`` itself, in
    which case the whole vertex set has to be enumerated.
    """
    found: set[int] = set()

    def walk(n: _Node, inner: frozenset[int]) -> bool:
        if setvar not in n.fs:
            return True
        if isinstance(n, _Mem):
            if n.a in inner:
                return False
            found.add(n.a)
            return True
        if isinstance(n, _And):
            return all(walk(p, inner) for p in n.parts)
        if isinstance(n, _VertexQ):
            return walk(n.body, inner | {n.var})
        if isinstance(n, (_SetQ, _Vacuous)):
            return walk(n.body, inner)
        return False

    return tuple(sorted(found)) if walk(node, frozenset()) else None


def _split(parts, var_in):
    dep = [p for p in parts if var_in(p)]
    indep = [p for p in parts if not var_in(p)]
    return dep, indep


def _join(cls, parts):
    return parts[0] if len(parts) == 1 else cls(parts)


def _push(universal: bool, is_set: bool, var: int, f: _Node) -> _Node:
    """Place a quantifier over ``f`` as deep as equivalence allows."""
    if is_set:
        def var_in(p):
            return var in p.fs
    else:
        def var_in(p):
            return var in p.fv
    if not var_in(f):
        return f if is_set else _Vacuous(universal, f)
    if is_set and isinstance(f, _VertexQ) and f.universal == universal:
        # same-kind quantifiers commute; keep set quantifiers innermost
        return _push(universal, False, f.var, _push(universal, True, var, f.body))
    if is_set and isinstance(f, _Vacuous) and f.universal == universal:
        return _Vacuous(universal, _push(universal, True, var, f.body))
    distributes = _And if universal else _Or
    if type(f) is distributes:
        return distributes([_push(universal, is_set, var, p) for p in f.parts])
    other = _Or if universal else _And
    if type(f) is other:
        dep, indep = _split(f.parts, var_in)
        if indep:
            inner = _push(universal, is_set, var, _join(other, dep))
            return other(indep + [inner])
    return (_SetQ if is_set else _VertexQ)(universal, var, f)


def _canonical_key(body: Formula, params: tuple[int, ...]) -> str:
    """Print ``body`` with params numbered by position and binders renamed in order."""
    counter = [len(params)]
    scounter = [0]

    def go(h, vmap, smap):
        if isinstance(h, Adjacent):
            return Adjacent(vmap[h.a], vmap[h.b])
        if isinstance(h, Equal):
            return Equal(vmap[h.a], vmap[h.b])
        if isinstance(h, Member):
            return Member(vmap[h.var], smap[h.setvar])
        if isinstance(h, Or):
            return Or(go(h.left, vmap, smap), go(h.right, vmap, smap))
        if isinstance(h, Not):
            return Not(go(h.body, vmap, smap))
        if isinstance(h, ExistsVertex):
            counter[0] += 1
            return ExistsVertex(counter[0], go(h.body, {**vmap, h.var: counter[0]}, smap))
        if isinstance(h, ExistsSet):
            scounter[0] += 1
            return ExistsSet(scounter[0], go(h.body, vmap, {**smap, h.var: scounter[0]}))
        if isinstance(h, Named):
            return Named(h.name, tuple(vmap[p] for p in h.params), go(h.body, vmap, smap))
        raise TypeError(h)

    vmap = {p: i + 1 for i, p in enumerate(params)}
    return print_formula(go(body, vmap, {}))


class _Compiler:
    def __init__(self, cache: PredicateCache):
        self.cache = cache
        self.plans: dict[str, tuple[tuple[int, ...], _Node]] = {}

    def compile(self, f: Formula) -> _Node:
        return self.nnf(desugar(f), True)

    def nnf(self, f: Formula, pos: bool) -> _Node:
        if isinstance(f, Adjacent):
            return _Adj(f.a, f.b, pos)
        if isinstance(f, Equal):
            return _Eq(f.a, f.b, pos)
        if isinstance(f, Member):
            return _Mem(f.var, f.setvar, pos)
        if isinstance(f, Not):
            return self.nnf(f.body, not pos)
        if isinstance(f, Or):
            cls = _Or if pos else _And
            parts = []
            for side in (f.left, f.right):
                p = self.nnf(side, pos)
                parts.extend(p.parts if type(p) is cls else [p])
            return cls(parts)
        if isinstance(f, ExistsVertex):
            return _push(not pos, False, f.var, self.nnf(f.body, pos))
        if isinstance(f, ExistsSet):
            return _push(not pos, True, f.var, self.nnf(f.body, pos))
        if isinstance(f, Named):
            return self.named(f, pos)
        raise TypeError(f"unexpected node after desugaring: {f!r}")

    def named(self, f: Named, pos: bool) -> _Node:
        fv, fs = free_variables(f.body)
        if fs or not fv <= set(f.params) or len(set(f.params)) != len(f.params):
            return self.nnf(f.body, pos)
        key = _canonical_key(f.body, f.params)
        if key not in self.plans:
            self.plans[key] = (f.params, self.nnf(f.body, True))
        self.cache.tables.setdefault(key, {})
        self.cache.names.setdefault(f.name, set()).add(key)
        params, plan = self.plans[key]
        return _NamedRef(key, f.params, params, plan, pos)


class CachedEvaluator:
    """Planned evaluator bound to one structure; plans and tables are reused across calls."""

    def __init__(self, s: Structure | Graph, cache: PredicateCache | None = None, *, set_cap: int = DEFAULT_SET_CAP):
        if isinstance(s, Graph):
            s = Structure(s)
        self.structure = s
        self.cache = cache if cache is not None else PredicateCache()
        self.cache.bind(s)
        self.set_cap = set_cap
        self._compiler = _Compiler(self.cache)
        self._plans: dict[int, tuple[Formula, _Node]] = {}

    def plan(self, f: Formula) -> _Node:
        hit = self._plans.get(id(f))
        if hit is None or hit[0] is not f:
            hit = (f, self._compiler.compile(f))
            self._plans[id(f)] = hit
        return hit[1]

    def check(self, f: Formula, env: Environment | None = None) -> bool:
        vb, sb = _bindings(self.structure, env)
        _check_bound(f, vb, sb)
        ctx = _Ctx(self.structure.graph, self.cache, self.set_cap)
        masks = {k: sum(1 << v for v in vs) for k, vs in sb.items()}
        return self.plan(f).ev(ctx, vb, masks)

    def table(self, f: Formula, var: int = 1) -> list[bool]:
        """Truth value of a one-free-variable formula at every vertex."""
        return [self.check(f, Environment({var: v})) for v in range(self.structure.graph.n)]


def evaluate_with_cache(
    s: Structure,
    f: Formula,
    env: Environment | None = None,
    cache: PredicateCache | None = None,
    *,
    set_cap: int = DEFAULT_SET_CAP,
) -> bool:
    return CachedEvaluator(s, cache, set_cap=set_cap).check(f, env)


def check_sentence(g: Graph, f: Formula, *, set_cap: int = DEFAULT_SET_CAP, cached: bool = True) -> bool:
    """Decide ``g |= f`` for a sentence ``f`` with nothing labeled or colored."""
    fv, fs = free_variables(f)
    if fv or fs:
        raise NotASentenceError("formula has free variables: " + ", ".join(
            [f"x{v}" for v in sorted(fv)] + [f"X{v}" for v in sorted(fs)]))
    s = Structure(g)
    if cached:
        return evaluate_with_cache(s, f, set_cap=set_cap)
    return model_check(s, f, set_cap=set_cap)
