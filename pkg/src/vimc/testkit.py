"""Exhaustive oracles and seeded generators for the property suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import networkx as nx

from .errors import CapacityError
from .graph import Graph, mask_of, max_component_size
from .integrity import Separator, verify_separator
from .kernel import component_signature
from .logic.ast import (
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
    Not,
    NotEqual,
    Or,
)

ORACLE_LIMIT = 20
VC_LIMIT = 14


def rng_for(seed: int, *labels) -> random.Random:
    """Independent stream derived from ``seed`` and a label path.

    String seeds are hashed with SHA-512 by ``random.Random``, so streams are
    identical on every platform and Python build.
    """
    return random.Random(":".join(str(x) for x in (seed, *labels)))


# oracles ------------------------------------------------------------------


def _limit(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise CapacityError(f"{what} oracle is limited to {limit} vertices (got {g.n})")


def brute_clique(g: Graph, q: int) -> bool:
    """Whether some q vertices are pairwise adjacent."""
    _limit(g, ORACLE_LIMIT, "clique")
    if q < 0:
        raise ValueError("clique size must be non-negative")
    if q > g.n:
        return False
    masks = g.masks

    def grow(cands: int, need: int) -> bool:
        if need == 0:
            return True
        while cands and cands.bit_count() >= need:
            v = (cands & -cands).bit_length() - 1
            cands &= ~(1 << v)
            if grow(cands & masks[v], need - 1):
                return True
        return False

    return grow((1 << g.n) - 1, q)


def brute_three_color(g: Graph) -> dict[int, int] | None:
    """A proper colouring with colours 1..3, or None. Backtracks in id order."""
    _limit(g, ORACLE_LIMIT, "3-colouring")
    colour: dict[int, int] = {}

    def place(v: int) -> bool:
        if v == g.n:
            return True
        used = {colour[w] for w in g.adjacency[v] if w < v}
        for c in (1, 2, 3):
            if c not in used:
                colour[v] = c
                if place(v + 1):
                    return True
        colour.pop(v, None)
        return False

    return dict(colour) if place(0) else None


def brute_vertex_cover(g: Graph) -> int:
    _limit(g, VC_LIMIT, "vertex cover")
    edges = g.sorted_edges()
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            m = mask_of(combo)
            if all((m >> u) & 1 or (m >> v) & 1 for u, v in edges):
                return size
    return g.n


def is_proper_coloring(g: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges)


# graph enumeration --------------------------------------------------------


def graphs_up_to_isomorphism(n: int) -> list[Graph]:
    """One representative per isomorphism class on exactly n vertices (n <= 7)."""
    if not 0 <= n <= 7:
        raise CapacityError("the graph atlas covers 0 to 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == n:
            out.append(Graph(n, h.edges()))
    return out


def all_labelled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, (p for i, p in enumerate(pairs) if (bits >> i) & 1))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(n, (e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def random_permutation(rng: random.Random, n: int) -> list[int]:
    pi = list(range(n))
    rng.shuffle(pi)
    return pi


# generators ---------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorParams:
    seed: int
    n: int
    separator_size: int
    max_component_size: int
    component_type_pool: int
    formula_profile: tuple[int, int, int] = (2, 0, 4)  # (q1 max, q2 max, depth)
    copies: int | None = None  # fixed copies per template; otherwise fill up to n at random


def _template(rng: random.Random, size: int, s: int) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Random connected graph on ``size`` vertices plus random hub attachments."""
    edges = {(rng.randrange(v), v) for v in range(1, size)}
    for e in itertools.combinations(range(size), 2):
        if rng.random() < 0.3:
            edges.add(e)
    attach = [[t for t in range(s) if rng.random() < 0.5] for _ in range(size)]
    return sorted(edges), attach


def _template_key(edges, attach, s: int):
    size = len(attach)
    g = Graph(s + size, [(s + a, s + b) for a, b in edges] + [(t, s + v) for v in range(size) for t in attach[v]])
    return component_signature(g, range(s), range(s, s + size))


def random_graph_with_separator(p: GeneratorParams) -> tuple[Graph, Separator]:
    """Hub of ``separator_size`` vertices plus copies of pairwise different component templates.

    Vertex ids are shuffled at the end, so the separator is not simply 0..s-1.
    """
    s, c, pool = p.separator_size, p.max_component_size, p.component_type_pool
    if s < 0 or c < 1 or pool < 1 or p.n < s:
        raise ValueError(f"inconsistent generator parameters: {p}")
    if p.copies is not None and p.copies < 1:
        raise ValueError("copies must be positive")
    if p.copies is not None and p.n < s + pool * p.copies:
        raise ValueError(f"{pool} templates with {p.copies} copies do not fit in n={p.n}")
    rng = rng_for(p.seed, "graph", p.n, s, c, pool)
    templates = []
    seen = set()
    for _ in range(50 * pool):
        if len(templates) == pool:
            break
        size = rng.randint(1, c)
        if p.copies is not None:
            # leave room for the other templates
            size = min(size, max(1, (p.n - s) // (pool * p.copies)))
        t = _template(rng, size, s)
        key = _template_key(*t, s)
        if key not in seen:
            seen.add(key)
            templates.append(t)
    edges = [e for e in itertools.combinations(range(s), 2) if rng.random() < 0.5]
    nxt = s

    def place(t) -> None:
        nonlocal nxt
        tedges, attach = t
        edges.extend((nxt + a, nxt + b) for a, b in tedges)
        edges.extend((h, nxt + v) for v in range(len(attach)) for h in attach[v])
        nxt += len(attach)

    if p.copies is not None:
        for t in [t for t in templates for _ in range(p.copies)]:
            if nxt + len(t[1]) <= p.n:
                place(t)
    else:
        fits = [t for t in templates if nxt + len(t[1]) <= p.n]
        while fits:
            place(rng.choice(fits))
            fits = [t for t in templates if nxt + len(t[1]) <= p.n]
    pi = random_permutation(rng, nxt)
    g = Graph(nxt, ((pi[a], pi[b]) for a, b in edges))
    sep = tuple(sorted(pi[h] for h in range(s)))
    comp = max_component_size(g, sep)
    if comp > c or not verify_separator(g, sep, s + comp):
        raise AssertionError("generated graph does not admit its planted separator")
    return g, Separator(sep, s + comp, comp)


def random_formula(p: GeneratorParams) -> Formula:
    """Random sentence whose quantifier profile stays within ``p.formula_profile``.

    Budgets are counted the way ``quantifier_profile`` counts, so each side of a
    biconditional gets half of what is left. The outermost quantifier binds a
    vertex so that every atom has a variable to mention, and each new binder
    takes an index above all those in scope, so nothing is shadowed.
    """
    q1max, q2max, depth = p.formula_profile
    if q1max < 1:
        raise ValueError("sentences need at least one vertex quantifier")
    rng = rng_for(p.seed, "formula", q1max, q2max, depth)

    def atom(vs: list[int], ss: list[int]) -> Formula:
        kinds = ["adj", "adj", "eq", "neq"] + (["mem", "mem"] if ss else [])
        k = rng.choice(kinds)
        if k == "mem":
            return Member(rng.choice(vs), rng.choice(ss))
        # favour the innermost variable and distinct pairs; x ~ x is rarely informative
        a = vs[-1] if rng.random() < 0.5 else rng.choice(vs)
        others = [v for v in vs if v != a]
        b = rng.choice(others) if others and rng.random() < 0.85 else rng.choice(vs)
        return {"adj": Adjacent, "eq": Equal, "neq": NotEqual}[k](a, b)

    def gen(d: int, vs: list[int], ss: list[int], b1: int, b2: int) -> tuple[Formula, int, int]:
        if d <= 0 or (b1 == 0 and b2 == 0 and rng.random() < 0.4):
            return atom(vs, ss), 0, 0
        choices = ["not", "and", "or", "impl", "iff"]
        if b1:
            choices += ["ev", "av", "ev", "av"]
        if b2:
            choices += ["es", "as", "es"]
        k = rng.choice(choices)
        if k == "not":
            f, u1, u2 = gen(d - 1, vs, ss, b1, b2)
            return Not(f), u1, u2
        if k in ("ev", "av"):
            v = max(vs) + 1
            f, u1, u2 = gen(d - 1, vs + [v], ss, b1 - 1, b2)
            return (ExistsVertex if k == "ev" else ForallVertex)(v, f), u1 + 1, u2
        if k in ("es", "as"):
            v = max(ss, default=0) + 1
            f, u1, u2 = gen(d - 1, vs, ss + [v], b1, b2 - 1)
            return (ExistsSet if k == "es" else ForallSet)(v, f), u1, u2 + 1
        if k == "iff":
            left, l1, l2 = gen(d - 1, vs, ss, b1 // 2, b2 // 2)
            right, r1, r2 = gen(d - 1, vs, ss, b1 // 2 - l1, b2 // 2 - l2)
            return Iff(left, right), 2 * (l1 + r1), 2 * (l2 + r2)
        # hand a random share to the left, the rest to the right
        left, l1, l2 = gen(d - 1, vs, ss, rng.randint(0, b1), rng.randint(0, b2))
        right, r1, r2 = gen(d - 1, vs, ss, b1 - l1, b2 - l2)
        cls = {"and": And, "or": Or, "impl": Implies}[k]
        return cls(left, right), l1 + r1, l2 + r2

    body, _, _ = gen(depth, [1], [], q1max - 1, q2max)
    return (ExistsVertex if rng.random() < 0.5 else ForallVertex)(1, body)
