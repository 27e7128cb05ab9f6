"""The hardness instance H(G) and the formulas that read G back out of it.

Every vertex ``v_i`` of G (``i`` is 1-based, ``v_i`` is vertex ``i - 1``)
becomes a k-clique ``W_i`` whose attachments to the hub ``S`` spell ``i - 1``
in binary, and every edge becomes a gadget ``Y_j`` that copies the
attachments of its two endpoint cliques. Pendant leaves of different
multiplicities let first-order formulas tell the parts apart.

Formula builders take the variable indices to use for their free variables
plus ``fresh``, the smallest index that is free to bind. Every builder binds
only indices from ``fresh`` upwards, so composed formulas never shadow.
"""

from __future__ import annotations

import functools
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

from .eval import CachedEvaluator, Environment
from .graph import Graph, Structure, components_after_removal
from .integrity import verify_separator
from .logic.ast import (
    Adjacent,
    Equal,
    ExistsSet,
    ExistsVertex,
    ForallVertex,
    Formula,
    Iff,
    Implies,
    Member,
    Named,
    Not,
    NotEqual,
    Or,
    conj,
    disj,
)

ROLES = ("S", "W", "Y1", "Y2")
LEAVES_PER_ROLE = {"S": 0, "W": 1, "Y1": 2, "Y2": 3, "center": 4}


def block_parameter(n: int) -> int:
    """Smallest k with k^2 >= ceil(log2 n)."""
    if n < 2:
        raise ValueError("the construction needs at least two vertices")
    bits = math.ceil(math.log2(n))
    k = max(1, math.isqrt(bits))
    while k * k < bits:
        k += 1
    return k


def code_bit(i: int, beta: int, gamma: int, k: int) -> bool:
    """Bit (beta-1)*k + gamma of i-1, counting from 1 at the least significant end."""
    return ((i - 1) >> ((beta - 1) * k + gamma - 1)) & 1 == 1


@dataclass
class HMeta:
    k: int
    s_vertices: tuple[int, ...]
    w_vertices: dict[tuple[int, int], int]
    y_vertices: dict[tuple[int, int, int], int]
    y_centers: dict[int, int]
    leaf_owner: dict[int, int]
    edge_numbering: dict[int, tuple[int, int]]
    roles: dict[int, str] = field(default_factory=dict, repr=False)

    def role(self, v: int) -> str:
        return self.roles[v]

    def block_of(self, v: int) -> int | None:
        for (i, _), w in self.w_vertices.items():
            if w == v:
                return i
        return None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "s_vertices": list(self.s_vertices),
            "w_vertices": [[i, b, v] for (i, b), v in sorted(self.w_vertices.items())],
            "y_vertices": [[j, b, part, v] for (j, b, part), v in sorted(self.y_vertices.items())],
            "y_centers": [[j, v] for j, v in sorted(self.y_centers.items())],
            "leaf_owner": [[v, o] for v, o in sorted(self.leaf_owner.items())],
            "edge_numbering": [[j, a, b] for j, (a, b) in sorted(self.edge_numbering.items())],
            "roles": [self.roles[v] for v in sorted(self.roles)],
        }


@dataclass
class HInstance:
    graph: Graph
    meta: HMeta
    source: Graph
    _evaluator: CachedEvaluator | None = field(default=None, repr=False, compare=False)

    def evaluator(self) -> CachedEvaluator:
        """Planned evaluator on H whose predicate tables persist across calls."""
        if self._evaluator is None:
            self._evaluator = CachedEvaluator(Structure(self.graph))
        return self._evaluator

    def expected_order(self) -> int:
        k, n, m = self.meta.k, self.source.n, len(self.source.edges)
        return n * 2 * k + m * (2 * k + 1 + 2 * k + 3 * k + 4) + 2 * k


def build_h(g: Graph) -> HInstance:
    """Build H(G).

    The hub S is made a clique. With an independent hub, a hub vertex with a
    single neighbour is indistinguishable from a leaf, which already happens
    for n = 2 and n = 3 and breaks the leaf-counting role formulas.
    """
    n = g.n
    k = block_parameter(n)
    edges = g.sorted_edges()
    roles: dict[int, str] = {}
    s = tuple(range(2 * k))
    for v in s:
        roles[v] = "S"
    nxt = 2 * k
    w_vertices = {}
    for i in range(1, n + 1):
        for beta in range(1, k + 1):
            w_vertices[(i, beta)] = nxt
            roles[nxt] = "W"
            nxt += 1
    y_vertices = {}
    y_centers = {}
    edge_numbering = {}
    for j, (u, v) in enumerate(edges, start=1):
        edge_numbering[j] = (u + 1, v + 1)
        for part in (1, 2):
            for beta in range(1, k + 1):
                y_vertices[(j, beta, part)] = nxt
                roles[nxt] = f"Y{part}"
                nxt += 1
        y_centers[j] = nxt
        roles[nxt] = "center"
        nxt += 1

    adj: set[tuple[int, int]] = set()

    def link(a: int, b: int) -> None:
        adj.add((min(a, b), max(a, b)))

    for a in s:
        for b in s:
            if a < b:
                link(a, b)

    def hub_neighbours(i: int, beta: int) -> list[int]:
        out = [s[beta - 1]]
        out.extend(s[k + gamma - 1] for gamma in range(1, k + 1) if code_bit(i, beta, gamma, k))
        return out

    for i in range(1, n + 1):
        block = [w_vertices[(i, b)] for b in range(1, k + 1)]
        for x in block:
            for y in block:
                if x < y:
                    link(x, y)
        for beta in range(1, k + 1):
            for t in hub_neighbours(i, beta):
                link(w_vertices[(i, beta)], t)
    for j, (i1, i2) in edge_numbering.items():
        for part, i in ((1, i1), (2, i2)):
            block = [y_vertices[(j, b, part)] for b in range(1, k + 1)]
            for x in block:
                link(x, y_centers[j])
                for y in block:
                    if x < y:
                        link(x, y)
            for beta in range(1, k + 1):
                for t in hub_neighbours(i, beta):
                    link(y_vertices[(j, beta, part)], t)

    leaf_owner = {}
    owners = sorted(v for v, r in roles.items() if r != "S")
    for o in owners:
        for _ in range(LEAVES_PER_ROLE[roles[o]]):
            leaf_owner[nxt] = o
            roles[nxt] = "leaf"
            link(o, nxt)
            nxt += 1

    meta = HMeta(k, s, w_vertices, y_vertices, y_centers, leaf_owner, edge_numbering, roles)
    return HInstance(Graph(nxt, adj), meta, g)


def hub_neighbourhood(h: HInstance, v: int) -> frozenset[int]:
    s = set(h.meta.s_vertices)
    return frozenset(w for w in h.graph.adjacency[v] if w in s)


def property2_holds(h: HInstance) -> bool:
    """Each W_i has a vertex whose hub neighbourhood no vertex of W_i' shares, for all i' != i."""
    n, k = h.source.n, h.meta.k
    nbhd = {
        i: [hub_neighbourhood(h, h.meta.w_vertices[(i, b)]) for b in range(1, k + 1)] for i in range(1, n + 1)
    }
    for i in range(1, n + 1):
        for i2 in range(1, n + 1):
            if i != i2 and not any(all(a != b for b in nbhd[i2]) for a in nbhd[i]):
                return False
    return True


def census(h: HInstance) -> dict:
    """Component sizes of H - S and the integrity bound they certify."""
    comps = components_after_removal(h.graph, h.meta.s_vertices)
    sizes: dict[int, int] = {}
    for c in comps:
        sizes[len(c)] = sizes.get(len(c), 0) + 1
    biggest = max(sizes, default=0)
    bound = len(h.meta.s_vertices) + biggest
    return {
        "vertices": h.graph.n,
        "expected_vertices": h.expected_order(),
        "separator_size": len(h.meta.s_vertices),
        "component_sizes": dict(sorted(sizes.items())),
        "max_component_size": biggest,
        "integrity_bound": bound,
        "bound_verified": verify_separator(h.graph, h.meta.s_vertices, bound),
    }


# formulas -----------------------------------------------------------------


def phi_leaf_at_least(c: int, x: int = 1, fresh: int | None = None) -> Formula:
    """``x`` has at least ``c`` neighbours whose only neighbour is ``x``."""
    if not 1 <= c <= 4:
        raise ValueError("leaf count must be between 1 and 4")
    f = x + 1 if fresh is None else fresh
    ys = list(range(f, f + c))
    z = f + c
    parts: list[Formula] = [Adjacent(y, x) for y in ys]
    parts += [NotEqual(a, b) for idx, a in enumerate(ys) for b in ys[idx + 1 :]]
    parts.append(Or(Equal(z, x), conj(*[Not(Adjacent(z, y)) for y in ys])))
    body: Formula = ForallVertex(z, conj(*parts))
    for y in reversed(ys):
        body = ExistsVertex(y, body)
    return Named(f"phi_{c}", (x,), body)


def phi_pendant(x: int = 1, fresh: int | None = None) -> Formula:
    """``x`` has exactly one neighbour."""
    f = x + 1 if fresh is None else fresh
    y, z = f, f + 1
    body = ExistsVertex(y, ForallVertex(z, conj(*[Adjacent(y, x), Or(Not(Adjacent(z, x)), Equal(z, y))])))
    return Named("phi_pendant", (x,), body)


def phi_role(role: str, x: int = 1, fresh: int | None = None) -> Formula:
    """Role predicate; leaves satisfy none of the four roles."""
    f = x + 1 if fresh is None else fresh

    def at(c):
        return phi_leaf_at_least(c, x, f)

    if role == "S":
        body = conj(*[Not(at(1)), Not(phi_pendant(x, f))])
    elif role == "W":
        body = conj(*[at(1), Not(at(2))])
    elif role == "Y1":
        body = conj(*[at(2), Not(at(3))])
    elif role == "Y2":
        body = conj(*[at(3), Not(at(4))])
    else:
        raise ValueError(f"unknown role {role!r}; expected one of {', '.join(ROLES)}")
    return Named(f"phi_{role}", (x,), body)


def phi_wy_part(alpha: int, a: int = 1, b: int = 2, fresh: int | None = None) -> Formula:
    """``a`` lies in some W_i, ``b`` in some Y_j^alpha, and every hub pattern of W_i appears in Y_j^alpha."""
    if alpha not in (1, 2):
        raise ValueError("alpha must be 1 or 2")
    f = max(a, b) + 1 if fresh is None else fresh
    x3, x4, x5 = f, f + 1, f + 2
    inner = f + 3
    y_role = f"Y{alpha}"
    same_hub = ForallVertex(
        x5, Implies(phi_role("S", x5, inner), Iff(Adjacent(x5, x3), Adjacent(x5, x4)))
    )
    matched = ExistsVertex(
        x4,
        conj(*[phi_role(y_role, x4, inner), Or(Adjacent(x4, b), Equal(x4, b)), same_hub]),
    )
    every = ForallVertex(
        x3,
        disj(*[Not(phi_role("W", x3, inner)), conj(*[Not(Adjacent(x3, a)), Not(Equal(x3, a))]), matched]),
    )
    return conj(*[phi_role("W", a, inner), phi_role(y_role, b, inner), every])


def phi_wy(a: int = 1, b: int = 2, fresh: int | None = None) -> Formula:
    f = max(a, b) + 1 if fresh is None else fresh
    return Named("phi_WY", (a, b), Or(phi_wy_part(1, a, b, f), phi_wy_part(2, a, b, f)))


def phi_adj(a: int = 1, b: int = 2, fresh: int | None = None) -> Formula:
    """``a`` in W_i and ``b`` in W_i' with v_i v_i' an edge of G."""
    f = max(a, b) + 1 if fresh is None else fresh
    x3, x4, x5 = f, f + 1, f + 2
    inner = f + 3

    def role(r, v):
        return phi_role(r, v, inner)

    split = Or(conj(*[role("Y1", x3), role("Y2", x4)]), conj(*[role("Y1", x4), role("Y2", x3)]))
    shared = ExistsVertex(x5, conj(*[Not(role("S", x5)), Adjacent(x3, x5), Adjacent(x4, x5)]))
    gadget = ExistsVertex(
        x3, ExistsVertex(x4, conj(*[split, phi_wy(a, x3, inner), phi_wy(b, x4, inner), shared]))
    )
    return Named("phi_adj", (a, b), conj(*[role("W", a), role("W", b), gadget]))


def phi_clique(q: int) -> Formula:
    """H(G) satisfies this sentence iff G has a clique on q vertices."""
    if q < 2:
        raise ValueError("clique size must be at least 2")
    xs = list(range(1, q + 1))
    u, w = q + 1, q + 2
    fresh = q + 3
    guard = disj(
        conj(*[Not(Equal(u, x)) for x in xs]),
        conj(*[Not(Equal(w, x)) for x in xs]),
        Equal(u, w),
        phi_adj(u, w, fresh),
    )
    parts: list[Formula] = [phi_role("W", x, fresh) for x in xs]
    parts += [NotEqual(a, b) for a in xs for b in xs if a != b]
    parts.append(ForallVertex(u, ForallVertex(w, guard)))
    body: Formula = conj(*parts)
    for x in reversed(xs):
        body = ExistsVertex(x, body)
    return body


@functools.cache
def three_col_matrix() -> Formula:
    """The part of the 3-colouring sentence below its set quantifiers."""
    cover = disj(*[Member(1, 1), Member(1, 2), Member(1, 3)])
    proper = conj(
        *[Implies(phi_adj(1, 2, 3), Implies(Member(1, i), Not(Member(2, i)))) for i in (1, 2, 3)]
    )
    return ForallVertex(1, ForallVertex(2, conj(*[cover, proper])))


def phi_three_col() -> Formula:
    """H(G) satisfies this sentence iff G is 3-colourable."""
    return ExistsSet(1, ExistsSet(2, ExistsSet(3, three_col_matrix())))


def witness_sets(h: HInstance, coloring: Mapping[int, int]) -> dict[int, frozenset[int]]:
    n, k = h.source.n, h.meta.k
    missing = [v for v in range(n) if v not in coloring]
    if missing:
        raise ValueError(f"coloring leaves vertices {missing} uncoloured")
    if any(coloring[v] not in (1, 2, 3) for v in range(n)):
        raise ValueError("colours must be 1, 2 or 3")
    sets = {}
    for alpha in (1, 2):
        sets[alpha] = frozenset(
            h.meta.w_vertices[(v + 1, b)] for v in range(n) if coloring[v] == alpha for b in range(1, k + 1)
        )
    sets[3] = frozenset(range(h.graph.n)) - sets[1] - sets[2]
    return sets


def witness_check_three_col(h: HInstance, coloring: Mapping[int, int]) -> bool:
    """Bind the colour classes, lifted to H, to X1..X3 and evaluate the matrix."""
    return h.evaluator().check(three_col_matrix(), Environment(sets=witness_sets(h, coloring)))
