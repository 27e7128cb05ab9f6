"""Simple undirected graphs over dense integer ids, structures, and component utilities."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import InvalidVertexError

Component = tuple[int, ...]


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Neighbor lists are kept sorted so every iteration order is deterministic.
    ``masks[v]`` is the neighborhood of ``v`` as an int bitmask.
    """

    __slots__ = ("n", "edges", "adjacency", "masks", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            norm.add((u, v) if u < v else (v, u))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = frozenset(norm)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self.masks = tuple(sum(1 << w for w in a) for a in self.adjacency)
        self._hash = None

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    # a few constructors used throughout the tests and the CLI

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, itertools.combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)


def joined_stars(leaves: int) -> Graph:
    """Two stars K_{1,leaves} whose centers (0 and leaves+1) are adjacent."""
    c2 = leaves + 1
    edges = [(0, c2)]
    edges += [(0, i) for i in range(1, leaves + 1)]
    edges += [(c2, c2 + i) for i in range(1, leaves + 1)]
    return Graph(2 * leaves + 2, edges)


@dataclass(frozen=True)
class Structure:
    """A graph with a partial labeling and a partial coloring.

    ``labeling`` maps a vertex-variable index to a vertex, ``coloring`` maps a
    set-variable index to a vertex set; both may be empty.
    """

    graph: Graph
    labeling: Mapping[int, int] = field(default_factory=dict)
    coloring: Mapping[int, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        n = self.graph.n
        for idx, v in self.labeling.items():
            if not 0 <= v < n:
                raise InvalidVertexError(f"label {idx} -> {v} outside the graph")
        coloring = {}
        for idx, vs in self.coloring.items():
            vs = frozenset(vs)
            if any(not 0 <= v < n for v in vs):
                raise InvalidVertexError(f"color class {idx} not a subset of the vertices")
            coloring[idx] = vs
        object.__setattr__(self, "coloring", coloring)
        object.__setattr__(self, "labeling", dict(self.labeling))


def _check_ids(g: Graph, vs: Iterable[int]) -> frozenset[int]:
    vs = frozenset(vs)
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InvalidVertexError(f"vertex {v!r} not in graph with n={g.n}")
    return vs


def mask_of(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def components_after_removal(g: Graph, s: Iterable[int]) -> list[Component]:
    """Connected components of ``g - s``, ordered by minimum vertex id."""
    removed = _check_ids(g, s)
    seen = set(removed)
    out = []
    for start in range(g.n):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def max_component_size(g: Graph, s: Iterable[int]) -> int:
    """Largest component of ``g - s``; 0 when nothing is left."""
    return max((len(c) for c in components_after_removal(g, s)), default=0)


def delete_vertices(g: Graph, c: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``V - c`` with ids compacted in increasing order.

    Returns the new graph and the old-id -> new-id map of the survivors.
    """
    gone = _check_ids(g, c)
    renum = {}
    for v in range(g.n):
        if v not in gone:
            renum[v] = len(renum)
    edges = [(renum[u], renum[v]) for u, v in g.edges if u in renum and v in renum]
    return Graph(len(renum), edges), renum


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    keep = _check_ids(g, keep)
    return delete_vertices(g, set(range(g.n)) - keep)


def apply_permutation(g: Graph, pi: Sequence[int] | Mapping[int, int]) -> Graph:
    """Relabel vertex ``v`` as ``pi[v]``."""
    images = [pi[v] for v in range(g.n)]
    if sorted(images) != list(range(g.n)):
        raise ValueError("pi is not a bijection on the vertex ids")
    return Graph(g.n, ((images[u], images[v]) for u, v in g.edges))


def inverse_permutation(pi: Sequence[int]) -> list[int]:
    inv = [0] * len(pi)
    for v, w in enumerate(pi):
        inv[w] = v
    return inv


def type_isomorphic(g: Graph, s: Iterable[int], c1: Sequence[int], c2: Sequence[int]) -> dict[int, int] | None:
    """Find a bijection ``c1 -> c2`` preserving inner edges and S-neighborhoods.

    Exhaustive over permutations of ``c2``; meant for small components only.
    """
    s_mask = mask_of(_check_ids(g, s))
    c1 = sorted(_check_ids(g, c1))
    c2 = sorted(_check_ids(g, c2))
    if set(c1) & set(c2):
        raise ValueError("components overlap")
    if len(c1) != len(c2):
        return None
    att1 = [g.masks[v] & s_mask for v in c1]
    att2 = {v: g.masks[v] & s_mask for v in c2}
    if sorted(att1) != sorted(att2.values()):
        return None
    for perm in itertools.permutations(c2):
        if any(att1[i] != att2[w] for i, w in enumerate(perm)):
            continue
        ok = True
        for i, j in itertools.combinations(range(len(c1)), 2):
            if g.has_edge(c1[i], c1[j]) != g.has_edge(perm[i], perm[j]):
                ok = False
                break
        if ok:
            return dict(zip(c1, perm))
    return None
