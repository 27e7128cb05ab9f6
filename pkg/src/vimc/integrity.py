"""Exact vertex integrity by exhaustive separator search."""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import CapacityError
from .graph import Graph, _check_ids, mask_of

DEFAULT_LIMIT = 24


@dataclass(frozen=True)
class Separator:
    s: tuple[int, ...]
    k: int
    max_component_size: int

    def to_json(self) -> dict:
        return {"separator": list(self.s), "integrity": self.k, "max_component_size": self.max_component_size}


def _largest_component(masks, alive: int, cap: int) -> int:
    """Size of the largest component inside ``alive``; stops early once it exceeds ``cap``."""
    largest = 0
    while alive:
        comp = frontier = alive & -alive
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = masks[bit.bit_length() - 1] & alive & ~comp
            comp |= new
            frontier |= new
        size = comp.bit_count()
        if size > largest:
            largest = size
            if largest > cap:
                return largest
        alive &= ~comp
    return largest


def vertex_integrity_exact(g: Graph, *, limit: int = DEFAULT_LIMIT) -> Separator:
    """Minimum of |S| + (largest component of g - S) over all vertex sets S.

    Candidates are scanned by size and then lexicographically, and only strict
    improvements replace the incumbent, so the returned S is the first optimal
    set in that order.
    """
    n = g.n
    if n > limit:
        raise CapacityError(
            f"exhaustive integrity search is limited to {limit} vertices (got {n}); "
            "supply a separator and use verify_separator instead"
        )
    if n == 0:
        return Separator((), 0, 0)
    full = (1 << n) - 1
    best_k = _largest_component(g.masks, full, n)
    best = Separator((), best_k, best_k)
    for size in range(1, n):
        if size + 1 >= best.k:
            break
        cap = best.k - size - 1
        for combo in itertools.combinations(range(n), size):
            comp = _largest_component(g.masks, full & ~mask_of(combo), cap)
            if comp <= cap:
                best = Separator(combo, size + comp, comp)
                cap = best.k - size - 1
    return best


def verify_separator(g: Graph, s: Iterable[int], k: int) -> bool:
    """True iff |s| plus the largest component of ``g - s`` is at most ``k``."""
    s = _check_ids(g, s)
    alive = ((1 << g.n) - 1) & ~mask_of(s)
    return len(s) + _largest_component(g.masks, alive, g.n) <= k
