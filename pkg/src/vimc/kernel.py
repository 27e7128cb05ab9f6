"""Component types and the same-type-component kernel for FO and MSO sentences.

Removing one of ``q + 1`` same-type components of ``G - S`` never changes the
truth of an FO sentence with ``q`` quantifiers; for MSO with ``q1`` vertex and
``q2`` set quantifiers over components of size at most ``c`` the threshold is
``2^(c*q2) * q1 + 1``. The kernel keeps that many copies minus one per type.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import CapacityError, WrongFragmentError
from .graph import Graph, _check_ids, components_after_removal, delete_vertices
from .logic.transform import QuantifierProfile

SIGNATURE_LIMIT = 10
KEEP_LIMIT_CAP = 2**48


@dataclass(frozen=True, order=True)
class ComponentSignature:
    """Canonical code of a component: size, per-vertex S-neighborhoods, inner adjacency bits."""

    size: int
    attachments: tuple[tuple[int, ...], ...]
    adjacency: tuple[int, ...]

    def to_bytes(self) -> bytes:
        return json.dumps([self.size, self.attachments, self.adjacency], separators=(",", ":")).encode()

    def hex(self) -> str:
        return self.to_bytes().hex()


def _adjacency_bits(g: Graph, order: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(g.has_edge(order[i], order[j])) for i, j in itertools.combinations(range(len(order)), 2))


def _refine(g: Graph, c: Sequence[int], att: dict[int, tuple[int, ...]]) -> dict[int, int]:
    """Colour refinement inside ``c`` starting from the attachments; colours are ranks."""
    inside = set(c)

    def rank(keys):
        order = {k: i for i, k in enumerate(sorted(set(keys.values())))}
        return {v: order[keys[v]] for v in keys}

    colour = rank({v: att[v] for v in c})
    while True:
        keys = {v: (colour[v], tuple(sorted(colour[w] for w in g.adjacency[v] if w in inside))) for v in c}
        new = rank(keys)
        if len(set(new.values())) == len(set(colour.values())):
            return new
        colour = new


def component_signature(
    g: Graph, s: Iterable[int], c: Sequence[int], *, exact: bool = True, limit: int = SIGNATURE_LIMIT
) -> ComponentSignature:
    """Signature of component ``c`` of ``g - s``.

    With ``exact`` the code is the minimum over all vertex orderings that
    respect an isomorphism-invariant colouring, so equal signatures coincide
    with type isomorphism. Otherwise the vertices are taken in id order, which
    only guarantees that equal codes imply the same type.
    """
    s = _check_ids(g, s)
    c = sorted(_check_ids(g, c))
    if len(c) > limit:
        raise CapacityError(f"component of size {len(c)} exceeds the signature limit {limit}")
    att = {v: tuple(w for w in g.adjacency[v] if w in s) for v in c}
    if not exact:
        return ComponentSignature(len(c), tuple(att[v] for v in c), _adjacency_bits(g, c))
    # vertices are ordered by an isomorphism-invariant colour (attachment first,
    # then refined by neighbour colours), so only orderings inside colour
    # classes compete for the minimum
    colour = _refine(g, c, att)
    c.sort(key=lambda v: colour[v])
    classes = [list(grp) for _, grp in itertools.groupby(c, key=lambda v: colour[v])]
    best = None
    for choice in itertools.product(*(itertools.permutations(cls) for cls in classes)):
        order = [v for part in choice for v in part]
        bits = _adjacency_bits(g, order)
        if best is None or bits < best:
            best = bits
    return ComponentSignature(len(c), tuple(att[v] for v in c), best)


def fo_keep_limit(profile: QuantifierProfile) -> int:
    if profile.q2:
        raise WrongFragmentError("FO keep limit asked for a formula with set quantifiers")
    return max(1, profile.q)


def mso_keep_limit(c: int, profile: QuantifierProfile, *, cap: int = KEEP_LIMIT_CAP) -> int:
    """``2^(c*q2) * q1`` copies per type, at least one."""
    if c < 1:
        raise ValueError("component size bound must be at least 1")
    value = 2 ** (c * profile.q2) * profile.q1
    if value > cap:
        raise CapacityError(f"keep limit 2^{c * profile.q2} * {profile.q1} = {value} exceeds the cap {cap}")
    return max(1, value)


@dataclass
class KernelReport:
    original_components: int
    type_count: int
    keep_limit: int
    removed_vertices: int
    kept_per_type: dict[str, int]
    # bookkeeping, not part of the JSON report
    max_component_size: int = 0
    kept_components: int = 0
    separator: tuple[int, ...] = ()
    renumbering: dict[int, int] = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {
            "original_components": self.original_components,
            "type_count": self.type_count,
            "keep_limit": self.keep_limit,
            "removed_vertices": self.removed_vertices,
            "kept_per_type": dict(self.kept_per_type),
        }


def keep_limit_for(profile: QuantifierProfile, c: int) -> int:
    if profile.q2 == 0:
        return fo_keep_limit(profile)
    return mso_keep_limit(max(c, 1), profile)


def kernelize(
    g: Graph, s: Iterable[int], profile: QuantifierProfile, *, exact: bool = True
) -> tuple[Graph, KernelReport]:
    """Drop surplus same-type components of ``g - s``.

    Within each type the components with the smallest minimum vertex id are
    kept. The separator survives in full; ``report.separator`` holds its ids
    in the returned graph.
    """
    s = _check_ids(g, s)
    comps = components_after_removal(g, s)
    c = max((len(x) for x in comps), default=0)
    keep = keep_limit_for(profile, c)
    groups: dict[ComponentSignature, list[tuple[int, ...]]] = {}
    for comp in comps:
        groups.setdefault(component_signature(g, s, comp, exact=exact), []).append(comp)
    doomed = []
    kept_per_type = {}
    for sig, members in groups.items():
        kept_per_type[sig.hex()] = min(keep, len(members))
        for comp in members[keep:]:
            doomed.extend(comp)
    kernel, renum = delete_vertices(g, doomed)
    report = KernelReport(
        original_components=len(comps),
        type_count=len(groups),
        keep_limit=keep,
        removed_vertices=len(doomed),
        kept_per_type=kept_per_type,
        max_component_size=c,
        kept_components=sum(kept_per_type.values()),
        separator=tuple(sorted(renum[v] for v in s)),
        renumbering=renum,
    )
    return kernel, report
