"""Wing decomposition of a color class around the amalgam vertex.

A wing is a maximal piece of a color class that hangs off the amalgam in
one "direction": a connected sub-hypergraph in which the amalgam is not a
cut vertex and whose non-amalgam vertices touch no edge outside the
piece.  Operationally the wings of a class are found by deleting the
amalgam's occurrences from every edge and taking connected components of
what remains; every component, together with the class edges meeting it,
is one wing, and every all-amalgam loop edge is a wing of its own.

The decomposition drives the connectivity side of the splitting pipeline:
moving a strict, nonempty part of some multi-hinge wing's hinges to the
new vertex is exactly what keeps the class connected after a split.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .hypercore import ColoredMultiHypergraph, Edge, HingeRef


class _DSU:
    """Union-find over arbitrary hashable items."""

    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = p = self.parent[p]
            x, p = p, self.parent[p]
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def is_connected(vertices: Iterable[int], edges: Iterable[Sequence[int]]) -> bool:
    """Connectivity of a hypergraph given as declared vertices plus edges.

    Every declared vertex must land in the single component; a declared
    vertex incident with no edge therefore makes the answer False (unless
    it is the only vertex).  Edges may be multisets; repeats are ignored
    for reachability.
    """
    verts = set(vertices)
    dsu = _DSU()
    for e in edges:
        vs = set(e)
        verts |= vs
        it = iter(vs)
        try:
            first = next(it)
        except StopIteration:
            continue
        for v in it:
            dsu.union(first, v)
    if len(verts) <= 1:
        return True
    roots = {dsu.find(v) for v in verts}
    return len(roots) == 1


@dataclass(frozen=True)
class Wing:
    """One wing: its amalgam hinges, edge ids, and vertex set (amalgam included)."""

    hinges: frozenset
    edge_ids: frozenset
    vertex_set: frozenset

    @property
    def d_alpha(self) -> int:
        return len(self.hinges)


@dataclass(frozen=True)
class WingDecomposition:
    """All wings of one color class plus the union of multi-hinge wing hinges."""

    wings: tuple[Wing, ...]
    big_hinges: frozenset

    @property
    def delta(self) -> int:
        """Number of amalgam hinges lying in wings with 2+ hinges."""
        return len(self.big_hinges)


def wing_decomposition(edges: Sequence[Edge], alpha: int) -> WingDecomposition:
    """Decompose one color class into wings around `alpha`.

    Pure loop edges (all occurrences equal to `alpha`) each form their own
    wing.  Every other edge is grouped by the connected component its
    non-amalgam vertices fall into once the amalgam is deleted; each
    component that is met by at least one amalgam-incident edge yields one
    wing.  Components never touching the amalgam contribute no wings (the
    class is then disconnected, which the caller's invariants catch).
    """
    loops: list[Edge] = []
    others: list[tuple[Edge, tuple[int, ...]]] = []
    for e in edges:
        rest = tuple(v for v in e.verts if v != alpha)
        if rest:
            others.append((e, rest))
        else:
            loops.append(e)

    dsu = _DSU()
    for _, rest in others:
        first = rest[0]
        for v in rest[1:]:
            dsu.union(first, v)

    groups: dict[int, list[tuple[Edge, tuple[int, ...]]]] = {}
    for e, rest in others:
        groups.setdefault(dsu.find(rest[0]), []).append((e, rest))

    wings = []
    for e in loops:
        hinges = frozenset(HingeRef(e.id, s) for s in range(1, len(e.verts) + 1))
        wings.append(Wing(hinges, frozenset([e.id]), frozenset([alpha])))
    for root in sorted(groups, key=lambda x: min(ed.id for ed, _ in groups[x])):
        members = groups[root]
        hinges = set()
        verts = {alpha}
        eids = set()
        for e, rest in members:
            eids.add(e.id)
            verts.update(rest)
            p = e.verts.count(alpha)
            hinges.update(HingeRef(e.id, s) for s in range(1, p + 1))
        if hinges:
            wings.append(Wing(frozenset(hinges), frozenset(eids), frozenset(verts)))
    wings.sort(key=lambda w: min(w.edge_ids))

    big = frozenset().union(*(w.hinges for w in wings if w.d_alpha >= 2)) if any(
        w.d_alpha >= 2 for w in wings
    ) else frozenset()
    return WingDecomposition(tuple(wings), big)


def wing_decompositions(G: ColoredMultiHypergraph) -> dict[int, WingDecomposition]:
    """Wing decomposition of every color class of `G`, keyed by color."""
    by_color: dict[int, list[Edge]] = {i: [] for i in range(1, G.k + 1)}
    for e in G.edges():
        by_color[e.color].append(e)
    return {i: wing_decomposition(by_color[i], G.alpha) for i in range(1, G.k + 1)}


def split_is_connected(decomp: WingDecomposition, A: Iterable[HingeRef]) -> bool:
    """Whether detaching hinge set `A` from a connected class stays connected.

    True exactly when some wing with 2+ hinges gives up a nonempty proper
    part of its hinges to the new vertex.  The class itself must be
    connected for the criterion to apply.
    """
    chosen = set(A)
    for w in decomp.wings:
        if w.d_alpha >= 2 and 0 < len(chosen & w.hinges) < w.d_alpha:
            return True
    return False
