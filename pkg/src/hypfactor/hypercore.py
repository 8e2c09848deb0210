"""Multiset hypergraph core with addressable amalgam hinges.

Edges are vertex multisets stored as individual instances with stable
integer ids, so that a single occurrence of a vertex inside a single edge
can be addressed and moved.  One designated vertex, the amalgam, may occur
several times within an edge; each occurrence is a "hinge".  Splitting the
amalgam means retargeting a chosen set of hinges to a freshly created
vertex, one occurrence at a time, which is what `move_hinge` implements.

Degrees and shape multiplicities are recomputed from the edge store on
demand, behind a version-keyed cache.  At the edge counts this package
works with (a few thousand at most), linear scans are cheap and leave no
room for stale bookkeeping after a mutation.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import InvalidHingeError, ParameterError


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); 0 when k lies outside [0, n]."""
    if n < 0:
        raise ParameterError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


class HingeRef(NamedTuple):
    """One occurrence of the amalgam inside one edge instance.

    `slot` is 1-based and positional within the edge's current amalgam
    multiplicity.  Slots are re-canonicalized after every move: once an
    edge is mutated, refs held from before the mutation may be stale, and
    `move_hinge` rejects any slot beyond the current multiplicity.
    """

    edge_id: int
    slot: int


class Edge:
    """A single colored edge instance; `verts` is a sorted vertex multiset."""

    __slots__ = ("id", "verts", "color")

    def __init__(self, edge_id: int, verts: tuple[int, ...], color: int):
        self.id = edge_id
        self.verts = verts
        self.color = color

    def multiplicity_of(self, v: int) -> int:
        return self.verts.count(v)

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Edge({self.id}, {self.verts}, c{self.color})"


class ColoredMultiHypergraph:
    """Edge-colored multi-hypergraph with uniform edge size.

    Vertices are declared explicitly (an isolated vertex is a real vertex,
    which matters for connectivity checks).  Colors run 1..k.  All edges
    carry exactly `h` vertex occurrences counted with multiplicity.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        alpha: int,
        h: int,
        k: int,
        r: Optional[tuple[int, ...]] = None,
    ):
        self.vertices: set[int] = set(vertices)
        if alpha not in self.vertices:
            raise ParameterError(f"amalgam {alpha} must be a declared vertex")
        if h < 1 or k < 1:
            raise ParameterError(f"need h >= 1 and k >= 1, got h={h}, k={k}")
        self.alpha = alpha
        self.h = h
        self.k = k
        self.r = tuple(r) if r is not None else None
        self._edges: dict[int, Edge] = {}
        self._next_edge_id = 0
        self._version = 0
        self._shape_cache: tuple[int, Counter] | None = None

    # -- basic accessors -------------------------------------------------

    @property
    def n_current(self) -> int:
        return len(self.vertices)

    def edges(self) -> Iterator[Edge]:
        return iter(self._edges.values())

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise InvalidHingeError(f"no edge with id {edge_id}") from None

    def color_class(self, color: int) -> list[Edge]:
        return [e for e in self._edges.values() if e.color == color]

    # -- mutation --------------------------------------------------------

    def add_vertex(self, v: int) -> None:
        if v in self.vertices:
            raise ParameterError(f"vertex {v} already present")
        self.vertices.add(v)
        self._version += 1

    def add_edge(self, verts: Iterable[int], color: int) -> int:
        vt = tuple(sorted(verts))
        if len(vt) != self.h:
            raise ParameterError(
                f"edge {vt} has {len(vt)} vertex occurrences, expected h={self.h}"
            )
        if not 1 <= color <= self.k:
            raise ParameterError(f"color {color} outside 1..{self.k}")
        missing = set(vt) - self.vertices
        if missing:
            raise ParameterError(f"edge {vt} uses undeclared vertices {sorted(missing)}")
        eid = self._next_edge_id
        self._next_edge_id += 1
        self._edges[eid] = Edge(eid, vt, color)
        self._version += 1
        return eid

    def move_hinge(self, href: HingeRef, to: int) -> None:
        """Replace one occurrence of the amalgam in `href`'s edge by `to`.

        Hinge slots within an edge are interchangeable (they address
        identical amalgam occurrences), so only the slot *range* is
        validated: 1 <= slot <= current amalgam multiplicity.  A stale ref
        whose slot exceeds the current multiplicity is rejected.
        """
        e = self.edge(href.edge_id)
        p = e.verts.count(self.alpha)
        if not 1 <= href.slot <= p:
            raise InvalidHingeError(
                f"hinge {href} is stale: edge {e.id} has amalgam multiplicity {p}"
            )
        if to not in self.vertices:
            raise ParameterError(f"move target {to} is not a declared vertex")
        vs = list(e.verts)
        vs.remove(self.alpha)
        vs.append(to)
        e.verts = tuple(sorted(vs))
        self._version += 1

    def move_hinges(self, hrefs: Iterable[HingeRef], to: int) -> None:
        """Apply a batch of hinge moves to the same target vertex.

        Within each edge, higher slots are moved first so that the
        re-canonicalization of lower slots never invalidates a pending
        ref from the same batch.
        """
        for href in sorted(hrefs, key=lambda x: (x.edge_id, -x.slot)):
            self.move_hinge(href, to)

    # -- derived quantities ----------------------------------------------

    def degree(self, u: int, color: Optional[int] = None) -> int:
        """Occurrences of `u` over all edges, or over one color class."""
        if u not in self.vertices:
            raise ParameterError(f"vertex {u} not declared")
        if color is None:
            return sum(e.verts.count(u) for e in self._edges.values())
        return sum(e.verts.count(u) for e in self._edges.values() if e.color == color)

    def shape_counts(self) -> Counter:
        """Counter keyed by sorted vertex tuple over all edges (cached)."""
        if self._shape_cache is not None and self._shape_cache[0] == self._version:
            return self._shape_cache[1]
        cnt = Counter(e.verts for e in self._edges.values())
        self._shape_cache = (self._version, cnt)
        return cnt

    def multiplicity(self, alpha: int, p: int, U: Iterable[int]) -> int:
        """Number of edges whose multiset is exactly {alpha^p} + U.

        `U` must not contain `alpha` and p + |U| must equal h.  Counts
        across all colors.
        """
        Ut = tuple(sorted(U))
        if alpha in Ut:
            raise ParameterError(f"U must avoid the pivot vertex {alpha}")
        if p < 0 or p + len(Ut) != self.h:
            raise ParameterError(
                f"need p >= 0 and p + |U| = h, got p={p}, |U|={len(Ut)}, h={self.h}"
            )
        key = tuple(sorted((alpha,) * p + Ut))
        return self.shape_counts().get(key, 0)

    def hinges_at(self, u: int) -> tuple[HingeRef, ...]:
        """One HingeRef per occurrence of `u`, sorted by (edge id, slot)."""
        if u not in self.vertices:
            raise ParameterError(f"vertex {u} not declared")
        refs = []
        for e in self._edges.values():
            for slot in range(1, e.verts.count(u) + 1):
                refs.append(HingeRef(e.id, slot))
        refs.sort()
        return tuple(refs)

    # -- copying ---------------------------------------------------------

    def copy(self) -> "ColoredMultiHypergraph":
        g = ColoredMultiHypergraph(self.vertices, self.alpha, self.h, self.k, self.r)
        for e in self._edges.values():
            g._edges[e.id] = Edge(e.id, e.verts, e.color)
        g._next_edge_id = self._next_edge_id
        return g
