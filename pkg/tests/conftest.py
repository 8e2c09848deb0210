"""Shared helpers: random laminar instances and perturbation fixtures."""

import random

from hypfactor import LaminarFamily, construct
from hypfactor.detach import Factorization, Params


def _random_blocks(rng: random.Random, items: list) -> list:
    """Split `items` into consecutive nonempty blocks at random."""
    pool = items[:]
    rng.shuffle(pool)
    blocks = []
    i = 0
    while i < len(pool):
        j = i + rng.randrange(1, len(pool) - i + 1)
        blocks.append(pool[i:j])
        i = j
    return blocks


def _random_laminar_sets(rng: random.Random, items: list, depth: int) -> list:
    out = []
    if depth == 0 or len(items) <= 1:
        return out
    for block in _random_blocks(rng, items):
        if len(block) == len(items):
            continue
        if rng.random() < 0.7:
            out.append(frozenset(block))
        out.extend(_random_laminar_sets(rng, block, depth - 1))
    return out


def random_laminar_family(rng: random.Random, ground) -> LaminarFamily:
    """A random laminar family over `ground`, possibly including it."""
    items = sorted(ground)
    sets = _random_laminar_sets(rng, items, depth=rng.randrange(1, 4))
    if rng.random() < 0.5:
        sets.append(frozenset(items))
    return LaminarFamily.from_sets(ground, sets)


def random_laminar_pair(rng: random.Random, ground_size: int):
    """Two independent random laminar families over a fresh integer ground."""
    ground = frozenset(range(ground_size))
    return ground, random_laminar_family(rng, ground), random_laminar_family(rng, ground)


# -- perturbation fixtures ---------------------------------------------------
#
# Five corruptions of valid factorizations, each with the exact expected
# status of every final check.  Shapes, cover, regularity, and
# connectivity each admit a corruption failing only themselves.  The
# degree-sum check does not: it reads only the declared fields, and any
# field edit that breaks it necessarily breaks cover (lambda edits) or
# regularity (r edits), so its fixture documents that forced collateral.


def cycle_order(factor) -> list:
    """Vertex order around a single cycle given as pair edges."""
    adj: dict = {}
    for a, b in factor:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    order = [min(adj)]
    prev = None
    while len(order) < len(adj):
        nxt = [x for x in adj[order[-1]] if x != prev][0]
        prev = order[-1]
        order.append(nxt)
    return order


def _editable(f: Factorization) -> list:
    return [[tuple(e) for e in factor] for factor in f.factors]


def _pack(f: Factorization, factors) -> Factorization:
    return Factorization(f.n, f.h, f.lam, f.r, tuple(tuple(x) for x in factors))


def _hexagon_base() -> Factorization:
    # two Hamiltonian hexagons plus a perfect matching covering K_6
    f1 = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]
    f2 = [(1, 3), (3, 5), (2, 5), (2, 6), (4, 6), (1, 4)]
    f3 = [(1, 5), (2, 4), (3, 6)]
    return Factorization.canonical(6, 2, 1, (2, 2, 1), [f1, f2, f3])


def perturbation_fixtures() -> list:
    """(name, corrupted Factorization, expected status per check)."""
    base = construct(Params(5, 2, 1, (2, 2)), seed=0, check_mode="final")
    out = []

    # repeat a vertex inside one edge: only the shape check may fail, and
    # the gate keeps the now-meaningless counting checks out of the way
    fs = _editable(base)
    v = fs[0][0][0]
    fs[0][0] = (v, v)
    out.append(
        (
            "edge-shapes",
            _pack(base, fs),
            {
                "edge-shapes": "fail",
                "cover-multiplicity": "skipped",
                "regularity": "skipped",
                "connectivity": "pass",
                "degree-sum": "pass",
            },
        )
    )

    # degree-preserving rewiring inside one factor: two cycle edges
    # (w1,w2), (w3,w4) become the chords (w1,w3), (w2,w4), leaving every
    # degree intact and the factor a (different) cycle, but putting two
    # subsets at count 0 and two at count 2
    fs = _editable(base)
    w = cycle_order(fs[0])
    fs[0].remove(tuple(sorted((w[0], w[1]))))
    fs[0].remove(tuple(sorted((w[2], w[3]))))
    fs[0] += [tuple(sorted((w[0], w[2]))), tuple(sorted((w[1], w[3])))]
    out.append(
        (
            "cover-multiplicity",
            _pack(base, fs),
            {
                "edge-shapes": "pass",
                "cover-multiplicity": "fail",
                "regularity": "pass",
                "connectivity": "pass",
                "degree-sum": "pass",
            },
        )
    )

    # move one edge to the other factor: the global edge multiset is
    # untouched, a cycle minus an edge stays connected, a cycle plus a
    # chord stays connected, so only regularity can object
    fs = _editable(base)
    moved = fs[0].pop(0)
    fs[1].append(moved)
    out.append(
        (
            "regularity",
            _pack(base, fs),
            {
                "edge-shapes": "pass",
                "cover-multiplicity": "pass",
                "regularity": "fail",
                "connectivity": "pass",
                "degree-sum": "pass",
            },
        )
    )

    # swap two matching edges for two hexagon edges: the hexagon falls
    # into two triangles (still 2-regular), the matching stays 1-regular,
    # the union is untouched, so only connectivity can object
    hx = _hexagon_base()
    fs = _editable(hx)
    for e in [(2, 5), (1, 4)]:
        fs[1].remove(e)
    fs[1] += [(1, 5), (2, 4)]
    for e in [(1, 5), (2, 4)]:
        fs[2].remove(e)
    fs[2] += [(2, 5), (1, 4)]
    out.append(
        (
            "connectivity",
            _pack(hx, fs),
            {
                "edge-shapes": "pass",
                "cover-multiplicity": "pass",
                "regularity": "pass",
                "connectivity": "fail",
                "degree-sum": "pass",
            },
        )
    )

    # raise a declared degree: the sum check fails, and the factor built
    # for the old degree necessarily fails regularity alongside (no
    # single edit can break the sum check alone, since it reads only the
    # declared fields and every field edit that moves it also moves a
    # counting check)
    bumped = Factorization(hx.n, hx.h, hx.lam, (3, 2, 1), hx.factors)
    out.append(
        (
            "degree-sum",
            bumped,
            {
                "edge-shapes": "pass",
                "cover-multiplicity": "pass",
                "regularity": "fail",
                "connectivity": "pass",
                "degree-sum": "fail",
            },
        )
    )
    return out


# -- split-connectivity oracle helpers (shared by wing and acceptance tests)


BETA = -1


def detached_is_connected(edges, alpha, A):
    """Direct oracle: move hinge set A to a fresh vertex, test connectivity.

    The fresh vertex exists whether or not it receives hinges, mirroring
    the split step which always creates it.
    """
    from hypfactor import is_connected

    chosen = set(A)
    new_edges = []
    verts = {alpha, BETA}
    for e in edges:
        take = sum(1 for ref in chosen if ref.edge_id == e.id)
        p = e.verts.count(alpha)
        vs = [v for v in e.verts if v != alpha]
        vs.extend([BETA] * take)
        vs.extend([alpha] * (p - take))
        new_edges.append(vs)
        verts.update(vs)
    return is_connected(verts, new_edges)


def random_connected_class(rng, n_verts, n_edges, h):
    """A connected color class touching the amalgam, by construction."""
    from hypfactor import is_connected
    from hypfactor.hypercore import Edge

    alpha = 0
    verts = list(range(1, n_verts + 1))
    edges = []
    reached = {alpha}
    for eid in range(n_edges):
        base = [rng.choice(sorted(reached))]
        pool = [alpha] + verts
        base += [rng.choice(pool) for _ in range(h - 1)]
        if eid < 2 and alpha not in base:
            base[-1] = alpha
        edges.append(Edge(eid, tuple(sorted(base)), 1))
        reached.update(base)
    if not is_connected(reached, [e.verts for e in edges]):
        return None
    if not any(alpha in e.verts for e in edges):
        return None
    return edges
