"""Independent verification of pipeline stages and finished factorizations.

Everything here recomputes from scratch: degrees, shape multiplicities,
connectivity, and wing balances are derived directly from the edge store,
never from bookkeeping kept by the construction.  Reports carry one entry
per check with a small witness for the first violation found, and they
serialize to the same JSON shape the command line emits.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .hypercore import ColoredMultiHypergraph, binom
from .wings import is_connected, wing_decomposition


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check: passed True/False, or None when skipped."""

    name: str
    passed: Optional[bool]
    witness: Optional[tuple] = None

    @property
    def status(self) -> str:
        return "skipped" if self.passed is None else ("pass" if self.passed else "fail")


@dataclass(frozen=True)
class VerificationReport:
    stage: object  # stage number, or "final"
    checks: tuple
    overall: bool

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.passed is False]

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "overall": self.overall,
            "checks": [
                {"name": c.name, "status": c.status, "witness": _jsonable(c.witness)}
                for c in self.checks
            ],
        }


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    return x


def _finish(stage, checks) -> VerificationReport:
    overall = all(c.passed is not False for c in checks)
    return VerificationReport(stage, tuple(checks), overall)


def verify_stage(G: ColoredMultiHypergraph, ell: int, p) -> VerificationReport:
    """Check the stage-`ell` invariants of the splitting pipeline.

    `G` must be the intermediate object with `ell` vertices; `p` supplies
    (n, h, lam, r).  Checks: per-color degrees, shape multiplicities over
    every cell including forced-zero ones, per-edge amalgam bound,
    connectivity of classes with r_i >= 2, and the multi-hinge wing
    balance.  Connectivity-flavored checks are skipped for h = 1, where
    no spanning connected 1-uniform hypergraph on 2+ vertices exists.
    """
    n, h, lam, r = p.n, p.h, p.lam, p.r
    alpha = G.alpha
    m = n - ell + 1
    checks: list[CheckResult] = []

    # degrees: amalgam carries r_i * m, every split vertex exactly r_i
    bad = None
    for i in range(1, G.k + 1):
        for u in sorted(G.vertices):
            want = r[i - 1] * m if u == alpha else r[i - 1]
            got = G.degree(u, i)
            if got != want:
                bad = (i, u, got, want)
                break
        if bad:
            break
    checks.append(CheckResult("degrees", bad is None, bad))

    # shape multiplicities: m(alpha^q, U) = lam * C(m, q) for every cell
    split_verts = sorted(G.vertices - {alpha})
    shape = Counter()
    bad = None
    for e in G.edges():
        rest = tuple(v for v in e.verts if v != alpha)
        if len(set(rest)) != len(rest):
            bad = ("repeated ordinary vertex", e.id, e.verts)
            break
        shape[(len(e.verts) - len(rest), rest)] += 1
    if bad is None:
        for q in range(0, h + 1):
            if h - q > len(split_verts):
                continue
            want = lam * binom(m, q)
            for U in combinations(split_verts, h - q):
                got = shape.get((q, U), 0)
                if got != want:
                    bad = ("cell", q, U, got, want)
                    break
            if bad:
                break
    checks.append(CheckResult("multiplicities", bad is None, bad))

    # no edge may hold more amalgam occurrences than splits remaining + 1
    bad = None
    for e in G.edges():
        cnt = e.verts.count(alpha)
        if cnt > m:
            bad = (e.id, cnt, m)
            break
    checks.append(CheckResult("edge-amalgam-bound", bad is None, bad))

    # connectivity of every class that must stay connected
    if h == 1:
        checks.append(CheckResult("connectivity", None, ("h=1",)))
        checks.append(CheckResult("wing-balance", None, ("h=1",)))
    else:
        bad = None
        for i in range(1, G.k + 1):
            if r[i - 1] < 2:
                continue
            if not is_connected(G.vertices, [e.verts for e in G.color_class(i)]):
                bad = (i,)
                break
        checks.append(CheckResult("connectivity", bad is None, bad))

        if ell <= n - 1:
            bad = None
            for i in range(1, G.k + 1):
                if r[i - 1] < 2:
                    continue
                delta = wing_decomposition(G.color_class(i), alpha).delta
                want = r[i - 1] * m
                if delta != want:
                    bad = (i, delta, want)
                    break
            checks.append(CheckResult("wing-balance", bad is None, bad))
        else:
            checks.append(CheckResult("wing-balance", None, ("final stage",)))

    return _finish(ell, checks)


def verify_factorization(f) -> VerificationReport:
    """Full independent check of a finished factorization.

    `f` supplies (n, h, lam, r, factors) where factors[i] is a sequence
    of vertex tuples.  Five checks: edge shapes, cover multiplicity,
    per-factor regularity, connectivity of factors with r_i >= 2 (for
    h >= 2), and the declared degree sum.  Cover and regularity are
    skipped when shapes fail, since their counts are meaningless over
    malformed edges.
    """
    n, h, lam, r = f.n, f.h, f.lam, f.r
    factors = f.factors
    checks: list[CheckResult] = []

    bad = None
    if len(factors) != len(r):
        bad = ("factor count", len(factors), len(r))
    else:
        for i, factor in enumerate(factors, start=1):
            for e in factor:
                vs = tuple(e)
                if (
                    len(vs) != h
                    or len(set(vs)) != h
                    or any(not 1 <= v <= n for v in vs)
                ):
                    bad = (i, vs)
                    break
            if bad:
                break
    shapes_ok = bad is None
    checks.append(CheckResult("edge-shapes", shapes_ok, bad))

    if not shapes_ok:
        checks.append(CheckResult("cover-multiplicity", None, ("shapes failed",)))
        checks.append(CheckResult("regularity", None, ("shapes failed",)))
    else:
        cover = Counter()
        for factor in factors:
            for e in factor:
                cover[tuple(sorted(e))] += 1
        bad = None
        for U in combinations(range(1, n + 1), h):
            got = cover.get(U, 0)
            if got != lam:
                bad = (U, got, lam)
                break
        checks.append(CheckResult("cover-multiplicity", bad is None, bad))

        bad = None
        for i, factor in enumerate(factors, start=1):
            deg = Counter()
            for e in factor:
                for v in e:
                    deg[v] += 1
            for v in range(1, n + 1):
                if deg.get(v, 0) != r[i - 1]:
                    bad = (i, v, deg.get(v, 0), r[i - 1])
                    break
            if bad:
                break
        checks.append(CheckResult("regularity", bad is None, bad))

    if h == 1:
        checks.append(CheckResult("connectivity", None, ("h=1",)))
    else:
        bad = None
        for i, factor in enumerate(factors, start=1):
            if i <= len(r) and r[i - 1] >= 2:
                if not is_connected(range(1, n + 1), factor):
                    bad = (i,)
                    break
        checks.append(CheckResult("connectivity", bad is None, bad))

    want = lam * binom(n - 1, h - 1)
    got = sum(r)
    checks.append(
        CheckResult("degree-sum", got == want, None if got == want else (got, want))
    )

    return _finish("final", checks)
