"""Tests for stage-invariant and final-factorization verification."""

import json

from conftest import perturbation_fixtures
from hypfactor import (
    ColoredMultiHypergraph,
    binom,
    construct,
    initial_amalgam,
    split_step,
    verify_factorization,
    verify_stage,
)
from hypfactor.detach import Factorization, Params

STAGE_CHECKS = ["degrees", "multiplicities", "edge-amalgam-bound", "connectivity", "wing-balance"]
FINAL_CHECKS = ["edge-shapes", "cover-multiplicity", "regularity", "connectivity", "degree-sum"]


def _statuses(report):
    return {c.name: c.status for c in report.checks}


# -- stage verification -----------------------------------------------------


def test_base_amalgam_stage_passes():
    p = Params(5, 2, 1, (2, 2))
    rep = verify_stage(initial_amalgam(p), 1, p)
    assert rep.overall
    assert [c.name for c in rep.checks] == STAGE_CHECKS
    assert all(c.status == "pass" for c in rep.checks)


def test_base_amalgam_stage_values():
    # the values behind the passing checks, recomputed here by hand
    p = Params(5, 2, 1, (2, 2))
    G = initial_amalgam(p)
    assert G.multiplicity(G.alpha, 2, ()) == 10
    assert G.degree(G.alpha, 1) == 10
    assert G.degree(G.alpha, 2) == 10


def test_every_stage_of_a_full_run_passes():
    p = Params(6, 3, 1, (2, 2, 2, 2, 2))
    G = initial_amalgam(p)
    assert verify_stage(G, 1, p).overall
    for ell in range(1, p.n):
        split_step(G, ell, p, seed=2)
        rep = verify_stage(G, ell + 1, p)
        assert rep.overall, rep.failures()


def test_recolored_edge_fails_degree_check():
    p = Params(5, 2, 1, (2, 2))
    G = initial_amalgam(p)
    e = G.color_class(1)[0]
    e.color = 2
    rep = verify_stage(G, 1, p)
    assert not rep.overall
    statuses = _statuses(rep)
    assert statuses["degrees"] == "fail"
    check = next(c for c in rep.checks if c.name == "degrees")
    # witness carries (color, vertex, got, want)
    assert check.witness == (1, 5, 8, 10)


def test_tampered_shape_fails_multiplicity_check():
    p = Params(5, 3, 1, (3, 3))
    G = split_step(initial_amalgam(p), 1, p)
    e = next(e for e in G.edges() if e.verts.count(G.alpha) == 3)
    e.verts = (1, G.alpha, G.alpha)
    rep = verify_stage(G, 2, p)
    assert _statuses(rep)["multiplicities"] == "fail"


def test_repeated_split_vertex_fails_multiplicity_check():
    p = Params(5, 3, 1, (3, 3))
    G = split_step(initial_amalgam(p), 1, p)
    e = next(e for e in G.edges() if e.verts.count(G.alpha) == 3)
    e.verts = (1, 1, G.alpha)
    rep = verify_stage(G, 2, p)
    check = next(c for c in rep.checks if c.name == "multiplicities")
    assert check.status == "fail"
    assert check.witness[0] == "repeated ordinary vertex"


def test_overfull_edge_fails_amalgam_bound():
    # at stage 3 of n=4 the divisor is 2, so a surviving 3-loop is illegal
    G = ColoredMultiHypergraph([1, 2, 9], alpha=9, h=3, k=1, r=(3,))
    G.add_edge((9, 9, 9), 1)
    rep = verify_stage(G, 3, Params(4, 3, 1, (3,)))
    check = next(c for c in rep.checks if c.name == "edge-amalgam-bound")
    assert check.status == "fail"
    assert check.witness[1:] == (3, 2)


def test_disconnected_class_fails_connectivity():
    G = ColoredMultiHypergraph([1, 2, 9], alpha=9, h=2, k=1, r=(2,))
    G.add_edge((1, 2), 1)
    G.add_edge((1, 2), 1)
    rep = verify_stage(G, 3, Params(4, 2, 1, (2,)))
    assert _statuses(rep)["connectivity"] == "fail"


def test_unbalanced_wings_fail_wing_balance():
    # amalgam degree 5 over wings of 3 and 2 hinges, against r * m = 4
    G = ColoredMultiHypergraph([1, 9], alpha=9, h=2, k=1, r=(2,))
    for _ in range(3):
        G.add_edge((1, 9), 1)
    G.add_edge((9, 9), 1)
    rep = verify_stage(G, 2, Params(3, 2, 1, (2,)))
    check = next(c for c in rep.checks if c.name == "wing-balance")
    assert check.status == "fail"
    assert check.witness == (1, 5, 4)


def test_unit_edges_skip_connectivity_checks():
    p = Params(3, 1, 2, (1, 1))
    rep = verify_stage(initial_amalgam(p), 1, p)
    statuses = _statuses(rep)
    assert statuses["connectivity"] == "skipped"
    assert statuses["wing-balance"] == "skipped"
    assert rep.overall


def test_final_stage_skips_wing_balance():
    p = Params(5, 2, 1, (2, 2))
    G = initial_amalgam(p)
    for ell in range(1, p.n):
        split_step(G, ell, p)
    rep = verify_stage(G, p.n, p)
    assert _statuses(rep)["wing-balance"] == "skipped"
    assert rep.overall


# -- final verification -----------------------------------------------------


def test_constructed_output_verifies():
    f = construct(Params(5, 2, 1, (2, 2)), check_mode="off")
    rep = verify_factorization(f)
    assert rep.overall
    assert [c.name for c in rep.checks] == FINAL_CHECKS


def test_two_triangles_fail_only_connectivity():
    fixtures = dict((name, (f, exp)) for name, f, exp in perturbation_fixtures())
    f, expected = fixtures["connectivity"]
    rep = verify_factorization(f)
    assert _statuses(rep) == expected
    check = next(c for c in rep.checks if c.name == "connectivity")
    assert check.witness == (2,)


def test_duplicate_and_delete_fail_cover_on_both_subsets():
    f = construct(Params(5, 2, 1, (2, 2)), check_mode="off")
    fs = [list(factor) for factor in f.factors]
    lost, kept = fs[0][0], fs[0][1]
    fs[0][0] = kept
    g = Factorization(f.n, f.h, f.lam, f.r, tuple(tuple(x) for x in fs))
    rep = verify_factorization(g)
    assert _statuses(rep)["cover-multiplicity"] == "fail"
    from collections import Counter

    cover = Counter(e for factor in g.factors for e in factor)
    assert cover[lost] == 0 and cover[kept] == 2


def test_malformed_edge_gates_counting_checks():
    fixtures = dict((name, (f, exp)) for name, f, exp in perturbation_fixtures())
    f, expected = fixtures["edge-shapes"]
    rep = verify_factorization(f)
    assert _statuses(rep) == expected
    assert not rep.overall


def test_factor_count_mismatch_fails_shapes():
    f = Factorization(4, 2, 1, (2, 1), (((1, 2), (3, 4)),))
    rep = verify_factorization(f)
    assert _statuses(rep)["edge-shapes"] == "fail"


def test_unit_edge_factorization_skips_connectivity():
    f = Factorization.canonical(
        2, 1, 1, (1,), [[(1,), (2,)]]
    )
    rep = verify_factorization(f)
    assert _statuses(rep)["connectivity"] == "skipped"
    assert rep.overall


def test_reports_serialize_to_json():
    fixtures = perturbation_fixtures()
    for _, f, _expected in fixtures:
        doc = verify_factorization(f).to_dict()
        json.dumps(doc)
        assert set(doc) == {"stage", "overall", "checks"}
        assert doc["stage"] == "final"


def test_all_perturbations_match_expected_vectors():
    for name, f, expected in perturbation_fixtures():
        rep = verify_factorization(f)
        assert _statuses(rep) == expected, name
        assert not rep.overall
