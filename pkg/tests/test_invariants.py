import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from khinv import corpus
from khinv.builders import plat_h, torus2
from khinv.coeffs import F2H, Poly
from khinv.complex import build_ckh
from khinv.diagram import DiagramError, mirror, seifert_resolution
from khinv.invariants import (TowerStructureError, coloring_independent, cross_validate, equivariant_lee_cycles,
                              equivariant_s, invariant_report, lee_cycle_is_invariant, lee_labels, lee_pairing,
                              pairing_check, tower_s)

EXPECTED = json.loads((Path(__file__).parent / "data" / "expected_tables.json").read_text())


def test_trefoil_and_mirror():
    D = corpus.load("3_1")
    rep = invariant_report(D)
    assert (rep.s_lower, rep.s_upper, rep.s_classic) == (2, 2, 2)
    assert rep.method == "both-agree"
    rm = invariant_report(mirror(D))
    assert (rm.s_lower, rm.s_upper) == (-2, -2)


def test_m9_46_splits_the_pair():
    rep = invariant_report(corpus.load("m9_46"))
    assert (rep.s_lower, rep.s_upper) == (0, 2)
    assert rep.s_classic in (0, 2)
    assert rep.d_lower == 2


@pytest.mark.parametrize("name", ["4_1", "5_2b", "6_1a", "7_4b", "7_7b"])
def test_divisibility_matches_reference_towers(name):
    towers = sorted(tuple(x) for x in EXPECTED[name]["bn"]["free"])
    rep = equivariant_s(corpus.load(name))
    assert towers == [(0, rep.s_lower), (1, rep.s_upper)]


def test_unknot():
    rep = invariant_report(corpus.unknot())
    assert (rep.s_lower, rep.s_upper) == (0, 0)


def test_lee_labels_are_a_proper_coloring():
    D = corpus.load("7_6a")
    S = seifert_resolution(D)
    for tag in (0, 1):
        lab = lee_labels(D, tag)
        assert len(lab.labels) == S.r
        for a, b in S.seifert_graph:
            assert lab.labels[a] != lab.labels[b]
    assert lee_labels(D, 0).labels != lee_labels(D, 1).labels


def test_equivariant_lee_cycles_are_tau_invariant():
    D = corpus.load("6_2b")
    lo, up, C = equivariant_lee_cycles(D)
    assert lee_cycle_is_invariant(C, lo) and lee_cycle_is_invariant(C, up)
    assert set(up) == {g + C.size // 2 for g in lo}


def test_coloring_independence():
    for name in ("3_1", "5_2a", "m9_46"):
        assert coloring_independent(corpus.load(name))


@pytest.mark.parametrize("name", ["unknot", "3_1", "4_1", "7_5a", "m9_46"])
def test_pairing_with_mirror(name):
    out = pairing_check(corpus.load(name))
    assert out["unreduced_ok"] and out["reduced_ok"], out


def test_pairing_values_trefoil():
    D = corpus.load("3_1")
    assert lee_pairing(D) == Poly.monomial(2)
    assert lee_pairing(D, reduced=True) == Poly.monomial(1)


def test_links_and_periodic_are_refused():
    with pytest.raises(DiagramError):
        equivariant_s(corpus.load("hopf_strong"))
    with pytest.raises(DiagramError):
        equivariant_s(corpus.load("3_1_periodic"))


def test_tower_structure_error_on_a_link():
    D = corpus.load("T2_4_strong")
    with pytest.raises((TowerStructureError, DiagramError)):
        tower_s(D)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_torus_knots(k):
    rep = equivariant_s(torus2(k))
    assert rep.s_lower == rep.s_upper == rep.s_classic == k - 1


words = st.lists(st.tuples(st.sampled_from("MP"), st.sampled_from((1, -1))), min_size=1, max_size=4)


@settings(max_examples=15, deadline=None)
@given(words, st.sampled_from(["left", "right"]))
def test_random_knots_cross_validate(word, nested):
    D = plat_h(word, nested)
    cv = cross_validate(D)
    assert cv["failures"] == []
    r = cv["report"]
    assert r.s_lower <= r.s_classic <= r.s_upper
    assert r.s_lower % 2 == 0 and r.s_upper % 2 == 0
