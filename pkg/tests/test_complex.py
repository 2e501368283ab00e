import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from khinv import corpus
from khinv.builders import plat_h
from khinv.coeffs import F2H, F2_H0, F2_H1
from khinv.complex import (ResourceLimitError, SparseMap, build_ckh, build_involutive, cone, involution_map,
                           kappa_map, restrict_variant, verify_complex)
from khinv.homology import kh_dims
from oracles import jones_of_diagram


def euler_char(dims):
    out = {}
    for (i, q), n in dims.items():
        out[q] = out.get(q, 0) + (-1) ** i * n
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("name", ["3_1", "4_1", "6_2a", "7_4b", "m9_46", "hopf_strong"])
def test_reduced_euler_characteristic_is_jones(name):
    D = corpus.load(name)
    C = restrict_variant(build_ckh(D, F2_H0, with_sigma=False), "reduced")
    assert euler_char(C.graded_dims()) == jones_of_diagram(D)
    assert euler_char(kh_dims(C)) == jones_of_diagram(D)


def test_unreduced_chain_size_and_gradings():
    D = corpus.load("3_1")
    C = build_ckh(D, F2H)
    # states 000..111 have 2, 1, 1, 2, 1, 2, 2, 3 circles
    assert C.size == sum(2 ** k for k in (2, 1, 1, 2, 1, 2, 2, 3))
    assert min(C.hdeg) == 0 and max(C.hdeg) == 3
    assert set(C.endos) == {"tau", "sigma"}


@pytest.mark.parametrize("ring", [F2_H0, F2_H1, F2H], ids=str)
def test_verify_complex_on_corpus(ring):
    for name in ("unknot", "3_1", "7_7b", "T2_4_strong", "3_1_periodic", "T2_4_periodic"):
        D = corpus.load(name)
        mode = "tau" if D.mode == "strong" else "sigma_tau"
        C = build_ckh(D, ring)
        assert verify_complex(C) == [], name
        CI = build_involutive(D, ring, mode, "unreduced", base=C)
        assert verify_complex(CI) == [], name


def test_cone_layout():
    D = corpus.load("3_1")
    C = restrict_variant(build_ckh(D, F2H, with_sigma=False), "reduced")
    CI = cone(C, involution_map(C, "tau"))
    n = C.size
    assert CI.size == 2 * n
    assert list(CI.info["copy"][:n]) == [0] * n and list(CI.info["copy"][n:]) == [1] * n
    assert np.array_equal(CI.hdeg[n:], C.hdeg + 1)
    assert np.array_equal(CI.qdeg[n:], C.qdeg)


def test_reduced_and_coreduced_partition_the_generators():
    D = corpus.load("5_2a")
    C = build_ckh(D, F2H, with_sigma=False)
    red, cored = restrict_variant(C, "reduced"), restrict_variant(C, "coreduced")
    assert red.size + cored.size == C.size
    assert set(red.info["orig"].tolist()).isdisjoint(cored.info["orig"].tolist())
    assert "sigma" not in restrict_variant(build_ckh(D, F2H), "reduced").endos


def test_sigma_tau_mode_needs_unreduced():
    from khinv.diagram import DiagramError
    with pytest.raises(DiagramError):
        build_involutive(corpus.load("3_1"), F2H, "sigma_tau", "reduced")


def test_kappa_identity():
    for name in ("3_1", "6_1a", "7_4b"):
        for ring in (F2_H0, F2H):
            _, rep = kappa_map(corpus.load(name), ring)
            assert rep["identity_holds"], (name, ring)


def test_crossing_cap():
    with pytest.raises(ResourceLimitError):
        build_ckh(corpus.load("m9_46"), F2H, cap=8)


def test_sparse_map_algebra():
    a = SparseMap.from_lists([0, 1], [1, 0], [1, 1], 2, 2)
    assert (a.compose(a) + SparseMap.identity(2)).is_zero()
    assert a.apply({0: 1}) == {1: 1}
    assert len(a + a) == 0


words = st.lists(st.tuples(st.sampled_from("MP"), st.sampled_from((1, -1))), min_size=1, max_size=4)


@settings(max_examples=20, deadline=None)
@given(words, st.sampled_from(["left", "right"]), st.sampled_from([F2_H0, F2_H1, F2H]))
def test_involutive_complexes_are_complexes(word, nested, ring):
    D = plat_h(word, nested)
    base = build_ckh(D, ring)
    for variant in ("unreduced", "reduced", "coreduced"):
        C = build_involutive(D, ring, "tau", variant, base=base)
        assert verify_complex(C) == []
    assert verify_complex(build_involutive(D, ring, "sigma_tau", "unreduced", base=base)) == []
