from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from khinv import corpus
from khinv.coeffs import F2H, F2_H0, F2_H1, Poly
from khinv.complex import build_ckh, build_involutive, restrict_variant
from khinv.homology import GradedModule, homology_graded, kh_dims, poly_det, poly_matmul, snf, total_dimension


def dense_blocks(C):
    """d_i as dense Poly matrices, rows indexed by degree i+1 and columns by degree i."""
    idx = {}
    for g, i in enumerate(C.hdeg.tolist()):
        idx.setdefault(i, []).append(g)
    pos = {g: k for gs in idx.values() for k, g in enumerate(gs)}
    blocks = {}
    for i in idx:
        if i + 1 in idx:
            blocks[i] = [[Poly(0)] * len(idx[i]) for _ in idx[i + 1]]
    for s, t, c in zip(C.d.src.tolist(), C.d.tgt.tolist(), C.d.coef.tolist()):
        i = int(C.hdeg[s])
        blocks[i][pos[t]][pos[s]] = Poly(int(c))
    return idx, blocks


def snf_homology(C):
    """Free ranks and torsion orders per degree from Smith forms (ungraded)."""
    idx, blocks = dense_blocks(C)
    rank, tors = {}, {}
    for i, M in blocks.items():
        inv = snf(M)[0] if M and M[0] else []
        rank[i] = len(inv)
        tors[i + 1] = sorted(p.degree() for p in inv if p.degree() > 0)
        assert all(len(p.exponents()) == 1 for p in inv)     # graded: invariants are monomials
    free = {i: len(g) - rank.get(i, 0) - rank.get(i - 1, 0) for i, g in idx.items()}
    return {i: n for i, n in free.items() if n}, {i: t for i, t in tors.items() if t}


def graded_summary(M):
    free = Counter(i for i, _ in M.free)
    tors = {}
    for i, _, k in M.torsion:
        tors.setdefault(i, []).append(k)
    return dict(free), {i: sorted(t) for i, t in tors.items()}


@pytest.mark.parametrize("name, variant", [("3_1", "reduced"), ("4_1", "reduced"), ("5_2a", "reduced"),
                                           ("3_1", "unreduced"), ("hopf_strong", "unreduced"),
                                           ("7_4b", "reduced")])
def test_homology_agrees_with_smith_form(name, variant):
    D = corpus.load(name)
    for C in (restrict_variant(build_ckh(D, F2H, with_sigma=False), variant),
              build_involutive(D, F2H, "tau", variant)):
        assert snf_homology(C) == graded_summary(homology_graded(C))


@pytest.mark.parametrize("name", ["3_1", "6_1b", "7_4b", "7_7b", "m9_46"])
def test_reduction_mod_h_gives_khovanov(name):
    D = corpus.load(name)
    bn = homology_graded(build_involutive(D, F2H, "tau", "reduced"))
    kh = homology_graded(build_involutive(D, F2_H0, "tau", "reduced"))
    want = Counter((i, q) for i, q, _ in kh.torsion)
    assert bn.reduce_mod_h() == dict(want)


def test_trefoil_bar_natan():
    C = restrict_variant(build_ckh(corpus.load("3_1"), F2H, with_sigma=False), "reduced")
    M = homology_graded(C)
    assert M.free == [(0, 2)]
    assert M.torsion == [(3, 8, 1)]


def test_lee_dimension_of_a_knot():
    C = build_ckh(corpus.load("6_2a"), F2_H1, with_sigma=False)
    assert total_dimension(C) == 2


def test_graded_module_json_roundtrip():
    M = GradedModule([(0, 2), (1, 4)], [(3, 8, 2), (2, 6, 1)])
    assert GradedModule.from_json(M.to_json()) == M
    with pytest.raises(ValueError):
        GradedModule([], [(0, 0, 0)])


def test_kh_dims_over_f2_trefoil():
    C = restrict_variant(build_ckh(corpus.load("3_1"), F2_H0, with_sigma=False), "reduced")
    assert kh_dims(C) == {(0, 2): 1, (2, 6): 1, (3, 8): 1}


small_polys = st.integers(0, 15).map(Poly)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_factorisation(rows, cols, data):
    M = [[data.draw(small_polys) for _ in range(cols)] for _ in range(rows)]
    inv, L, R, Dg = snf(M)
    assert poly_matmul(poly_matmul(L, M), R) == Dg
    assert poly_det(L) == Poly(1) and poly_det(R) == Poly(1)
    for a, b in zip(inv, inv[1:]):
        assert divmod(b, a)[1] == Poly(0)
    for r in range(rows):
        for c in range(cols):
            if r != c:
                assert Dg[r][c] == Poly(0)
