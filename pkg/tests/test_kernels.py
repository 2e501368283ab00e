import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from khinv import _kernels as K
from oracles import gf2_rank_dense


def random_matrix(rng, ncols, nrows, density):
    cols, rows = np.nonzero(rng.random((ncols, nrows)) < density)
    return K.pack_columns(ncols, nrows, cols.astype(np.int64), rows.astype(np.int64)), cols, rows


def as_int_rows(ncols, cols, rows):
    out = [0] * ncols
    for c, r in zip(cols.tolist(), rows.tolist()):
        out[c] ^= 1 << r
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 90), st.integers(1, 150), st.floats(0.01, 0.5), st.integers(0, 2 ** 31))
def test_rank_matches_dense_oracle(ncols, nrows, density, seed):
    M, cols, rows = random_matrix(np.random.default_rng(seed), ncols, nrows, density)
    assert K.gf2_rank(M) == gf2_rank_dense(as_int_rows(ncols, cols, rows))


@pytest.mark.skipif(not K.USE_NUMBA, reason="numba kernels disabled")
@pytest.mark.parametrize("seed", range(5))
def test_numba_and_numpy_reductions_agree(seed):
    rng = np.random.default_rng(seed)
    M, _, _ = random_matrix(rng, 120, 200, 0.05)
    low_np, V_np = K.reduce_columns_np(M.copy(), track=True)
    low_nb, V_nb = K._reduce_nb(M.copy(), True)
    assert np.array_equal(low_np, low_nb)
    assert np.array_equal(V_np, V_nb)


def test_tracked_reduction_is_m_times_v():
    rng = np.random.default_rng(7)
    M, cols, rows = random_matrix(rng, 40, 70, 0.1)
    R = M.copy()
    low, V = K.reduce_columns(R, track=True)
    # R = M V column by column; lows of nonzero columns are distinct
    for c in range(40):
        acc = np.zeros_like(M[0])
        for k in K.unpack_bits(V[c], 40):
            acc ^= M[k]
        assert np.array_equal(acc, R[c])
    nz = low[low >= 0]
    assert len(set(nz.tolist())) == len(nz)


def test_pack_columns_xors_duplicates():
    M = K.pack_columns(1, 3, np.array([0, 0, 0]), np.array([1, 1, 2]))
    assert K.unpack_bits(M[0], 3).tolist() == [2]


def test_environment_switch_gives_same_homology():
    code = ("import sys; from khinv import corpus, _kernels; from khinv.complex import build_involutive; "
            "from khinv.homology import homology_graded; "
            "M = homology_graded(build_involutive(corpus.load('7_4b'), mode='tau', variant='reduced')); "
            "print(_kernels.USE_NUMBA, M.free, M.torsion)")
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, KHINV_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append(res.stdout.strip().split(" ", 1))
    assert outs[1][0] == "False"
    assert outs[0][1] == outs[1][1]
