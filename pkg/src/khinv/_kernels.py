"""GF(2) column reduction on bit-packed matrices.

A matrix is stored column-wise as uint64 words: column c is row `c` of the
array, and row r of the matrix is bit r % 64 of word r // 64. The "low" of a
column is the index of its highest set bit (the latest row in the order).

The numba kernels are used unless KHINV_DISABLE_NUMBA=1 is set, in which case
the numpy implementations below run instead. Both produce identical results.
"""
from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("KHINV_DISABLE_NUMBA", "0") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is optional
        USE_NUMBA = False


def words_for(nbits: int) -> int:
    return max(1, (nbits + 63) // 64)


def pack_columns(ncols: int, nrows: int, cols: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Dense bit-packed matrix from coordinate lists (duplicates XOR together)."""
    nw = words_for(nrows)
    M = np.zeros((ncols, nw), np.uint64)
    if len(cols):
        w = rows // 64
        b = (rows % 64).astype(np.uint64)
        np.bitwise_xor.at(M, (cols, w), np.left_shift(np.uint64(1), b))
    return M


def _low_np(col: np.ndarray) -> int:
    nz = np.flatnonzero(col)
    if len(nz) == 0:
        return -1
    w = int(nz[-1])
    return w * 64 + int(col[w]).bit_length() - 1


def reduce_columns_np(M: np.ndarray, track: bool = False):
    """Standard left-to-right column reduction, pure numpy."""
    ncols, nw = M.shape
    low = np.full(ncols, -1, np.int64)
    pivot = {}
    V = np.zeros((ncols, words_for(ncols)), np.uint64) if track else np.zeros((0, 1), np.uint64)
    if track:
        for c in range(ncols):
            V[c, c // 64] = np.uint64(1) << np.uint64(c % 64)
    for c in range(ncols):
        col = M[c]
        l = _low_np(col)
        while l >= 0 and l in pivot:
            p = pivot[l]
            np.bitwise_xor(col, M[p], out=col)
            if track:
                np.bitwise_xor(V[c], V[p], out=V[c])
            l = _low_np(col)
        if l >= 0:
            pivot[l] = c
            low[c] = l
    return low, V


if USE_NUMBA:
    @njit(cache=True)
    def _bitlen(x):
        n = 0
        while x:
            x >>= np.uint64(1)
            n += 1
        return n

    @njit(cache=True)
    def _low_nb(M, c):
        nw = M.shape[1]
        for w in range(nw - 1, -1, -1):
            x = M[c, w]
            if x != 0:
                return w * 64 + _bitlen(x) - 1
        return -1

    @njit(cache=True)
    def _reduce_nb(M, track):
        ncols, nw = M.shape
        nrows = nw * 64
        low = np.full(ncols, -1, np.int64)
        pivot = np.full(nrows, -1, np.int64)
        vw = (ncols + 63) // 64
        if vw == 0:
            vw = 1
        if track:
            V = np.zeros((ncols, vw), np.uint64)
            for c in range(ncols):
                V[c, c // 64] = np.uint64(1) << np.uint64(c % 64)
        else:
            V = np.zeros((0, 1), np.uint64)
        for c in range(ncols):
            l = _low_nb(M, c)
            while l >= 0 and pivot[l] >= 0:
                p = pivot[l]
                top = l // 64
                for w in range(top + 1):
                    M[c, w] ^= M[p, w]
                if track:
                    for w in range(vw):
                        V[c, w] ^= V[p, w]
                l = _low_nb(M, c)
            if l >= 0:
                pivot[l] = c
                low[c] = l
        return low, V


def reduce_columns(M: np.ndarray, track: bool = False):
    """Reduce columns in place; returns (low, V) with R = M V and V unitriangular."""
    if M.shape[0] == 0:
        return np.zeros(0, np.int64), np.zeros((0, 1), np.uint64)
    if USE_NUMBA:
        return _reduce_nb(M, track)
    return reduce_columns_np(M, track)


def gf2_rank(M: np.ndarray) -> int:
    low, _ = reduce_columns(M.copy(), False)
    return int((low >= 0).sum())


def unpack_bits(row: np.ndarray, n: int) -> np.ndarray:
    """Indices of set bits in a packed row (restricted to the first n)."""
    bits = np.unpackbits(row.view(np.uint8), bitorder="little")[:n]
    return np.flatnonzero(bits)
