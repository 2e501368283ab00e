"""Homology of bigraded complexes over F2, F2 (h = 1) and F2[H].

Over F2[H] with deg H = -2 every differential entry between homogeneous
generators is H^k times a bit, k = (q_tgt - q_src) / 2. Ordering generators by
decreasing q turns the graded Smith form into a column reduction over F2:
a column whose low row r is paired with a column c of positive gap k gives a
summand F2[H]/(H^k) generated in the bigrading of r, and a cycle that is never
a low is the generator of a free tower.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .coeffs import Poly, RingName, clmul, cldivmod, poly_valuation
from .complex import ChainComplexGraded


@dataclass
class GradedModule:
    """Free towers (i, q) and torsion summands (i, q, k) meaning F2[H]/(H^k) at (i, q)."""

    free: List[Tuple[int, Optional[int]]] = field(default_factory=list)
    torsion: List[Tuple[int, int, int]] = field(default_factory=list)
    basis_transforms: Dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.free = sorted((int(i), None if q is None else int(q)) for i, q in self.free)
        self.torsion = sorted((int(i), int(q), int(k)) for i, q, k in self.torsion)
        for t in self.torsion:
            if t[2] < 1:
                raise ValueError("torsion order must be at least 1")

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedModule) and self.free == other.free and self.torsion == other.torsion

    def cells(self) -> Dict[Tuple[int, int], Dict]:
        out: Dict[Tuple[int, int], Dict] = {}
        for i, q in self.free:
            out.setdefault((i, q), {"free": 0, "torsion": {}})["free"] += 1
        for i, q, k in self.torsion:
            c = out.setdefault((i, q), {"free": 0, "torsion": {}})
            c["torsion"][k] = c["torsion"].get(k, 0) + 1
        return out

    def total_rank(self) -> int:
        return len(self.free) + len(self.torsion)

    def reduce_mod_h(self) -> Dict[Tuple[int, int], int]:
        """Bigraded dimensions of the complex tensored with F2[H]/(H).

        A tower at (i, q) gives F2 at (i, q); a summand F2[H]/(H^k) at (i, q) is
        generated by w with H^k w = d c, so it gives F2 at (i, q) and at (i - 1, q - 2k).
        """
        out: Dict[Tuple[int, int], int] = {}
        for i, q in self.free:
            out[(i, q)] = out.get((i, q), 0) + 1
        for i, q, k in self.torsion:
            out[(i, q)] = out.get((i, q), 0) + 1
            out[(i - 1, q - 2 * k)] = out.get((i - 1, q - 2 * k), 0) + 1
        return out

    def to_json(self) -> Dict:
        return {"free": [list(x) for x in self.free], "torsion": [list(x) for x in self.torsion]}

    @staticmethod
    def from_json(d: Dict) -> "GradedModule":
        return GradedModule([tuple(x) for x in d["free"]], [tuple(x) for x in d["torsion"]])


# ---------------------------------------------------------------- Smith normal form over F2[H]

def snf(M: Sequence[Sequence[Poly]]):
    """Smith form over F2[H] by Euclidean pivoting.

    Returns (invariants, L, R, Dg) with L M R = Dg diagonal, L and R invertible,
    and invariants d_1 | d_2 | ... the nonzero diagonal entries.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [[M[r][c].bits for c in range(cols)] for r in range(rows)]
    L = [[int(r == c) for c in range(rows)] for r in range(rows)]
    R = [[int(r == c) for c in range(cols)] for r in range(cols)]

    def row_add(dst, src, f):   # row dst += f * row src
        A[dst] = [a ^ clmul(f, b) for a, b in zip(A[dst], A[src])]
        L[dst] = [a ^ clmul(f, b) for a, b in zip(L[dst], L[src])]

    def col_add(dst, src, f):
        for r in range(rows):
            A[r][dst] ^= clmul(f, A[r][src])
        for r in range(cols):
            R[r][dst] ^= clmul(f, R[r][src])

    def row_swap(a, b):
        A[a], A[b] = A[b], A[a]
        L[a], L[b] = L[b], L[a]

    def col_swap(a, b):
        for r in range(rows):
            A[r][a], A[r][b] = A[r][b], A[r][a]
        for r in range(cols):
            R[r][a], R[r][b] = R[r][b], R[r][a]

    t = 0
    while t < min(rows, cols):
        # pick the nonzero entry of minimal degree in the trailing block
        best = None
        for r in range(t, rows):
            for c in range(t, cols):
                if A[r][c] and (best is None or A[r][c].bit_length() < A[best[0]][best[1]].bit_length()):
                    best = (r, c)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for r in range(t + 1, rows):
                if A[r][t]:
                    q, rem = cldivmod(A[r][t], p)
                    row_add(r, t, q)
                    if rem:
                        row_swap(t, r)
                        dirty = True
                        break
            if dirty:
                continue
            for c in range(t + 1, cols):
                if A[t][c]:
                    q, rem = cldivmod(A[t][c], p)
                    col_add(c, t, q)
                    if rem:
                        col_swap(t, c)
                        dirty = True
                        break
            if dirty:
                continue
            # divisibility of the remaining block by the pivot
            bad = None
            for r in range(t + 1, rows):
                for c in range(t + 1, cols):
                    if A[r][c] and cldivmod(A[r][c], p)[1]:
                        bad = r
                        break
                if bad is not None:
                    break
            if bad is not None:
                row_add(t, bad, 1)
                continue
            break
        t += 1
    inv = [Poly(A[k][k]) for k in range(min(rows, cols)) if A[k][k]]
    wrap = lambda X: [[Poly(v) for v in row] for row in X]  # noqa: E731
    return inv, wrap(L), wrap(R), wrap(A)


def poly_matmul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[Poly(_dot([A[i][k].bits for k in range(m)], [B[k][j].bits for k in range(m)])) for j in range(p)]
            for i in range(n)]


def _dot(a, b):
    out = 0
    for x, y in zip(a, b):
        out ^= clmul(x, y)
    return out


def poly_det(A) -> Poly:
    """Determinant over F2[H] by cofactor expansion (small matrices only)."""
    n = len(A)
    if n == 0:
        return Poly(1)
    if n == 1:
        return A[0][0]
    out = 0
    for c in range(n):
        if A[0][c].bits:
            minor = [row[:c] + row[c + 1:] for row in A[1:]]
            out ^= clmul(A[0][c].bits, poly_det(minor).bits)
    return Poly(out)


# ---------------------------------------------------------------- graded homology

def _degree_order(C: ChainComplexGraded, i: int) -> np.ndarray:
    """Generators of degree i sorted by decreasing q (stable in index)."""
    idx = np.flatnonzero(C.hdeg == i)
    return idx[np.lexsort((idx, -C.qdeg[idx]))]


def _block_matrix(C: ChainComplexGraded, cols: np.ndarray, rows: np.ndarray, check_graded: bool) -> np.ndarray:
    d = C.d
    cpos = np.full(C.size, -1, np.int64)
    cpos[cols] = np.arange(len(cols))
    rpos = np.full(C.size, -1, np.int64)
    rpos[rows] = np.arange(len(rows))
    sel = (cpos[d.src] >= 0) & (rpos[d.tgt] >= 0)
    if check_graded and sel.any():
        coef = d.coef[sel]
        if np.any(coef & (coef - 1)):
            raise ValueError("differential entry is not a monomial")
        k = np.array([int(c).bit_length() - 1 for c in coef])
        if np.any(C.qdeg[d.tgt[sel]] - C.qdeg[d.src[sel]] != 2 * k):
            raise ValueError("differential is not homogeneous")
    return K.pack_columns(len(cols), len(rows), cpos[d.src[sel]], rpos[d.tgt[sel]])


@dataclass
class _DegreeReduction:
    order: np.ndarray          # generator ids of degree i in column order
    next_order: np.ndarray     # generator ids of degree i+1 in row order
    low: np.ndarray
    R: np.ndarray              # reduced columns
    V: Optional[np.ndarray]


def _reduce_degree(C: ChainComplexGraded, i: int, track: bool, graded: bool = True) -> _DegreeReduction:
    cols = _degree_order(C, i)
    rows = _degree_order(C, i + 1)
    M = _block_matrix(C, cols, rows, graded)
    low, V = K.reduce_columns(M, track)
    return _DegreeReduction(cols, rows, low, M, V if track else None)


def homology_graded(C: ChainComplexGraded, track_degrees: Iterable[int] = ()) -> GradedModule:
    """Graded homology; over F2 (h=0) every summand is reported as F2[H]/(H)."""
    ring = C.ring.name
    if ring == RingName.F2_h0:
        return GradedModule([], [(i, q, 1) for (i, q), n in kh_dims(C).items() for _ in range(n)])
    if ring == RingName.F2_h1:
        return GradedModule([(i, None) for i, n in total_dims(C).items() for _ in range(n)], [])
    track = set(track_degrees)
    degs = C.degrees()
    red: Dict[int, _DegreeReduction] = {}
    for i in degs:
        red[i] = _reduce_degree(C, i, track=(i in track))
    free, tors = [], []
    for i in degs:
        r = red[i]
        prev = red.get(i - 1)
        born = set()
        if prev is not None:
            born = set(prev.low[prev.low >= 0].tolist())
        for c in np.flatnonzero(r.low < 0).tolist():
            if c not in born:
                g = r.order[c]
                free.append((i, int(C.qdeg[g])))
        for c in np.flatnonzero(r.low >= 0).tolist():
            g_c = r.order[c]
            g_r = r.next_order[r.low[c]]
            k = (int(C.qdeg[g_r]) - int(C.qdeg[g_c])) // 2
            if k > 0:
                tors.append((i + 1, int(C.qdeg[g_r]), k))
    M = GradedModule(free, tors)
    M.basis_transforms = {i: red[i] for i in degs if i in track or (i + 1) in track}
    return M


def kh_dims(C: ChainComplexGraded) -> Dict[Tuple[int, int], int]:
    """Bigraded dimensions over F2 of a complex whose differential preserves q."""
    out: Dict[Tuple[int, int], int] = {}
    d = C.d
    keys = sorted(set(zip(C.hdeg.tolist(), C.qdeg.tolist())))
    ranks: Dict[Tuple[int, int], int] = {}
    for (i, q) in keys:
        cols = np.flatnonzero((C.hdeg == i) & (C.qdeg == q))
        rows = np.flatnonzero((C.hdeg == i + 1) & (C.qdeg == q))
        if len(rows) == 0 or len(cols) == 0:
            ranks[(i, q)] = 0
            continue
        cpos = np.full(C.size, -1, np.int64)
        cpos[cols] = np.arange(len(cols))
        rpos = np.full(C.size, -1, np.int64)
        rpos[rows] = np.arange(len(rows))
        sel = (cpos[d.src] >= 0) & (rpos[d.tgt] >= 0) & ((d.coef & 1) == 1)
        M = K.pack_columns(len(cols), len(rows), cpos[d.src[sel]], rpos[d.tgt[sel]])
        ranks[(i, q)] = K.gf2_rank(M)
    dims = C.graded_dims()
    for (i, q), n in dims.items():
        h = n - ranks.get((i, q), 0) - ranks.get((i - 1, q), 0)
        if h:
            out[(i, q)] = h
    return out


def total_dims(C: ChainComplexGraded) -> Dict[int, int]:
    """Dimension per homological degree with every coefficient evaluated at H = 1."""
    Cs = C.specialize(C.ring) if C.ring.name == RingName.F2_h1 else C
    out: Dict[int, int] = {}
    ranks: Dict[int, int] = {}
    d = Cs.d
    parity = np.array([bin(int(c)).count("1") & 1 for c in d.coef], np.int64) if len(d.coef) else np.zeros(0, np.int64)
    for i in Cs.degrees():
        cols = np.flatnonzero(Cs.hdeg == i)
        rows = np.flatnonzero(Cs.hdeg == i + 1)
        if len(rows) == 0:
            ranks[i] = 0
            continue
        cpos = np.full(Cs.size, -1, np.int64)
        cpos[cols] = np.arange(len(cols))
        rpos = np.full(Cs.size, -1, np.int64)
        rpos[rows] = np.arange(len(rows))
        sel = (cpos[d.src] >= 0) & (rpos[d.tgt] >= 0) & (parity == 1)
        ranks[i] = K.gf2_rank(K.pack_columns(len(cols), len(rows), cpos[d.src[sel]], rpos[d.tgt[sel]]))
    for i in Cs.degrees():
        h = int((Cs.hdeg == i).sum()) - ranks.get(i, 0) - ranks.get(i - 1, 0)
        if h:
            out[i] = h
    return out


def total_dimension(C: ChainComplexGraded) -> int:
    return sum(total_dims(C).values())


# ---------------------------------------------------------------- class coordinates

def _as_bits(C: ChainComplexGraded, cycle: Dict[int, int]) -> Tuple[int, int]:
    """Homogeneous vector -> (degree i, q); checks every coefficient is the matching monomial."""
    if not cycle:
        raise ValueError("zero vector has no degree")
    gs = list(cycle)
    i = int(C.hdeg[gs[0]])
    qz = None
    for g, c in cycle.items():
        if int(C.hdeg[g]) != i:
            raise ValueError("vector is not in a single homological degree")
        if c & (c - 1):
            raise ValueError("vector is not homogeneous")
        q = int(C.qdeg[g]) - 2 * (c.bit_length() - 1)
        if qz is None:
            qz = q
        elif q != qz:
            raise ValueError("vector is not homogeneous")
    return i, qz


def class_coordinates(C: ChainComplexGraded, cycle: Dict[int, int], H: Optional[GradedModule] = None):
    """Coordinates of [cycle] in the adapted basis: free part {tower q: Poly} and torsion part."""
    if C.ring.name != RingName.F2H_hH:
        raise ValueError("class coordinates are computed over F2[H]")
    if not cycle:
        return [], []
    i, qz = _as_bits(C, cycle)
    if H is None or i not in H.basis_transforms or H.basis_transforms[i].V is None:
        H = homology_graded(C, track_degrees=[i])
    cur = H.basis_transforms[i]
    prev = H.basis_transforms.get(i - 1)
    n = len(cur.order)
    pos = np.full(C.size, -1, np.int64)
    pos[cur.order] = np.arange(n)
    z = 0
    for g in cycle:
        z ^= 1 << int(pos[g])
    # boundary of z must vanish
    dz = C.d.apply(cycle)
    if dz:
        raise ValueError("input is not a cycle")
    # reduction basis indexed by leading position
    lead_free: Dict[int, int] = {}
    for c in np.flatnonzero(cur.low < 0).tolist():
        lead_free[c] = c
    lead_bdry: Dict[int, int] = {}
    if prev is not None:
        for c in np.flatnonzero(prev.low >= 0).tolist():
            lead_bdry[int(prev.low[c])] = c
    free_coords: List[Tuple[int, Poly]] = []
    tors_coords: List[Tuple[int, Poly]] = []
    while z:
        l = z.bit_length() - 1
        if l in lead_bdry:
            c = lead_bdry[l]
            vec = _row_int(prev.R[c])
            g_low = cur.order[l]
            tors_coords.append((int(C.qdeg[g_low]), Poly.monomial((int(C.qdeg[g_low]) - qz) // 2)))
            z ^= vec
        elif l in lead_free:
            vec = _row_int(cur.V[l])
            q_e = int(C.qdeg[cur.order[l]])
            free_coords.append((q_e, Poly.monomial((q_e - qz) // 2)))
            z ^= vec
        else:
            raise ValueError("input is not a cycle")
    return free_coords, tors_coords


def _row_int(row: np.ndarray) -> int:
    return int.from_bytes(row.astype("<u8").tobytes(), "little")


def divisibility(C: ChainComplexGraded, cycle: Dict[int, int], H: Optional[GradedModule] = None) -> int:
    """max{k : [cycle] lies in H^k (homology / torsion)}."""
    free, _ = class_coordinates(C, cycle, H)
    if not free:
        raise ValueError("torsion class has no finite divisibility")
    return min(poly_valuation(p) for _, p in free)
