"""Independent reference computations used by the tests.

Nothing here imports the complex or homology modules: the Jones polynomial is
a plain state sum over PD smoothings, ranks use a separate Python elimination,
and the Frobenius coproduct is recovered by brute force.
"""
from __future__ import annotations

import itertools
from collections import Counter
from typing import Dict, Iterable, List, Sequence, Tuple


def circles_of(pd: Sequence[Tuple[str, str, str, str]], state: Sequence[int], edges: Iterable[str]) -> int:
    parent = {e: e for e in edges}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for x, b in zip(pd, state):
        pairs = ((x[0], x[1]), (x[2], x[3])) if b == 0 else ((x[0], x[3]), (x[1], x[2]))
        for a, c in pairs:
            ra, rc = find(a), find(c)
            if ra != rc:
                parent[ra] = rc
    return len({find(e) for e in parent})


def laurent_mul(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = Counter()
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] += x * y
    return {k: v for k, v in out.items() if v}


def jones_reduced(pd, signs, edges) -> Dict[int, int]:
    """Reduced Jones polynomial in Khovanov's normalization (unknot = 1) as {power: coeff}."""
    n = len(pd)
    npos = sum(1 for s in signs if s > 0)
    nneg = n - npos
    total: Dict[int, int] = Counter()
    for state in itertools.product((0, 1), repeat=n):
        c = circles_of(pd, state, edges)
        h = sum(state)
        term = {h + npos - 2 * nneg: -1 if (h - nneg) % 2 else 1}
        for _ in range(c - 1):
            term = laurent_mul(term, {1: 1, -1: 1})
        for k, v in term.items():
            total[k] += v
    return {k: v for k, v in total.items() if v}


def jones_of_diagram(D) -> Dict[int, int]:
    return jones_reduced([x.pd for x in D.crossings], [x.sign for x in D.crossings], D.edges)


def jones_from_involutive_table(cells: Iterable[Sequence[int]]) -> Dict[int, int]:
    """chi of Kh_r read off a split involutive table: P_I = (1 + t) P, so chi = P_I'(-1)."""
    out: Dict[int, int] = Counter()
    for i, q, *_ in cells:
        out[q] += -i if i % 2 == 0 else i
    return {k: v for k, v in out.items() if v}


def gf2_rank_dense(rows: List[int]) -> int:
    """Rank of a GF(2) matrix given as a list of int bitmasks (plain Python elimination)."""
    rank = 0
    rows = [r for r in rows if r]
    pivots: Dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank
