"""Tell strong inversions apart through their quotient theta-curves.

For a diagram symmetric under rotation about a horizontal axis in the plane,
the quotient by the rotation is drawn from the upper half of the picture plus
the axis line: an on-axis crossing becomes a clasp of the strand around the
axis (two crossings of the same flag), and every symmetric cap ends on the axis
at a fixed point. The two fixed points cut the axis into two arcs; each arc
together with the quotient of the knot is a knot (a constituent of the
theta-curve). The pair of constituent knots is an invariant of the inversion.

Knots are compared through the Kauffman bracket, computed for plats by a
Temperley-Lieb transfer over crossingless matchings and normalised up to units
(sign and powers of A), which removes the framing dependence.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Dict, FrozenSet, List, Sequence, Tuple

Matching = Tuple[int, ...]          # partner of each position (0-based)


def _laurent_add(acc: Dict[int, int], poly: Dict[int, int], shift: int, scale: int = 1) -> None:
    for k, v in poly.items():
        acc[k + shift] += v * scale


def _matching_from_caps(n: int, caps) -> Matching:
    m = [0] * n
    for a, b in caps:
        m[a - 1], m[b - 1] = b - 1, a - 1
    return tuple(m)


DELTA = {2: -1, -2: -1}     # -A^2 - A^-2


def _mul(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = defaultdict(int)
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] += x * y
    return {k: v for k, v in out.items() if v}


def plat_bracket(n: int, layers: Sequence[Sequence[Tuple[int, int]]], left_caps, right_caps) -> Dict[int, int]:
    """Kauffman bracket <D> (unknot = 1) of a plat, as {power of A: coefficient}.

    A crossing (p, +1) has the NW -> SE strand on top; its A-smoothing keeps
    the strands horizontal and its B-smoothing joins p with p + 1 on both sides.
    """
    state: Dict[Matching, Dict[int, int]] = {_matching_from_caps(n, left_caps): {0: 1}}
    for layer in layers:
        for p, f in layer:
            i, j = p - 1, p
            new: Dict[Matching, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
            a_pow, b_pow = (1, -1) if f > 0 else (-1, 1)
            for m, poly in state.items():
                # horizontal smoothing
                _laurent_add(new[m], poly, a_pow)
                # cup-cap smoothing
                mm = list(m)
                if m[i] == j:
                    factor = DELTA
                else:
                    a, b = m[i], m[j]
                    mm[a], mm[b] = b, a
                    mm[i], mm[j] = j, i
                    factor = {0: 1}
                _laurent_add(new[tuple(mm)], _mul(poly, factor), b_pow)
            state = {k: {e: c for e, c in v.items() if c} for k, v in new.items()}
            state = {k: v for k, v in state.items() if v}
    right = _matching_from_caps(n, right_caps)
    total: Dict[int, int] = defaultdict(int)
    for m, poly in state.items():
        loops, seen = 0, set()
        for s in range(n):
            if s in seen:
                continue
            loops += 1
            cur, use_left = s, True
            while True:
                seen.add(cur)
                cur = m[cur] if use_left else right[cur]
                use_left = not use_left
                if cur == s and use_left:
                    break
                seen.add(cur)
        factor = {0: 1}
        for _ in range(loops - 1):
            factor = _mul(factor, DELTA)
        _laurent_add(total, _mul(poly, factor), 0)
    return {k: v for k, v in total.items() if v}


def normalise(poly: Dict[int, int]) -> Tuple[Tuple[int, int], ...]:
    """Bracket up to units: lowest power moved to 0, leading coefficient positive."""
    if not poly:
        return ()
    lo = min(poly)
    sign = 1 if poly[max(poly)] > 0 else -1
    return tuple(sorted((k - lo, sign * v) for k, v in poly.items()))


def bracket_to_jones(poly: Dict[int, int], writhe: int) -> Dict[int, int]:
    """Reduced Jones polynomial in q (Khovanov normalisation) from the bracket, via A^-2 = -q."""
    out: Dict[int, int] = defaultdict(int)
    unit = -1 if writhe % 2 else 1
    for k, v in poly.items():
        e = k - 3 * writhe          # times (-A^3)^(-w)
        if e % 2:
            raise ValueError("odd A-power in a knot bracket")
        m = -e // 2                 # A^e = (A^-2)^m = (-q)^m
        out[m] += v * unit * (-1 if m % 2 else 1)
    return {k: v for k, v in out.items() if v}


def _symmetric_caps(n: int, caps) -> List[Tuple[int, int]]:
    return [(min(a, b), max(a, b)) for a, b in caps if a + b == n + 1]


def h_quotient_constituents(n: int, layers, left_caps, right_caps):
    """The two constituent knots of the quotient of a horizontal-axis plat, as plats.

    Returns two (positions, layers, left_caps, right_caps) tuples: first the arc
    of the axis carrying the clasps, then the complementary arc.
    """
    m = n // 2
    steps = []
    for layer in layers:
        plain = [(p, f) for p, f in layer if p + 1 <= m]
        hooked = [(p, f) for p, f in layer if p == m]
        if plain:
            steps.append((False, plain))
        for c in hooked:
            steps.append((True, [c]))

    def word(with_hooks: bool):
        out = []
        for hook, cs in steps:
            if not hook:
                out.append(cs)
            elif with_hooks:
                out += [cs, cs]
        return out

    upper = lambda caps: [(a, b) for a, b in caps if b <= m]
    sl, sr = _symmetric_caps(n, left_caps), _symmetric_caps(n, right_caps)
    if len(sl) + len(sr) != 2:
        raise ValueError("expected exactly two fixed points")
    if len(sl) == 1:
        # one fixed point at each end: the axis strand sits at position m + 1
        if m % 2 == 0:
            raise ValueError("unsupported plat width")
        lc = upper(left_caps) + [(sl[0][0], m + 1)]
        rc = upper(right_caps) + [(sr[0][0], m + 1)]
        return [(m + 1, word(True), lc, rc), (m + 1, word(False), lc, rc)]
    # both fixed points at one end
    fixed_left = bool(sl)
    end = sl or sr
    inner, outer = sorted(end, key=lambda c: c[1] - c[0])
    end_side, other_side = (left_caps, right_caps) if fixed_left else (right_caps, left_caps)
    # short arc between the fixed points: the two half-caps join up, clasps vanish
    e1 = upper(end_side) + [tuple(sorted((inner[0], outer[0])))]
    a1 = (m, word(False)) + _order(e1, upper(other_side), fixed_left)
    # long arc: axis strand at m + 1 through the clasps, closed around the outside at m + 2
    e2 = upper(end_side) + [(inner[0], m + 1), (outer[0], m + 2)]
    o2 = upper(other_side) + [(m + 1, m + 2)]
    a2 = (m + 2, word(True)) + _order(e2, o2, fixed_left)
    return [a2, a1]


def _order(end_caps, other_caps, fixed_on_left: bool):
    return (end_caps, other_caps) if fixed_on_left else (other_caps, end_caps)


def inversion_class(n: int, layers, left_caps, right_caps) -> FrozenSet:
    """Unordered pair of normalised brackets of the two constituent knots."""
    parts = h_quotient_constituents(n, layers, left_caps, right_caps)
    return frozenset(normalise(plat_bracket(*part)) for part in parts)
