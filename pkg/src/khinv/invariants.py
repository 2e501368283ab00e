"""Lee cycles and the equivariant Rasmussen invariants.

The Lee cycle labels every Seifert circle by X or Y = X + h so that the two
circles meeting at a crossing carry different letters. Its h-divisibility in
Bar-Natan homology gives s = 2d + w - r + 1; in the involutive theory the cycle
and its Q-copy give the lower and upper values. The same numbers can be read
off directly as the quantum gradings of the two towers of reduced involutive
Bar-Natan homology, and `cross_validate` compares the two routes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .coeffs import F2H, Poly, RingSpec, alg_pair, clmul
from .complex import DEFAULT_CROSSING_CAP, ChainComplexGraded, build_ckh, build_involutive
from .diagram import STRONG, DiagramError, InvolutiveDiagram, mirror, seifert_resolution
from .homology import GradedModule, divisibility, homology_graded


class TowerStructureError(RuntimeError):
    """Reduced involutive Bar-Natan homology of a knot must have towers in degrees 0 and 1."""


@dataclass(frozen=True)
class LeeLabeling:
    labels: Tuple[str, ...]          # per Seifert circle: "X" or "Y"
    orientation_tag: int             # 0: first circle labelled X; 1: the swapped coloring
    circles: Tuple[Tuple[str, ...], ...]


@dataclass
class InvariantReport:
    s_lower: int
    s_upper: int
    s_classic: int
    d_lower: Optional[int]
    d_upper: Optional[int]
    d_classic: Optional[int]
    w: int
    r: int
    method: str
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict:
        return {"s_lower": self.s_lower, "s_upper": self.s_upper, "s_classic": self.s_classic,
                "d_lower": self.d_lower, "d_upper": self.d_upper, "d_classic": self.d_classic,
                "w": self.w, "r": self.r, "method": self.method}


def lee_labels(D: InvolutiveDiagram, orientation_tag: int = 0) -> LeeLabeling:
    """Proper 2-coloring of the Seifert graph, found by breadth-first search."""
    sd = seifert_resolution(D)
    adj: Dict[int, List[int]] = {c: [] for c in range(sd.r)}
    for a, b in sd.seifert_graph:
        if a == b:
            raise DiagramError("a crossing joins a Seifert circle to itself")
        adj[a].append(b)
        adj[b].append(a)
    colour: Dict[int, int] = {0: orientation_tag & 1}
    queue = [0]
    while queue:
        c = queue.pop()
        for o in adj[c]:
            if o not in colour:
                colour[o] = 1 - colour[c]
                queue.append(o)
            elif colour[o] == colour[c]:
                raise DiagramError("Seifert graph is not bipartite")
    if len(colour) != sd.r:
        raise DiagramError("Seifert graph is disconnected; color each component separately")
    labels = tuple("X" if colour[c] == 0 else "Y" for c in range(sd.r))
    return LeeLabeling(labels, orientation_tag & 1, tuple(sd.circles))


def _h_power(h: Poly, k: int) -> int:
    out = 1
    for _ in range(k):
        out = clmul(out, h.bits)
    return out


def lee_chain(C: ChainComplexGraded, lab: LeeLabeling) -> Dict[int, int]:
    """The Lee cycle as {generator: coefficient bits} in an (unreduced, non-cone) complex.

    Y = X + h.1 is expanded, so a circle labelled Y contributes either X or h.1.
    """
    cube = C.info["cube"]
    D = cube.D
    idx = D.edge_index
    s = 0
    for k, x in enumerate(D.crossings):
        if x.sign < 0:
            s |= 1 << k
    circ = cube.circles[s]
    ys = []
    for c, letter in zip(lab.circles, lab.labels):
        cid = int(circ[idx[c[0]]])
        if letter == "Y":
            ys.append(cid)
    all_x = (1 << int(cube.ncirc[s])) - 1
    base = int(cube.offsets[s])
    pos = _position_map(C)
    out: Dict[int, int] = {}
    for sub in range(1 << len(ys)):
        m = all_x
        for b, cid in enumerate(ys):
            if (sub >> b) & 1:
                m &= ~(1 << cid)
        coef = _h_power(C.ring.h, bin(sub).count("1"))
        if coef:
            g = pos.get(base + m)
            if g is not None:
                out[g] = out.get(g, 0) ^ coef
    return {g: c for g, c in out.items() if c}


def _position_map(C: ChainComplexGraded) -> Dict[int, int]:
    orig = C.info.get("orig")
    if orig is None:
        return {g: g for g in range(C.size)}
    copy = C.info.get("copy")
    if copy is None:
        return {int(o): k for k, o in enumerate(orig.tolist())}
    return {int(o): k for k, (o, cp) in enumerate(zip(orig.tolist(), copy.tolist())) if cp == 0}


def equivariant_lee_cycles(D: InvolutiveDiagram, ring: RingSpec = F2H, mode: str = "tau",
                           cap: int = DEFAULT_CROSSING_CAP, C: Optional[ChainComplexGraded] = None,
                           orientation_tag: int = 0):
    """(alpha_lower, alpha_upper, C): the Lee cycle in the source copy and its Q-copy."""
    if mode == "tau" and D.mode != STRONG:
        raise DiagramError("tau mode needs a strongly invertible diagram")
    if C is None:
        C = build_involutive(D, ring, mode, "unreduced", cap)
    lab = lee_labels(D, orientation_tag)
    lower = lee_chain(C, lab)
    n = C.size // 2
    upper = {g + n: c for g, c in lower.items()}
    for name, z in (("lower", lower), ("upper", upper)):
        if C.d.apply(z):
            raise AssertionError(f"{name} equivariant Lee chain is not a cycle")
    return lower, upper, C


def _s_from_d(d: int, D: InvolutiveDiagram, r: int) -> int:
    return 2 * d + D.writhe - r + 1


def equivariant_s(D: InvolutiveDiagram, cap: int = DEFAULT_CROSSING_CAP) -> InvariantReport:
    """(s_lower, s_upper) from divisibility of the equivariant Lee classes."""
    if D.component_count != 1 or D.mode != STRONG:
        raise DiagramError("equivariant_s needs a strongly invertible knot diagram")
    base = build_ckh(D, F2H, cap, with_sigma=False)
    r = seifert_resolution(D).r
    lower, upper, CI = equivariant_lee_cycles(D, F2H, "tau", cap, build_involutive(D, F2H, "tau", "unreduced",
                                                                                    cap, base=base))
    HI = homology_graded(CI, track_degrees=[0, 1])
    dl = divisibility(CI, lower, HI)
    du = divisibility(CI, upper, HI)
    alpha = lee_chain(base, lee_labels(D))
    dc = divisibility(base, alpha)
    return InvariantReport(_s_from_d(dl, D, r), _s_from_d(du, D, r), _s_from_d(dc, D, r), dl, du, dc,
                           D.writhe, r, "divisibility")


def tower_s(D: InvolutiveDiagram, cap: int = DEFAULT_CROSSING_CAP,
            H: Optional[GradedModule] = None) -> Tuple[int, int]:
    """Quantum gradings of the two towers of reduced involutive Bar-Natan homology."""
    if D.basepoint is None:
        raise DiagramError("tower_s needs a basepoint")
    if D.component_count != 1:
        raise DiagramError("tower_s needs a knot")
    if H is None:
        H = homology_graded(build_involutive(D, F2H, "tau", "reduced", cap))
    free = sorted(H.free)
    if len(free) != 2 or [i for i, _ in free] != [0, 1]:
        raise TowerStructureError(f"tower structure violated: free part {free}")
    return free[0][1], free[1][1]


def classic_tower_s(D: InvolutiveDiagram, cap: int = DEFAULT_CROSSING_CAP) -> int:
    """The single tower of reduced (non-involutive) Bar-Natan homology."""
    from .complex import restrict_variant
    H = homology_graded(restrict_variant(build_ckh(D, F2H, cap, with_sigma=False), "reduced"))
    if len(H.free) != 1 or H.free[0][0] != 0:
        raise TowerStructureError(f"tower structure violated: free part {H.free}")
    return H.free[0][1]


def lee_pairing(D: InvolutiveDiagram, reduced: bool = False, orientation_tag: int = 0) -> Poly:
    """Chain-level pairing of the Lee cycle of D with the Lee cycle of its mirror.

    Generators of D and of the mirror pair when their states are complementary;
    the value is the product of the circle pairings <x, y> = eps(xy). The mirror's
    coloring is the one induced from D (same Seifert circles, same letters). In the
    reduced version both cycles are projected to pointed-X terms and the pointed
    circle is left out of the product.
    """
    if reduced and D.basepoint is None:
        raise DiagramError("reduced pairing needs a basepoint")
    Dm = mirror(D)
    lab = lee_labels(D, orientation_tag)
    ring = F2H
    C1 = build_ckh(D, ring, with_sigma=False)
    C2 = build_ckh(Dm, ring, with_sigma=False)
    a1 = lee_chain(C1, lab)
    a2 = lee_chain(C2, lab)
    full = (1 << D.n) - 1
    idx = D.edge_index
    base_edge = idx[D.basepoint] if reduced else None
    total = 0
    for g1, c1 in a1.items():
        s1 = int(C1.info["states"][g1])
        m1 = int(C1.info["masks"][g1])
        circ1 = C1.info["cube"].circles[s1]
        for g2, c2 in a2.items():
            s2 = int(C2.info["states"][g2])
            if s2 != full ^ s1:
                continue
            m2 = int(C2.info["masks"][g2])
            circ2 = C2.info["cube"].circles[s2]
            if base_edge is not None:
                # the reduced Lee cycle keeps only terms with the pointed circle labelled X
                if not ((m1 >> int(circ1[base_edge])) & 1 and (m2 >> int(circ2[base_edge])) & 1):
                    continue
            value = clmul(c1, c2)
            seen = set()
            for e in range(len(D.edges)):
                c = int(circ1[e])
                if c in seen:
                    continue
                seen.add(c)
                if base_edge is not None and int(circ1[base_edge]) == c:
                    continue
                x = "X" if (m1 >> c) & 1 else "1"
                y = "X" if (m2 >> int(circ2[e])) & 1 else "1"
                value = clmul(value, alg_pair(x, y, ring).bits)
                if not value:
                    break
            total ^= value
    return Poly(total)


def pairing_check(D: InvolutiveDiagram) -> Dict[str, object]:
    r = seifert_resolution(D).r
    out: Dict[str, object] = {"r": r, "unreduced": lee_pairing(D)}
    out["unreduced_ok"] = out["unreduced"] == Poly.monomial(r)
    if D.basepoint is not None:
        out["reduced"] = lee_pairing(D, reduced=True)
        out["reduced_ok"] = out["reduced"] == Poly.monomial(r - 1)
    return out


def invariant_report(D: InvolutiveDiagram, cap: int = DEFAULT_CROSSING_CAP) -> InvariantReport:
    """Divisibility values, cross-checked against the tower values when a basepoint exists."""
    rep = equivariant_s(D, cap)
    if D.basepoint is not None:
        t = tower_s(D, cap)
        if t == (rep.s_lower, rep.s_upper):
            rep.method = "both-agree"
        else:
            rep.notes.append(f"tower method gives {t}")
    return rep


def cross_validate(D: InvolutiveDiagram, cap: int = DEFAULT_CROSSING_CAP) -> Dict[str, object]:
    """Compare the two methods and the mirror identities; failures are listed with both values."""
    rep = equivariant_s(D, cap)
    Dm = mirror(D)
    rep_m = equivariant_s(Dm, cap)
    failures: List[str] = []
    out: Dict[str, object] = {"report": rep, "mirror_report": rep_m}
    if D.basepoint is not None:
        t = tower_s(D, cap)
        out["tower"] = t
        if t != (rep.s_lower, rep.s_upper):
            failures.append(f"divisibility {(rep.s_lower, rep.s_upper)} != towers {t}")
    if rep_m.s_lower != -rep.s_upper or rep_m.s_upper != -rep.s_lower:
        failures.append(f"mirror: ({rep_m.s_lower}, {rep_m.s_upper}) vs ({rep.s_lower}, {rep.s_upper})")
    if rep.d_lower + rep_m.d_upper != rep.r - 1:
        failures.append(f"d_lower + mirror d_upper = {rep.d_lower + rep_m.d_upper} != r - 1 = {rep.r - 1}")
    if not rep.s_lower <= rep.s_classic <= rep.s_upper:
        failures.append(f"s_classic {rep.s_classic} outside [{rep.s_lower}, {rep.s_upper}]")
    out["failures"] = failures
    return out


def coloring_independent(D: InvolutiveDiagram, cap: int = DEFAULT_CROSSING_CAP) -> bool:
    """Both proper colorings give the same (d_lower, d_upper)."""
    CI = build_involutive(D, F2H, "tau", "unreduced", cap)
    HI = homology_graded(CI, track_degrees=[0, 1])
    vals = []
    for tag in (0, 1):
        lo, up, _ = equivariant_lee_cycles(D, F2H, "tau", cap, CI, orientation_tag=tag)
        vals.append((divisibility(CI, lo, HI), divisibility(CI, up, HI)))
    return vals[0] == vals[1]


def lee_cycle_is_invariant(C: ChainComplexGraded, chain: Dict[int, int], endo: str = "tau") -> bool:
    g = C.endos[endo]
    img = g.apply(chain)
    return img == chain


__all__ = ["LeeLabeling", "InvariantReport", "TowerStructureError", "lee_labels", "lee_chain",
           "equivariant_lee_cycles", "equivariant_s", "tower_s", "classic_tower_s", "lee_pairing",
           "pairing_check", "invariant_report", "cross_validate", "coloring_independent",
           "lee_cycle_is_invariant"]
