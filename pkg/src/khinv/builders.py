"""Symmetric plat diagrams.

A plat lives on `n` horizontal positions (1 at the top). Crossings sit in layers
read left to right; a crossing `(p, f)` swaps the strands at positions p and p+1.
Strand A runs NW -> SE and strand B runs SW -> NE; flag f = +1 puts A on top.
Caps on the left and right close the strands in pairs.

The symmetry is read off the picture:
    "h": reflection in the horizontal line between positions n/2 and n/2+1,
    "v": reflection in the vertical line through the middle layer,
    "p": the horizontal axis again, for links that meet it only at crossings
         (a 2-periodic symmetry: orientations are preserved).
In every case the axis lies in the plane of the picture, the rotation about it
swaps over and under, and a crossing and its image carry the same flag.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import PERIODIC, STRONG, Crossing, DiagramError, InvolutiveDiagram, make_diagram

Layer = Sequence[Tuple[int, int]]

# port order counterclockwise around a crossing
NE, NW, SW, SE = 0, 1, 2, 3
OPP = {NW: SE, SE: NW, SW: NE, NE: SW}


class _UF:
    def __init__(self):
        self.p: Dict = {}

    def find(self, a):
        self.p.setdefault(a, a)
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def _check_caps(n: int, caps: Sequence[Tuple[int, int]]) -> None:
    used = sorted(p for c in caps for p in c)
    if used != list(range(1, n + 1)):
        raise DiagramError("caps must pair every position exactly once")
    for a, b in caps:
        for c, d in caps:
            lo1, hi1, lo2, hi2 = min(a, b), max(a, b), min(c, d), max(c, d)
            if lo1 < lo2 < hi1 < hi2:
                raise DiagramError("caps must be non-crossing")


def plat(n: int, layers: Sequence[Layer], left_caps: Sequence[Tuple[int, int]],
         right_caps: Sequence[Tuple[int, int]], symmetry: str = "h", basepoint: str = "outer",
         name: str = "", orientation_flip: Optional[Sequence[int]] = None) -> InvolutiveDiagram:
    """Build a symmetric plat diagram; the involution comes from `symmetry`.

    `basepoint` is "outer" (a fixed edge touching the unbounded region, chosen
    deterministically), "none", or an explicit wire spec "L<p>"/"R<p>"/"W<t>,<p>".
    Components are oriented by traversal; unless `orientation_flip` lists the
    components to reverse, the first choice compatible with the symmetry is used.
    """
    if orientation_flip is not None:
        return _plat(n, layers, left_caps, right_caps, symmetry, basepoint, name, orientation_flip)
    first_err = None
    for mask in range(1 << 6):
        flips = [k + 2 for k in range(6) if mask >> k & 1]
        try:
            return _plat(n, layers, left_caps, right_caps, symmetry, basepoint, name, flips)
        except DiagramError as err:
            first_err = first_err or err
            if "orientation" not in str(err) and "roles" not in str(err):
                raise
    raise first_err


def _plat(n, layers, left_caps, right_caps, symmetry, basepoint, name, orientation_flip) -> InvolutiveDiagram:
    _check_caps(n, left_caps)
    _check_caps(n, right_caps)
    T = len(layers)
    uf = _UF()
    ports: List[Dict[int, Tuple[int, int]]] = []   # per crossing: port -> wire
    flags: List[int] = []
    where: List[Tuple[int, int]] = []
    for t, layer in enumerate(layers):
        busy = set()
        for p, f in layer:
            if not 1 <= p < n or p in busy or p + 1 in busy:
                raise DiagramError(f"layer {t}: bad crossing position {p}")
            busy.update((p, p + 1))
            ports.append({NW: (t, p), SW: (t, p + 1), NE: (t + 1, p), SE: (t + 1, p + 1)})
            flags.append(f)
            where.append((t, p))
        for p in range(1, n + 1):
            if p not in busy:
                uf.union((t, p), (t + 1, p))
    for a, b in left_caps:
        uf.union((0, a), (0, b))
    for a, b in right_caps:
        uf.union((T, a), (T, b))
    for p in range(1, n + 1):
        uf.find((0, p))
    # every wire class touches two crossing ports or none
    touch: Dict = {}
    for k, pm in enumerate(ports):
        for port, wire in pm.items():
            touch.setdefault(uf.find(wire), []).append((k, port))
    classes = sorted({uf.find(w) for w in list(uf.p)}, key=lambda w: (w[0], w[1]))
    # traverse components to orient edges
    edge_of_class: Dict = {}
    head: Dict = {}        # class -> (crossing, port) where the oriented edge ends
    order: List = []
    visited = set()
    comp_no = 0
    for c in classes:
        if c in visited:
            continue
        comp_no += 1
        if c not in touch:
            visited.add(c)
            order.append(c)
            head[c] = None
            continue
        ends = touch[c]
        start_end = ends[0] if comp_no not in orientation_flip else ends[1]
        cur, end = c, start_end
        while cur not in visited:
            visited.add(cur)
            order.append(cur)
            head[cur] = end
            k, port = end
            nxt_port = OPP[port]
            nxt = uf.find(ports[k][nxt_port])
            other = [e for e in touch[nxt] if e != (k, nxt_port)]
            if len(other) != 1:
                other = [e for e in touch[nxt] if e != (k, nxt_port)] or [(k, nxt_port)]
            cur, end = nxt, other[0]
    names = {c: f"e{i + 1}" for i, c in enumerate(order)}
    # per crossing: in/out per strand
    incoming: Dict[Tuple[int, int], str] = {}
    outgoing: Dict[Tuple[int, int], str] = {}
    for c in order:
        h = head[c]
        if h is None:
            continue
        incoming[h] = names[c]
        tail = [e for e in touch[c] if e != h]
        outgoing[tail[0] if tail else h] = names[c]
    crossings = []
    for k in range(len(ports)):
        strands = {}
        for a, b in ((NW, SE), (SW, NE)):
            if (k, a) in incoming:
                strands[(a, b)] = (a, b)
            else:
                strands[(a, b)] = (b, a)
        sA, sB = strands[(NW, SE)], strands[(SW, NE)]
        over, under = (sA, sB) if flags[k] > 0 else (sB, sA)
        u_in, u_out = incoming[(k, under[0])], outgoing[(k, under[1])]
        o_in, o_out = incoming[(k, over[0])], outgoing[(k, over[1])]
        # positive iff the port after u_in counterclockwise is o_out
        sign = 1 if (under[0] + 1) % 4 == over[1] else -1
        crossings.append(Crossing(f"c{k + 1}", sign, u_in, u_out, o_in, o_out))
    # involution on wires
    def wire_image(w):
        t, p = w
        if symmetry in ("h", "p"):
            return (t, n + 1 - p)
        if symmetry == "v":
            return (T - t, p)
        raise ValueError(symmetry)

    tau: Dict[str, str] = {}
    for w in list(uf.p):
        a, b = names[uf.find(w)], names[uf.find(wire_image(w))]
        if tau.get(a, b) != b:
            raise DiagramError("symmetry does not respect the edge structure")
        tau[a] = b
    edges = [names[c] for c in order]
    mode = PERIODIC if symmetry == "p" else STRONG
    fixed = [e for e in edges if tau[e] == e]
    base = None
    if basepoint == "outer" and fixed:
        base = _outer_fixed(fixed, names, uf, n, T, left_caps, right_caps, symmetry)
    elif basepoint not in ("outer", "none"):
        base = names[uf.find(_wire_spec(basepoint, T))]
    return make_diagram(edges, crossings, tau, base, mode, name=name)


def _wire_spec(spec: str, T: int) -> Tuple[int, int]:
    if spec[0] == "L":
        return (0, int(spec[1:]))
    if spec[0] == "R":
        return (T, int(spec[1:]))
    t, p = spec[1:].split(",")
    return (int(t), int(p))


def _outer_fixed(fixed, names, uf, n, T, left_caps, right_caps, symmetry) -> Optional[str]:
    if symmetry == "h":
        # the outermost nested cap crosses the axis and bounds the outer region
        for caps, t in ((left_caps, 0), (right_caps, T)):
            for a, b in caps:
                if {a, b} == {1, n}:
                    e = names[uf.find((t, 1))]
                    if e in fixed:
                        return e
    if symmetry == "v":
        for p in (n, 1):
            e = names[uf.find((T // 2, p))]
            if e in fixed:
                return e
    return fixed[0]


# ------------------------------------------------------------ word families

def plat_h(word: Sequence[Tuple[str, int]], nested: str = "left", name: str = "") -> InvolutiveDiagram:
    """4-plat symmetric under the horizontal axis.

    Word letters: ("M", f) is a middle crossing on the axis; ("P", f) is the
    pair of outer crossings swapped by the axis. One end uses nested caps.
    """
    layers = []
    for kind, f in word:
        layers.append([(2, f)] if kind == "M" else [(1, f), (3, f)])
    adj, nest = [(1, 2), (3, 4)], [(2, 3), (1, 4)]
    lc, rc = (nest, adj) if nested == "left" else (adj, nest)
    return plat(4, layers, lc, rc, "h", name=name)


def plat_v(half: Sequence[Tuple[int, int]], centre: Tuple[int, int], name: str = "") -> InvolutiveDiagram:
    """4-plat symmetric under the vertical axis through the centre crossing."""
    layers = [[c] for c in half] + [[centre]] + [[c] for c in reversed(half)]
    caps = [(1, 2), (3, 4)]
    return plat(4, layers, caps, caps, "v", name=name)


def torus2(k: int, sign: int = 1) -> InvolutiveDiagram:
    """Closed 2-braid T(2,k) drawn as a 4-plat; the axis meets the middle crossing."""
    if k % 2 == 0 or k < 1:
        raise ValueError("torus2 needs odd k")
    h = (k - 1) // 2
    D = plat_v([(2, sign)] * h, (2, sign), name=f"torus2({k}){'+' if sign > 0 else '-'}")
    if D.writhe * sign < 0:
        D = plat_v([(2, -sign)] * h, (2, -sign), name=D.name)
    return D


def pretzel3(a: int, b: int, name: str = "") -> InvolutiveDiagram:
    """Pretzel P(a, b, a) with the axis through the middle twist region.

    Drawn sideways as a 6-plat: the twist rows sit on positions (1,2), (3,4), (5,6).
    """
    m = max(abs(a), abs(b))
    fa, fb = (1 if a > 0 else -1), (1 if b > 0 else -1)
    layers = []
    for t in range(m):
        layer = []
        if t < abs(a):
            layer += [(1, fa), (5, fa)]
        if t < abs(b):
            layer.append((3, fb))
        layers.append(layer)
    caps = [(2, 3), (4, 5), (1, 6)]
    return plat(6, layers, caps, caps, "h", name=name)


def twist_periodic(k: int, sign: int = 1) -> InvolutiveDiagram:
    """T(2,k) for even k: a twist region along the axis, closed by caps on either side of it."""
    layers = [[(2, sign)] for _ in range(k)]
    caps = [(1, 2), (3, 4)]
    return plat(4, layers, caps, caps, "p", basepoint="none", name=f"T(2,{k}) periodic")
