"""Involutive link diagrams: data model, `.sik` I/O, validation, resolutions, Seifert data.

A crossing is stored by the four edges meeting it, labelled by role. Its PD tuple
(counterclockwise, starting at the incoming under strand) is

    positive: (u_in, o_out, u_out, o_in)
    negative: (u_in, o_in, u_out, o_out)

The 0-smoothing joins PD slots (0,1),(2,3); the 1-smoothing joins (0,3),(1,2).
With these conventions the oriented resolution is the 0-smoothing at positive
crossings and the 1-smoothing at negative ones.

An in-plane axis of a strong inversion acts on the projection as a reflection
and exchanges heights, so the image of an under strand is an over strand.
A 2-periodic symmetry (axis perpendicular to the plane) keeps the roles.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

STRONG = "strong"
PERIODIC = "periodic"
MODES = (STRONG, PERIODIC)


class DiagramError(ValueError):
    """Raised for malformed or invalid diagrams."""


@dataclass(frozen=True)
class Crossing:
    id: str
    sign: int
    under_in: str
    under_out: str
    over_in: str
    over_out: str

    @property
    def pd(self) -> Tuple[str, str, str, str]:
        if self.sign > 0:
            return (self.under_in, self.over_out, self.under_out, self.over_in)
        return (self.under_in, self.over_in, self.under_out, self.over_out)

    def smoothing_pairs(self, bit: int) -> Tuple[Tuple[str, str], Tuple[str, str]]:
        a = self.pd
        if bit == 0:
            return (a[0], a[1]), (a[2], a[3])
        return (a[0], a[3]), (a[1], a[2])

    @property
    def edges(self) -> Tuple[str, str, str, str]:
        return (self.under_in, self.under_out, self.over_in, self.over_out)

    def mirrored(self) -> "Crossing":
        return Crossing(self.id, -self.sign, self.over_in, self.over_out, self.under_in, self.under_out)


@dataclass(frozen=True)
class ResolvedDiagram:
    circles: Tuple[Tuple[str, ...], ...]

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    def circle_of(self) -> Dict[str, int]:
        return {e: k for k, c in enumerate(self.circles) for e in c}


@dataclass(frozen=True)
class SeifertData:
    circles: Tuple[Tuple[str, ...], ...]
    seifert_graph: Tuple[Tuple[int, int], ...]
    r: int
    w: int
    n_plus: int
    n_minus: int


@dataclass(frozen=True, eq=True)
class InvolutiveDiagram:
    edges: Tuple[str, ...]
    crossings: Tuple[Crossing, ...]
    succ: Dict[str, str] = field(compare=True)
    tau: Dict[str, str] = field(compare=True)
    basepoint: Optional[str] = None
    mode: str = STRONG
    name: str = field(default="", compare=False)

    __hash__ = None  # type: ignore[assignment]

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @cached_property
    def edge_index(self) -> Dict[str, int]:
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def fixed_edges(self) -> Tuple[str, ...]:
        return tuple(e for e in self.edges if self.tau.get(e) == e)

    @cached_property
    def components(self) -> Tuple[Tuple[str, ...], ...]:
        seen, comps = set(), []
        for e in self.edges:
            if e in seen:
                continue
            comp, cur = [], e
            while cur not in seen:
                seen.add(cur)
                comp.append(cur)
                cur = self.succ[cur]
            comps.append(tuple(comp))
        return tuple(comps)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @cached_property
    def crossing_involution(self) -> Tuple[int, ...]:
        iota, problems = _crossing_involution(self)
        if problems:
            raise DiagramError("; ".join(problems))
        return tuple(iota)


def _image_roles(x: Crossing, tau: Dict[str, str], mode: str) -> Tuple[str, str, str, str]:
    """Roles (u_in, u_out, o_in, o_out) the image crossing must carry.

    The axis lies in the projection plane, so the rotation always exchanges
    over and under; a strong inversion also exchanges in and out.
    """
    t = tau.get
    if mode == STRONG:
        return (t(x.over_out), t(x.over_in), t(x.under_out), t(x.under_in))
    return (t(x.over_in), t(x.over_out), t(x.under_in), t(x.under_out))


def _crossing_involution(D: InvolutiveDiagram) -> Tuple[List[int], List[str]]:
    by_edges: Dict[Tuple[str, ...], List[int]] = {}
    for k, x in enumerate(D.crossings):
        by_edges.setdefault(tuple(sorted(x.edges)), []).append(k)
    iota: List[int] = []
    problems: List[str] = []
    for k, x in enumerate(D.crossings):
        roles = _image_roles(x, D.tau, D.mode)
        if any(r is None for r in roles):
            problems.append(f"crossing {x.id}: involution undefined on its edges")
            iota.append(-1)
            continue
        cands = by_edges.get(tuple(sorted(roles)), [])
        hit = -1
        for c in cands:
            y = D.crossings[c]
            if (y.under_in, y.under_out, y.over_in, y.over_out) == roles:
                hit = c
                break
        if hit < 0:
            if cands:
                problems.append(f"crossing {x.id}: involution does not carry strand roles to a crossing")
            else:
                problems.append(f"crossing {x.id}: involution image is not a crossing")
            iota.append(-1)
            continue
        if D.crossings[hit].sign != x.sign:
            problems.append("involution must preserve crossing sign")
        iota.append(hit)
    return iota, problems


def validate(D: InvolutiveDiagram) -> List[str]:
    """Return the list of violated invariants; empty when the diagram is valid."""
    v: List[str] = []
    if D.mode not in MODES:
        v.append(f"unknown mode {D.mode!r}")
        return v
    edges = set(D.edges)
    if len(edges) != len(D.edges):
        v.append("duplicate edge ids")
    ins: Dict[str, int] = {}
    outs: Dict[str, int] = {}
    for x in D.crossings:
        if x.sign not in (1, -1):
            v.append(f"crossing {x.id}: sign must be +1 or -1")
        for e in x.edges:
            if e not in edges:
                v.append(f"crossing {x.id}: unknown edge {e}")
        for e in (x.under_in, x.over_in):
            ins[e] = ins.get(e, 0) + 1
        for e in (x.under_out, x.over_out):
            outs[e] = outs.get(e, 0) + 1
    for e in D.edges:
        if (ins.get(e, 0), outs.get(e, 0)) not in ((0, 0), (1, 1)):
            v.append(f"edge {e} must enter one crossing and leave one crossing")
    if v:
        return v
    # successor relation must agree with the crossing strands
    expected = _successors_from_crossings(D.crossings)
    for e in D.edges:
        s = D.succ.get(e)
        if s is None:
            v.append(f"edge {e} has no successor")
        elif e in expected and expected[e] != s:
            v.append(f"successor of {e} contradicts crossing data")
        elif e not in expected and s != e:
            v.append(f"crossingless edge {e} must close up on itself")
    if sorted(D.succ.values()) != sorted(D.edges) or set(D.succ) != edges:
        v.append("successor relation is not a permutation of the edges")
    # involution
    for e in D.edges:
        t = D.tau.get(e)
        if t is None:
            v.append(f"involution undefined on edge {e}")
        elif t not in edges:
            v.append(f"involution maps {e} to unknown edge {t}")
        elif D.tau.get(t) != e:
            v.append(f"involution is not self-inverse on {e}")
    if set(D.tau) - edges:
        v.append("involution mentions unknown edges")
    if v:
        return v
    fixed = [e for e in D.edges if D.tau[e] == e]
    if D.mode == PERIODIC and fixed:
        v.append("fixed edges forbidden in periodic mode")
    # orientation: tau o succ = succ^{-1} o tau (strong) or succ o tau (periodic)
    pred = {s: e for e, s in D.succ.items()}
    for e in D.edges:
        img = D.tau[D.succ[e]]
        want = pred[D.tau[e]] if D.mode == STRONG else D.succ[D.tau[e]]
        if img != want:
            v.append("involution must reverse orientation on each component" if D.mode == STRONG
                     else "involution must preserve orientation on each component")
            break
    iota, problems = _crossing_involution(D)
    v.extend(dict.fromkeys(problems))
    if not problems:
        if any(iota[iota[k]] != k for k in range(len(iota))):
            v.append("crossing involution is not self-inverse")
        for k, x in enumerate(D.crossings):
            y = D.crossings[iota[k]]
            for bit in (0, 1):
                img = {frozenset((D.tau[a], D.tau[b])) for a, b in x.smoothing_pairs(bit)}
                if img != {frozenset(p) for p in y.smoothing_pairs(bit)}:
                    v.append(f"crossing {x.id}: smoothings are not equivariant")
                    break
    if D.basepoint is not None:
        if D.basepoint not in edges:
            v.append(f"basepoint {D.basepoint} is not an edge")
        elif D.tau[D.basepoint] != D.basepoint:
            v.append("basepoint must be a fixed edge")
    return v


def _successors_from_crossings(crossings: Iterable[Crossing]) -> Dict[str, str]:
    out = {}
    for x in crossings:
        out[x.under_in] = x.under_out
        out[x.over_in] = x.over_out
    return out


def make_diagram(edges: Sequence[str], crossings: Sequence[Crossing], tau: Dict[str, str],
                 basepoint: Optional[str] = None, mode: str = STRONG, succ: Optional[Dict[str, str]] = None,
                 name: str = "", check: bool = True) -> InvolutiveDiagram:
    s = _successors_from_crossings(crossings)
    for e in edges:
        s.setdefault(e, e)
    if succ:
        s.update(succ)
    D = InvolutiveDiagram(tuple(edges), tuple(crossings), s, dict(tau), basepoint, mode, name)
    if check:
        problems = validate(D)
        if problems:
            raise DiagramError("; ".join(problems))
    return D


# ---------------------------------------------------------------- .sik format

_XLINE = re.compile(r"^x\s+(\S+)\s+([+-])\s+u:([^,\s]+),([^,\s]+)\s+o:([^,\s]+),([^,\s]+)$")


def parse_diagram(text: str, name: str = "") -> InvolutiveDiagram:
    mode = None
    crossings: List[Crossing] = []
    succ: Dict[str, str] = {}
    tau: Dict[str, str] = {}
    base = None
    order: Dict[str, None] = {}

    def note(*es):
        for e in es:
            order.setdefault(e, None)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        parts = line.split()
        if head == "mode":
            if len(parts) != 2 or parts[1] not in MODES:
                raise DiagramError(f"line {lineno}: expected 'mode strong|periodic'")
            mode = parts[1]
        elif head == "x":
            m = _XLINE.match(line)
            if not m:
                raise DiagramError(f"line {lineno}: malformed crossing declaration")
            cid, sg, ui, uo, oi, oo = m.groups()
            crossings.append(Crossing(cid, 1 if sg == "+" else -1, ui, uo, oi, oo))
            note(ui, uo, oi, oo)
        elif head == "succ":
            if len(parts) != 3:
                raise DiagramError(f"line {lineno}: expected 'succ <e> <e'>'")
            succ[parts[1]] = parts[2]
            note(parts[1], parts[2])
        elif head == "tau":
            if len(parts) == 2:
                tau[parts[1]] = parts[1]
            elif len(parts) == 3:
                a, b = parts[1], parts[2]
                if tau.get(a, b) != b or tau.get(b, a) != a:
                    raise DiagramError(f"line {lineno}: conflicting involution pair")
                tau[a] = b
                tau[b] = a
            else:
                raise DiagramError(f"line {lineno}: expected 'tau <e> [<e'>]'")
            note(*parts[1:])
        elif head == "base":
            if len(parts) != 2:
                raise DiagramError(f"line {lineno}: expected 'base <e>'")
            base = parts[1]
            note(base)
        else:
            raise DiagramError(f"line {lineno}: unknown declaration {head!r}")
    if mode is None:
        raise DiagramError("missing 'mode' declaration")
    inferred = _successors_from_crossings(crossings)
    full = dict(inferred)
    for e in order:
        full.setdefault(e, e)
    for e, s in succ.items():
        if e in inferred and inferred[e] != s:
            raise DiagramError(f"succ {e} {s} contradicts crossing data")
        full[e] = s
    D = InvolutiveDiagram(tuple(order), tuple(crossings), full, tau, base, mode, name)
    problems = validate(D)
    if problems:
        raise DiagramError("; ".join(problems))
    return D


def dumps(D: InvolutiveDiagram) -> str:
    lines = []
    if D.name:
        lines.append(f"# {D.name}")
    lines.append(f"mode {D.mode}")
    for x in D.crossings:
        sg = "+" if x.sign > 0 else "-"
        lines.append(f"x {x.id} {sg} u:{x.under_in},{x.under_out} o:{x.over_in},{x.over_out}")
    inferred = _successors_from_crossings(D.crossings)
    for e in D.edges:
        if e not in inferred:
            lines.append(f"succ {e} {D.succ[e]}")
    done = set()
    for e in D.edges:
        if e in done:
            continue
        t = D.tau[e]
        lines.append(f"tau {e}" if t == e else f"tau {e} {t}")
        done.update((e, t))
    if D.basepoint is not None:
        lines.append(f"base {D.basepoint}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- resolutions

def _find(parent: List[int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def resolve_state(D: InvolutiveDiagram, state: Sequence[int]) -> ResolvedDiagram:
    """Circles of D(s); each circle lists its edges in diagram edge order."""
    if len(state) != D.n:
        raise ValueError("state length must equal crossing count")
    idx = D.edge_index
    parent = list(range(len(D.edges)))
    for x, b in zip(D.crossings, state):
        for a, c in x.smoothing_pairs(b):
            ra, rc = _find(parent, idx[a]), _find(parent, idx[c])
            if ra != rc:
                parent[ra] = rc
    groups: Dict[int, List[str]] = {}
    for k, e in enumerate(D.edges):
        groups.setdefault(_find(parent, k), []).append(e)
    return ResolvedDiagram(tuple(sorted((tuple(g) for g in groups.values()), key=lambda c: idx[c[0]])))


def oriented_state(D: InvolutiveDiagram) -> Tuple[int, ...]:
    return tuple(0 if x.sign > 0 else 1 for x in D.crossings)


def seifert_resolution(D: InvolutiveDiagram) -> SeifertData:
    res = resolve_state(D, oriented_state(D))
    where = res.circle_of()
    graph = tuple((where[x.under_in], where[x.over_in]) for x in D.crossings)
    return SeifertData(res.circles, graph, res.circle_count, D.writhe, D.n_plus, D.n_minus)


def tau_action(D: InvolutiveDiagram, state: Sequence[int]) -> Tuple[Tuple[int, ...], Dict[int, int]]:
    """The symmetric state s' = s o iota and the circle bijection D(s) -> D(s')."""
    iota = D.crossing_involution
    s2 = [0] * D.n
    for k, b in enumerate(state):
        s2[iota[k]] = b
    s2t = tuple(s2)
    src = resolve_state(D, state)
    tgt = resolve_state(D, s2t).circle_of()
    bij = {}
    for k, c in enumerate(src.circles):
        images = {tgt[D.tau[e]] for e in c}
        if len(images) != 1:
            raise DiagramError("involution does not map circles to circles")
        bij[k] = images.pop()
    return s2t, bij


# ---------------------------------------------------------------- constructions

def mirror(D: InvolutiveDiagram) -> InvolutiveDiagram:
    name = D.name[:-1] + ("-" if D.name.endswith("+") else "+") if D.name.endswith(("+", "-")) else \
        (f"mirror({D.name})" if D.name else "")
    if D.name.startswith("mirror(") and D.name.endswith(")"):
        name = D.name[7:-1]
    return replace(D, crossings=tuple(x.mirrored() for x in D.crossings), name=name)


def relabel(D: InvolutiveDiagram, prefix: str) -> InvolutiveDiagram:
    f = lambda e: prefix + e  # noqa: E731
    xs = tuple(Crossing(prefix + x.id, x.sign, f(x.under_in), f(x.under_out), f(x.over_in), f(x.over_out))
               for x in D.crossings)
    return InvolutiveDiagram(tuple(map(f, D.edges)), xs, {f(a): f(b) for a, b in D.succ.items()},
                             {f(a): f(b) for a, b in D.tau.items()},
                             None if D.basepoint is None else f(D.basepoint), D.mode, D.name)


def combine(D1: InvolutiveDiagram, D2: InvolutiveDiagram, kind: str) -> InvolutiveDiagram:
    """Disjoint union or equivariant connected sum at the basepoint edges."""
    if D1.mode != STRONG or D2.mode != STRONG:
        raise DiagramError("combine expects strongly invertible diagrams")
    A, B = relabel(D1, "a."), relabel(D2, "b.")
    if kind == "disjoint_union":
        return make_diagram(A.edges + B.edges, A.crossings + B.crossings, {**A.tau, **B.tau},
                            A.basepoint, STRONG, {**A.succ, **B.succ}, name=f"{D1.name} u {D2.name}")
    if kind != "connected_sum_on_axis":
        raise ValueError(f"unknown combine kind {kind!r}")
    if A.basepoint is None or B.basepoint is None:
        raise DiagramError("connected sum needs an on-axis attachment edge in both diagrams")
    a, b = A.basepoint, B.basepoint
    a_used = any(a in x.edges for x in A.crossings)
    b_used = any(b in x.edges for x in B.crossings)
    if not b_used:
        return replace(A, name=f"{D1.name} # {D2.name}")
    if not a_used:
        return replace(B, name=f"{D1.name} # {D2.name}")
    # a = a1 a2 and b = b1 b2 are split at their axis points and joined by a band
    # along the axis: e1 = a1 b2 and e2 = b1 a2, exchanged by the involution
    e1, e2 = "s.1", "s.2"
    leaving = {a: e1, b: e2}
    entering = {b: e1, a: e2}
    xs = []
    for x in A.crossings + B.crossings:
        xs.append(Crossing(x.id, x.sign, entering.get(x.under_in, x.under_in), leaving.get(x.under_out, x.under_out),
                           entering.get(x.over_in, x.over_in), leaving.get(x.over_out, x.over_out)))
    edges = [e for e in A.edges + B.edges if e not in (a, b)] + [e1, e2]
    tau = {k: v for k, v in {**A.tau, **B.tau}.items() if k not in (a, b)}
    tau[e1], tau[e2] = e2, e1
    fixed = [e for e in edges if tau[e] == e]
    base = next((e for e in fixed if e.startswith("a.")), fixed[0] if fixed else None)
    return make_diagram(edges, xs, tau, base, STRONG, name=f"{D1.name} # {D2.name}")


def add_kink_on_axis(D: InvolutiveDiagram, edge: str, sign: int, tag: str = "k") -> InvolutiveDiagram:
    """Equivariant R1 move: insert a kink on a fixed edge, with its crossing on the axis."""
    if D.tau[edge] != edge:
        raise DiagramError("on-axis kink needs a fixed edge")
    ea, loop, eb = f"{edge}.{tag}a", f"{edge}.{tag}l", f"{edge}.{tag}b"
    if not any(edge in x.edges for x in D.crossings):
        eb = ea
    x = Crossing(f"{tag}.{edge}", sign, ea, loop, loop, eb)
    return _splice(D, edge, ea, eb, [loop], [x], {ea: eb, eb: ea, loop: loop})


def add_kink_pair(D: InvolutiveDiagram, edge: str, sign: int, tag: str = "k") -> InvolutiveDiagram:
    """Equivariant pair of R1 moves on an edge and its image."""
    other = D.tau[edge]
    if other == edge:
        raise DiagramError("off-axis kink pair needs a non-fixed edge")
    if D.mode != STRONG:
        raise DiagramError("kink pairs are implemented for strong inversions")
    ea, l1, eb = f"{edge}.{tag}a", f"{edge}.{tag}l", f"{edge}.{tag}b"
    fa, l2, fb = f"{other}.{tag}a", f"{other}.{tag}l", f"{other}.{tag}b"
    x1 = Crossing(f"{tag}.{edge}", sign, ea, l1, l1, eb)
    x2 = Crossing(f"{tag}.{other}", sign, fa, l2, l2, fb)
    tau = {ea: fb, fb: ea, eb: fa, fa: eb, l1: l2, l2: l1}
    D1 = _splice(D, edge, ea, eb, [l1], [x1], {}, check=False)
    return _splice(D1, other, fa, fb, [l2], [x2], tau, check=True, tau_base=True)


def _splice(D: InvolutiveDiagram, edge: str, first: str, last: str, extra: List[str],
            new_crossings: List[Crossing], tau_new: Dict[str, str], check: bool = True,
            tau_base: bool = False) -> InvolutiveDiagram:
    xs = []
    for x in D.crossings:
        ui, uo, oi, oo = x.under_in, x.under_out, x.over_in, x.over_out
        ui = last if ui == edge else ui
        oi = last if oi == edge else oi
        uo = first if uo == edge else uo
        oo = first if oo == edge else oo
        xs.append(Crossing(x.id, x.sign, ui, uo, oi, oo))
    edges = []
    for e in D.edges:
        edges.extend(list(dict.fromkeys([first] + extra + [last])) if e == edge else [e])
    tau = {k: v for k, v in D.tau.items() if k != edge and v != edge}
    tau.update(tau_new)
    base = D.basepoint if D.basepoint != edge else None
    all_x = xs + new_crossings
    succ = {e: e for e in edges}
    succ.update(_successors_from_crossings(all_x))
    out = InvolutiveDiagram(tuple(edges), tuple(all_x), succ, tau, base, D.mode, D.name)
    if check:
        problems = validate(out)
        if problems:
            raise DiagramError("; ".join(problems))
    return out
