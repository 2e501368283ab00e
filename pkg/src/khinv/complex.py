"""Cube-of-resolutions complexes, the involution, and the involutive mapping cone.

Generators of CKh(D) are pairs (state, label mask): bit c of the mask is 1 when
circle c of D(state) carries X and 0 when it carries 1. Gradings follow

    i = |s| - n_-,    j = #1 - #X + |s| + n_+ - 2 n_-.

The reduced complex (pointed circle labelled X) is reported with q = j + 1 and
the coreduced one (pointed circle labelled 1) with q = j - 1, so the unknot's
reduced generator sits at q = 0. The Q-copy of the cone shifts (i, q) by (1, 0).

Sparse maps are coordinate lists; a coefficient is a bit-packed F2[H] element.
Over F2[H] every entry between homogeneous generators is a monomial H^k with
k = (q_tgt - q_src) / 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .coeffs import F2H, ONE, X, RingName, RingSpec, clmul, comultiplication_table, multiplication_table
from .diagram import STRONG, DiagramError, InvolutiveDiagram, resolve_state, tau_action

DEFAULT_CROSSING_CAP = 20


class ResourceLimitError(RuntimeError):
    """Raised when a diagram exceeds the configured crossing cap."""


@dataclass
class SparseMap:
    """Linear map given by coordinate triples (src column -> tgt row, coefficient bits)."""

    src: np.ndarray
    tgt: np.ndarray
    coef: np.ndarray
    n_src: int
    n_tgt: int

    @staticmethod
    def from_lists(src, tgt, coef, n_src, n_tgt) -> "SparseMap":
        return coalesce(np.asarray(src, np.int64), np.asarray(tgt, np.int64), np.asarray(coef, np.int64),
                        n_src, n_tgt)

    @staticmethod
    def identity(n: int) -> "SparseMap":
        a = np.arange(n, dtype=np.int64)
        return SparseMap(a, a.copy(), np.ones(n, np.int64), n, n)

    def __len__(self) -> int:
        return len(self.src)

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return {(int(t), int(s)): int(c) for s, t, c in zip(self.src, self.tgt, self.coef)}

    def apply(self, vec: Dict[int, int]) -> Dict[int, int]:
        """Apply to a vector stored as {index: coefficient bits}."""
        out: Dict[int, int] = {}
        if not vec:
            return out
        order = np.argsort(self.src, kind="stable")
        srcs = self.src[order]
        for g, c in vec.items():
            lo, hi = np.searchsorted(srcs, g), np.searchsorted(srcs, g, side="right")
            for e in order[lo:hi]:
                t = int(self.tgt[e])
                out[t] = out.get(t, 0) ^ clmul(c, int(self.coef[e]))
        return {k: v for k, v in out.items() if v}

    def compose(self, other: "SparseMap") -> "SparseMap":
        """self o other."""
        by_src: Dict[int, List[Tuple[int, int]]] = {}
        for s, t, c in zip(self.src.tolist(), self.tgt.tolist(), self.coef.tolist()):
            by_src.setdefault(s, []).append((t, c))
        acc: Dict[Tuple[int, int], int] = {}
        for s, m, c in zip(other.src.tolist(), other.tgt.tolist(), other.coef.tolist()):
            for t, c2 in by_src.get(m, ()):
                key = (s, t)
                acc[key] = acc.get(key, 0) ^ clmul(c, c2)
        items = [(s, t, c) for (s, t), c in acc.items() if c]
        if not items:
            return SparseMap.from_lists([], [], [], other.n_src, self.n_tgt)
        s, t, c = zip(*items)
        return SparseMap.from_lists(s, t, c, other.n_src, self.n_tgt)

    def __add__(self, other: "SparseMap") -> "SparseMap":
        return coalesce(np.concatenate([self.src, other.src]), np.concatenate([self.tgt, other.tgt]),
                        np.concatenate([self.coef, other.coef]), self.n_src, self.n_tgt)

    def is_zero(self) -> bool:
        return len(self.src) == 0

    def restrict(self, keep_src: np.ndarray, keep_tgt: np.ndarray) -> "SparseMap":
        """Block between index subsets, re-indexed to positions within the subsets."""
        ms = np.full(self.n_src, -1, np.int64)
        ms[keep_src] = np.arange(len(keep_src))
        mt = np.full(self.n_tgt, -1, np.int64)
        mt[keep_tgt] = np.arange(len(keep_tgt))
        s, t = ms[self.src], mt[self.tgt]
        ok = (s >= 0) & (t >= 0)
        return SparseMap(s[ok], t[ok], self.coef[ok], len(keep_src), len(keep_tgt))

    def specialize(self, ring: RingSpec) -> "SparseMap":
        """Set H to the ring's h (0, 1, or keep H)."""
        if ring.name == RingName.F2H_hH:
            return self
        if ring.name == RingName.F2_h0:
            keep = (self.coef & 1) == 1
            return SparseMap(self.src[keep], self.tgt[keep], np.ones(int(keep.sum()), np.int64),
                             self.n_src, self.n_tgt)
        par = np.array([bin(int(c)).count("1") & 1 for c in self.coef], np.int64) if len(self.coef) else \
            np.zeros(0, np.int64)
        keep = par == 1
        return SparseMap(self.src[keep], self.tgt[keep], np.ones(int(keep.sum()), np.int64), self.n_src, self.n_tgt)


def coalesce(src, tgt, coef, n_src, n_tgt) -> SparseMap:
    if len(src) == 0:
        z = np.zeros(0, np.int64)
        return SparseMap(z, z.copy(), z.copy(), n_src, n_tgt)
    key = src * max(n_tgt, 1) + tgt
    order = np.argsort(key, kind="stable")
    key, src, tgt, coef = key[order], src[order], tgt[order], coef[order]
    starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
    acc = np.bitwise_xor.reduceat(coef, starts)
    keep = acc != 0
    return SparseMap(src[starts][keep], tgt[starts][keep], acc[keep], n_src, n_tgt)


@dataclass
class ChainComplexGraded:
    """Bigraded free complex with differential i -> i+1 and named endomorphisms."""

    ring: RingSpec
    hdeg: np.ndarray
    qdeg: np.ndarray
    d: SparseMap
    endos: Dict[str, SparseMap] = field(default_factory=dict)
    cone: bool = False
    info: Dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.hdeg)

    def degrees(self) -> List[int]:
        return sorted(set(self.hdeg.tolist()))

    def graded_dims(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for i, q in zip(self.hdeg.tolist(), self.qdeg.tolist()):
            out[(i, q)] = out.get((i, q), 0) + 1
        return out

    def specialize(self, ring: RingSpec) -> "ChainComplexGraded":
        return ChainComplexGraded(ring, self.hdeg, self.qdeg, self.d.specialize(ring),
                                  {k: v.specialize(ring) for k, v in self.endos.items()}, self.cone, dict(self.info))

    def subcomplex(self, keep: np.ndarray) -> "ChainComplexGraded":
        keep = np.asarray(keep, np.int64)
        return ChainComplexGraded(self.ring, self.hdeg[keep], self.qdeg[keep], self.d.restrict(keep, keep),
                                  {k: v.restrict(keep, keep) for k, v in self.endos.items()}, self.cone,
                                  dict(self.info))


@dataclass
class ChainMap:
    source: ChainComplexGraded
    target: ChainComplexGraded
    blocks: SparseMap
    degree: Tuple[int, int]


# ---------------------------------------------------------------- cube data

@dataclass
class CubeData:
    """Per-state circle data shared by the complex builders."""

    D: InvolutiveDiagram
    circles: List[np.ndarray]          # state -> circle index of each edge
    ncirc: np.ndarray
    offsets: np.ndarray                # generator offset of each state
    pointed: Optional[np.ndarray]      # state -> circle containing the basepoint


def _cube(D: InvolutiveDiagram, cap: int) -> CubeData:
    if D.n > cap:
        raise ResourceLimitError(f"diagram has {D.n} crossings, above the cap of {cap}")
    ne = len(D.edges)
    idx = D.edge_index
    pairs = [[[(idx[a], idx[b]) for a, b in x.smoothing_pairs(bit)] for bit in (0, 1)] for x in D.crossings]
    circles, ncirc = [], []
    for s in range(1 << D.n):
        parent = list(range(ne))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for k in range(D.n):
            for a, b in pairs[k][(s >> k) & 1]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        lab, out = {}, np.empty(ne, np.int64)
        for e in range(ne):
            r = find(e)
            if r not in lab:
                lab[r] = len(lab)
            out[e] = lab[r]
        circles.append(out)
        ncirc.append(len(lab))
    ncirc_a = np.array(ncirc, np.int64)
    offsets = np.zeros(len(ncirc) + 1, np.int64)
    offsets[1:] = np.cumsum(1 << ncirc_a)
    pointed = None
    if D.basepoint is not None:
        b = idx[D.basepoint]
        pointed = np.array([c[b] for c in circles], np.int64)
    return CubeData(D, circles, ncirc_a, offsets, pointed)


def _gradings(cube: CubeData) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    D = cube.D
    states, masks, hs, js = [], [], [], []
    for s in range(1 << D.n):
        c = int(cube.ncirc[s])
        m = np.arange(1 << c, dtype=np.int64)
        nx = np.array([bin(v).count("1") for v in range(1 << c)], np.int64)
        h = bin(s).count("1")
        states.append(np.full(len(m), s, np.int64))
        masks.append(m)
        hs.append(np.full(len(m), h - D.n_minus, np.int64))
        js.append((c - 2 * nx) + h + D.n_plus - 2 * D.n_minus)
    return np.concatenate(states), np.concatenate(masks), np.concatenate(hs), np.concatenate(js)


def _differential(cube: CubeData, ring: RingSpec) -> SparseMap:
    D = cube.D
    idx = D.edge_index
    mult = multiplication_table(ring)
    comult = comultiplication_table(ring)
    hbits = ring.h.bits
    src_l, tgt_l, coef_l = [], [], []
    for s in range(1 << D.n):
        cs = cube.circles[s]
        nc = int(cube.ncirc[s])
        masks = np.arange(1 << nc, dtype=np.int64)
        base_s = cube.offsets[s]
        for k, x in enumerate(D.crossings):
            if (s >> k) & 1:
                continue
            t = s | (1 << k)
            ct = cube.circles[t]
            base_t = cube.offsets[t]
            a0, a1, a2, _ = (idx[e] for e in x.pd)
            c1, c2 = int(cs[a0]), int(cs[a2])
            # circle of s -> circle of t (for the unaffected circles)
            phi = np.empty(nc, np.int64)
            for e in range(len(cs)):
                phi[cs[e]] = ct[e]
            rest = np.zeros(len(masks), np.int64)
            for c in range(nc):
                if c in (c1, c2):
                    continue
                rest |= ((masks >> c) & 1) << phi[c]
            if c1 != c2:
                m = int(phi[c1])
                l1, l2 = (masks >> c1) & 1, (masks >> c2) & 1
                for (la, lb), out in mult.items():
                    sel = (l1 == (la == X)) & (l2 == (lb == X))
                    for letter, p in out.items():
                        if p.bits == 0:
                            continue
                        tm = rest[sel] | ((1 if letter == X else 0) << m)
                        src_l.append(base_s + masks[sel])
                        tgt_l.append(base_t + tm)
                        coef_l.append(np.full(int(sel.sum()), p.bits, np.int64))
            else:
                p0, p1 = int(ct[a0]), int(ct[a1])
                l1 = (masks >> c1) & 1
                for la, out in comult.items():
                    sel = l1 == (la == X)
                    for (lx, ly), p in out.items():
                        if p.bits == 0:
                            continue
                        tm = rest[sel] | ((1 if lx == X else 0) << p0) | ((1 if ly == X else 0) << p1)
                        src_l.append(base_s + masks[sel])
                        tgt_l.append(base_t + tm)
                        coef_l.append(np.full(int(sel.sum()), p.bits, np.int64))
    n = int(cube.offsets[-1])
    if not src_l:
        return SparseMap.from_lists([], [], [], n, n)
    return coalesce(np.concatenate(src_l), np.concatenate(tgt_l), np.concatenate(coef_l), n, n)


def _tau(cube: CubeData) -> SparseMap:
    D = cube.D
    src_l, tgt_l = [], []
    for s in range(1 << D.n):
        state = [(s >> k) & 1 for k in range(D.n)]
        s2, bij = tau_action(D, state)
        t = sum(b << k for k, b in enumerate(s2))
        nc = int(cube.ncirc[s])
        masks = np.arange(1 << nc, dtype=np.int64)
        img = np.zeros(len(masks), np.int64)
        for c, c2 in bij.items():
            img |= ((masks >> c) & 1) << c2
        src_l.append(cube.offsets[s] + masks)
        tgt_l.append(cube.offsets[t] + img)
    n = int(cube.offsets[-1])
    src, tgt = np.concatenate(src_l), np.concatenate(tgt_l)
    return SparseMap(src, tgt, np.ones(len(src), np.int64), n, n)


def _sigma(cube: CubeData, masks_all: np.ndarray, ring: RingSpec) -> SparseMap:
    """X -> X + h on every circle: mask m goes to sum over submasks t of h^{|m|-|t|} t."""
    n = int(cube.offsets[-1])
    hb = ring.h.bits
    src, tgt, coef = [], [], []
    state_of = np.repeat(np.arange(len(cube.ncirc)), 1 << cube.ncirc)
    for g in range(n):
        m = int(masks_all[g])
        base = int(cube.offsets[state_of[g]])
        sub = m
        while True:
            k = bin(m).count("1") - bin(sub).count("1")
            c = 1
            for _ in range(k):
                c = clmul(c, hb)
            if c:
                src.append(g)
                tgt.append(base + sub)
                coef.append(c)
            if sub == 0:
                break
            sub = (sub - 1) & m
    return SparseMap.from_lists(src, tgt, coef, n, n)


def build_ckh(D: InvolutiveDiagram, ring: RingSpec = F2H, cap: int = DEFAULT_CROSSING_CAP,
              with_sigma: bool = True) -> ChainComplexGraded:
    """Khovanov complex of D over (R, h) with its tau and sigma endomorphisms."""
    cube = _cube(D, cap)
    states, masks, hs, js = _gradings(cube)
    d = _differential(cube, ring)
    endos = {"tau": _tau(cube)}
    if with_sigma:
        endos["sigma"] = _sigma(cube, masks, ring)
    info = {"states": states, "masks": masks, "cube": cube, "diagram": D, "variant": "unreduced",
            "qshift": 0, "copy": np.zeros(len(hs), np.int64), "orig": np.arange(len(hs), dtype=np.int64)}
    return ChainComplexGraded(ring, hs, js, d, endos, False, info)


def pointed_labels(C: ChainComplexGraded) -> np.ndarray:
    """Label bit (1 = X) of the pointed circle for each generator of an unreduced complex."""
    cube: CubeData = C.info["cube"]
    if cube.pointed is None:
        raise DiagramError("reduced variants need a basepoint")
    return (C.info["masks"] >> cube.pointed[C.info["states"]]) & 1


def restrict_variant(C: ChainComplexGraded, variant: str) -> ChainComplexGraded:
    """Reduced (pointed circle X) or coreduced (pointed circle 1) piece of CKh."""
    if variant == "unreduced":
        return C
    lab = pointed_labels(C)
    if variant == "reduced":
        keep, shift = np.flatnonzero(lab == 1), 1
    elif variant == "coreduced":
        keep, shift = np.flatnonzero(lab == 0), -1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    sub = C.subcomplex(keep)
    sub.qdeg = sub.qdeg + shift
    sub.info = dict(C.info)
    for key in ("states", "masks", "copy", "orig"):
        sub.info[key] = C.info[key][keep]
    sub.info["variant"] = variant
    sub.info["qshift"] = shift
    # sigma does not preserve the pointed-X subcomplex, so it lives on neither piece
    sub.endos.pop("sigma", None)
    return sub


def cone(C: ChainComplexGraded, f: SparseMap) -> ChainComplexGraded:
    """Cone(f: C -> QC) with differential [[d, 0], [f, d]] and the Q-copy shifted by (1, 0)."""
    n = C.size
    d = C.d
    src = np.concatenate([d.src, d.src + n, f.src])
    tgt = np.concatenate([d.tgt, d.tgt + n, f.tgt + n])
    coef = np.concatenate([d.coef, d.coef, f.coef])
    dd = coalesce(src, tgt, coef, 2 * n, 2 * n)
    endos = {}
    for name, e in C.endos.items():
        endos[name] = coalesce(np.concatenate([e.src, e.src + n]), np.concatenate([e.tgt, e.tgt + n]),
                               np.concatenate([e.coef, e.coef]), 2 * n, 2 * n)
    info = dict(C.info)
    for key in ("states", "masks", "orig"):
        info[key] = np.concatenate([C.info[key], C.info[key]])
    info["copy"] = np.concatenate([np.zeros(n, np.int64), np.ones(n, np.int64)])
    info["cone_map"] = f
    return ChainComplexGraded(C.ring, np.concatenate([C.hdeg, C.hdeg + 1]), np.concatenate([C.qdeg, C.qdeg]),
                              dd, endos, True, info)


def involution_map(C: ChainComplexGraded, mode: str) -> SparseMap:
    """1 + tau or 1 + sigma tau on C."""
    tau = C.endos["tau"]
    if mode == "tau":
        g = tau
    elif mode in ("sigma_tau", "sigma-tau"):
        g = C.endos["sigma"].compose(tau)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return SparseMap.identity(C.size) + g


def build_involutive(D: InvolutiveDiagram, ring: RingSpec = F2H, mode: str = "tau", variant: str = "unreduced",
                     cap: int = DEFAULT_CROSSING_CAP, base: Optional[ChainComplexGraded] = None) -> ChainComplexGraded:
    """CKhI = Cone(CKh -> Q CKh) with off-diagonal block 1 + tau (or 1 + sigma tau)."""
    if variant != "unreduced":
        if D.basepoint is None:
            raise DiagramError("reduced variants need a basepoint")
        if D.mode != STRONG:
            raise DiagramError("periodic diagrams cannot be pointed")
        if mode != "tau":
            raise DiagramError("the sigma-tau variant is only defined unreduced")
    C = base if base is not None else build_ckh(D, ring, cap, with_sigma=(mode != "tau"))
    C = restrict_variant(C, variant)
    out = cone(C, involution_map(C, mode))
    out.info["mode"] = mode
    return out


def kappa_map(D: InvolutiveDiagram, ring: RingSpec = F2H, cap: int = DEFAULT_CROSSING_CAP,
              base: Optional[ChainComplexGraded] = None) -> Tuple[ChainMap, Dict]:
    """kappa: coreduced -> reduced with d kappa + kappa d = f (the connecting block of d).

    kappa_i changes the pointed circle from 1 to X and i + 1 other X-labelled circles
    from X to 1, weighted by h^i.
    """
    if D.basepoint is None:
        raise DiagramError("kappa needs a basepoint")
    C = base if base is not None else build_ckh(D, ring, cap, with_sigma=False)
    red = restrict_variant(C, "reduced")
    cored = restrict_variant(C, "coreduced")
    cube: CubeData = C.info["cube"]
    pos_red = {int(g): k for k, g in enumerate(red.info["orig"])}
    hb = ring.h.bits
    src, tgt, coef = [], [], []
    for k, g in enumerate(cored.info["orig"].tolist()):
        s = int(C.info["states"][g])
        m = int(C.info["masks"][g])
        p = int(cube.pointed[s])
        others = [c for c in range(int(cube.ncirc[s])) if c != p and (m >> c) & 1]
        base_g = int(cube.offsets[s])
        # iterate over nonempty subsets of the X-labelled unpointed circles
        nn = len(others)
        for sub in range(1, 1 << nn):
            size = bin(sub).count("1")
            c = 1
            for _ in range(size - 1):
                c = clmul(c, hb)
            if not c:
                continue
            m2 = m | (1 << p)
            for b in range(nn):
                if (sub >> b) & 1:
                    m2 &= ~(1 << others[b])
            src.append(k)
            tgt.append(pos_red[base_g + m2])
            coef.append(c)
    kap = SparseMap.from_lists(src, tgt, coef, cored.size, red.size)
    f = C.d.restrict(cored.info["orig"], red.info["orig"])
    lhs = red.d.compose(kap) + kap.compose(cored.d)
    ok = (lhs + f).is_zero()
    report = {"identity_holds": ok, "f_entries": len(f), "kappa_entries": len(kap)}
    return ChainMap(cored, red, kap, (0, 0)), report


def verify_complex(C: ChainComplexGraded) -> List[str]:
    """Structural checks; returns the list of failures."""
    fails: List[str] = []
    d = C.d
    if not d.compose(d).is_zero():
        fails.append("d^2 != 0")
    # grading: i increases by one; q is preserved up to H-powers (graded) or non-decreasing
    if len(d):
        di = C.hdeg[d.tgt] - C.hdeg[d.src]
        if np.any(di != 1):
            fails.append("differential does not raise homological degree by one")
        dq = C.qdeg[d.tgt] - C.qdeg[d.src]
        if C.ring.graded:
            deg = np.array([int(c).bit_length() - 1 for c in d.coef])
            mono = np.array([int(c) & (int(c) - 1) == 0 for c in d.coef])
            if not (np.all(mono) and np.all(dq == 2 * deg)):
                fails.append("differential is not homogeneous of quantum degree 0")
        elif np.any(dq < 0):
            fails.append("differential lowers the quantum filtration")
    tau = C.endos.get("tau")
    if tau is not None:
        if not (tau.compose(tau) + SparseMap.identity(C.size)).is_zero():
            fails.append("tau^2 != id")
        if not (tau.compose(d) + d.compose(tau)).is_zero():
            fails.append("tau does not commute with d")
    sigma = C.endos.get("sigma")
    if sigma is not None:
        if not (sigma.compose(d) + d.compose(sigma)).is_zero():
            fails.append("sigma does not commute with d")
        if not (sigma.compose(sigma) + SparseMap.identity(C.size)).is_zero():
            fails.append("sigma^2 != id")
    if C.cone:
        n = C.size // 2
        f = C.info["cone_map"]
        top = np.arange(n, dtype=np.int64)
        bot = top + n
        blk = C.d.restrict(top, bot)
        if not (blk + f).is_zero():
            fails.append("cone block differs from the involution map")
        if not C.d.restrict(bot, top).is_zero():
            fails.append("cone differential has a block from the Q-copy back")
    return fails
