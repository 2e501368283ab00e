"""Coefficient rings of characteristic 2 and the Frobenius algebra A = R[X]/(X(X+h)).

Polynomials in F2[H] are stored as Python ints: bit k is the coefficient of H^k.
Algebra basis letters are the strings "1" and "X"; a word has one letter per circle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Mapping, Tuple

ONE = "1"
X = "X"
LETTERS = (ONE, X)
LETTER_DEG = {ONE: 1, X: -1}


class RingName(str, Enum):
    F2_h0 = "F2_h0"
    F2_h1 = "F2_h1"
    F2H_hH = "F2H_hH"


@dataclass(frozen=True)
class Poly:
    """Element of F2[H], bit-packed into an int."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("negative bit pattern")

    @staticmethod
    def monomial(k: int) -> "Poly":
        return Poly(1 << k)

    @staticmethod
    def from_exponents(exps: Iterable[int]) -> "Poly":
        b = 0
        for e in exps:
            b ^= 1 << e
        return Poly(b)

    def is_zero(self) -> bool:
        return self.bits == 0

    def degree(self) -> int:
        """H-degree of the leading term; -1 for zero."""
        return self.bits.bit_length() - 1

    def exponents(self) -> Tuple[int, ...]:
        b, out, k = self.bits, [], 0
        while b:
            if b & 1:
                out.append(k)
            b >>= 1
            k += 1
        return tuple(out)

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly(clmul(self.bits, other.bits))

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        q, r = cldivmod(self.bits, other.bits)
        return Poly(q), Poly(r)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else ("H" if e == 1 else f"H^{e}"))
        return " + ".join(terms)


ZERO = Poly(0)
UNIT = Poly(1)
HPOLY = Poly(2)


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit patterns."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def cldivmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    q = 0
    db = b.bit_length()
    while a and a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def poly_valuation(p: Poly) -> int:
    """Largest k such that H^k divides p."""
    if p.bits == 0:
        raise ValueError("valuation of zero")
    return (p.bits & -p.bits).bit_length() - 1


@dataclass(frozen=True)
class RingSpec:
    name: RingName

    @property
    def h(self) -> Poly:
        return {RingName.F2_h0: ZERO, RingName.F2_h1: UNIT, RingName.F2H_hH: HPOLY}[self.name]

    @property
    def h_is_invertible(self) -> bool:
        return self.name == RingName.F2_h1

    @property
    def graded(self) -> bool:
        return self.name != RingName.F2_h1

    @property
    def characteristic(self) -> int:
        return 2

    def __str__(self) -> str:
        return self.name.value


F2_H0 = RingSpec(RingName.F2_h0)
F2_H1 = RingSpec(RingName.F2_h1)
F2H = RingSpec(RingName.F2H_hH)

THEORY_RINGS = {"kh": F2_H0, "bn1": F2_H1, "bn": F2H}


def ring_from_name(name: str) -> RingSpec:
    if name in THEORY_RINGS:
        return THEORY_RINGS[name]
    return RingSpec(RingName(name))


Word = Tuple[str, ...]


@dataclass(frozen=True)
class AlgElem:
    """Finite sum of tensor words with F2[H] coefficients, kept in normal form."""

    terms: Tuple[Tuple[Word, Poly], ...] = field(default=())

    @staticmethod
    def from_dict(d: Mapping[Word, Poly]) -> "AlgElem":
        items = [(w, p) for w, p in d.items() if p.bits]
        lengths = {len(w) for w, _ in items}
        if len(lengths) > 1:
            raise ValueError("words of mixed length")
        return AlgElem(tuple(sorted(items)))

    @staticmethod
    def letter(a: str) -> "AlgElem":
        return AlgElem((((a,), UNIT),))

    @staticmethod
    def word(w: Iterable[str]) -> "AlgElem":
        return AlgElem(((tuple(w), UNIT),))

    def as_dict(self) -> Dict[Word, Poly]:
        return dict(self.terms)

    def __add__(self, other: "AlgElem") -> "AlgElem":
        d = self.as_dict()
        for w, p in other.terms:
            d[w] = d.get(w, ZERO) + p
        return AlgElem.from_dict(d)

    def scale(self, p: Poly) -> "AlgElem":
        return AlgElem.from_dict({w: c * p for w, c in self.terms})

    def tensor(self, other: "AlgElem") -> "AlgElem":
        d: Dict[Word, Poly] = {}
        for w1, p1 in self.terms:
            for w2, p2 in other.terms:
                w = w1 + w2
                d[w] = d.get(w, ZERO) + p1 * p2
        return AlgElem.from_dict(d)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, p in self.terms:
            ws = "⊗".join(w)
            parts.append(ws if p == UNIT else f"({p})·{ws}")
        return " + ".join(parts)


def _as_letter(x) -> str:
    if isinstance(x, str):
        if x not in LETTERS:
            raise ValueError(f"not a basis letter: {x!r}")
        return x
    if isinstance(x, AlgElem) and len(x.terms) == 1 and x.terms[0][1] == UNIT and len(x.terms[0][0]) == 1:
        return x.terms[0][0][0]
    raise ValueError("expected a single basis letter")


def _letter_bilinear(x: AlgElem, y: AlgElem, f) -> AlgElem:
    out = AlgElem()
    for w1, p1 in x.terms:
        for w2, p2 in y.terms:
            out = out + f(w1[0], w2[0]).scale(p1 * p2)
    return out


def alg_multiply(x, y, ring: RingSpec) -> AlgElem:
    """Product in A of two one-letter elements (linear combinations allowed)."""
    if isinstance(x, AlgElem) and isinstance(y, AlgElem) and (len(x.terms) != 1 or len(y.terms) != 1
                                                              or x.terms[0][1] != UNIT or y.terms[0][1] != UNIT):
        return _letter_bilinear(x, y, lambda a, b: alg_multiply(a, b, ring))
    a, b = _as_letter(x), _as_letter(y)
    if a == ONE:
        return AlgElem.letter(b)
    if b == ONE:
        return AlgElem.letter(a)
    return AlgElem.letter(X).scale(ring.h)


def alg_comultiply(x, ring: RingSpec) -> AlgElem:
    a = _as_letter(x)
    if a == X:
        return AlgElem.word((X, X))
    return AlgElem.from_dict({(ONE, X): UNIT, (X, ONE): UNIT, (ONE, ONE): ring.h})


def alg_counit(x: AlgElem) -> Poly:
    out = ZERO
    for w, p in x.terms:
        if len(w) != 1:
            raise ValueError("counit takes one-letter elements")
        if w[0] == X:
            out = out + p
    return out


def alg_sigma(x, ring: RingSpec = F2H) -> AlgElem:
    """Letterwise X -> X + h, extended multiplicatively over words."""
    if isinstance(x, str):
        x = AlgElem.letter(x)
    out = AlgElem()
    for w, p in x.terms:
        img = None
        for a in w:
            la = AlgElem.letter(a) if a == ONE else AlgElem.from_dict({(X,): UNIT, (ONE,): ring.h})
            img = la if img is None else img.tensor(la)
        out = out + img.scale(p)
    return out


def alg_pair(x, y, ring: RingSpec = F2H) -> Poly:
    """Pairing <x, y> = eps(x y)."""
    if isinstance(x, str):
        x = AlgElem.letter(x)
    if isinstance(y, str):
        y = AlgElem.letter(y)
    return alg_counit(_letter_bilinear(x, y, lambda a, b: alg_multiply(a, b, ring)))


def y_letter(ring: RingSpec) -> AlgElem:
    """Y = X + h."""
    return AlgElem.from_dict({(X,): UNIT, (ONE,): ring.h})


def multiplication_table(ring: RingSpec) -> Dict[Tuple[str, str], Dict[str, Poly]]:
    """Letter-level m as {(a, b): {c: coeff}} for cube construction."""
    return {(a, b): {w[0]: p for w, p in alg_multiply(a, b, ring).terms} for a in LETTERS for b in LETTERS}


def comultiplication_table(ring: RingSpec) -> Dict[str, Dict[Tuple[str, str], Poly]]:
    return {a: {w: p for w, p in alg_comultiply(a, ring).terms} for a in LETTERS}
