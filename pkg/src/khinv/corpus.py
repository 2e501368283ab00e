"""Bundled symmetric diagrams.

Every diagram is stored as a .sik file under khinv/data and is also described
by a builder recipe, so the files can be regenerated (tools/make_corpus.py)
and tests can check that the two agree.

For knots with two inequivalent strong inversions the reference tables carry
suffixes a/b. The two inversions are told apart by their quotient theta-curves
(tools/inversions.py): diagrams in different classes carry inequivalent
inversions. For 7_4 and 7_7 the tables themselves differ and fix the labels;
there "a" is realised by a horizontal-axis 4-plat and "b" only by a
vertical-axis one. For the other knots the reference a and b tables coincide, and
"a" is taken to be the class of the smallest horizontal-axis 4-plat, "b" the
other class. That choice is a convention the tables cannot check.
"""
from __future__ import annotations

import dataclasses
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from .builders import plat, plat_h, plat_v, pretzel3, torus2, twist_periodic
from .diagram import InvolutiveDiagram, add_kink_on_axis, add_kink_pair, make_diagram, parse_diagram, \
    seifert_resolution

DATA = Path(__file__).resolve().parent / "data"


def unknot() -> InvolutiveDiagram:
    return make_diagram(["e1"], [], {"e1": "e1"}, "e1", "strong", succ={"e1": "e1"}, name="unknot")


def _h(word: str, nested: str = "right") -> Callable[[], InvolutiveDiagram]:
    """Word like 'M- P+ M- P+': M is an on-axis crossing, P a symmetric off-axis pair."""
    letters = [(t[0], 1 if t[1] == "+" else -1) for t in word.split()]
    return lambda: plat_h(letters, nested)


def _hh(word: str) -> Callable[[], InvolutiveDiagram]:
    """Horizontal-axis 4-plat with nested caps at both ends: a two-component link, each component preserved."""
    layers = [[(2, 1 if t[1] == "+" else -1)] if t[0] == "M" else [(1, 1 if t[1] == "+" else -1),
                                                                  (3, 1 if t[1] == "+" else -1)]
              for t in word.split()]
    nest = [(2, 3), (1, 4)]
    return lambda: plat(4, layers, nest, nest, "h")


def _v(half: str, centre: str) -> Callable[[], InvolutiveDiagram]:
    """Half word like '2+ 1-' (position and flag), mirrored around the centre crossing."""
    parse = lambda t: (int(t[:-1]), 1 if t[-1] == "+" else -1)
    return lambda: plat_v([parse(t) for t in half.split()], parse(centre))


RECIPES: Dict[str, Callable[[], InvolutiveDiagram]] = {
    "unknot": unknot,
}

TABLE_KNOTS: List[str] = ["3_1", "4_1", "5_1", "5_2a", "5_2b", "6_1a", "6_1b", "6_2a", "6_2b", "6_3", "7_1",
                             "7_2a", "7_2b", "7_3a", "7_3b", "7_4a", "7_4b", "7_5a", "7_5b", "7_6a", "7_6b",
                             "7_7a", "7_7b"]
KNOTS: List[str] = []
LINKS: List[str] = []
ALL: List[str] = []

# horizontal-axis 4-plats (nested caps on the right) and vertical-axis 4-plats (half word, centre)
H_WORDS: Dict[str, str] = {
    "3_1": "M- P+",
    "4_1": "M+ M+ P-",
    "5_1": "M- P+ P+",
    "5_2a": "M- M- M- P+",
    "5_2b": "M- M- P- P-",
    "6_1a": "M+ M+ P- P-",
    "6_1b": "M- M- M- M- M- P-",
    "6_2a": "M- P+ M- P+",
    "6_2b": "M+ M+ M+ P+ P+",
    "6_3": "M+ P- M- M- P+",
    "7_1": "M- P+ P+ P+",
    "7_2a": "M- M- M- M- M- P+",
    "7_2b": "M- M- P- P- P-",
    "7_3a": "M- M- M- P+ P+",
    "7_3b": "M- P+ M- P- P-",
    "7_4a": "M- M- M- M- P- P-",
    "7_5a": "M- P+ M- M- P+",
    "7_5b": "M- P+ M+ M+ P+ P+",
    "7_6a": "M+ M+ P- M+ P-",
    "7_6b": "M+ P- M- M- M- P+",
    "7_7a": "M+ M+ P- M- M- P+",
}
V_WORDS: Dict[str, Tuple[str, str]] = {
    "7_4b": ("2- 2- 2-", "1+"),
    "7_7b": ("2+ 2+ 1-", "2+"),
}
_TABLE_RECIPES = {**{k: _h(w, "right") for k, w in H_WORDS.items()}, **{k: _v(*hv) for k, hv in V_WORDS.items()}}
_EXTRA_KNOTS = {
    "m9_46": lambda: pretzel3(-3, 3),
    "T2_5": lambda: torus2(5),
    "3_1v": lambda: torus2(3),
}
_LINKS = {
    "hopf_strong": _hh("M+ M+"),
    "T2_4_strong": _hh("M+ M+ M+ M+"),
    "3_1_periodic": lambda: twist_periodic(3),
    "hopf_periodic": lambda: twist_periodic(2),
    "T2_4_periodic": lambda: twist_periodic(4),
}


def _register(table: Dict[str, Callable[[], InvolutiveDiagram]], knots: List[str], links: List[str]) -> None:
    RECIPES.update(table)
    KNOTS[:] = ["unknot"] + knots
    LINKS[:] = links
    ALL[:] = KNOTS + LINKS


@lru_cache(maxsize=None)
def load(name: str) -> InvolutiveDiagram:
    path = DATA / f"{name}.sik"
    return parse_diagram(path.read_text(), name=name)


def build(name: str) -> InvolutiveDiagram:
    return dataclasses.replace(RECIPES[name](), name=name)


def seifert_count(D: InvolutiveDiagram) -> int:
    return seifert_resolution(D).r


def preserves_components(D: InvolutiveDiagram) -> bool:
    """True when the involution maps every component to itself."""
    for comp in D.components:
        if D.tau[comp[0]] not in comp:
            return False
    return True


_register({**_TABLE_RECIPES, **_EXTRA_KNOTS, **_LINKS}, TABLE_KNOTS + list(_EXTRA_KNOTS), list(_LINKS))


def move_pairs() -> Dict[str, Tuple[InvolutiveDiagram, InvolutiveDiagram]]:
    """Pairs related by one involutive Reidemeister move, one pair per move family."""
    t3 = load("3_1")
    off = [e for e in t3.edges if t3.tau[e] != e][0]
    on = [e for e in t3.fixed_edges if e != t3.basepoint][0]
    # on-axis mixed move: the centre crossing c becomes c, c^-1, c (an on-axis
    # Reidemeister II inserted symmetrically next to c)
    half = [(2, 1), (2, 1), (1, -1)]
    before = plat_v(half, (2, 1))
    after = plat_v(half + [(2, 1)], (2, -1))
    return {
        "IR1 off-axis (symmetric kink pair)": (t3, add_kink_pair(t3, off, 1)),
        "R1 on-axis (kink on the axis)": (t3, add_kink_on_axis(t3, on, -1)),
        "M on-axis (c -> c c^-1 c at the centre)": (before, after),
    }


def crossing_change_pair() -> Tuple[InvolutiveDiagram, InvolutiveDiagram]:
    """(K+, K-): the symmetric trefoil and the unknot obtained by changing its on-axis crossing."""
    f = 1 if plat_v([(2, 1)], (2, 1)).writhe > 0 else -1
    return plat_v([(2, f)], (2, f), name="T(2,3)"), plat_v([(2, f)], (2, -f), name="unknot (3 crossings)")
