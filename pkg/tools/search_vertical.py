"""Vertical-axis 4-plats for knots whose second strong inversion was not found yet.

A 4-plat is classified by tracking the slope of the rational tangle to the
left of each layer: a twist on positions (1,2) or (3,4) adds its flag, a twist
on (2,3) subtracts its flag from the reciprocal. Closing with caps (12)(34)
gives the 2-bridge knot b(p, q) with p/q read off the final slope. Candidates
with the right (p, q) class are confirmed by the Jones polynomial and then by
the full reduced involutive tables.

    python3 tools/search_vertical.py --max-crossings 13 5_2b 6_1b ...
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path[:0] = [str(ROOT / "src"), str(ROOT / "tests")]

from khinv.builders import plat_h, plat_v  # noqa: E402
from khinv.diagram import DiagramError  # noqa: E402
from khinv.homology import GradedModule  # noqa: E402
from oracles import jones_from_involutive_table, jones_of_diagram  # noqa: E402
from search_corpus import involutive_tables  # noqa: E402


def slope(layers, start=(1, 0)):
    a, b = start
    for p, f in layers:
        if p in (1, 3):
            a = a + f * b
        else:
            b = b - f * a
    return a, b


def bridge_class(p: int, q: int):
    """Unoriented 2-bridge type up to mirror: the smallest of q^{+-1}, -q^{+-1} mod p."""
    p = abs(p)
    if p < 2:
        return (p, 0)
    q %= p
    cands = set()
    for x in (q, -q % p):
        cands.add(x)
        try:
            cands.add(pow(x, -1, p))
        except ValueError:
            return (p, None)
    return (p, min(cands))


def h_class(word, nested):
    layers = []
    for kind, f in word:
        layers += [(2, f)] if kind == "M" else [(1, f), (3, f)]
    if nested == "right":
        a, b = slope(layers)
        return bridge_class(a, b)
    a, b = slope(layers, (0, 1))
    return bridge_class(b, a)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("targets", nargs="+")
    ap.add_argument("--max-crossings", type=int, default=13)
    ap.add_argument("--found", default="/root/notes/search9.json")
    args = ap.parse_args(argv)
    expected = json.loads((ROOT / "tests/data/expected_tables.json").read_text())
    found = json.loads(Path(args.found).read_text())
    want = {}
    for t in args.targets:
        base = t[:-1] + "a"
        fam, spec, n = next(x for x in found[base] if x[0] == "H")
        want[t] = h_class([tuple(w) for w in spec["word"]], spec["nested"])
        print(f"{t}: class {want[t]}", file=sys.stderr)
    by_class = {}
    for t, c in want.items():
        by_class.setdefault(c, []).append(t)
    hits = {t: [] for t in args.targets}
    gens = [(g, s) for g in (1, 2, 3) for s in (1, -1)]
    for hn in range(0, (args.max_crossings - 1) // 2 + 1):
        for half in itertools.product(gens, repeat=hn):
            for centre in gens:
                layers = list(half) + [centre] + list(reversed(half))
                a, b = slope(layers)
                c = bridge_class(b, a)
                if c not in by_class:
                    continue
                try:
                    D = plat_v(list(half), centre)
                except DiagramError:
                    continue
                if D.component_count != 1 or D.basepoint is None:
                    continue
                J = jones_of_diagram(D)
                for t in by_class[c]:
                    if hits[t] and hits[t][-1][2] < D.n:
                        continue
                    if J != jones_from_involutive_table(expected[t[:-1] + "a"]["kh"]["torsion"]):
                        continue
                    kh, bn = involutive_tables(D)
                    ok = kh == GradedModule.from_json(expected[t]["kh"]) and \
                        bn == GradedModule.from_json(expected[t]["bn"])
                    if ok:
                        hits[t].append([list(half), list(centre), D.n])
                        print(f"{t}: half {list(half)} centre {centre} n={D.n}", file=sys.stderr, flush=True)
    json.dump(hits, sys.stdout, indent=1)


if __name__ == "__main__":
    main()
