import json
import sys
from pathlib import Path

import pytest

from khinv import corpus
from oracles import jones_from_involutive_table, jones_of_diagram

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tools"))
from inversions import bracket_to_jones, inversion_class, plat_bracket  # noqa: E402

EXPECTED = json.loads((Path(__file__).parent / "data" / "expected_tables.json").read_text())
ADJ, NEST = [(1, 2), (3, 4)], [(2, 3), (1, 4)]


def h_plat(word):
    layers = [[(2, 1 if t[1] == "+" else -1)] if t[0] == "M" else
              [(1, 1 if t[1] == "+" else -1), (3, 1 if t[1] == "+" else -1)] for t in word.split()]
    return 4, layers, ADJ, NEST


@pytest.mark.parametrize("name", corpus.TABLE_KNOTS)
def test_tabulated_diagrams_have_the_right_jones_polynomial(name):
    # the a-table of 7_4 and 7_7 is a split table, so read the Jones polynomial from it
    ref = name[:-1] + "a" if name in ("7_4b", "7_7b") else name
    kh = EXPECTED[ref]["kh"]
    assert jones_of_diagram(corpus.load(name)) == jones_from_involutive_table(kh["free"] + kh["torsion"])


def test_bracket_transfer_agrees_with_state_sum():
    for name, word in corpus.H_WORDS.items():
        D = corpus.load(name)
        assert bracket_to_jones(plat_bracket(*h_plat(word)), D.writhe) == jones_of_diagram(D), name


def test_a_and_b_carry_inequivalent_inversions():
    pairs = [k[:-1] for k in corpus.H_WORDS if k.endswith("a") and k[:-1] + "b" in corpus.H_WORDS]
    assert sorted(pairs) == ["5_2", "6_1", "6_2", "7_2", "7_3", "7_5", "7_6"]
    for base in pairs:
        a = inversion_class(*h_plat(corpus.H_WORDS[base + "a"]))
        b = inversion_class(*h_plat(corpus.H_WORDS[base + "b"]))
        assert a != b, base


def test_quotient_invariant_sees_one_class_for_the_trefoil():
    # the trefoil has a unique strong inversion; these diagrams all carry it
    classes = {inversion_class(*h_plat(w)) for w in ("M- P+", "M- M- P-", "M- P+ M+ M+ M+")}
    assert len(classes) == 1


def test_lists():
    assert set(corpus.TABLE_KNOTS) <= set(corpus.KNOTS)
    assert corpus.ALL == corpus.KNOTS + corpus.LINKS
    for name in corpus.LINKS:
        assert corpus.load(name).component_count in (1, 2)
    assert [n for n in corpus.LINKS if not corpus.preserves_components(corpus.load(n))] == \
        ["hopf_periodic", "T2_4_periodic"]
