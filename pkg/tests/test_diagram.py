import pytest
from hypothesis import given, settings, strategies as st

from khinv import corpus
from khinv.builders import plat_h, plat_v, pretzel3, torus2, twist_periodic
from khinv.diagram import (Crossing, DiagramError, combine, dumps, make_diagram, mirror, oriented_state,
                           parse_diagram, resolve_state, seifert_resolution, tau_action, validate)
from oracles import jones_of_diagram

TREFOIL = """\
# 3_1
mode strong
x c1 + u:e1,e2 o:e4,e5
x c2 + u:e3,e4 o:e6,e1
x c3 + u:e5,e6 o:e2,e3
tau e1 e5
tau e2 e4
tau e3
tau e6
base e3
"""


def test_parse_trefoil():
    D = parse_diagram(TREFOIL)
    assert D.n == 3 and D.writhe == 3
    assert D.fixed_edges == ("e3", "e6")
    assert D.component_count == 1
    assert validate(D) == []


def test_dumps_roundtrip_on_corpus():
    for name in corpus.ALL:
        D = corpus.load(name)
        assert parse_diagram(dumps(D)) == D, name


def test_bundled_files_match_recipes():
    for name in corpus.ALL:
        text = (corpus.DATA / f"{name}.sik").read_text()
        assert text == dumps(corpus.build(name)), name


def test_corpus_is_valid():
    for name in corpus.ALL:
        assert validate(corpus.load(name)) == [], name


@pytest.mark.parametrize("edit, message", [
    (lambda t: t.replace("tau e2 e4\n", ""), "involution undefined"),
    (lambda t: t.replace("base e3", "base e1"), "basepoint must be a fixed edge"),
    (lambda t: t.replace("x c3 + u:e5,e6 o:e2,e3", "x c3 + u:e5,e6 o:e2,e9"), "must enter one crossing"),
    (lambda t: t.replace("mode strong", "mode periodic"), "periodic"),
])
def test_invalid_inputs_are_rejected(edit, message):
    with pytest.raises(DiagramError, match=message):
        parse_diagram(edit(TREFOIL))


def test_non_equivariant_involution_rejected():
    # swapping the two fixed edges is not compatible with the crossings
    bad = TREFOIL.replace("tau e3\ntau e6\n", "tau e3 e6\n")
    with pytest.raises(DiagramError):
        parse_diagram(bad)


def test_garbage_line():
    with pytest.raises(DiagramError):
        parse_diagram("mode strong\nthis is not a diagram\n")


def test_mirror_is_an_involution_and_negates_writhe():
    for name in ("3_1", "7_4b", "m9_46"):
        D = corpus.load(name)
        M = mirror(D)
        assert M.writhe == -D.writhe
        assert mirror(M) == D
        J, JM = jones_of_diagram(D), jones_of_diagram(M)
        assert JM == {-k: v for k, v in J.items()}


def test_seifert_data_of_trefoil():
    S = seifert_resolution(corpus.load("3_1"))
    assert (S.r, S.w, S.n_plus, S.n_minus) == (2, 3, 3, 0)
    assert len(S.seifert_graph) == 3


def test_oriented_resolution_has_one_circle_per_seifert_circle():
    D = corpus.load("m9_46")
    assert resolve_state(D, oriented_state(D)).circle_count == seifert_resolution(D).r


def test_periodic_diagrams_have_no_fixed_edges():
    for k in (2, 3, 4):
        D = twist_periodic(k)
        assert D.mode == "periodic"
        assert D.fixed_edges == ()
        assert D.component_count == (2 if k % 2 == 0 else 1)


def test_connected_sum_on_axis():
    t = corpus.load("3_1")
    S = combine(t, t, "connected_sum_on_axis")
    assert S.n == 6 and S.component_count == 1 and validate(S) == []
    J = jones_of_diagram(t)
    JJ = {}
    for a, x in J.items():
        for b, y in J.items():
            JJ[a + b] = JJ.get(a + b, 0) + x * y
    assert jones_of_diagram(S) == {k: v for k, v in JJ.items() if v}


def test_builders_give_expected_knots():
    # T(2,k) and the pretzel P(-3,3,-3) have the reduced Jones polynomials below (q-variable)
    assert jones_of_diagram(torus2(3)) == {2: 1, 6: 1, 8: -1}
    assert jones_of_diagram(torus2(5)) == {4: 1, 8: 1, 10: -1, 12: 1, 14: -1}
    D = pretzel3(-3, 3)
    assert D.n == 9 and D.component_count == 1


def test_crossing_constructor_validation():
    x = Crossing("c", 2, "a", "b", "b", "a")
    with pytest.raises(DiagramError, match="sign"):
        make_diagram(["a", "b"], [x], {"a": "b", "b": "a"})


words = st.lists(st.tuples(st.sampled_from("MP"), st.sampled_from((1, -1))), min_size=1, max_size=5)


@settings(max_examples=40, deadline=None)
@given(words, st.sampled_from(["left", "right"]))
def test_random_plats_are_valid_and_equivariant(word, nested):
    D = plat_h(word, nested)
    assert validate(D) == []
    iota = D.crossing_involution
    assert all(iota[iota[k]] == k for k in range(D.n))
    # the symmetric state map is an involution on states
    for s in range(min(1 << D.n, 16)):
        state = tuple((s >> k) & 1 for k in range(D.n))
        s2, bij = tau_action(D, state)
        s3, bij2 = tau_action(D, s2)
        assert s3 == state
        assert all(bij2[bij[c]] == c for c in bij)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.sampled_from((1, 2, 3)), st.sampled_from((1, -1))), max_size=3),
       st.tuples(st.sampled_from((1, 2, 3)), st.sampled_from((1, -1))))
def test_random_vertical_plats(half, centre):
    try:
        D = plat_v(half, centre)
    except DiagramError:
        return          # not every word closes up compatibly with the axis
    assert validate(D) == []
