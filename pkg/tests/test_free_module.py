import itertools
import random

import pytest
from hypothesis import given, strategies as st

from metadehn.errors import ParseError
from metadehn.free_module import (GroupWord, ModuleElement, format_word, module_norm, ordered_form,
                                  ordered_form_cost_bound, parse_module_element, parse_word, word_to_module)
from metadehn.group_ring import RingElement, compare_monomials, parse_ring_element
from metadehn.walks import reach, walk_length
from metadehn.wreath import WreathElement
from oracles import brute_walk, lamplighter_eval

P = parse_ring_element


def M(text, k=None):
    return parse_module_element(text, k)


def random_word(rng, length, k=1, m=1):
    letters = []
    for _ in range(length):
        if rng.random() < 0.5:
            letters.append(("a", rng.randint(1, m), rng.choice((1, -1))))
        else:
            letters.append(("t", rng.randint(1, k), rng.choice((1, -1))))
    return GroupWord(letters)


words = st.lists(st.tuples(st.sampled_from(["a", "t"]), st.just(1), st.sampled_from([1, -1])),
                 max_size=20).map(GroupWord)
module_els = st.dictionaries(st.tuples(st.integers(-4, 4)), st.integers(-3, 3), max_size=6).map(
    lambda d: ModuleElement([RingElement(1, d)]))


def test_word_to_module_examples():
    assert word_to_module(parse_word("a^-1 t^-1 a t")) == (M("t-1"), (0,))
    assert word_to_module(parse_word("[a,t]")) == (M("t-1"), (0,))
    assert word_to_module(parse_word("t a t^-1")) == (M("t^-1"), (0,))
    base, tp = word_to_module(parse_word("t1 t2"), k=2, m=1)
    assert not base and tp == (1, 1)


def test_word_parse_errors():
    for bad in ("b1", "a1^", "[a1,", "t1^x"):
        with pytest.raises(ParseError):
            parse_word(bad)


def test_reach_examples():
    assert reach([]) == 0
    assert reach([(-2,), (3,)]) == 10
    assert reach([(1, 0), (0, 1)]) == 4


def test_norm_examples():
    assert module_norm(M("t^3+t^2+t+1")) == 10
    assert module_norm(ModuleElement.zero(1, 1)) == 0
    assert module_norm(M("2t-3")) == 7


def test_ordered_form_examples():
    of = ordered_form(M("2t+1"))
    assert of.terms == ((((1,), 2), ((0,), 1)),)
    assert of.word == parse_word("t^-1 a^2 t a")
    assert len(ordered_form(ModuleElement.zero(1, 1)).word) == 0
    f1 = word_to_module(parse_word("t^-1 a t a"))[0]
    f2 = word_to_module(parse_word("a t^-1 a t"))[0]
    assert f1 == f2 == M("t+1")
    assert ordered_form(f1).word == ordered_form(f2).word


def test_ordered_form_cost_bound():
    assert [ordered_form_cost_bound(l) for l in (0, 1, 5, 10)] == [0, 1, 425, 3700]


def test_ordered_form_multi_coordinate():
    f = M("t1 - t2^-1; 3", k=2)
    of = ordered_form(f)
    for coord in of.terms:
        for (u, _), (v, _) in zip(coord, coord[1:]):
            assert compare_monomials(u, v) == 1
    assert word_to_module(of.word, 2, 2) == (f, (0, 0))


def test_norm_counts_tpart_free_reach():
    # the 3n + 1 family for small n, and reach via the brute-force oracle for k = 2
    for n in range(1, 8):
        f = ModuleElement([RingElement(1, {(j,): 1 for j in range(n + 1)})])
        assert module_norm(f) == 3 * n + 1
    f = M("t1*t2 - 2*t1^-1 + t2^2", k=2)
    assert module_norm(f) == 4 + brute_walk(f.support(), k=2)


@given(words, words)
def test_homomorphism(w1, w2):
    g1 = WreathElement(*word_to_module(w1, 1, 1))
    g2 = WreathElement(*word_to_module(w2, 1, 1))
    assert WreathElement(*word_to_module(w1 + w2, 1, 1)) == g1 * g2


@given(words)
def test_word_to_module_matches_lamplighter(w):
    lamps, p = lamplighter_eval(w)
    base, tp = word_to_module(w, 1, 1)
    assert tp == p
    assert {(0, u): c for u, c in base[0].items()} == lamps


@given(module_els)
def test_ordered_form_round_trip(f):
    assert word_to_module(ordered_form(f).word, 1, 1) == (f, (0,))
    for coord in ordered_form(f).terms:
        assert all(compare_monomials(u, v) == 1 for (u, _), (v, _) in zip(coord, coord[1:]))


@given(module_els)
def test_norm_zero_iff_zero(f):
    assert (module_norm(f) == 0) == (not f)


@given(st.dictionaries(st.tuples(st.integers(-3, 3)), st.integers(-3, 3), max_size=4),
       st.dictionaries(st.tuples(st.integers(-3, 3)), st.integers(-3, 3), max_size=4))
def test_norm_invariant_under_coordinate_permutation(d1, d2):
    a, b = RingElement(1, d1), RingElement(1, d2)
    assert module_norm(ModuleElement([a, b])) == module_norm(ModuleElement([b, a]))


points2 = st.sets(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=6)


@given(points2, points2)
def test_reach_monotone_and_bounded(s1, s2):
    assert reach(s1, k=2) <= reach(s1 | s2, k=2)
    assert reach(s1, k=2) <= sum(2 * (abs(x) + abs(y)) for x, y in s1)
    assert reach(s1, k=2) == brute_walk(s1, k=2)


@given(points2, st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_open_walk_matches_brute_force(pts, end):
    assert walk_length(pts, end, 2).length == brute_walk(pts, end, k=2)


def test_k1_reach_closed_form_exhaustive():
    vals = range(-6, 7)
    for size in range(0, 4):
        for S in itertools.combinations(vals, size):
            pts = [(v,) for v in S]
            closed = 2 * (max([0, *S]) + max([0, *(-v for v in S)]))
            assert reach(pts, k=1) == closed
    rng = random.Random(7)
    for _ in range(300):
        S = rng.sample(list(vals), rng.randint(4, 6))
        pts = [(v,) for v in S]
        closed = 2 * (max([0, *S]) + max([0, *(-v for v in S)]))
        assert reach(pts, k=1) == closed == brute_walk(pts, k=1)


def test_reach_inexact_beyond_limit():
    pts = [(i, i % 3) for i in range(20)]
    w = walk_length(pts, None, 2, exact_limit=5)
    assert not w.exact and w.length >= walk_length(pts, None, 2).length


def test_format_word_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        w = random_word(rng, rng.randint(0, 25), k=2, m=2)
        assert parse_word(format_word(w)) == w
