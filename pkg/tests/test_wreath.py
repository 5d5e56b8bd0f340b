import random

import pytest
from hypothesis import given, strategies as st

from metadehn.errors import MembershipError, ResourceLimitError, UsageError
from metadehn.free_module import GroupWord, ModuleElement, parse_module_element, parse_word
from metadehn.group_ring import RingElement
from metadehn.membership import SubmodulePresentation, area_search
from metadehn.wreath import (SubgroupSpec, WreathElement, bfs_oracle, distortion_profile, evaluate,
                             standard_generators, subgroup_length, subgroup_length_info, subgroup_membership,
                             witness_family, wreath_inverse, wreath_length, wreath_length_info,
                             wreath_multiply)

H2 = SubgroupSpec.parse("t-1")


def W(text, tpart=None, k=None):
    return WreathElement(parse_module_element(text, k), tpart)


def h2_generators():
    return [W("t-1"), WreathElement.shift_generator(1, 1)]


words = st.lists(st.tuples(st.sampled_from(["a", "t"]), st.just(1), st.sampled_from([1, -1])),
                 max_size=16).map(GroupWord)
elements = st.builds(
    lambda d, s: WreathElement(ModuleElement([RingElement(1, d)]), (s,)),
    st.dictionaries(st.tuples(st.integers(-3, 3)), st.integers(-3, 3), max_size=4),
    st.integers(-4, 4))


def test_multiply_examples():
    a = WreathElement.lamp(1, 1)
    assert a * a == W("2")
    at = evaluate(parse_word("t^-1 a t"))
    comm = wreath_multiply(wreath_multiply(a.inverse(), at.inverse()), wreath_multiply(a, at))
    assert comm.is_identity()


@given(words, words)
def test_evaluation_is_homomorphism(w1, w2):
    assert evaluate(w1 + w2) == evaluate(w1) * evaluate(w2)


@given(elements, elements, elements)
def test_group_laws(g, h, x):
    e = WreathElement.identity()
    assert (g * h) * x == g * (h * x)
    assert g * wreath_inverse(g) == e == wreath_inverse(g) * g
    assert g * e == g


def test_length_examples():
    assert wreath_length(W("1")) == 1
    assert wreath_length(W("t")) == 3
    assert wreath_length(W("t^3+t^2+t+1")) == 10
    assert wreath_length(WreathElement.identity()) == 0
    g = W("t^-2", (3,))
    assert wreath_length_info(g).length == 4 == bfs_oracle(standard_generators(), 4)[g]


def test_bfs_small_ball():
    ball = bfs_oracle(standard_generators(), 1)
    assert len(ball) == 5
    assert bfs_oracle(standard_generators(), 3)[W("t")] == 3


def test_wreath_length_matches_bfs_radius5():
    ball = bfs_oracle(standard_generators(), 5)
    assert all(wreath_length(g) == d for g, d in ball.items())


def test_wreath_length_matches_bfs_two_lamps():
    ball = bfs_oracle(standard_generators(1, 2), 4)
    assert len(ball) > 500
    assert all(wreath_length(g) == d for g, d in ball.items())


def test_wreath_length_matches_bfs_rank_two():
    ball = bfs_oracle(standard_generators(2, 1), 4)
    assert all(wreath_length(g) == d for g, d in ball.items())


def test_bfs_guard():
    with pytest.raises(ResourceLimitError):
        bfs_oracle(standard_generators(), 8, max_nodes=100)
    with pytest.raises(UsageError):
        bfs_oracle([], 2)


def test_subgroup_length_examples():
    assert subgroup_length(W("t-1"), H2) == 1
    assert subgroup_length(W("t^2-1"), H2) == 4
    assert subgroup_length(WreathElement.identity(), H2) == 0
    with pytest.raises(MembershipError):
        subgroup_length(W("1"), H2)


def test_subgroup_membership_examples():
    assert subgroup_membership(W("t-1", (5,)), H2) is True
    assert subgroup_membership(W("1"), H2) is False
    assert subgroup_membership(WreathElement.identity(), H2) is True


def test_subgroup_length_matches_bfs_in_h2():
    ball = bfs_oracle(h2_generators(), 5)
    for g, d in ball.items():
        assert subgroup_length(g, H2) == d


def test_subgroup_length_matches_bfs_nonprincipal():
    # H = <(t-1)a, (t+1)a, t> is not principal; lengths come from the windowed search
    H = SubgroupSpec.parse("t-1 | t+1", m=1)
    gens = [W("t-1"), W("t+1"), WreathElement.shift_generator(1, 1)]
    ball = bfs_oracle(gens, 4)
    for g, d in ball.items():
        assert subgroup_length(g, H) == d


def test_whole_group_is_undistorted():
    prof = distortion_profile(SubgroupSpec.whole(), 5)
    assert prof.values() == [1, 2, 3, 4, 5]
    assert all(e for *_, e in prof.rows)


def _double_enumeration(r_max, h_radius):
    w_ball = bfs_oracle(standard_generators(), r_max)
    h_ball = bfs_oracle(h2_generators(), h_radius)
    members = [g for g in w_ball if subgroup_membership(g, H2)]
    assert all(g in h_ball for g in members)  # the H-ball is large enough
    out = []
    for r in range(1, r_max + 1):
        out.append(max(h_ball[g] for g in members if w_ball[g] <= r))
    return out


def test_distortion_profile_matches_double_enumeration():
    prof = distortion_profile(H2, 6)
    assert prof.values() == _double_enumeration(6, 9)
    vals = prof.values()
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert all(v >= r for r, v in zip(range(1, 7), vals))
    for r, v, word, _ in prof.rows:
        g = evaluate(parse_word(word))
        assert wreath_length(g) <= r and subgroup_length(g, H2) == v


def test_distortion_truncation():
    prof = distortion_profile(H2, 8, max_nodes=3000)
    assert prof.truncated
    assert prof.rows[-1][1] is None and not prof.rows[-1][3]
    assert any("not computed" in d for d in prof.diagnostics)
    assert prof.to_csv().splitlines()[0] == "r,sup_H_length,witness_word,exact"


def test_distortion_witness_mode():
    prof = distortion_profile(H2, 40, mode="witness", family=2)
    vals = prof.values()
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert vals[-1] >= 78
    with pytest.raises(UsageError):
        distortion_profile(H2, 5, mode="nope")


def test_witness_examples():
    w1 = witness_family(1, 5)
    assert w1.g == W("5") and w1.alpha == RingElement.constant(1, 5)
    w = witness_family(2, 3)
    assert w.g == W("3t^3-3") and w.alpha == RingElement(1, {(0,): 3, (1,): 3, (2,): 3})
    assert w.alpha.one_norm() == 9
    w = witness_family(3, 2)
    assert w.alpha.one_norm() == 8 and w.g.base == parse_module_element("2t^4-4t^2+2")
    assert w.h_length == subgroup_length(w.g, w.subgroup())
    js = w.to_json()
    assert set(js) == {"l", "n", "g", "alpha", "w_length", "h_length"}
    with pytest.raises(UsageError):
        witness_family(0, 2)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_witness_alpha_is_the_expression(l):
    for n in range(1, 9):
        w = witness_family(l, n)
        assert w.subgroup().S.combine([w.alpha]) == w.g.base
        assert w.alpha.one_norm() == n ** l


@given(st.dictionaries(st.tuples(st.integers(-3, 3)), st.integers(-3, 3), max_size=4),
       st.integers(-3, 3), st.integers(1, 3))
def test_sandwich_and_coefficient_sum(d, s, j):
    alpha = RingElement(1, d)
    gen = ModuleElement([RingElement(1, {(0,): -1, (1,): 1}) ** j])
    H = SubgroupSpec(SubmodulePresentation((gen,)))
    g = WreathElement(alpha * gen, (s,))
    assert sum(c for _, c in g.base[0].items()) == 0
    info = subgroup_length_info(g, H)
    assert area_search(g.base, H.S).area <= info.length
    assert wreath_length(g) <= info.length * wreath_length(WreathElement(gen))


def test_random_words_in_h2_have_consistent_lengths():
    rng = random.Random(11)
    c, t = h2_generators()
    for _ in range(100):
        g = WreathElement.identity()
        steps = rng.randint(0, 8)
        for _ in range(steps):
            x = rng.choice((c, t))
            g = g * (x if rng.random() < 0.5 else x.inverse())
        assert subgroup_length(g, H2) <= steps
