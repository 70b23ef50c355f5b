from __future__ import annotations

import random
from collections import defaultdict

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinconvex import artin
from artinconvex.braid import (
    BraidWord,
    all_words,
    delete_strands,
    embed,
    garside_nf,
    geodesics,
    identity_perm,
    inversions,
    parse_braid,
    perm_of,
    simple_word,
    words_equal,
)
from artinconvex.coxeter import coxeter_type
from artinconvex.errors import PreconditionError, WordParseError

from oracles import artin_action


def bw(n, *letters):
    return BraidWord(n, tuple((abs(x), 1 if x > 0 else -1) for x in letters))


def test_parse_and_format():
    w = parse_braid("s1 s2^-1 s1", 3)
    assert w == bw(3, 1, -2, 1)
    assert str(w) == "s1 s2^-1 s1"
    with pytest.raises(WordParseError):
        parse_braid("s3", 3)
    with pytest.raises(WordParseError):
        parse_braid("x1", 3)


def test_perm_of_examples():
    assert perm_of(bw(3, 1)) == (1, 0, 2)
    assert perm_of(bw(3)) == identity_perm(3)
    assert perm_of(bw(3, 1, 2, 1)) == perm_of(bw(3, 2, 1, 2))
    assert perm_of(bw(3, 1, -1)) == identity_perm(3)


def test_garside_examples():
    assert garside_nf(bw(3, 1, 2, 1)) == garside_nf(bw(3, 2, 1, 2))
    nf = garside_nf(bw(3, 1, -1))
    assert nf.power == 0 and nf.factors == ()
    assert garside_nf(bw(3, 1, 2, 1)).power == 1
    assert garside_nf(bw(3, -1)).power == -1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_full_twist_is_central(n):
    delta = [i for i, _ in simple_word(tuple(range(n - 1, -1, -1)))]
    delta2 = bw(n, *(delta + delta))
    for i in range(1, n):
        gen = bw(n, i)
        assert words_equal(delta2 + gen, gen + delta2)
        assert words_equal(delta2 + bw(n, -i), bw(n, -i) + delta2)


def test_words_equal_examples():
    w = bw(3, 1, -2, 2, 1)
    assert words_equal(w, w)
    assert not words_equal(bw(3, 1), bw(3, 2))
    assert words_equal(bw(4, 1, 3), bw(4, 3, 1))
    assert not words_equal(bw(3, 1, 2), bw(3, 2, 1))


@pytest.mark.parametrize("n,max_len", [(3, 5), (4, 3)])
def test_garside_partition_matches_free_group_action(n, max_len):
    by_nf, by_action = defaultdict(set), defaultdict(set)
    for ell in range(max_len + 1):
        for w in all_words(n, ell):
            by_nf[garside_nf(w)].add(w.letters)
            by_action[artin_action(n, w.letters)].add(w.letters)
    assert sorted(map(sorted, by_nf.values())) == sorted(map(sorted, by_action.values()))


def test_normal_form_shape():
    rng = random.Random(5)
    n = 5
    for _ in range(200):
        w = BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(rng.randint(0, 25))))
        nf = garside_nf(w)
        delta = tuple(range(n - 1, -1, -1))
        for f in nf.factors:
            assert f != identity_perm(n) and f != delta
        for a, b in zip(nf.factors, nf.factors[1:]):
            # left-weighted: nothing of b's left descents can move into a
            inv_a = [0] * n
            for p, q in enumerate(a):
                inv_a[q] = p
            right_a = {i for i in range(1, n) if inv_a[i - 1] > inv_a[i]}
            left_b = {i for i in range(1, n) if b[i - 1] > b[i]}
            assert left_b <= right_a
        back = nf.to_word()
        assert artin_action(n, back.letters) == artin_action(n, w.letters)
        assert garside_nf(back) == nf
        assert sum(inversions(f) for f in nf.factors) + nf.power * n * (n - 1) // 2 == sum(e for _, e in w.letters)


def _scrambled(n, word, steps, seed):
    graph = coxeter_type(f"A{n - 1}")
    aw = tuple((i - 1, e) for i, e in word.letters)
    out = artin.scramble(graph, aw, steps, seed)
    return BraidWord(n, tuple((s + 1, e) for s, e in out))


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 5), st.lists(st.tuples(st.integers(1, 4), st.sampled_from((1, -1))), max_size=12), st.integers(0, 30), st.integers(0, 2**32))
def test_garside_is_a_congruence(n, letters, steps, seed):
    w = BraidWord(n, tuple((min(i, n - 1), e) for i, e in letters))
    s = _scrambled(n, w, steps, seed)
    assert words_equal(w, s)
    assert perm_of(w) == perm_of(s)
    k = len(w.letters) // 2
    x = (k % (n - 1)) + 1
    padded = BraidWord(n, w.letters[:k] + ((x, 1), (x, -1)) + w.letters[k:])
    assert words_equal(w, padded)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 4), st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=8), st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=8))
def test_permutation_is_a_quotient_invariant(n, l1, l2):
    w1 = BraidWord(n, tuple((min(i, n - 1), e) for i, e in l1))
    w2 = BraidWord(n, tuple((min(i, n - 1), e) for i, e in l2))
    if perm_of(w1) != perm_of(w2):
        assert not words_equal(w1, w2)
    assert words_equal(w1, w2) == (artin_action(n, w1.letters) == artin_action(n, w2.letters))


# -- strand deletion --------------------------------------------------------


def test_delete_strands_examples():
    # hand trace: both s3 crossings involve strands 3 and 4
    assert delete_strands(bw(4, 3, 1, -3), [1, 2]) == bw(2, 1)
    assert delete_strands(bw(5, 1, -2, 1), [1, 2, 3]) == bw(3, 1, -2, 1)
    assert delete_strands(bw(4), [1, 2]) == bw(2)


def test_delete_strands_renumbers_crossings():
    # strand 3 travels left across strands 2 and 1; deleting strand 2 leaves s1
    w = bw(3, 2, 1, -1, -2)
    assert delete_strands(w, [1, 3]) == bw(2, 1, -1)
    assert delete_strands(w, [2, 3]) == bw(2, 1, -1)


def test_delete_strands_precondition():
    with pytest.raises(PreconditionError):
        delete_strands(bw(4, 2), [1, 2])
    with pytest.raises(PreconditionError):
        delete_strands(bw(3, 1), [0, 1])


def test_embed():
    w = bw(3, 1, -2, 2, 1)
    assert embed(w, 5).n == 5 and embed(w, 5).letters == w.letters
    assert embed(bw(2), 4) == bw(4)
    assert delete_strands(embed(w, 5), [1, 2, 3]) == w
    with pytest.raises(PreconditionError):
        embed(w, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.sampled_from((1, -1))), max_size=10), st.integers(0, 2**32))
def test_embed_preserves_equality(letters, seed):
    w = BraidWord(3, tuple(letters))
    s = _scrambled(3, w, 20, seed)
    assert words_equal(embed(w, 5), embed(s, 5))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32))
def test_delete_strands_inverts_embedding_up_to_equality(m, seed):
    rng = random.Random(seed)
    n = rng.randint(m + 1, 5)
    w = BraidWord(m, tuple((rng.randint(1, m - 1), rng.choice((1, -1))) for _ in range(rng.randint(0, 10)))) if m > 1 else BraidWord(1)
    scrambled = _scrambled(n, embed(w, n), rng.randint(0, 40), rng.getrandbits(32))
    out = delete_strands(scrambled, range(1, m + 1))
    assert len(out) <= len(scrambled)
    assert words_equal(out, w)


def test_geodesics_in_b3_stay_in_sigma1():
    for k in range(-4, 5):
        target = bw(3, *([1] * k if k >= 0 else [-1] * -k))
        ell, found = geodesics(target)
        assert ell == abs(k)
        assert found and all(i == 1 for w in found for i, _ in w.letters)


def test_geodesics_exhaustive_count():
    # sigma1^2 has exactly one geodesic in B3 among all 16 words of length 2
    ell, found = geodesics(bw(3, 1, 1))
    assert ell == 2 and [w.letters for w in found] == [((1, 1), (1, 1))]
