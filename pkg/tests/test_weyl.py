import pytest
from hypothesis import given
from hypothesis import strategies as st

from schubcob.oracle import bfs_lengths, exhaustive_reduced_words
from schubcob.weyl import (Permutation, SignedPermutation, WeylError, check_word, elements,
                           g_bijection, identity, longest, nu, parse_element, parse_word)

GROUPS = [("A", 3), ("A", 4), ("C", 2), ("C", 3)]


def group(type, n):
    return list(elements(type, n))


@pytest.mark.parametrize("type,n,size", [("A", 3, 6), ("A", 4, 24), ("C", 2, 8), ("C", 3, 48)])
def test_group_orders(type, n, size):
    assert len(group(type, n)) == size == len(bfs_lengths(type, n))


@pytest.mark.parametrize("type,n", GROUPS)
def test_length_is_cayley_distance(type, n):
    dist = bfs_lengths(type, n)
    for w in group(type, n):
        assert w.length() == dist[w.images]


@pytest.mark.parametrize("type,n", GROUPS)
def test_length_changes_by_one(type, n):
    lo = 0 if type == "C" else 1
    for w in group(type, n):
        for i in range(lo, n):
            assert abs(w.apply_generator(i).length() - w.length()) == 1


@pytest.mark.parametrize("type,n", [("A", 3), ("A", 4), ("C", 2), ("C", 3)])
def test_longest_element(type, n):
    w0 = longest(type, n)
    assert w0.length() == max(w.length() for w in group(type, n))
    assert (w0 * w0).is_identity()


def test_reduced_words_of_longest_in_rank_two():
    assert set(longest("C", 2).reduced_words()) == {(0, 1, 0, 1), (1, 0, 1, 0)}


@pytest.mark.parametrize("type,n", [("A", 3), ("C", 2), ("C", 3)])
def test_reduced_words_match_exhaustive_search(type, n):
    for w in group(type, n):
        words = list(w.reduced_words())
        assert words == exhaustive_reduced_words(type, n, w.images)
        assert w.canonical_word() == words[0]
        assert all(w.is_reduced_word(word) for word in words)


def test_identity_has_only_the_empty_word():
    assert list(identity("C", 3).reduced_words()) == [()]
    assert identity("C", 0).canonical_word() == ()


@pytest.mark.parametrize("type,n", GROUPS)
def test_canonical_word_round_trip(type, n):
    cls = SignedPermutation if type == "C" else Permutation
    for w in group(type, n):
        word = w.canonical_word()
        assert len(word) == w.length()
        assert cls.from_word(n, word) == w


@given(st.integers(2, 4), st.data())
def test_inverse_and_product(n, data):
    ws = group("C", n)
    v = data.draw(st.sampled_from(ws))
    w = data.draw(st.sampled_from(ws))
    assert (v * v.inverse()).is_identity()
    assert (v * w).inverse() == w.inverse() * v.inverse()
    assert (v * w)(1) == v(w(1))


def test_embedding_fixtures():
    assert SignedPermutation.identity(1).embed(2).images == (1, -2)
    for m in range(1, 5):
        for n in range(m, 5):
            assert longest("C", m).embed(n) == longest("C", n)
    assert Permutation.identity(1).embed(3).images == (3, 2, 1)
    assert Permutation.identity(1).embed(2).embed(3) == Permutation.identity(1).embed(3)
    assert nu("A", 2, 3).images == (2, 3, 1)


@pytest.mark.parametrize("type", ["A", "C"])
def test_embedding_is_a_twisted_homomorphism(type):
    # e(vw) = e(v) nu^-1 e(w), where nu = e(id)
    m, n = (2, 3) if type == "C" else (3, 4)
    twist = nu(type, m, n).inverse()
    for v in group(type, m):
        for w in group(type, m):
            assert (v * w).embed(n) == v.embed(n) * twist * w.embed(n)


@pytest.mark.parametrize("type,m,n", [("A", 2, 3), ("A", 3, 4), ("C", 2, 3), ("C", 1, 3)])
def test_embedding_preserves_length_differences(type, m, n):
    id_len = identity(type, m).embed(n).length()
    for w in group(type, m):
        assert w.embed(n).length() - id_len == w.length()


def test_embedding_into_smaller_rank_fails():
    with pytest.raises(WeylError):
        SignedPermutation.identity(3).embed(2)


def test_g_bijection():
    assert g_bijection(2, 1) == -2
    assert g_bijection(2, 4) == 2
    for n in range(1, 5):
        values = [g_bijection(n, k) for k in range(1, 2 * n + 1)]
        assert values == sorted(values)
        assert sorted(abs(v) for v in values) == sorted(list(range(1, n + 1)) * 2)
    with pytest.raises(WeylError):
        g_bijection(2, 5)


def test_parsing():
    assert parse_element("-1,2") == SignedPermutation((-1, 2))
    assert parse_element("~2,1") == SignedPermutation((-2, 1))
    assert parse_element("2,1", "A", 3) == Permutation((2, 1, 3))
    assert parse_element("(1 2)", "A", 3) == Permutation((2, 1, 3))
    assert parse_element("(1 -1)", "C", 2) == SignedPermutation((-1, 2))
    assert parse_element("id", "C", 2).is_identity()
    assert parse_word("0, 1,0") == (0, 1, 0)
    assert parse_word("") == ()
    with pytest.raises(WeylError):
        parse_element("1,x")
    with pytest.raises(WeylError):
        parse_element("1,1", "A")
    with pytest.raises(WeylError):
        parse_word("a")


def test_word_checks():
    assert check_word([0, 1], 2, "C") == (0, 1)
    with pytest.raises(WeylError):
        check_word([0], 2, "A")
    with pytest.raises(WeylError):
        check_word([2], 2, "C")


def test_descents_and_printing():
    w = SignedPermutation((-2, 1))
    assert w.descents("right") == [i for i in (0, 1) if w.apply_generator(i).length() < w.length()]
    assert str(SignedPermutation((-1, 2))) == "(1̅, 2)"
    assert w.one_line() == "-2,1"
