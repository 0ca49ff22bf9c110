import pytest
import sympy as sp

from schubcob.classes import (HEADROOM_ENV, ClassError, base_class, bott_samelson,
                              default_trunc, flag_class, flag_pairs_A, schubert, schubert_ck,
                              schubert_embedded, schubert_word, specialize, step_product,
                              substitute_geometric, telescoping_residual, to_geometric)
from schubcob.fgl import make_additive, make_law, make_multiplicative, make_universal, to_multiplicative
from schubcob.oracle import BETA, double_grothendieck, double_schubert, symbols, to_sympy
from schubcob.ring import TruncatedSeries
from schubcob.verify import ck_words_suite, flag_degree
from schubcob.weyl import Permutation, SignedPermutation, elements, identity, longest

THEORIES = ["additive", "multiplicative", "universal"]


def chow(n, w):
    return specialize(schubert_ck(n, w), 0)


def negate_y(expr, n):
    return expr.subs({y: -y for y in symbols("y", n)}, simultaneous=True)


# -- small fixtures ---------------------------------------------------------------------------------


def test_rank_one_top_class():
    assert str(chow(1, longest("C", 1)).value) == "-x1 + y1"
    ck = schubert_ck(1, longest("C", 1), trunc=2)
    assert str(ck.value) == "-x1 + y1 - beta*x1^2 + beta*x1*y1"
    assert str(specialize(ck, -1).value) == "-x1 + y1 + x1^2 - x1*y1"


def test_rank_two_reflection():
    s0 = SignedPermutation((-1, 2))
    assert schubert_word(s0) == (1, 0, 1)
    assert str(chow(2, s0).value) == "-x1 - x2 + y1 + y2"


@pytest.mark.parametrize("type,n", [("A", 2), ("A", 3), ("C", 1), ("C", 2)])
def test_identity_class_is_one(type, n):
    cls = schubert(make_multiplicative(1), identity(type, n))
    assert cls.value.scalar() == 1 and len(cls.value) == 1


def test_base_class_rank_one():
    law = make_additive(3)
    assert str(base_class(law, "C", 1, 3)) == "-x1 + y1"
    assert str(base_class(law, "A", 2, 3)) == "x1 + y1"


# -- structure -------------------------------------------------------------------------------------------


@pytest.mark.parametrize("type,n", [("C", 2), ("A", 3)])
def test_degree_equals_length(type, n):
    for w in elements(type, n):
        cls = schubert_ck(n, w)
        assert cls.value.is_homogeneous()
        assert cls.degree() == w.length()


def test_degree_equals_length_rank_three_short_words():
    for w in elements("C", 3):
        if len(schubert_word(w)) <= 6:
            assert schubert_ck(3, w).degree() == w.length()


def test_word_independence_rank_two():
    suite = ck_words_suite(2)
    assert suite["ok"] and len(suite["checks"]) == 8


def test_word_independence_sample_rank_three():
    for images in [(1, -2, 3), (2, -1, -3), (-3, 1, 2)]:
        schubert_ck(3, SignedPermutation(images), check_words=True)


@pytest.mark.parametrize("type,n", [("C", 2), ("A", 3)])
def test_ck_classes_are_integral(type, n):
    for w in elements(type, n):
        assert schubert_ck(n, w).value.is_integral()


# -- comparison with classical polynomials -------------------------------------------------------


@pytest.mark.parametrize("w", list(Permutation.elements(3)), ids=lambda w: w.one_line())
def test_chow_classes_are_double_schubert_polynomials(w):
    got = negate_y(to_sympy(chow(3, w).value), 3)
    assert sp.expand(got - double_schubert(w.images)) == 0


def test_schubert_polynomial_of_first_reflection():
    x1, x2, _ = symbols("x", 3)
    y1, y2, _ = symbols("y", 3)
    assert double_schubert((2, 1, 3)) == x1 - y1
    assert sp.expand(double_schubert((1, 3, 2)) - (x1 + x2 - y1 - y2)) == 0


@pytest.mark.parametrize("w", list(Permutation.elements(3)), ids=lambda w: w.one_line())
def test_ck_classes_are_grothendieck_polynomials(w):
    got = to_sympy(schubert_ck(3, w).value).subs(BETA, -BETA)
    assert sp.expand(got - double_grothendieck(w.images)) == 0


# -- flag classes ---------------------------------------------------------------------------------------


def test_flag_class_degrees():
    law = make_additive(1)
    for n in range(1, 5):
        for m in range(1, n + 1):
            cls = flag_class(law, "A", n, m)
            assert cls.degree() == len(flag_pairs_A(n, m)) == flag_degree("A", n, m)
        for m in range(0, n + 1):
            assert flag_class(law, "C", n, m).degree() == flag_degree("C", n, m)


def test_flag_class_top_level_is_one():
    assert str(flag_class(make_additive(1), "A", 2, 2).value) == "1"
    assert str(flag_class(make_additive(1), "C", 3, 3).value) == "1"


def test_flag_class_small_values():
    assert str(flag_class(make_additive(1), "A", 2, 1).value) == "x1 - y1"
    assert str(flag_class(make_additive(1), "C", 1, 0).value) == "-x1 - y1"


def test_flag_class_range_errors():
    with pytest.raises(ClassError):
        flag_class(make_additive(1), "A", 2, 0)
    with pytest.raises(ClassError):
        flag_class(make_additive(1), "C", 2, 3)
    with pytest.raises(ClassError):
        flag_class(make_additive(1), "B", 2, 1)


@pytest.mark.parametrize("theory", THEORIES)
def test_telescoping_small_ranks(theory):
    law = make_law(theory, 1)
    for n in range(1, 4):
        for m in range(1, n):
            assert telescoping_residual(law, "A", n, m).is_zero()
        for m in range(0, n):
            assert telescoping_residual(law, "C", n, m).is_zero()


def test_step_product_shape():
    law = make_additive(4)
    assert str(step_product(law, "A", 3, 2, 4)) == "x1*x2 - x1*y1 - x2*y1 + y1^2"


def test_flag_latex_is_factored():
    cls = flag_class(make_universal(1), "A", 3, 1)
    assert cls.latex() == r"F(x_{1}, \chi(y_{1})) F(x_{2}, \chi(y_{1})) F(x_{1}, \chi(y_{2}))"
    assert flag_class(make_additive(1), "A", 2, 1).latex() == "(x_{1} - y_{1})"


# -- conventions and conversions -------------------------------------------------------------


def test_geometric_substitutions():
    cls = schubert(make_additive(2), longest("C", 1))
    assert str(substitute_geometric(cls, {"y1": 0})) == "-x1"
    yhat = TruncatedSeries.variable("yhat1", cls.value.ring, 2)
    assert str(substitute_geometric(cls, {"y1": -yhat})) == "-x1 - yhat1"
    with pytest.raises(ClassError):
        substitute_geometric(cls, {"x1": 0})


def test_chi_round_trip_recovers_class():
    cls = schubert_ck(2, SignedPermutation((-1, 2)))
    law = cls.law.at(cls.value.trunc)
    chi = law.chi
    there = substitute_geometric(cls, {f"y{j}": chi.rename({"u": f"z{j}"}) for j in (1, 2)})
    back = there.subs({f"z{j}": chi.rename({"u": f"y{j}"}) for j in (1, 2)})
    assert back == cls.value


def test_to_geometric_marks_convention():
    cls = to_geometric(schubert_ck(1, longest("C", 1)))
    assert cls.y_convention == "geometric"
    assert to_geometric(cls) is cls


def test_specialize_requires_symbolic_beta():
    cls = chow(1, longest("C", 1))
    with pytest.raises(ClassError):
        specialize(cls, -1)
    assert specialize(schubert_ck(1, longest("C", 1)), "sym").law.beta is None


# -- general theories ----------------------------------------------------------------------------


def test_universal_refuses_schubert_classes():
    with pytest.raises(ClassError):
        schubert(make_universal(4), longest("C", 1))


@pytest.mark.parametrize("type,n,word", [("A", 3, (1, 2)), ("C", 2, (0, 1)), ("C", 2, (1, 0, 1))])
def test_universal_bott_samelson_specializes(type, n, word):
    d = default_trunc(type, n, "universal", len(word))
    uni = bott_samelson(make_universal(d), type, n, word, trunc=d)
    mult = bott_samelson(make_multiplicative(d), type, n, word, trunc=d)
    assert to_multiplicative(uni.value) == mult.value
    assert uni.value.is_homogeneous()


def test_bott_samelson_matches_schubert_for_reduced_word():
    w = SignedPermutation((2, -1))
    word = schubert_word(w)
    d = default_trunc("C", 2)
    assert bott_samelson(make_multiplicative(d), "C", 2, word, trunc=d).value == schubert_ck(2, w, trunc=d).value


def test_truncation_below_minimum():
    with pytest.raises(ClassError, match="minimum 4"):
        schubert_ck(2, longest("C", 2), trunc=3)


def test_headroom_environment(monkeypatch):
    base = default_trunc("C", 2)
    monkeypatch.setenv(HEADROOM_ENV, "3")
    assert default_trunc("C", 2) == base + 3
    monkeypatch.setenv(HEADROOM_ENV, "x")
    with pytest.raises(ClassError):
        default_trunc("C", 2)


def test_serialized_class():
    data = chow(1, longest("C", 1)).to_dict()
    assert data["schema"] == 1
    assert data["expanded"] == "-x1 + y1"
    assert data["label"] == {"kind": "schubert", "element": [-1], "word": []}
    assert set(data) == {"schema", "theory", "type", "n", "label", "y_convention", "value", "expanded"}


# -- embedded classes ----------------------------------------------------------------------------


def _embedded_matches_direct(type, m, n):
    law = make_multiplicative(1)
    for wp in elements(type, m):
        emb = schubert_embedded(law, type, n, m, wp)
        w = wp.embed(n)
        d = emb.value.trunc
        direct = to_geometric(schubert(law, w, trunc=d + len(schubert_word(w)))).value
        t = min(d, direct.trunc)
        assert emb.value.truncate(t) == direct.truncate(t), wp


@pytest.mark.parametrize("type,m,n", [("C", 1, 2), ("A", 2, 3), ("C", 2, 3), ("A", 3, 4)])
def test_embedded_classes_match_direct_computation(type, m, n):
    _embedded_matches_direct(type, m, n)


def test_embedded_identity_is_flag_class():
    law = make_multiplicative(1)
    emb = schubert_embedded(law, "C", 3, 2, identity("C", 2))
    assert emb.value == flag_class(law, "C", 3, 2, trunc=emb.value.trunc).value


def test_embedded_rank_mismatch():
    with pytest.raises(ClassError):
        schubert_embedded(make_multiplicative(1), "C", 3, 2, identity("C", 1))
