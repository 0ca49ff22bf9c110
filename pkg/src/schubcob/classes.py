"""Fundamental classes of flag subbundles, Bott-Samelson push-forwards and
connective K-theory Schubert classes, as polynomial or series
representatives in ``x_1..x_n`` and ``y_1..y_n``.

Two conventions for the second alphabet are in use.  Bott-Samelson and
Schubert classes are produced in the *dual* convention, built from factors
``F(x_i, y_j)``; the geometric (flag-class) convention uses ``F(x_i, chi(y_j))``
and is reached with :func:`to_geometric`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .divdiff import apply_word
from .fgl import FormalGroupLaw, make_additive, make_multiplicative, make_universal
from .ring import IntegerRing, RationalRing, SeriesError, TruncatedSeries, specialize_params, substitute
from .weyl import Permutation, SignedPermutation, check_word, longest

HEADROOM_ENV = "SCHUBCOB_HEADROOM"


class ClassError(SeriesError):
    pass


def xname(i: int) -> str:
    return f"x{i}"


def yname(j: int) -> str:
    return f"y{j}"


@dataclass(frozen=True)
class Label:
    """What a class is the class of: ``flag`` (with ``m``), ``bott-samelson``
    (with a word) or ``schubert`` (with a Weyl group element and its word)."""

    kind: str
    m: int | None = None
    word: tuple[int, ...] | None = None
    element: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.m is not None:
            out["m"] = self.m
        if self.element is not None:
            out["element"] = list(self.element)
        if self.word is not None:
            out["word"] = list(self.word)
        return out


@dataclass(frozen=True)
class ClassExpression:
    law: FormalGroupLaw
    type: str
    n: int
    label: Label
    value: TruncatedSeries
    y_convention: str = "dual"
    factors: tuple[tuple[str, str], ...] | None = field(default=None, compare=False)

    @property
    def theory(self) -> str:
        return self.law.name

    def degree(self) -> int | None:
        """Combined degree (geometric plus coefficient grading), None if zero."""
        g = self.value.grades()
        if len(g) != 1:
            return None
        return g.pop()

    def to_dict(self) -> dict:
        return {"schema": 1, "theory": self.theory, "type": self.type, "n": self.n,
                "label": self.label.to_dict(), "y_convention": self.y_convention,
                "value": self.value.to_dict(), "expanded": str(self.value)}

    def latex(self) -> str:
        if self.factors is not None:
            return factored_latex(self.law, self.factors)
        return self.value.latex()


def default_headroom() -> int:
    raw = os.environ.get(HEADROOM_ENV)
    if raw is None:
        return 0
    try:
        value = int(raw)
    except ValueError:
        raise ClassError(f"{HEADROOM_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ClassError(f"{HEADROOM_ENV} must be nonnegative")
    return value


def top_degree(type: str, n: int) -> int:
    """Number of factors of the smallest Schubert class."""
    return n * n if type == "C" else n * (n - 1) // 2


def default_trunc(type: str, n: int, theory: str = "multiplicative", word_length: int | None = None) -> int:
    """Truncation degree for class computations at rank ``n``.

    Type C uses ``n^2 + n``.  In type A the multiplicative classes are
    polynomials of degree at most ``n(n-1)``; the default keeps them exact
    after ``word_length`` operators (all of them if not given).
    """
    if type == "C":
        d = n * n + n
    elif theory == "multiplicative":
        top = top_degree("A", n)
        d = n * (n - 1) + (top if word_length is None else word_length)
    else:
        d = top_degree("A", n) + n
    return max(d, 1) + default_headroom()


def _check_type(type: str):
    if type not in ("A", "C"):
        raise ClassError(f"unknown type {type!r}; expected A or C")


def _vars(prefix: str, k: int, ring, d):
    return [TruncatedSeries.variable(f"{prefix}{i}", ring, d) for i in range(1, k + 1)]


def _product(factors: list[TruncatedSeries], ring, d, names) -> TruncatedSeries:
    """Product at truncation ``d``.  Partial products are cut to the degrees
    that can still reach ``d`` once the remaining factors' lowest degrees are added."""
    lows = [f.min_degree() if not f.is_zero() else 0 for f in factors]
    if any(f.is_zero() for f in factors):
        return TruncatedSeries.zero(ring, d).with_variables(names)
    rest = sum(lows)
    out = TruncatedSeries.one(ring, d).with_variables(names)
    for f, low in zip(factors, lows):
        rest -= low
        out = _cut(out * _cut(f, d - rest - out.min_degree()), d - rest)
    return out


def _cut(f: TruncatedSeries, degree: int) -> TruncatedSeries:
    """Drop terms above ``degree`` but keep the truncation."""
    if degree >= f.trunc:
        return f
    return f.truncate(max(degree, 0)).extend(f.trunc)


def _all_names(n: int) -> list[str]:
    return [xname(i) for i in range(1, n + 1)] + [yname(j) for j in range(1, n + 1)]


def _law_at(law: FormalGroupLaw, d: int) -> FormalGroupLaw:
    if law.theory == "universal" and d - 1 > law.ring.bound:
        return make_universal(d)
    return law.at(d)


def _check_integral(law: FormalGroupLaw, value: TruncatedSeries):
    if law.integral and not value.is_integral():
        raise ClassError(f"expected integer coefficients over {law.name}, got {value}")


# -- flag subbundle classes ---------------------------------------------------


def flag_pairs_A(n: int, m: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n - m + 1) for i in range(1, n - j + 1)]


def flag_pairs_C(n: int, m: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    first = [(i, j) for j in range(1, n - m + 1) for i in range(1, n - j + 1)]
    second = [(i, j) for j in range(1, n - m + 1) for i in range(1, n + 2 - j)]
    return first, second


@lru_cache(maxsize=64)
def _generic_flag_factor(law, d, dual_x: bool):
    ring = law.ring
    x = TruncatedSeries.variable("u", ring, d)
    y = TruncatedSeries.variable("v", ring, d)
    if dual_x:
        x = law.minus(x)
    return law.sum(x, law.minus(y))


def _flag_factor(law, d, i, j, dual_x: bool):
    return _generic_flag_factor(law, d, dual_x).rename({"u": xname(i), "v": yname(j)})


def flag_class_A(law: FormalGroupLaw, n: int, m: int, trunc: int | None = None) -> ClassExpression:
    """``prod F(x_i, chi(y_j))`` over ``i + j <= n``, ``j <= n - m``."""
    if not 1 <= m <= n:
        raise ClassError(f"need 1 <= m <= n, got m={m}, n={n}")
    pairs = flag_pairs_A(n, m)
    d = trunc if trunc is not None else max(len(pairs), 1)
    law = _law_at(law, d)
    value = _product([_flag_factor(law, d, i, j, False) for i, j in pairs], law.ring, d, _all_names(n))
    factors = tuple((xname(i), yname(j)) for i, j in pairs)
    return ClassExpression(law, "A", n, Label("flag", m=m), value, "geometric", factors)


def flag_class_C(law: FormalGroupLaw, n: int, m: int, trunc: int | None = None) -> ClassExpression:
    """``prod F(x_i, chi(y_j)) * prod F(chi(x_i), chi(y_j))`` with the index
    ranges ``i + j <= n`` and ``i + j <= n + 1`` respectively, ``j <= n - m``."""
    if not 0 <= m <= n:
        raise ClassError(f"need 0 <= m <= n, got m={m}, n={n}")
    first, second = flag_pairs_C(n, m)
    d = trunc if trunc is not None else max(len(first) + len(second), 1)
    law = _law_at(law, d)
    fs = [_flag_factor(law, d, i, j, False) for i, j in first]
    fs += [_flag_factor(law, d, i, j, True) for i, j in second]
    value = _product(fs, law.ring, d, _all_names(n))
    factors = tuple((xname(i), yname(j)) for i, j in first)
    factors += tuple(("-" + xname(i), yname(j)) for i, j in second)
    return ClassExpression(law, "C", n, Label("flag", m=m), value, "geometric", factors)


def flag_class(law: FormalGroupLaw, type: str, n: int, m: int, trunc: int | None = None) -> ClassExpression:
    _check_type(type)
    return (flag_class_C if type == "C" else flag_class_A)(law, n, m, trunc)


def step_product_A(law: FormalGroupLaw, n: int, m: int, d: int) -> TruncatedSeries:
    """``prod_(i=1..m) F(x_i, chi(y_(n-m)))``: push-forward of 1 from the next level."""
    law = _law_at(law, d)
    fs = [_flag_factor(law, d, i, n - m, False) for i in range(1, m + 1)]
    return _product(fs, law.ring, d, _all_names(n))


def step_product_C(law: FormalGroupLaw, n: int, m: int, d: int) -> TruncatedSeries:
    """``prod_(i=1..m) F(x_i, chi(y_(n-m))) * prod_(i=1..m+1) F(chi(x_i), chi(y_(n-m)))``."""
    law = _law_at(law, d)
    fs = [_flag_factor(law, d, i, n - m, False) for i in range(1, m + 1)]
    fs += [_flag_factor(law, d, i, n - m, True) for i in range(1, m + 2)]
    return _product(fs, law.ring, d, _all_names(n))


def step_product(law: FormalGroupLaw, type: str, n: int, m: int, d: int) -> TruncatedSeries:
    _check_type(type)
    return (step_product_C if type == "C" else step_product_A)(law, n, m, d)


def pushforward_multiply(P: TruncatedSeries, cls: ClassExpression) -> TruncatedSeries:
    """Image of ``P`` (in ``x_1..x_m`` and the ``y``'s) under the push-forward
    from the level-``m`` flag subbundle: multiplication by its class."""
    if cls.label.kind != "flag":
        raise ClassError("push-forward needs a flag subbundle class")
    m = cls.label.m
    for v in P.used_variables():
        if v.startswith("x") and int(v[1:]) > m:
            raise ClassError(f"{v} does not live on the level-{m} subbundle")
    return P * cls.value


def telescoping_residual(law: FormalGroupLaw, type: str, n: int, m: int,
                         headroom: int = 2) -> TruncatedSeries:
    """``flag(n, m) - step(m) * flag(n, m + 1)`` at a truncation just above the class degree."""
    base = flag_class(law, type, n, m, trunc=1)
    d = len(base.factors) + headroom
    lhs = flag_class(law, type, n, m, trunc=d).value
    lower = flag_class(law, type, n, m + 1, trunc=d)
    step = step_product(lower.law, type, n, m, d)
    return lhs - pushforward_multiply(step, lower)


# -- Bott-Samelson and Schubert classes ----------------------------------------


def base_class(law: FormalGroupLaw, type: str, n: int, d: int) -> TruncatedSeries:
    """Smallest Schubert class in the dual convention:
    ``prod_(i+j<=n) F(x_i, y_j)``, times ``prod_(i+j<=n+1) F(chi(x_i), y_j)`` in type C."""
    _check_type(type)
    law = _law_at(law, d)
    ring = law.ring
    xs = {i: TruncatedSeries.variable(xname(i), ring, d) for i in range(1, n + 1)}
    ys = {j: TruncatedSeries.variable(yname(j), ring, d) for j in range(1, n + 1)}
    fs = [law.sum(xs[i], ys[j]) for i in range(1, n + 1) for j in range(1, n + 1) if i + j <= n]
    if type == "C":
        cx = {i: law.minus(xs[i]) for i in xs}
        fs += [law.sum(cx[i], ys[j]) for i in range(1, n + 1) for j in range(1, n + 1)
               if i + j <= n + 1]
    return _product(fs, ring, d, _all_names(n))


def _trunc_for(law, type, n, word, trunc):
    if trunc is not None:
        d = trunc
    else:
        d = default_trunc(type, n, law.theory, len(word))
    need = top_degree(type, n)
    if d < need:
        raise ClassError(f"truncation {d} is below the minimum {need} for type {type}, n={n}")
    if d - len(word) < 0:
        raise ClassError(f"truncation {d} leaves no precision after {len(word)} operators")
    return d


def bott_samelson(law: FormalGroupLaw, type: str, n: int, word, trunc: int | None = None
                  ) -> ClassExpression:
    """``A_I`` applied to the smallest class; ``i_1`` acts first.

    The result is truncated at ``trunc - len(word)``.
    """
    _check_type(type)
    if n < 1:
        raise ClassError("rank must be at least 1")
    word = check_word(word, n, type)
    d = _trunc_for(law, type, n, word, trunc)
    law = _law_at(law, d)
    value = apply_word(law, type, n, word, base_class(law, type, n, d))
    _check_integral(law, value)
    return ClassExpression(law, type, n, Label("bott-samelson", word=word), value)


def _element_class(type):
    return SignedPermutation if type == "C" else Permutation


def schubert_word(w) -> tuple[int, ...]:
    """Canonical word ``I`` with ``s_I = w_0 w``."""
    return (longest(w.type, w.n) * w).canonical_word()


def schubert(law: FormalGroupLaw, w, trunc: int | None = None, check_words: bool = False
             ) -> ClassExpression:
    """Schubert class of ``w`` for an additive or multiplicative law.

    With ``check_words`` every reduced word of ``w_0 w`` is used and the
    results are required to agree.
    """
    if law.theory == "universal":
        raise ClassError("Schubert classes are only computed for additive or multiplicative laws; "
                         "use bott_samelson for a chosen word")
    type, n = w.type, w.n
    word = schubert_word(w)
    d = _trunc_for(law, type, n, word, trunc)
    law = _law_at(law, d)
    base = base_class(law, type, n, d)
    value = apply_word(law, type, n, word, base)
    if check_words:
        u = longest(type, n) * w
        for other in u.reduced_words():
            if other == word:
                continue
            if apply_word(law, type, n, other, base) != value:
                raise ClassError(f"reduced words {word} and {other} give different classes")
    _check_integral(law, value)
    cls = ClassExpression(law, type, n, Label("schubert", word=word, element=w.images), value)
    deg = cls.degree()
    if deg is not None and deg != w.length():
        raise ClassError(f"class of {w} has degree {deg}, expected length {w.length()}")
    return cls


def schubert_ck(n: int, w, beta=None, trunc: int | None = None, check_words: bool = False
                ) -> ClassExpression:
    """Connective K-theory Schubert class (symbolic ``beta`` unless given)."""
    if w.n != n:
        raise ClassError(f"element {w} does not have rank {n}")
    d = trunc if trunc is not None else default_trunc(w.type, n, "multiplicative",
                                                       len(schubert_word(w)))
    return schubert(make_multiplicative(d, beta), w, d, check_words)


def specialize(cls: ClassExpression, beta_value) -> ClassExpression:
    """Set ``beta`` to a number: 0 gives Chow classes, -1 K-theory classes."""
    if beta_value in (None, "sym"):
        return cls
    if cls.law.theory != "multiplicative" or cls.law.beta is not None:
        raise ClassError("specialize needs a class over the symbolic beta ring")
    from fractions import Fraction
    b = Fraction(beta_value)
    ring = IntegerRing if b.denominator == 1 else RationalRing
    value = specialize_params(cls.value, {"beta": b}, ring)
    d = value.trunc
    law = make_additive(d) if b == 0 else make_multiplicative(d, b)
    return replace(cls, law=law, value=value)


def substitute_geometric(cls: ClassExpression, bindings: dict) -> TruncatedSeries:
    """Replace ``y`` variables, e.g. by ``chi`` of first Chern classes."""
    for name in bindings:
        if not name.startswith("y"):
            raise ClassError(f"only y variables can be bound, got {name}")
    return substitute(cls.value, bindings)


def chi_bindings(law: FormalGroupLaw, n: int, d: int, prefix: str = "y") -> dict:
    chi = law.at(d).chi
    return {yname(j): chi.rename({"u": f"{prefix}{j}"}) for j in range(1, n + 1)}


def to_geometric(cls: ClassExpression) -> ClassExpression:
    """Dual convention to geometric: ``y_j -> chi(y_j)``."""
    if cls.y_convention == "geometric":
        return cls
    d = cls.value.trunc
    value = substitute(cls.value, chi_bindings(cls.law, cls.n, d))
    return replace(cls, value=value, y_convention="geometric", factors=None)


def shift_y(f: TruncatedSeries, shift: int) -> TruncatedSeries:
    """Rename ``y_j`` to ``y_(j+shift)``."""
    used = sorted((v for v in f.variables if v.startswith("y")), key=lambda v: -int(v[1:]))
    for v in used:
        f = f.rename({v: yname(int(v[1:]) + shift)})
    return f


def schubert_embedded(law: FormalGroupLaw, type: str, n: int, m: int, wprime,
                      word=None, trunc: int | None = None) -> ClassExpression:
    """Class of the image of ``w'`` under the embedding of rank ``m`` into rank ``n``.

    Computed as the rank-``m`` class in ``x_1..x_m`` with its second alphabet
    moved to ``y_(n-m+1)..y_n``, times the level-``m`` flag class.  The
    result is in the geometric convention.  For a universal law a word for
    ``w'`` must be supplied, giving a Bott-Samelson class.
    """
    _check_type(type)
    if not 0 <= m < n:
        raise ClassError(f"need 0 <= m < n, got m={m}, n={n}")
    if m == 0:
        if type != "C":
            raise ClassError("type A needs m >= 1")
    else:
        if wprime.n != m or wprime.type != type:
            raise ClassError(f"{wprime} is not an element of rank {m}, type {type}")
    d = trunc if trunc is not None else default_trunc(type, n, law.theory)
    law = _law_at(law, d)
    flag = flag_class(law, type, n, m, trunc=d)
    if m == 0:
        value = flag.value
        element = ()
    else:
        if word is not None:
            small = bott_samelson(law, type, m, word, trunc=d + len(tuple(word)))
        else:
            word_m = schubert_word(wprime)
            small = schubert(law, wprime, trunc=d + len(word_m))
        geo = to_geometric(small).value
        value = shift_y(geo, n - m).with_variables(_all_names(n)) * flag.value
        element = wprime.embed(n).images
    if word is not None:
        label = Label("bott-samelson", word=tuple(word), element=element)
    else:
        label = Label("schubert", element=element)
    return ClassExpression(law, type, n, label, value, "geometric")


# -- LaTeX ------------------------------------------------------------------


def _ltx(name: str) -> str:
    neg = name.startswith("-")
    name = name.lstrip("-")
    base = f"{name[0]}_{{{name[1:]}}}"
    return base, neg


def factored_latex(law: FormalGroupLaw, factors) -> str:
    if not factors:
        return "1"
    parts = []
    for xn, yn in factors:
        x, xneg = _ltx(xn)
        y, _ = _ltx(yn)
        if law.theory == "additive":
            parts.append(f"({'-' if xneg else ''}{x} - {y})")
        elif law.theory == "multiplicative":
            lead = "\\ominus " if xneg else ""
            parts.append(f"({lead}{x} \\ominus {y})")
        else:
            xx = rf"\chi({x})" if xneg else x
            parts.append(rf"F({xx}, \chi({y}))")
    return " ".join(parts)
