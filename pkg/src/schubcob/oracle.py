"""Slow reference computations used by the test suite.

Everything here runs on sympy expressions and plain tuples/dicts; nothing is
shared with the truncated-series engine except the final conversion of its
outputs for comparison.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import product

import sympy as sp

from .ring import TruncatedSeries

BETA = sp.Symbol("beta")


class OracleFailure(AssertionError):
    pass


def symbols(prefix: str, n: int):
    return [sp.Symbol(f"{prefix}{i}") for i in range(1, n + 1)]


def to_sympy(f: TruncatedSeries) -> sp.Expr:
    out = sp.Integer(0)
    for mono, c in f.items():
        term = sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sp.Integer(c)
        for name, e in mono.items():
            term *= sp.Symbol(name) ** e
        out += term
    return out


def truncate_expr(expr: sp.Expr, gens, d: int) -> sp.Expr:
    """Drop terms of total degree ``> d`` in ``gens``."""
    poly = sp.Poly(sp.expand(expr), *gens)
    return sp.Add(*[c * sp.Mul(*[g ** e for g, e in zip(gens, m)])
                    for m, c in poly.terms() if sum(m) <= d])


# -- naive arithmetic on {exponent tuple: Fraction} dicts ------------------------


def naive_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def naive_mul(a: dict, b: dict, d: int) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            if sum(k) <= d:
                out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


# -- rational functions -------------------------------------------------------


class RationalFunction:
    """``numerator / denominator`` of sympy polynomials, compared by cross-multiplication."""

    def __init__(self, numerator, denominator=1):
        self.numerator = sp.expand(numerator)
        self.denominator = sp.expand(denominator)
        if self.denominator == 0:
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def of(cls, expr):
        num, den = sp.fraction(sp.cancel(sp.together(expr)))
        return cls(num, den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return sp.expand(self.numerator * other.denominator - other.numerator * self.denominator) == 0

    def is_polynomial(self, gens) -> bool:
        return sp.Poly(self.denominator, *gens).is_ground

    def as_polynomial(self, gens):
        if not self.is_polynomial(gens):
            raise OracleFailure(f"denominator {self.denominator} does not clear")
        return sp.expand(self.numerator / self.denominator)

    def agrees_with_series(self, series_expr, gens, d: int) -> bool:
        """Whether a series truncated at ``d`` matches this function through degree ``d``."""
        lhs = truncate_expr(series_expr * self.denominator, gens, d)
        rhs = truncate_expr(self.numerator, gens, d)
        return sp.expand(lhs - rhs) == 0


def law_expressions(theory: str, beta=BETA):
    """``(F, chi)`` as exact sympy functions; only additive and multiplicative laws."""
    if theory == "additive":
        return (lambda u, v: u + v), (lambda u: -u)
    if theory == "multiplicative":
        return (lambda u, v: u + v - beta * u * v), (lambda u: -u / (1 - beta * u))
    raise OracleFailure(f"no exact rational model for the {theory} law")


def rational_divided_difference(i: int, f, theory: str, n: int, beta=BETA) -> RationalFunction:
    """The operator as a literal sum of two fractions, simplified by sympy."""
    F, chi = law_expressions(theory, beta)
    xs = symbols("x", n)
    if i == 0:
        x = xs[0]
        cx = chi(x)
        expr = f / F(cx, cx) + f.subs(x, cx) / F(x, x)
    else:
        a, b = xs[i - 1], xs[i]
        swapped = f.subs({a: b, b: a}, simultaneous=True)
        expr = f / F(a, chi(b)) + swapped / F(b, chi(a))
    return RationalFunction.of(expr)


# -- permutations as tuples ------------------------------------------------------


def _right_generator(w: tuple, i: int) -> tuple:
    w = list(w)
    if i == 0:
        w[0] = -w[0]
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def _compose(v: tuple, w: tuple) -> tuple:
    def ev(p, k):
        return p[k - 1] if k > 0 else -p[-k - 1]
    return tuple(ev(v, k) for k in w)


def bfs_lengths(type: str, n: int) -> dict[tuple, int]:
    """Distance from the identity in the Cayley graph, for every element."""
    gens = range(0 if type == "C" else 1, n)
    start = tuple(range(1, n + 1))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in gens:
            v = _right_generator(w, i)
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


def word_element(type: str, n: int, word) -> tuple:
    w = tuple(range(1, n + 1))
    for i in word:
        w = _right_generator(w, i)
    return w


def exhaustive_reduced_words(type: str, n: int, element: tuple) -> list[tuple]:
    """Every word of the right length that multiplies out to ``element``."""
    length = bfs_lengths(type, n)[tuple(element)]
    gens = range(0 if type == "C" else 1, n)
    return sorted(word for word in product(gens, repeat=length)
                  if word_element(type, n, word) == tuple(element))


# -- classical double Schubert and Grothendieck polynomials -----------------------


def _divided(f, xs, i, isobaric_beta=None):
    a, b = xs[i - 1], xs[i]
    swapped = f.subs({a: b, b: a}, simultaneous=True)
    if isobaric_beta is None:
        num = f - swapped
    else:
        num = (1 + isobaric_beta * b) * f - (1 + isobaric_beta * a) * swapped
    q, r = sp.div(sp.expand(num), a - b, *xs)
    if r != 0:
        raise OracleFailure(f"{num} is not divisible by {a - b}")
    return sp.expand(q)


def _along_reduced_words(w: tuple, n: int, top, step) -> sp.Expr:
    """Apply ``d_u = d_(a1) ... d_(ak)`` for ``u = w^-1 w_0`` along every reduced word."""
    w0 = tuple(range(n, 0, -1))
    inv = [0] * n
    for pos, v in enumerate(w, start=1):
        inv[v - 1] = pos
    u = _compose(tuple(inv), w0)
    results = set()
    for word in exhaustive_reduced_words("A", n, u):
        f = top
        for i in reversed(word):
            f = step(f, i)
        results.add(sp.expand(f))
    if len(results) != 1:
        raise OracleFailure(f"reduced words of {u} disagree")
    return results.pop()


def double_schubert(w: tuple) -> sp.Expr:
    """``S_w(x; y) = d_(w^-1 w_0) prod_(i+j<=n) (x_i - y_j)``."""
    n = len(w)
    xs, ys = symbols("x", n), symbols("y", n)
    top = sp.Mul(*[xs[i - 1] - ys[j - 1] for i in range(1, n + 1) for j in range(1, n + 1)
                   if i + j <= n])
    return _along_reduced_words(tuple(w), n, top, lambda f, i: _divided(f, xs, i))


def double_grothendieck(w: tuple, beta=BETA) -> sp.Expr:
    """beta-Grothendieck polynomial: top ``prod (x_i + y_j + beta x_i y_j)`` and
    ``pi_i f = ((1 + beta x_(i+1)) f - (1 + beta x_i) s_i f) / (x_i - x_(i+1))``."""
    n = len(w)
    xs, ys = symbols("x", n), symbols("y", n)
    top = sp.Mul(*[xs[i - 1] + ys[j - 1] + beta * xs[i - 1] * ys[j - 1]
                   for i in range(1, n + 1) for j in range(1, n + 1) if i + j <= n])
    return _along_reduced_words(tuple(w), n, top, lambda f, i: _divided(f, xs, i, beta))


def series_inverse_check(F, chi, d: int) -> bool:
    """``F(u, chi(u)) = 0`` through degree ``d`` for sympy callables."""
    u = sp.Symbol("u")
    expr = sp.series(F(u, chi(u)), u, 0, d + 1).removeO()
    return sp.simplify(expr) == 0
