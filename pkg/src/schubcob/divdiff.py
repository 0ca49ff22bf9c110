"""Divided-difference operators attached to a formal group law.

For ``i >= 1``::

    A_i(f) = f / F(x_i, chi(x_(i+1))) + sigma_i(f) / F(x_(i+1), chi(x_i))

and, in type C, ``A_0(f) = (1 + sigma_0)(f / F(chi(x_1), chi(x_1)))`` with
``sigma_0: x_1 -> chi(x_1)``.  No rational functions are formed: the
denominators are split into a linear factor times a unit series, the unit
is inverted and the linear factor is removed by exact division.  Each
application lowers the truncation degree by one.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .fgl import FormalGroupLaw, make_universal, to_multiplicative
from .ring import (BetaRing, SeriesError, TruncatedSeries, exact_divide_linear,
                   invert_unit, substitute)
from .weyl import check_word


def xvar(i: int) -> str:
    return f"x{i}"


def _var(name, ring, d):
    return TruncatedSeries.variable(name, ring, d)


def sigma(law: FormalGroupLaw, i: int, f: TruncatedSeries) -> TruncatedSeries:
    """``sigma_i`` swaps ``x_i, x_(i+1)``; ``sigma_0`` sends ``x_1`` to ``chi(x_1)``."""
    if i == 0:
        if xvar(1) not in f.variables:
            return f
        chi = law.at(f.trunc).chi.rename({"u": xvar(1)})
        return substitute(f, {xvar(1): chi})
    a, b = xvar(i), xvar(i + 1)
    return f.with_variables([a, b]).rename({a: b, b: a})


@lru_cache(maxsize=256)
def _units(law: FormalGroupLaw, i: int):
    """Inverted unit factors of the denominator, at truncation ``law.trunc - 1``."""
    d = law.trunc
    ring = law.ring
    if i == 0:
        x = _var(xvar(1), ring, d)
        cx = law.minus(x)
        u1 = exact_divide_linear(law.sum(cx, cx), xvar(1))
        u2 = exact_divide_linear(law.sum(x, x), xvar(1))
        return invert_unit(u1), invert_unit(u2)
    a, b = xvar(i), xvar(i + 1)
    xa, xb = _var(a, ring, d), _var(b, ring, d)
    mu = exact_divide_linear(law.sum(xa, law.minus(xb)), a, b)
    return (invert_unit(mu),)


def _check_ring(law: FormalGroupLaw, f: TruncatedSeries):
    if f.ring != law.ring:
        raise SeriesError(f"series over {f.ring} but the law is over {law.ring}")
    if f.trunc < 1:
        raise SeriesError("no truncation headroom left for a divided difference")


def divided_difference(law: FormalGroupLaw, i: int, f: TruncatedSeries) -> TruncatedSeries:
    """``A_i(f)``; the result is truncated at ``f.trunc - 1``."""
    _check_ring(law, f)
    d = f.trunc
    big = law.at(d + 1)
    if i == 0:
        inv1, inv2 = _units(big, 0)
        num = f * inv1 + sigma(law, 0, f) * inv2
        return exact_divide_linear(num, xvar(1))
    (inv_mu,) = _units(big, i)
    g = f * inv_mu
    return exact_divide_linear(g - sigma(law, i, g), xvar(i), xvar(i + 1))


@dataclass(frozen=True)
class DividedDifferenceOperator:
    law: FormalGroupLaw
    n: int
    index: int
    type: str = "C"

    def __post_init__(self):
        lo = 0 if self.type == "C" else 1
        if self.type not in ("A", "C"):
            raise SeriesError(f"unknown type {self.type!r}")
        if not lo <= self.index <= self.n - 1:
            raise SeriesError(f"operator index {self.index} out of range for type {self.type}, n={self.n}")

    def __call__(self, f: TruncatedSeries) -> TruncatedSeries:
        return divided_difference(self.law, self.index, f)

    def sigma(self, f: TruncatedSeries) -> TruncatedSeries:
        return sigma(self.law, self.index, f)


def apply(op: DividedDifferenceOperator, f: TruncatedSeries) -> TruncatedSeries:
    return op(f)


def apply_word(law: FormalGroupLaw, type: str, n: int, word, f: TruncatedSeries) -> TruncatedSeries:
    """``A_(i_l) o ... o A_(i_1)(f)``: the first letter acts first."""
    for i in check_word(word, n, type):
        f = divided_difference(law, i, f)
    return f


def apply_ck(i: int, P: TruncatedSeries, beta=None) -> TruncatedSeries:
    """Connective K-theory operators from their closed forms.

    ``phi_i(P) = ((1 - b x_(i+1)) P - (1 - b x_i) sigma_i P) / (x_i - x_(i+1))`` and
    ``phi_0(P) = (P(chi(x_1), ...) - (1 - b x_1)^2 P) / (2 x_1 - b x_1^2)``,
    where ``chi(x) = -x / (1 - b x)``.  ``b`` is the symbolic ``beta`` when
    ``P`` lives over the beta ring, else the given number.
    """
    d = P.trunc
    ring = P.ring
    if ring == BetaRing:
        b = TruncatedSeries.param("beta", ring, d)
    elif beta is None:
        raise SeriesError("a numeric beta is needed outside the beta ring")
    else:
        b = beta
    one = TruncatedSeries.one(ring, d)
    if i == 0:
        x = _var(xvar(1), ring, d)
        w = one - b * x
        chi = -x * invert_unit(w)
        num = substitute(P, {xvar(1): chi}) - w * w * P
        q = exact_divide_linear(num, xvar(1))
        x1 = _var(xvar(1), ring, d - 1)
        b_low = b.truncate(d - 1) if isinstance(b, TruncatedSeries) else b
        return q * invert_unit(2 - b_low * x1)
    a, c = xvar(i), xvar(i + 1)
    xa, xc = _var(a, ring, d), _var(c, ring, d)
    P = P.with_variables([a, c])
    swapped = P.rename({a: c, c: a})
    return exact_divide_linear((one - b * xc) * P - (one - b * xa) * swapped, a, c)


def apply_ck_word(word, P: TruncatedSeries, beta=None) -> TruncatedSeries:
    for i in word:
        P = apply_ck(i, P, beta)
    return P


# -- braid relations -----------------------------------------------------------


def braid_pairs(type: str, n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of words that the Coxeter relations identify."""
    lo = 0 if type == "C" else 1
    idx = range(lo, n)
    out = []
    for a in idx:
        for b in idx:
            if b <= a:
                continue
            if b - a >= 2:
                out.append(((a, b), (b, a)))
            elif a == 0:
                out.append(((0, 1, 0, 1), (1, 0, 1, 0)))
            else:
                out.append(((a, b, a), (b, a, b)))
    return out


def monomials(names: list[str], max_degree: int):
    """All monomials of degree ``<= max_degree``, by degree then lexicographically."""
    for k in range(max_degree + 1):
        for combo in combinations_with_replacement(names, k):
            mono = {}
            for v in combo:
                mono[v] = mono.get(v, 0) + 1
            yield mono


def braid_report(law: FormalGroupLaw, type: str, n: int, degree_bound: int,
                 headroom: int = 1, stop_at_first: bool = True) -> list[dict]:
    """Check every braid pair on all monomials in ``x_1..x_n`` up to ``degree_bound``.

    Each entry has ``pair`` and ``status`` (``"holds"`` or ``"fails"``); a
    failing pair also carries the witness monomial, the number of terms of
    the difference and its lowest-degree part.  For
    the universal law a failing entry records whether the difference
    vanishes after specializing to the multiplicative law.
    """
    if (type == "C" and n < 2) or (type == "A" and n < 3):
        raise SeriesError("braid relations need n >= 2 (type C) or n >= 3 (type A)")
    names = [xvar(i) for i in range(1, n + 1)]
    report = []
    for w1, w2 in braid_pairs(type, n):
        d = degree_bound + len(w1) + headroom
        lw = make_universal(d) if law.theory == "universal" else law.at(d)
        entry = {"pair": [list(w1), list(w2)], "status": "holds",
                 "checked_degree": degree_bound, "precision": d - len(w1)}
        for mono in monomials(names, degree_bound):
            f = TruncatedSeries.from_terms(lw.ring, d, {tuple(mono.items()): 1}, variables=names)
            diff = apply_word(lw, type, n, w1, f) - apply_word(lw, type, n, w2, f)
            if not diff.is_zero():
                low = diff.homogeneous_part(diff.min_degree())
                entry.update(status="fails", witness=str(f), difference_terms=len(diff),
                             difference_lowest=str(low))
                if law.theory == "universal":
                    entry["vanishes_on_multiplicative_locus"] = to_multiplicative(diff).is_zero()
                if stop_at_first:
                    break
        report.append(entry)
    return report
