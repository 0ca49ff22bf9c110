"""Formal group laws, formal inverses and formal sums.

Three families are provided: the additive law ``u + v`` over the integers,
the multiplicative law ``u + v - beta*u*v`` (with ``beta`` symbolic, or a
fixed rational number) and the universal law, modelled through its
logarithm ``log(u) = u + sum_k m_k u^(k+1)`` with free generators ``m_k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .ring import (BetaRing, CoefficientRing, IllDefinedSubstitution, IntegerRing,
                   RationalRing, SeriesError, TruncatedSeries, UniversalLogRing,
                   specialize_params, substitute)

THEORIES = ("additive", "multiplicative", "universal")


class LawError(SeriesError):
    pass


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    """A truncated formal group law ``F(u, v)`` with its inverse ``chi(u)``.

    ``beta`` is None for the symbolic multiplicative law and a rational for
    a numeric one; ``log`` is only set for the universal law.
    """

    theory: str
    F: TruncatedSeries
    chi: TruncatedSeries
    trunc: int
    beta: Fraction | None = None
    log: TruncatedSeries | None = field(default=None, repr=False)

    @property
    def ring(self) -> CoefficientRing:
        return self.F.ring

    @property
    def integral(self) -> bool:
        """Whether classes of this theory must have integral coefficients."""
        if self.theory == "universal":
            return False
        return self.ring.integral

    @property
    def name(self) -> str:
        if self.theory == "multiplicative" and self.beta is not None:
            return f"multiplicative(beta={self.beta})"
        return self.theory

    def at(self, d: int) -> "FormalGroupLaw":
        """The same law truncated at degree ``d``."""
        if d == self.trunc:
            return self
        if self.theory == "additive":
            return make_additive(d)
        if self.theory == "multiplicative":
            return make_multiplicative(d, self.beta)
        if d - 1 > self.ring.bound:
            raise LawError(f"universal law over {self.ring} cannot be taken at degree {d}")
        return make_universal(d, self.ring.bound)

    def sum(self, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
        return formal_sum(self, a, b)

    def minus(self, a: TruncatedSeries) -> TruncatedSeries:
        return formal_minus(self, a)

    def check_axioms(self) -> dict[str, bool]:
        return check_axioms(self)

    def __repr__(self):
        return f"FormalGroupLaw({self.name}, trunc={self.trunc})"


def _u(ring, d):
    return TruncatedSeries.variable("u", ring, d)


def _v(ring, d):
    return TruncatedSeries.variable("v", ring, d)


@lru_cache(maxsize=64)
def make_additive(d: int) -> FormalGroupLaw:
    if d < 1:
        raise LawError("truncation degree must be at least 1")
    F = _u(IntegerRing, d) + _v(IntegerRing, d)
    return FormalGroupLaw("additive", F, formal_inverse(F, d), d)


@lru_cache(maxsize=64)
def make_multiplicative(d: int, beta: Fraction | int | None = None) -> FormalGroupLaw:
    """``u + v - beta*u*v``; symbolic ``beta`` lives in the beta ring."""
    if d < 1:
        raise LawError("truncation degree must be at least 1")
    if beta is None:
        ring = BetaRing
        b = TruncatedSeries.param("beta", ring, d)
    else:
        beta = Fraction(beta)
        ring = IntegerRing if beta.denominator == 1 else RationalRing
        b = beta
    u, v = _u(ring, d), _v(ring, d)
    F = u + v - b * u * v
    return FormalGroupLaw("multiplicative", F, formal_inverse(F, d), d, beta=beta)


def universal_log(d: int, bound: int | None = None) -> TruncatedSeries:
    """``u + m_1 u^2 + ... + m_(d-1) u^d`` over the universal log ring."""
    bound = d if bound is None else bound
    ring = UniversalLogRing(bound)
    u = _u(ring, d)
    out = u
    for k in range(1, d):
        out = out + TruncatedSeries.param(f"m{k}", ring, d) * u ** (k + 1)
    return out


def compositional_inverse(g: TruncatedSeries, var: str = "u") -> TruncatedSeries:
    """Inverse of a one-variable series ``g = var + (higher terms)``.

    Degree-by-degree fixed point ``h <- var - (g - var)(h)``: every pass
    fixes one more degree.
    """
    d = g.trunc
    t = TruncatedSeries.variable(var, g.ring, d)
    tail = g - t
    if tail.min_degree() in (0, 1):
        raise LawError("series must have linear term exactly the variable")
    h = t
    for _ in range(d - 1):
        h = t - substitute(tail, {var: h})
    return h


@lru_cache(maxsize=32)
def make_universal(d: int, bound: int | None = None) -> FormalGroupLaw:
    """The universal law ``exp(log u + log v)`` with free log coefficients."""
    if d < 1:
        raise LawError("truncation degree must be at least 1")
    bound = d if bound is None else bound
    if d - 1 > bound:
        raise LawError("generator bound too small for this truncation")
    log = universal_log(d, bound)
    exp = compositional_inverse(log)
    logv = log.rename({"u": "v"})
    F = substitute(exp, {"u": log + logv})
    return FormalGroupLaw("universal", F, formal_inverse(F, d), d, log=log)


def make_law(theory: str, d: int, beta=None) -> FormalGroupLaw:
    """Construct a law from its CLI name."""
    if theory == "additive":
        return make_additive(d)
    if theory == "multiplicative":
        return make_multiplicative(d, beta)
    if theory == "universal":
        return make_universal(d)
    raise LawError(f"unknown theory {theory!r}; expected one of {THEORIES}")


def _check_units(F: TruncatedSeries, d: int):
    ring = F.ring
    u, v = _u(ring, d), _v(ring, d)
    zero = TruncatedSeries.zero(ring, d)
    if substitute(F, {"v": zero}) != u or substitute(F, {"u": zero}) != v:
        raise LawError("series does not satisfy F(u,0) = u and F(0,v) = v")


def formal_inverse(F: TruncatedSeries, d: int | None = None) -> TruncatedSeries:
    """The series ``chi`` with ``chi(0) = 0`` and ``F(u, chi(u)) = 0``.

    Solved one degree at a time: ``F(u, v) = u + v + (terms of degree >= 2)``
    so the coefficient of ``u^k`` in ``F(u, chi_<k(u))`` must be cancelled by
    the ``u^k`` coefficient of ``chi``.
    """
    d = F.trunc if d is None else d
    if d < F.trunc:
        F = F.truncate(d)
    elif d > F.trunc:
        raise LawError("cannot solve for chi beyond the truncation of F")
    _check_units(F, d)
    u = _u(F.ring, d)
    chi = -u
    for k in range(2, d + 1):
        r = substitute(F, {"v": chi})
        ck = r.homogeneous_part(k)
        chi = chi - ck
    if not substitute(F, {"v": chi}).is_zero():
        raise LawError("formal inverse failed to converge")
    return chi


def _check_zero_constant(a: TruncatedSeries):
    if not a.constant_term().is_zero():
        raise IllDefinedSubstitution(f"formal sum of a series with constant term: {a}")


def formal_sum(law: FormalGroupLaw, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """``a (+) b = F(a, b)``."""
    _check_zero_constant(a)
    _check_zero_constant(b)
    if a.trunc != b.trunc:
        raise SeriesError("formal sum of series with different truncations")
    F = law.at(a.trunc).F
    return substitute(F, {"u": a, "v": b})


def formal_minus(law: FormalGroupLaw, a: TruncatedSeries) -> TruncatedSeries:
    """``(-) a = chi(a)``."""
    _check_zero_constant(a)
    chi = law.at(a.trunc).chi
    return substitute(chi, {"u": a})


def formal_difference(law: FormalGroupLaw, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """``a (-) b = F(a, chi(b))``."""
    return formal_sum(law, a, formal_minus(law, b))


def check_axioms(law: FormalGroupLaw) -> dict[str, bool]:
    """Unit, commutativity, associativity, inverse and chi(chi(u)) = u."""
    d, ring, F, chi = law.trunc, law.ring, law.F, law.chi
    u, v = _u(ring, d), _v(ring, d)
    w = TruncatedSeries.variable("w", ring, d)
    zero = TruncatedSeries.zero(ring, d)
    out = {}
    out["unit"] = substitute(F, {"v": zero}) == u and substitute(F, {"u": zero}) == v
    out["commutative"] = substitute(F, {"u": v, "v": u}) == F
    left = substitute(F, {"u": F, "v": w})
    right = substitute(F, {"u": u, "v": substitute(F, {"u": v, "v": w})})
    out["associative"] = left == right
    out["inverse"] = substitute(F, {"v": chi}).is_zero()
    out["involution"] = substitute(chi, {"u": chi}) == u
    return out


def multiplicative_log_specialization(d: int) -> dict[str, TruncatedSeries]:
    """Values ``m_k = beta^k / (k + 1)`` putting the universal law on the
    multiplicative locus (its log becomes ``-log(1 - beta*u) / beta``)."""
    beta = TruncatedSeries.param("beta", BetaRing, d)
    return {f"m{k}": beta ** k / (k + 1) for k in range(1, d + 1)}


def to_multiplicative(f: TruncatedSeries) -> TruncatedSeries:
    """Image of a universal-ring series on the multiplicative locus."""
    if f.ring.kind != "universal":
        raise SeriesError("expected a series over the universal log ring")
    vals = multiplicative_log_specialization(max(f.trunc, f.ring.bound))
    return specialize_params(f, {k: v for k, v in vals.items() if k in f.ring.params}, BetaRing)


def to_additive(f: TruncatedSeries) -> TruncatedSeries:
    """Image under ``beta -> 0`` or ``m_k -> 0``."""
    return specialize_params(f, {p: 0 for p in f.ring.params}, IntegerRing)


def law_to_dict(law: FormalGroupLaw) -> dict:
    return {"theory": law.name, "trunc": law.trunc, "F": law.F.to_dict(), "chi": law.chi.to_dict()}
