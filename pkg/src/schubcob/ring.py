"""Exact coefficient rings and truncated multivariate power series.

A :class:`TruncatedSeries` is a sparse polynomial over the rationals in two
kinds of indeterminates:

* geometric variables (``x1``, ``y2``, ``u``, Chern symbols ``c3`` ...), which
  carry a positive weight and count towards the truncation degree;
* coefficient-ring generators (``beta`` or ``m1 .. mD``), which never count
  towards truncation and carry a negative cohomological grade.

Every stored monomial has weighted geometric degree at most ``trunc``.

Internally a monomial is packed into one Python integer: slot 0 holds the
weighted geometric degree, the following slots hold the exponents of the
geometric variables and then of the ring generators.  Multiplying monomials
is then integer addition and the degree of a product is read off slot 0.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

FIELD = 16
MASK = (1 << FIELD) - 1

Scalar = int | Fraction


class SeriesError(ValueError):
    """Base class for errors raised by the series engine."""


class RingMismatch(SeriesError):
    def __init__(self, left, right):
        super().__init__(f"coefficient rings differ: {left} vs {right}")
        self.left, self.right = left, right


class TruncationMismatch(SeriesError):
    def __init__(self, left: int, right: int):
        super().__init__(f"truncation degrees differ: {left} vs {right}")
        self.left, self.right = left, right


class NotInvertible(SeriesError):
    pass


class InexactDivision(SeriesError):
    """Raised when a division that must be exact leaves a remainder."""

    def __init__(self, message: str, remainder: "TruncatedSeries | None" = None):
        super().__init__(message)
        self.remainder = remainder


class IllDefinedSubstitution(SeriesError):
    pass


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class CoefficientRing:
    """One of the exact coefficient rings.

    ``kind`` is ``"integer"``, ``"rational"``, ``"beta"`` (Q[beta], beta of
    grade -1) or ``"universal"`` (Q[m1..mD], m_k of grade -k; the rational
    model of the Lazard ring through the universal logarithm).  Arithmetic
    is always carried out with exact rationals; ``integral`` only records
    whether results are expected to have integer coefficients.
    """

    kind: str
    bound: int = 0

    def __post_init__(self):
        if self.kind not in ("integer", "rational", "beta", "universal"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind != "universal" and self.bound:
            raise ValueError("only the universal ring takes a generator bound")

    @cached_property
    def params(self) -> tuple[str, ...]:
        if self.kind == "beta":
            return ("beta",)
        if self.kind == "universal":
            return tuple(f"m{k}" for k in range(1, self.bound + 1))
        return ()

    @property
    def integral(self) -> bool:
        return self.kind != "rational"

    def grade(self, param: str) -> int:
        if param == "beta":
            return -1
        return -int(param[1:])

    @property
    def name(self) -> str:
        if self.kind == "universal":
            return f"universal:{self.bound}"
        return self.kind

    @classmethod
    def from_name(cls, name: str) -> "CoefficientRing":
        if name.startswith("universal:"):
            return cls("universal", int(name.split(":", 1)[1]))
        return cls(name)

    def __str__(self):
        return self.name


IntegerRing = CoefficientRing("integer")
RationalRing = CoefficientRing("rational")
BetaRing = CoefficientRing("beta")


def UniversalLogRing(bound: int) -> CoefficientRing:
    return CoefficientRing("universal", bound)


# ---------------------------------------------------------------------------
# helpers

_NAME_RE = re.compile(r"^([A-Za-z_]+)(\d*)$")


def var_sort_key(name: str):
    """Canonical variable order: by alphabetic prefix, then numeric suffix."""
    m = _NAME_RE.match(name)
    if not m:
        return (name, -1)
    prefix, digits = m.groups()
    return (prefix, int(digits) if digits else -1)


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_scalar(c) -> Scalar:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact scalar: {c!r}")


class Monomial(Mapping):
    """Immutable map from geometric variable name to positive exponent."""

    __slots__ = ("_items",)

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = dict(exponents)
        for k, e in items.items():
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"bad exponent {e!r} for {k}")
        self._items = tuple(sorted(((k, e) for k, e in items.items() if e),
                                   key=lambda kv: var_sort_key(kv[0])))

    def __getitem__(self, key):
        for k, e in self._items:
            if k == key:
                return e
        raise KeyError(key)

    def __iter__(self):
        return (k for k, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return hash(self._items)

    def __eq__(self, other):
        if isinstance(other, Monomial):
            return self._items == other._items
        return NotImplemented

    def total_degree(self, weights: Mapping[str, int] | None = None) -> int:
        weights = weights or {}
        return sum(weights.get(k, 1) * e for k, e in self._items)

    def __repr__(self):
        return f"Monomial({dict(self._items)})"

    def __str__(self):
        return _mono_str(self._items) or "1"


def _mono_str(items) -> str:
    return "*".join(k if e == 1 else f"{k}^{e}" for k, e in items)


# ---------------------------------------------------------------------------
# the series type


class TruncatedSeries:
    """Exact multivariate series truncated above a weighted total degree.

    Instances are immutable.  Binary operations require equal rings and equal
    truncation degrees; the variable sets are merged automatically.
    """

    __slots__ = ("ring", "trunc", "variables", "weights", "_terms", "__dict__")

    def __init__(self, ring: CoefficientRing, trunc: int, variables: tuple[str, ...],
                 weights: tuple[int, ...], terms: dict[int, Scalar]):
        # private constructor: terms must already be canonical and truncated
        self.ring = ring
        self.trunc = trunc
        self.variables = variables
        self.weights = weights
        self._terms = terms

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, ring: CoefficientRing, trunc: int, variables: Iterable[str] = (),
             weights: Mapping[str, int] | None = None) -> "TruncatedSeries":
        names = tuple(sorted(set(variables), key=var_sort_key))
        weights = weights or {}
        return cls(ring, trunc, names, tuple(weights.get(v, 1) for v in names), {})

    @classmethod
    def constant(cls, c, ring: CoefficientRing, trunc: int,
                 variables: Iterable[str] = ()) -> "TruncatedSeries":
        z = cls.zero(ring, trunc, variables)
        c = _as_scalar(c)
        return z._with({0: c} if c else {})

    @classmethod
    def one(cls, ring: CoefficientRing, trunc: int) -> "TruncatedSeries":
        return cls.constant(1, ring, trunc)

    @classmethod
    def variable(cls, name: str, ring: CoefficientRing, trunc: int,
                 weight: int = 1) -> "TruncatedSeries":
        if name in ring.params:
            return cls.param(name, ring, trunc)
        if weight < 1:
            raise ValueError("variable weights must be positive")
        z = cls(ring, trunc, (name,), (weight,), {})
        if weight > trunc:
            return z
        return z._with({weight | (1 << FIELD): 1})

    @classmethod
    def param(cls, name: str, ring: CoefficientRing, trunc: int) -> "TruncatedSeries":
        if name not in ring.params:
            raise SeriesError(f"{name} is not a generator of {ring}")
        z = cls(ring, trunc, (), (), {})
        slot = 1 + ring.params.index(name)
        return z._with({1 << (FIELD * slot): 1})

    @classmethod
    def from_terms(cls, ring: CoefficientRing, trunc: int,
                   terms: Mapping[Mapping[str, int] | tuple, object] | Iterable,
                   weights: Mapping[str, int] | None = None,
                   variables: Iterable[str] = ()) -> "TruncatedSeries":
        """Build a series from ``{monomial: coefficient}``.

        Monomial keys may mention ring generators (``beta``, ``m2`` ...) next
        to geometric variables; terms above the truncation are dropped.
        """
        weights = dict(weights or {})
        items = terms.items() if isinstance(terms, Mapping) else terms
        parsed = []
        names = set(variables)
        for mono, coeff in items:
            mono = dict(mono)
            parsed.append((mono, _as_scalar(coeff)))
            names.update(k for k in mono if k not in ring.params)
        base = cls.zero(ring, trunc, names, weights)
        pos = {v: i for i, v in enumerate(base.variables)}
        nv = len(base.variables)
        out: dict[int, Scalar] = {}
        for mono, coeff in parsed:
            exps = [0] * (nv + len(ring.params))
            for k, e in mono.items():
                if k in pos:
                    exps[pos[k]] += e
                else:
                    try:
                        exps[nv + ring.params.index(k)] += e
                    except ValueError:
                        raise SeriesError(f"unknown generator {k} for ring {ring}") from None
            key = base._encode(exps)
            if key & MASK > trunc or not coeff:
                continue
            out[key] = out.get(key, 0) + coeff
        return base._with(_clean(out))

    def _with(self, terms: dict[int, Scalar], trunc: int | None = None) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.trunc if trunc is None else trunc,
                               self.variables, self.weights, terms)

    # -- packing ----------------------------------------------------------

    @property
    def _nslots(self) -> int:
        return len(self.variables) + len(self.ring.params)

    def _encode(self, exps) -> int:
        deg = 0
        for w, e in zip(self.weights, exps):
            deg += w * e
        key = deg
        shift = FIELD
        for e in exps:
            if e:
                key |= e << shift
            shift += FIELD
        return key

    def _decode(self, key: int) -> list[int]:
        key >>= FIELD
        out = []
        for _ in range(self._nslots):
            out.append(key & MASK)
            key >>= FIELD
        return out

    def _split(self, key: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        exps = self._decode(key)
        nv = len(self.variables)
        return tuple(exps[:nv]), tuple(exps[nv:])

    # -- inspection -------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def weight_map(self) -> dict[str, int]:
        return dict(zip(self.variables, self.weights))

    def items(self) -> Iterator[tuple[dict[str, int], Scalar]]:
        """Flat terms as ``({name: exponent}, rational)``, generators included."""
        names = self.variables + self.ring.params
        for key in self._sorted_keys():
            exps = self._decode(key)
            yield {n: e for n, e in zip(names, exps) if e}, self._terms[key]

    def grouped(self) -> list[tuple[Monomial, "TruncatedSeries"]]:
        """Terms grouped by geometric monomial, coefficients as ring elements."""
        groups: dict[tuple, dict[int, Scalar]] = {}
        nv = len(self.variables)
        for key in self._sorted_keys():
            geo, par = self._split(key)
            pkey = 0
            for i, e in enumerate(par):
                if e:
                    pkey |= e << (FIELD * (i + 1))
            groups.setdefault(geo, {})[pkey] = self._terms[key]
        scalar = TruncatedSeries(self.ring, self.trunc, (), (), {})
        return [(Monomial(zip(self.variables[:nv], geo)), scalar._with(t))
                for geo, t in groups.items()]

    def coefficient(self, mono: Mapping[str, int] | None = None) -> "TruncatedSeries":
        """The ring element multiplying a geometric monomial."""
        target = Monomial(mono or {})
        for m, c in self.grouped():
            if m == target:
                return c
        return TruncatedSeries(self.ring, self.trunc, (), (), {})

    def scalar(self) -> Scalar:
        """Value of a series that is a plain rational constant."""
        if not self._terms:
            return 0
        if set(self._terms) != {0}:
            raise SeriesError(f"not a rational constant: {self}")
        return self._terms[0]

    def constant_term(self) -> "TruncatedSeries":
        return self._with({k: c for k, c in self._terms.items() if not k & MASK})

    def homogeneous_part(self, degree: int) -> "TruncatedSeries":
        return self._with({k: c for k, c in self._terms.items() if k & MASK == degree})

    def degree(self) -> int:
        """Largest weighted geometric degree present (-1 for zero)."""
        return max((k & MASK for k in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((k & MASK for k in self._terms), default=-1)

    def used_variables(self) -> set[str]:
        used = set()
        for key in self._terms:
            geo, _ = self._split(key)
            used.update(v for v, e in zip(self.variables, geo) if e)
        return used

    def used_params(self) -> set[str]:
        used = set()
        for key in self._terms:
            _, par = self._split(key)
            used.update(p for p, e in zip(self.ring.params, par) if e)
        return used

    def grades(self) -> set[int]:
        """Combined grades (geometric degree plus generator grades) of all terms."""
        gp = [self.ring.grade(p) for p in self.ring.params]
        out = set()
        for key in self._terms:
            _, par = self._split(key)
            out.add((key & MASK) + sum(g * e for g, e in zip(gp, par)))
        return out

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def param_grading_range(self) -> tuple[int, int] | None:
        """(min, max) grade of the coefficient-ring parts, None for zero."""
        gp = [self.ring.grade(p) for p in self.ring.params]
        grades = []
        for key in self._terms:
            _, par = self._split(key)
            grades.append(sum(g * e for g, e in zip(gp, par)))
        if not grades:
            return None
        return min(grades), max(grades)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- canonical form, equality ----------------------------------------

    def _sort_key(self, key: int):
        geo, par = self._split(key)
        wdeg = key & MASK
        return (wdeg, tuple(-e for e in geo), sum(par), tuple(-e for e in par))

    def _sorted_keys(self) -> list[int]:
        return sorted(self._terms, key=self._sort_key)

    @cached_property
    def _normal(self) -> frozenset:
        names = self.variables + self.ring.params
        out = []
        for key, c in self._terms.items():
            exps = self._decode(key)
            out.append((tuple((n, e) for n, e in zip(names, exps) if e), c))
        return frozenset(out)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (self.ring == other.ring and self.trunc == other.trunc
                    and self._normal == other._normal)
        if isinstance(other, (int, Fraction)):
            c = _norm(Fraction(other))
            return (not c and not self._terms) or self._terms == {0: c}
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.trunc, self._normal))

    # -- alignment --------------------------------------------------------

    def with_variables(self, names: Iterable[str],
                       weights: Mapping[str, int] | None = None) -> "TruncatedSeries":
        """Same series over a larger (canonically ordered) variable list."""
        wmap = self.weight_map
        for k, w in (weights or {}).items():
            if k in wmap and wmap[k] != w:
                raise SeriesError(f"conflicting weights for {k}: {wmap[k]} vs {w}")
            wmap.setdefault(k, w)
        new = tuple(sorted(set(names) | set(self.variables), key=var_sort_key))
        if new == self.variables:
            return self
        return self._repack(new, tuple(wmap.get(v, 1) for v in new))

    def _repack(self, new_vars: tuple[str, ...], new_weights: tuple[int, ...]) -> "TruncatedSeries":
        pos = {v: i for i, v in enumerate(new_vars)}
        nv_new = len(new_vars)
        target = [pos[v] for v in self.variables] + [nv_new + i for i in range(len(self.ring.params))]
        shifts = [FIELD * (t + 1) for t in target]
        out = {}
        for key, c in self._terms.items():
            exps = self._decode(key)
            nk = key & MASK
            for e, s in zip(exps, shifts):
                if e:
                    nk |= e << s
            out[nk] = c
        return TruncatedSeries(self.ring, self.trunc, new_vars, new_weights, out)

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.ring, self.trunc)

    def _aligned(self, other: "TruncatedSeries"):
        if self.ring != other.ring:
            raise RingMismatch(self.ring, other.ring)
        if self.trunc != other.trunc:
            raise TruncationMismatch(self.trunc, other.trunc)
        if self.variables == other.variables:
            return self, other
        a = self.with_variables(other.variables, other.weight_map)
        b = other.with_variables(a.variables, a.weight_map)
        return a, b

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "TruncatedSeries":
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return self._with({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "TruncatedSeries":
        return add(self, -self._coerce(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return add(self._coerce(other), -self)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        c = _as_scalar(other)
        if not c:
            return self._with({})
        return self._with({k: _norm(v * c) for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        c = _as_scalar(other)
        if not c:
            raise ZeroDivisionError("division of a series by zero")
        inv = Fraction(1) / c
        return self._with({k: _norm(v * inv) for k, v in self._terms.items()})

    def __pow__(self, k: int) -> "TruncatedSeries":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = TruncatedSeries.constant(1, self.ring, self.trunc, self.variables)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def truncate(self, d: int) -> "TruncatedSeries":
        """Drop terms above degree ``d`` and lower the truncation to ``d``."""
        if d > self.trunc:
            raise SeriesError(f"cannot raise truncation from {self.trunc} to {d}")
        return self._with({k: c for k, c in self._terms.items() if k & MASK <= d}, trunc=d)

    def extend(self, d: int) -> "TruncatedSeries":
        """Reinterpret the terms as a series truncated at a larger degree.

        Only meaningful for series whose terms are exact at all degrees (i.e.
        genuine polynomials); the caller vouches for this.
        """
        if d < self.trunc:
            return self.truncate(d)
        return self._with(dict(self._terms), trunc=d)

    def change_ring(self, ring: CoefficientRing) -> "TruncatedSeries":
        """Move to another ring whose generators include the ones in use."""
        if ring == self.ring:
            return self
        used = self.used_params()
        missing = used - set(ring.params)
        if missing:
            raise RingMismatch(self.ring, ring)
        images = {p: TruncatedSeries.param(p, ring, self.trunc) for p in used}
        return specialize_params(self, images, ring)

    def rename(self, mapping: Mapping[str, str]) -> "TruncatedSeries":
        """Rename geometric variables (a bijective relabelling)."""
        names = [mapping.get(v, v) for v in self.variables]
        if len(set(names)) != len(names):
            raise SeriesError("renaming would merge variables")
        order = sorted(range(len(names)), key=lambda i: var_sort_key(names[i]))
        new_vars = tuple(names[i] for i in order)
        new_w = tuple(self.weights[i] for i in order)
        tmp = TruncatedSeries(self.ring, self.trunc, tuple(names), self.weights, self._terms)
        if tuple(names) == new_vars:
            return tmp
        return tmp._repack(new_vars, new_w)

    def drop_unused(self) -> "TruncatedSeries":
        used = self.used_variables()
        keep = tuple(v for v in self.variables if v in used)
        if keep == self.variables:
            return self
        sub = TruncatedSeries(self.ring, self.trunc, self.variables, self.weights, self._terms)
        out = {}
        pos = [i for i, v in enumerate(self.variables) if v in used]
        nv = len(self.variables)
        idx = pos + list(range(nv, nv + len(self.ring.params)))
        for key, c in self._terms.items():
            exps = sub._decode(key)
            nk = key & MASK
            for j, i in enumerate(idx):
                if exps[i]:
                    nk |= exps[i] << (FIELD * (j + 1))
            out[nk] = c
        w = tuple(self.weights[i] for i in pos)
        return TruncatedSeries(self.ring, self.trunc, keep, w, out)

    def subs(self, bindings: Mapping[str, "TruncatedSeries | Scalar"],
             polynomial: bool = False) -> "TruncatedSeries":
        return substitute(self, bindings, polynomial=polynomial)

    # -- printing and serialization --------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.variables + self.ring.params
        nv = len(self.variables)
        parts = []
        for key in self._sorted_keys():
            c = self._terms[key]
            exps = self._decode(key)
            items = [(n, e) for n, e in zip(names[nv:], exps[nv:]) if e]
            items += [(n, e) for n, e in zip(names[:nv], exps[:nv]) if e]
            parts.append(_term_str(c, _mono_str(items)))
        return _join_signed(parts)

    def __repr__(self):
        return f"TruncatedSeries({self}; ring={self.ring}, trunc={self.trunc})"

    def to_dict(self) -> dict:
        out = {"ring": self.ring.name, "trunc": self.trunc,
               "variables": list(self.variables)}
        heavy = {v: w for v, w in zip(self.variables, self.weights) if w != 1}
        if heavy:
            out["weights"] = heavy
        out["terms"] = [{"mono": dict(m._items), "coeff": coefficient_string(c)}
                        for m, c in self.grouped()]
        return out

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("separators", (",", ":"))
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> "TruncatedSeries":
        ring = CoefficientRing.from_name(data["ring"])
        trunc = int(data["trunc"])
        weights = data.get("weights", {})
        result = cls.zero(ring, trunc, data.get("variables", ()), weights)
        terms = {}
        for t in data["terms"]:
            for pmono, c in parse_coefficient(t["coeff"], ring):
                mono = dict(t["mono"])
                for k, e in pmono.items():
                    mono[k] = mono.get(k, 0) + e
                key = tuple(sorted(mono.items()))
                terms[key] = terms.get(key, 0) + c
        built = cls.from_terms(ring, trunc, {k: v for k, v in terms.items()}, weights,
                               variables=result.variables)
        return built

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_dict(json.loads(text))

    def latex(self) -> str:
        if not self._terms:
            return "0"
        names = self.variables + self.ring.params
        nv = len(self.variables)
        parts = []
        for key in self._sorted_keys():
            c = self._terms[key]
            exps = self._decode(key)
            items = [(n, e) for n, e in zip(names[nv:], exps[nv:]) if e]
            items += [(n, e) for n, e in zip(names[:nv], exps[:nv]) if e]
            mono = " ".join(_latex_var(n, e) for n, e in items)
            parts.append(_term_str(c, mono, latex=True))
        return _join_signed(parts)


def _latex_var(name: str, e: int) -> str:
    m = _NAME_RE.match(name)
    if name == "beta":
        base = r"\beta"
    elif m and m.group(2):
        base = f"{m.group(1)}_{{{m.group(2)}}}"
    else:
        base = name
    return base if e == 1 else f"{base}^{{{e}}}"


def _term_str(c: Scalar, mono: str, latex: bool = False) -> str:
    if not mono:
        return _scalar_str(c, latex)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    sep = " " if latex else "*"
    return _scalar_str(c, latex) + sep + mono


def _scalar_str(c: Scalar, latex: bool = False) -> str:
    if latex and isinstance(c, Fraction):
        sign = "-" if c < 0 else ""
        return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    return str(c)


def _join_signed(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def coefficient_string(c: TruncatedSeries) -> str:
    """Canonical text for a ring element (a series without geometric part)."""
    return str(c)


_COEFF_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*|$))?(.*)$")


def parse_coefficient(text: str, ring: CoefficientRing) -> list[tuple[dict[str, int], Scalar]]:
    """Inverse of :func:`coefficient_string`: ``[(generator monomial, rational)]``."""
    text = text.strip()
    if text == "0":
        return []
    tokens = re.split(r" ([+-]) ", text)
    signs = ["+"] + tokens[1::2]
    out = []
    for sign, tok in zip(signs, tokens[0::2]):
        if tok.startswith("-"):
            sign = "-" if sign == "+" else "+"
            tok = tok[1:]
        m = _COEFF_TERM.match(tok)
        num, rest = m.group(1), m.group(2)
        c = Fraction(num) if num else Fraction(1)
        mono: dict[str, int] = {}
        if rest:
            for factor in rest.split("*"):
                name, _, e = factor.partition("^")
                if name not in ring.params:
                    raise SeriesError(f"unknown generator {name!r} in coefficient {text!r}")
                mono[name] = mono.get(name, 0) + (int(e) if e else 1)
        out.append((mono, _norm(-c if sign == "-" else c)))
    return out


# ---------------------------------------------------------------------------
# core operations


def _clean(terms: dict[int, Scalar]) -> dict[int, Scalar]:
    out = {}
    for k, c in terms.items():
        if c:
            out[k] = _norm(c)
    return out


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Termwise sum."""
    a, b = a._aligned(b)
    if len(a._terms) < len(b._terms):
        a, b = b, a
    out = dict(a._terms)
    for k, c in b._terms.items():
        v = out.get(k)
        if v is None:
            out[k] = c
        else:
            v += c
            if v:
                out[k] = _norm(v)
            else:
                del out[k]
    return a._with(out)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product with every monomial above the truncation degree dropped."""
    a, b = a._aligned(b)
    d = a.trunc
    ta, tb = a._terms, b._terms
    if len(ta) > len(tb):
        ta, tb = tb, ta
    if not ta:
        return a._with({})
    by_deg: dict[int, list] = {}
    for k, c in tb.items():
        by_deg.setdefault(k & MASK, []).append((k, c))
    degs = sorted(by_deg)
    out: dict[int, Scalar] = {}
    get = out.get
    for ka, ca in ta.items():
        room = d - (ka & MASK)
        for deg in degs:
            if deg > room:
                break
            for kb, cb in by_deg[deg]:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
    return a._with(_clean(out))


def substitute(f: TruncatedSeries, bindings: Mapping[str, TruncatedSeries | Scalar],
               polynomial: bool = False) -> TruncatedSeries:
    """Simultaneous substitution of geometric variables.

    A binding with a nonzero constant term is refused unless ``polynomial``
    is set: for a truncated series the discarded high-degree terms would
    otherwise feed back into low degrees.
    """
    bound = {}
    for name, val in bindings.items():
        if name not in f.variables:
            continue
        if not isinstance(val, TruncatedSeries):
            val = TruncatedSeries.constant(val, f.ring, f.trunc)
        if val.ring != f.ring:
            raise RingMismatch(f.ring, val.ring)
        if val.trunc != f.trunc:
            raise TruncationMismatch(f.trunc, val.trunc)
        if not polynomial and not val.constant_term().is_zero():
            raise IllDefinedSubstitution(
                f"binding {name} -> {val} has a nonzero constant term")
        bound[name] = val
    if not bound:
        return f
    keep = [v for v in f.variables if v not in bound]
    wmap = {v: w for v, w in zip(f.variables, f.weights) if v not in bound}
    names = set(keep)
    for val in bound.values():
        names.update(val.variables)
        for v, w in val.weight_map.items():
            if wmap.setdefault(v, w) != w:
                raise SeriesError(f"conflicting weights for {v}")
    base = TruncatedSeries.zero(f.ring, f.trunc, names, wmap)
    vals = {k: v.with_variables(base.variables, base.weight_map) for k, v in bound.items()}
    bnames = [v for v in f.variables if v in bound]
    bidx = [f.variables.index(v) for v in bnames]
    kidx = [f.variables.index(v) for v in keep]
    nv = len(f.variables)
    npar = len(f.ring.params)
    pos = {v: i for i, v in enumerate(base.variables)}
    kshift = [FIELD * (pos[v] + 1) for v in keep]
    kw = [wmap[v] for v in keep]
    pshift = [FIELD * (len(base.variables) + i + 1) for i in range(npar)]

    groups: dict[tuple[int, ...], dict[int, Scalar]] = {}
    for key, c in f._terms.items():
        exps = f._decode(key)
        bexp = tuple(exps[i] for i in bidx)
        nk = 0
        deg = 0
        for i, s, w in zip(kidx, kshift, kw):
            e = exps[i]
            if e:
                nk |= e << s
                deg += w * e
        for j, s in enumerate(pshift):
            e = exps[nv + j]
            if e:
                nk |= e << s
        g = groups.setdefault(bexp, {})
        g[nk | deg] = g.get(nk | deg, 0) + c

    powers: dict[str, list[TruncatedSeries]] = {v: [base._with({0: 1})] for v in bnames}

    def power(v: str, e: int) -> TruncatedSeries:
        lst = powers[v]
        while len(lst) <= e:
            lst.append(mul(lst[-1], vals[v]))
        return lst[e]

    result: dict[int, Scalar] = {}
    prod_cache: dict[tuple[int, ...], TruncatedSeries] = {}
    for bexp, rest in groups.items():
        if bexp in prod_cache:
            prod = prod_cache[bexp]
        else:
            prod = base._with({0: 1})
            for v, e in zip(bnames, bexp):
                if e:
                    prod = mul(prod, power(v, e))
            prod_cache[bexp] = prod
        term = mul(base._with(_clean(rest)), prod)
        for k, c in term._terms.items():
            result[k] = result.get(k, 0) + c
    return base._with(_clean(result))


def specialize_params(f: TruncatedSeries, values: Mapping[str, TruncatedSeries | Scalar],
                      ring: CoefficientRing) -> TruncatedSeries:
    """Evaluate coefficient-ring generators, landing in ``ring``.

    ``values`` maps every generator of ``f.ring`` that occurs in ``f`` to a
    scalar or to a series without geometric variables over ``ring``.
    Truncation is geometric only, so this is always well defined.
    """
    imgs = {}
    for p in f.used_params():
        if p not in values:
            raise SeriesError(f"no value given for generator {p}")
        v = values[p]
        if not isinstance(v, TruncatedSeries):
            v = TruncatedSeries.constant(v, ring, f.trunc)
        if v.ring != ring or v.used_variables():
            raise SeriesError(f"value for {p} must be a constant of {ring}")
        # no geometric variables, so the truncation degree is immaterial
        imgs[p] = TruncatedSeries(ring, f.trunc, (), (), dict(v._terms))
    target = TruncatedSeries(ring, f.trunc, f.variables, f.weights, {})
    nv = len(f.variables)
    shift_new = FIELD * (nv + 1)
    cache: dict[tuple, dict[int, Scalar]] = {}
    zero_scalar = TruncatedSeries(ring, f.trunc, (), (), {})
    out: dict[int, Scalar] = {}
    for key, c in f._terms.items():
        exps = f._decode(key)
        geo_key = key & MASK
        for i in range(nv):
            if exps[i]:
                geo_key |= exps[i] << (FIELD * (i + 1))
        par = tuple(exps[nv:])
        if par not in cache:
            val = zero_scalar._with({0: 1})
            for p, e in zip(f.ring.params, par):
                if e:
                    val = mul(val, imgs[p] ** e)
            cache[par] = val._terms
        for pk, pc in cache[par].items():
            # pk packs generators of the new ring starting at slot 1
            nk = geo_key | ((pk >> FIELD) << shift_new)
            out[nk] = out.get(nk, 0) + c * pc
    return target._with(_clean(out))


def invert_unit(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with invertible constant term."""
    c0 = f.constant_term()
    if c0.is_zero():
        raise NotInvertible(f"constant term of {f} is zero")
    if set(c0._terms) != {0}:
        raise NotInvertible(f"constant term {c0} is not a nonzero rational")
    inv0 = Fraction(1) / c0._terms[0]
    d = f.trunc
    # homogeneous components f_k, k >= 1; g_k = -inv0 * sum_{j=1..k} f_j g_{k-j}
    comps: dict[int, list] = {}
    for k, c in f._terms.items():
        deg = k & MASK
        if deg:
            comps.setdefault(deg, []).append((k, c))
    g: list[dict[int, Scalar]] = [{0: _norm(inv0)}]
    for k in range(1, d + 1):
        acc: dict[int, Scalar] = {}
        for j in range(1, k + 1):
            fj = comps.get(j)
            if not fj or not g[k - j]:
                continue
            for ka, ca in fj:
                for kb, cb in g[k - j].items():
                    key = ka + kb
                    acc[key] = acc.get(key, 0) + ca * cb
        g.append({key: _norm(-inv0 * v) for key, v in acc.items() if v})
    out = {}
    for part in g:
        out.update(part)
    return f._with(out)


def exact_divide_linear(f: TruncatedSeries, i: str, j: str | None = None) -> TruncatedSeries:
    """Exact quotient of ``f`` by ``x_i - x_j`` (or by ``x_i`` when ``j`` is None).

    The quotient is truncated one degree lower than ``f``.  A nonzero
    remainder raises :class:`InexactDivision`.
    """
    if f.ring.params and (i in f.ring.params or j in f.ring.params):
        raise SeriesError("can only divide by geometric variables")
    names = [i] if j is None else [i, j]
    f = f.with_variables(names)
    wmap = f.weight_map
    if any(wmap[v] != 1 for v in names):
        raise SeriesError("divisor variables must have weight one")
    si = FIELD * (f.variables.index(i) + 1)
    d = f.trunc - 1
    out: dict[int, Scalar] = {}
    if j is None:
        bad = {}
        for key, c in f._terms.items():
            if (key >> si) & MASK:
                out[key - (1 << si) - 1] = c
            else:
                bad[key] = c
        if bad:
            raise InexactDivision(f"{f} is not divisible by {i}", f._with(bad))
        return f._with(out, trunc=d)
    sj = FIELD * (f.variables.index(j) + 1)
    remainder: dict[int, Scalar] = {}
    for key, c in f._terms.items():
        a = (key >> si) & MASK
        base = key - (a << si)
        # x_i^a = (x_i - x_j) * sum_{k<a} x_i^k x_j^(a-1-k) + x_j^a
        r = base + (a << sj)
        remainder[r] = remainder.get(r, 0) + c
        if a:
            q0 = base - 1 + ((a - 1) << sj)
            step = (1 << si) - (1 << sj)
            for k in range(a):
                qk = q0 + k * step
                out[qk] = out.get(qk, 0) + c
    remainder = _clean(remainder)
    if remainder:
        raise InexactDivision(f"{f} is not divisible by {i} - {j}", f._with(remainder))
    return f._with(_clean(out), trunc=d)


# ---------------------------------------------------------------------------
# convenience


def variables(names: Iterable[str], ring: CoefficientRing, trunc: int) -> list[TruncatedSeries]:
    return [TruncatedSeries.variable(n, ring, trunc) for n in names]


def series_product(factors: Iterable[TruncatedSeries], ring: CoefficientRing,
                   trunc: int) -> TruncatedSeries:
    out = TruncatedSeries.one(ring, trunc)
    for f in factors:
        out = mul(out, f)
    return out
