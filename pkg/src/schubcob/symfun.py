"""Elementary and complete symmetric functions, the alternating sums
``P_l^E(z) = sum_j (-1)^j c_(l-j)(E) h_j(z)`` and the relation generators of
projective and symplectic flag bundles.

Chern classes of an ambient bundle are formal symbols ``c1, c2, ...`` with
``c_i`` of weight ``i``, so every identity is checked universally.  The
``*_residual`` helpers return the difference of the two sides of an
identity; a correct identity gives the zero series.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fgl import FormalGroupLaw
from .ring import SeriesError, TruncatedSeries, substitute


def _zero_like(vars_, ring=None, trunc=None):
    if vars_:
        ring, trunc = vars_[0].ring, vars_[0].trunc
    return TruncatedSeries.zero(ring, trunc)


def elementary_all(vars_: list[TruncatedSeries], top: int) -> list[TruncatedSeries]:
    """``[e_0, ..., e_top]`` of the given series."""
    if not vars_:
        raise SeriesError("need at least one variable (or pass ring/trunc via elementary)")
    one = TruncatedSeries.one(vars_[0].ring, vars_[0].trunc)
    zero = one * 0
    e = [one] + [zero] * top
    for z in vars_:
        for k in range(top, 0, -1):
            e[k] = e[k] + z * e[k - 1]
    return e


def complete_all(vars_: list[TruncatedSeries], top: int) -> list[TruncatedSeries]:
    """``[h_0, ..., h_top]`` of the given series."""
    if not vars_:
        raise SeriesError("need at least one variable")
    one = TruncatedSeries.one(vars_[0].ring, vars_[0].trunc)
    h = [one] + [one * 0] * top
    for z in vars_:
        # h_k(z_1..z_r) = sum_a z_r^a h_(k-a)(z_1..z_(r-1)), i.e. h_k += z * h_(k-1) in place
        for k in range(1, top + 1):
            h[k] = h[k] + z * h[k - 1]
    return h


def elementary(vars_: list[TruncatedSeries], i: int) -> TruncatedSeries:
    if i < 0:
        return _zero_like(vars_)
    return elementary_all(vars_, i)[i]


def complete(vars_: list[TruncatedSeries], j: int) -> TruncatedSeries:
    if j < 0:
        return _zero_like(vars_)
    return complete_all(vars_, j)[j]


@dataclass(frozen=True)
class ChernVector:
    """Total Chern class ``1 + c_1 + ... + c_r`` of a rank ``r`` bundle."""

    rank: int
    classes: tuple[TruncatedSeries, ...]

    @classmethod
    def formal(cls, rank: int, ring, trunc: int, prefix: str = "c") -> "ChernVector":
        cs = [TruncatedSeries.one(ring, trunc)]
        cs += [TruncatedSeries.variable(f"{prefix}{i}", ring, trunc, weight=i)
               for i in range(1, rank + 1)]
        return cls(rank, tuple(cs))

    @classmethod
    def from_roots(cls, roots: list[TruncatedSeries]) -> "ChernVector":
        return cls(len(roots), tuple(elementary_all(roots, len(roots))))

    def __getitem__(self, i: int) -> TruncatedSeries:
        if 0 <= i <= self.rank:
            return self.classes[i]
        return self.classes[0] * 0

    @property
    def ring(self):
        return self.classes[0].ring

    @property
    def trunc(self):
        return self.classes[0].trunc


def p_poly(E: ChernVector, l: int, z1: TruncatedSeries,
           z2: TruncatedSeries | None = None) -> TruncatedSeries:
    """``P_l^E(z1, z2) = sum_(j=0..l) (-1)^j c_(l-j)(E) h_j(z1, z2)``."""
    if l < 0:
        return E[0] * 0
    zs = [z1] if z2 is None else [z1, z2]
    h = complete_all(zs, l)
    out = E[0] * 0
    for j in range(l + 1):
        term = E[l - j] * h[j]
        out = out - term if j % 2 else out + term
    return out


def _check_even(E: ChernVector):
    if E.rank % 2:
        raise SeriesError(f"expected a bundle of even rank, got rank {E.rank}")


def orthogonal_quotient_chern(E: ChernVector, alpha: TruncatedSeries,
                              law: FormalGroupLaw, m: int) -> TruncatedSeries:
    """``c_m`` of ``L^perp / L`` for a line ``L`` with ``c_1(L) = alpha``."""
    _check_even(E)
    return p_poly(E, m, alpha, law.minus(alpha))


def symplectic_kernel_generators(E: ChernVector, law: FormalGroupLaw,
                                 var: str = "xi") -> tuple[TruncatedSeries, TruncatedSeries]:
    """``(P_(2n)^E(xi, chi(xi)), P_(2n-1)^E(xi, chi(xi)))`` for rank ``2n``."""
    _check_even(E)
    xi = TruncatedSeries.variable(var, E.ring, E.trunc)
    chi = law.minus(xi)
    r = E.rank
    return p_poly(E, r, xi, chi), p_poly(E, r - 1, xi, chi)


def root_variables(n: int, ring, trunc: int, prefix: str = "t") -> list[TruncatedSeries]:
    return [TruncatedSeries.variable(f"{prefix}{i}", ring, trunc) for i in range(1, n + 1)]


def doubled_elementary(ts: list[TruncatedSeries], law: FormalGroupLaw, top: int
                       ) -> list[TruncatedSeries]:
    """``e_i`` of ``t_1..t_k, chi(t_1)..chi(t_k)`` for ``i = 0..top``."""
    zs = list(ts) + [law.minus(t) for t in ts]
    return elementary_all(zs, top)


def flagC_ideal_generators(n: int, law: FormalGroupLaw, E: ChernVector,
                           prefix: str = "t") -> list[TruncatedSeries]:
    """``c_i(E) - e_i(t, chi(t))`` for ``i = 1..2n``."""
    if n < 1:
        raise SeriesError("rank must be at least 1")
    if E.rank != 2 * n:
        raise SeriesError(f"expected rank {2 * n}, got {E.rank}")
    ts = root_variables(n, E.ring, E.trunc, prefix)
    e = doubled_elementary(ts, law, 2 * n)
    return [E[i] - e[i] for i in range(1, 2 * n + 1)]


# -- identity residuals ------------------------------------------------------


def two_variables(ring, trunc):
    return (TruncatedSeries.variable("z1", ring, trunc),
            TruncatedSeries.variable("z2", ring, trunc))


def complete_recursion_residual(i: int, z1, z2) -> TruncatedSeries:
    """``h_i - (e_1 h_(i-1) - e_2 h_(i-2))`` in two variables."""
    h = complete_all([z1, z2], i)
    e1, e2 = z1 + z2, z1 * z2
    prev2 = h[i - 2] if i >= 2 else h[0] * 0
    return h[i] - (e1 * h[i - 1] - e2 * prev2)


def power_residual(i: int, z1, z2) -> TruncatedSeries:
    """``z1^i - (h_i - z2 h_(i-1))``."""
    h = complete_all([z1, z2], i)
    return z1 ** i - (h[i] - z2 * h[i - 1])


def alternating_residual(j: int, vars_: list[TruncatedSeries]) -> TruncatedSeries:
    """``sum_k (-1)^k e_k h_(j-k)``, zero for ``j >= 1``."""
    e = elementary_all(vars_, j)
    h = complete_all(vars_, j)
    out = e[0] * 0
    for k in range(j + 1):
        term = e[k] * h[j - k]
        out = out - term if k % 2 else out + term
    return out


def p_recursion_residual(E: ChernVector, m: int, z1, z2) -> TruncatedSeries:
    """``P_m - (c_m - e_1 P_(m-1) - e_2 P_(m-2))``."""
    e1, e2 = z1 + z2, z1 * z2
    return p_poly(E, m, z1, z2) - (E[m] - e1 * p_poly(E, m - 1, z1, z2)
                                   - e2 * p_poly(E, m - 2, z1, z2))


def whitney_residual(E: ChernVector, alpha, law: FormalGroupLaw) -> list[TruncatedSeries]:
    """Coefficients of ``c_t(E) - c_t(L^perp/L) (1 + e_1 t + e_2 t^2)``, degrees 0..rank."""
    chi = law.minus(alpha)
    e1, e2 = alpha + chi, alpha * chi
    q = [orthogonal_quotient_chern(E, alpha, law, m) for m in range(E.rank + 1)]
    out = []
    for k in range(E.rank + 1):
        rhs = q[k]
        if k >= 1:
            rhs = rhs + e1 * q[k - 1]
        if k >= 2:
            rhs = rhs + e2 * q[k - 2]
        out.append(E[k] - rhs)
    return out


def kernel_decomposition_residual(E: ChernVector, law: FormalGroupLaw,
                                  var: str = "xi") -> TruncatedSeries:
    """``P_(2n)(xi, 0) - [P_(2n)(xi, chi) + chi P_(2n-1)(xi, chi)]``.

    Follows from ``h_j(a, b) = a^j + b h_(j-1)(a, b)``.
    """
    _check_even(E)
    xi = TruncatedSeries.variable(var, E.ring, E.trunc)
    chi = law.minus(xi)
    top, below = symplectic_kernel_generators(E, law, var)
    return p_poly(E, E.rank, xi, xi * 0) - (top + chi * below)


def kernel_decomposition_minus_residual(E: ChernVector, law: FormalGroupLaw,
                                        var: str = "xi") -> TruncatedSeries:
    """Same as above with the opposite sign on the ``chi`` term; nonzero in general."""
    xi = TruncatedSeries.variable(var, E.ring, E.trunc)
    chi = law.minus(xi)
    top, below = symplectic_kernel_generators(E, law, var)
    return p_poly(E, E.rank, xi, xi * 0) - (top - chi * below)


def _pad(e: list, i: int):
    if i < 0:
        return e[0] * 0
    return e[i]


def e_recursion_residuals(n: int, law: FormalGroupLaw, ring, trunc: int
                          ) -> list[TruncatedSeries]:
    """``e_i^(2n-2) - [e_i^(2n) - e_(i-1)^(2n-2) (t_n + chi t_n) - e_(i-2)^(2n-2) t_n chi t_n]``."""
    ts = root_variables(n, ring, trunc)
    big = doubled_elementary(ts, law, 2 * n)
    small = doubled_elementary(ts[:-1], law, 2 * n) if n > 1 else [big[0]] + [big[0] * 0] * (2 * n)
    tn = ts[-1]
    ctn = law.minus(tn)
    s, p = tn + ctn, tn * ctn
    return [_pad(small, i) - (big[i] - _pad(small, i - 1) * s - _pad(small, i - 2) * p)
            for i in range(1, 2 * n + 1)]


def p_minus_e_residuals(n: int, law: FormalGroupLaw, E: ChernVector) -> list[TruncatedSeries]:
    """Residuals of the recursion for ``P_i^E(t_n, chi t_n) - e_i^(2n-2)``."""
    if E.rank != 2 * n:
        raise SeriesError(f"expected rank {2 * n}, got {E.rank}")
    ts = root_variables(n, E.ring, E.trunc)
    big = doubled_elementary(ts, law, 2 * n)
    small = doubled_elementary(ts[:-1], law, 2 * n) if n > 1 else [big[0]] + [big[0] * 0] * (2 * n)
    tn = ts[-1]
    ctn = law.minus(tn)
    s, p = tn + ctn, tn * ctn

    def diff(i):
        if i < 0:
            return big[0] * 0
        return p_poly(E, i, tn, ctn) - small[i]

    return [diff(i) - ((E[i] - big[i]) - diff(i - 1) * s - diff(i - 2) * p)
            for i in range(1, 2 * n + 1)]


def identity_suite(law: FormalGroupLaw, max_n: int = 3, max_index: int = 8) -> dict[str, bool]:
    """Run every residual identity; maps a short name to pass/fail."""
    d = law.trunc
    ring = law.ring
    z1, z2 = two_variables(ring, d)
    out = {}
    out["complete_recursion"] = all(complete_recursion_residual(i, z1, z2).is_zero()
                                    for i in range(2, max_index + 1))
    out["power"] = all(power_residual(i, z1, z2).is_zero() for i in range(1, max_index + 1))
    zs = [TruncatedSeries.variable(f"z{k}", ring, d) for k in range(1, 5)]
    out["alternating"] = all(alternating_residual(j, zs[:r]).is_zero()
                             for r in range(1, 5) for j in range(1, max_index + 1))
    E = ChernVector.formal(max_index, ring, d)
    out["p_recursion"] = all(p_recursion_residual(E, m, z1, z2).is_zero()
                             for m in range(2, max_index + 1))
    alpha = TruncatedSeries.variable("a", ring, d)
    ok_w = ok_k = ok_e = ok_pe = True
    for n in range(1, max_n + 1):
        En = ChernVector.formal(2 * n, ring, d)
        ok_w &= all(r.is_zero() for r in whitney_residual(En, alpha, law))
        ok_k &= kernel_decomposition_residual(En, law).is_zero()
        ok_pe &= all(r.is_zero() for r in p_minus_e_residuals(n, law, En))
        if n >= 2:
            ok_e &= all(r.is_zero() for r in e_recursion_residuals(n, law, ring, d))
    out["whitney"] = ok_w
    out["kernel_decomposition"] = ok_k
    out["e_recursion"] = ok_e
    out["p_minus_e"] = ok_pe
    return out


def substitute_chern(f: TruncatedSeries, E: ChernVector, values: ChernVector) -> TruncatedSeries:
    """Replace the formal symbols of ``E`` by the classes in ``values``."""
    names = {}
    for i in range(1, E.rank + 1):
        used = E[i].used_variables()
        if len(used) != 1:
            raise SeriesError("E must be a formal Chern vector")
        names[used.pop()] = values[i]
    return substitute(f, names, polynomial=True)
