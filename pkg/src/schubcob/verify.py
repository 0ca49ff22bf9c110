"""Named verification suites shared by the CLI and the test suite.

Each suite returns ``{"suite": name, "ok": bool, "checks": [...]}`` where
every check is a small JSON-able dict with at least ``name`` and ``ok``.
"""
from __future__ import annotations

import random

from .classes import flag_pairs_A, flag_pairs_C, schubert_ck, telescoping_residual
from .divdiff import apply_ck, braid_report, divided_difference
from .fgl import make_additive, make_law, make_multiplicative, make_universal
from .ring import BetaRing, TruncatedSeries
from .symfun import identity_suite
from .weyl import SignedPermutation, longest

SUITES = ("symfun", "fgl", "telescope", "braid", "ck-words", "operators")
THEORIES = ("additive", "multiplicative", "universal")


def _laws(d: int):
    return [make_additive(d), make_multiplicative(d), make_universal(d)]


def _summary(name: str, checks: list[dict], **extra) -> dict:
    out = {"suite": name, "ok": all(c["ok"] for c in checks), "checks": checks}
    out.update(extra)
    return out


def fgl_suite(d: int = 8) -> dict:
    checks = []
    for law in _laws(d):
        res = law.check_axioms()
        checks.append({"name": law.name, "trunc": d, "ok": all(res.values()), "axioms": res})
    return _summary("fgl", checks)


def symfun_suite(n: int = 3, d: int = 8) -> dict:
    checks = []
    for law in _laws(d):
        res = identity_suite(law, max_n=n, max_index=d)
        checks.append({"name": law.name, "trunc": d, "ok": all(res.values()), "identities": res})
    return _summary("symfun", checks)


def telescope_suite(n: int = 4, theories=THEORIES, headroom: int = 2) -> dict:
    checks = []
    for theory in theories:
        law = make_law(theory, 1)
        for type in ("A", "C"):
            for rank in range(1, n + 1):
                lo = 0 if type == "C" else 1
                for m in range(lo, rank):
                    ok = telescoping_residual(law, type, rank, m, headroom).is_zero()
                    checks.append({"name": f"{theory}:{type}:n={rank}:m={m}", "ok": ok})
    return _summary("telescope", checks)


def braid_suite(n: int = 3, theory: str = "multiplicative", degree: int = 4, types=None) -> dict:
    law = make_law(theory, degree + 5)
    if types is None:
        types = [t for t in ("A", "C") if n >= (3 if t == "A" else 2)]
    checks = []
    for type in types:
        for entry in braid_report(law, type, n, degree):
            checks.append({"name": f"{type}:{entry['pair'][0]}={entry['pair'][1]}",
                           "ok": entry["status"] == "holds", **entry})
    return _summary("braid", checks, theory=theory)


def ck_words_suite(n: int = 2) -> dict:
    """Every reduced word of ``w_0 w`` gives the same CK class, for all ``w``."""
    checks = []
    w0 = longest("C", n)
    for w in SignedPermutation.elements(n):
        words = list((w0 * w).reduced_words())
        cls = schubert_ck(n, w)
        ok = True
        try:
            schubert_ck(n, w, check_words=True)
        except ValueError:
            ok = False
        checks.append({"name": w.one_line(), "ok": ok, "words": len(words),
                       "degree": cls.degree(), "length": w.length()})
    return _summary("ck-words", checks)


def random_polynomial(rng: random.Random, n: int, degree: int, d: int, terms: int = 4) -> TruncatedSeries:
    names = [f"x{i}" for i in range(1, n + 1)]
    out = {}
    for _ in range(terms):
        mono = {}
        for _ in range(rng.randint(0, degree)):
            v = rng.choice(names)
            mono[v] = mono.get(v, 0) + 1
        if rng.random() < 0.5:
            mono["beta"] = rng.randint(1, 2)
        key = tuple(sorted(mono.items()))
        out[key] = out.get(key, 0) + rng.randint(-3, 3)
    return TruncatedSeries.from_terms(BetaRing, d, out, variables=names)


def operators_suite(seed: int = 0, samples: int = 50) -> dict:
    """Seeded agreement of the general and closed-form CK operators, plus
    ``phi_i o phi_i = beta phi_i``."""
    rng = random.Random(seed)
    agree = square = 0
    for _ in range(samples):
        n = rng.randint(1, 3)
        i = rng.randint(0, n - 1)
        P = random_polynomial(rng, n, 4, 6)
        law = make_multiplicative(6)
        a = divided_difference(law, i, P)
        agree += a == apply_ck(i, P)
        beta = TruncatedSeries.param("beta", BetaRing, 4)
        square += divided_difference(law, i, a) == beta * a.truncate(4)
    checks = [{"name": "general=closed-form", "ok": agree == samples, "passed": agree},
              {"name": "square=beta*phi", "ok": square == samples, "passed": square}]
    return _summary("operators", checks, seed=seed, samples=samples)


def run_suite(name: str, n: int, theory: str | None = None, seed: int = 0) -> dict:
    if name == "fgl":
        return fgl_suite()
    if name == "symfun":
        return symfun_suite(n)
    if name == "telescope":
        return telescope_suite(n, (theory,) if theory else THEORIES)
    if name == "braid":
        return braid_suite(n, theory or "multiplicative")
    if name == "ck-words":
        return ck_words_suite(n)
    if name == "operators":
        return operators_suite(seed)
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")


def flag_degree(type: str, n: int, m: int) -> int:
    if type == "A":
        return len(flag_pairs_A(n, m))
    a, b = flag_pairs_C(n, m)
    return len(a) + len(b)
