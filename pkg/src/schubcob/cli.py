"""Command-line interface.

    schubcob compute class --type C --theory multiplicative --n 2 --perm=-1,2 --beta 0
    schubcob verify identities --suite telescope --n 3
    schubcob verify braid --theory universal --type A --n 3 --deg 2

Exit status is 0 on success, 1 when a verification fails and 2 on bad
input.  JSON output carries ``"schema": 1``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .classes import (ClassError, bott_samelson, default_trunc, flag_class, schubert,
                      schubert_ck, schubert_word, specialize, top_degree)
from .divdiff import braid_report
from .fgl import make_law
from .ring import SeriesError
from .verify import SUITES, THEORIES, flag_degree, run_suite
from .weyl import WeylError, parse_element, parse_word

SCHEMA = 1


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    theory: str
    type: str
    n: int
    trunc: int | None = None
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.theory not in THEORIES:
            raise UsageError(f"unknown theory {self.theory!r}")
        if self.n < (0 if self.type == "C" else 1):
            raise UsageError(f"rank n={self.n} is too small for type {self.type}")


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def minimum_trunc(type: str, n: int, m: int | None = None) -> int:
    """Smallest truncation that still shows the leading part of the class."""
    if m is not None:
        return max(flag_degree(type, n, m), 1)
    return max(top_degree(type, n), 1)


def _beta(text: str | None):
    if text is None or text == "sym":
        return None
    return int(text)


def compute_class(args) -> object:
    cfg = RunConfig(args.theory, args.type, args.n, args.trunc, args.format)
    beta = _beta(args.beta)
    if beta is not None and cfg.theory != "multiplicative":
        raise UsageError("--beta only applies to the multiplicative theory")
    m = args.m
    need = minimum_trunc(cfg.type, cfg.n, m)
    if cfg.trunc is not None and cfg.trunc < need:
        raise UsageError(f"truncation {cfg.trunc} is too small; the minimum here is {need}")

    if m is not None:
        d = cfg.trunc if cfg.trunc is not None else need
        cls = flag_class(make_law(cfg.theory, d), cfg.type, cfg.n, m, trunc=d)
    elif args.perm is not None:
        if cfg.theory == "universal":
            raise UsageError("Schubert classes need the additive or multiplicative theory; "
                             "use --word for a Bott-Samelson class")
        w = parse_element(args.perm, cfg.type, cfg.n)
        if w.n != cfg.n:
            raise UsageError(f"{args.perm!r} is not an element of rank {cfg.n}")
        if cfg.theory == "multiplicative":
            cls = schubert_ck(cfg.n, w, trunc=cfg.trunc)
        else:
            d = cfg.trunc or default_trunc(cfg.type, cfg.n, "additive", len(schubert_word(w)))
            cls = schubert(make_law("additive", d), w, trunc=d)
    else:
        word = parse_word(args.word)
        d = cfg.trunc or default_trunc(cfg.type, cfg.n, cfg.theory, len(word))
        cls = bott_samelson(make_law(cfg.theory, d), cfg.type, cfg.n, word, trunc=d)

    if cfg.theory == "multiplicative" and beta is not None:
        cls = specialize(cls, beta)
    if cfg.format == "latex":
        return cls.latex() + "\n"
    return cls.to_dict()


def verify_identities(args):
    suite = run_suite(args.suite, args.n, args.theory, args.seed)
    suite["schema"] = SCHEMA
    return suite


def verify_braid(args):
    if args.deg < 0:
        raise UsageError("--deg must be nonnegative")
    law = make_law(args.theory, args.deg + 5)
    try:
        report = braid_report(law, args.type, args.n, args.deg)
    except SeriesError as exc:
        raise UsageError(str(exc)) from None
    return {"schema": SCHEMA, "suite": "braid", "theory": args.theory, "type": args.type,
            "n": args.n, "degree": args.deg,
            "ok": all(e["status"] == "holds" for e in report), "checks": report}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schubcob",
                                     description="Schubert and flag classes in oriented cohomology.")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute a class")
    csub = compute.add_subparsers(dest="what", required=True)
    cls = csub.add_parser("class", help="flag, Schubert or Bott-Samelson class")
    cls.add_argument("--type", choices=("A", "C"), required=True)
    cls.add_argument("--theory", choices=THEORIES, required=True)
    cls.add_argument("--n", type=int, required=True)
    which = cls.add_mutually_exclusive_group(required=True)
    which.add_argument("--m", type=int, help="flag subbundle level")
    which.add_argument("--perm", help="Weyl group element, one-line (use --perm=-1,2) or cycles")
    which.add_argument("--word", help="comma-separated operator word, first letter acts first")
    cls.add_argument("--beta", choices=("0", "-1", "sym"), help="specialize beta (multiplicative)")
    cls.add_argument("--trunc", type=int, help="truncation degree")
    cls.add_argument("--format", choices=("json", "latex"), default="json")
    cls.set_defaults(handler=compute_class)

    verify = sub.add_parser("verify", help="run verification suites")
    vsub = verify.add_subparsers(dest="what", required=True)
    ident = vsub.add_parser("identities", help="named identity suite")
    ident.add_argument("--suite", choices=SUITES, required=True)
    ident.add_argument("--n", type=int, default=3)
    ident.add_argument("--theory", choices=THEORIES)
    ident.add_argument("--seed", type=int, default=0)
    ident.set_defaults(handler=verify_identities)

    braid = vsub.add_parser("braid", help="braid relations on monomials")
    braid.add_argument("--theory", choices=THEORIES, default="multiplicative")
    braid.add_argument("--type", choices=("A", "C"), required=True)
    braid.add_argument("--n", type=int, required=True)
    braid.add_argument("--deg", type=int, default=4)
    braid.set_defaults(handler=verify_braid)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.handler(args)
    except (UsageError, ClassError, WeylError, SeriesError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if isinstance(result, str):
        out.write(result)
        return 0
    out.write(dump_json(result))
    if args.command == "verify" and not result["ok"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())
