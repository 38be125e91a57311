"""Command-line front end.

    tsirelson norm   --family schreier --theta 1/2 --vector "2:1,3:1,4:1,5:1"
    tsirelson verify step2 --n 2 --theta root:n=2,q=2 --m-max 32
    tsirelson sweep  growth --family finite-rank:2 --theta root:n=2,q=2 --m-max 16

stdout carries data, stderr diagnostics.  Exit codes: 0 success, 1 a
counterexample or failed check, 2 bad input, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Optional

from . import lp
from .checks import Auditor, certificate_problems, verify_oracle, verify_unconditional
from .errors import CapExceeded, HypothesisViolation, ParseError, TsirelsonError
from .family import FamilyExpr, format_family, is_admissible, parse_family, rank, truncate
from .functional import functional_to_json
from .norm import norm_exact
from .report import SCHEMA_VERSION, reports_to_csv
from .theta import ThetaSpec, parse_theta
from .vector import SparseVector, parse_vector

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    family: FamilyExpr
    theta: ThetaSpec
    vector: SparseVector = field(default_factory=SparseVector)
    output: str = "json"
    seed: int = 0
    caps: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, family="schreier", theta="1/2", vector="", output="json", seed=0, caps=None) -> RunConfig:
        if output not in ("json", "csv", "text"):
            raise ParseError(f"unknown output format {output!r}")
        return cls(parse_family(family), parse_theta(theta), parse_vector(vector), output, int(seed), dict(caps or {}))

    def format(self) -> dict:
        """Canonical literals; ``RunConfig.parse(**cfg.format())`` reproduces ``cfg``."""
        return {
            "family": format_family(self.family),
            "theta": str(self.theta),
            "vector": self.vector.to_literal(),
            "output": self.output,
            "seed": self.seed,
            "caps": dict(self.caps),
        }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _exact(v):
    return str(v) if isinstance(v, Fraction) else None


# ------------------------------------------------------------------ norm


def cmd_norm(args) -> int:
    cfg = RunConfig.parse(args.family, args.theta, args.vector, args.format, 0, {"dp": args.cap})
    res = norm_exact(cfg.family, cfg.theta, cfg.vector, cap=args.cap)
    out = {
        "schema_version": SCHEMA_VERSION,
        "family": format_family(cfg.family),
        "theta": str(cfg.theta),
        "vector": cfg.vector.to_literal(),
        **res.to_json(),
    }
    status = EXIT_OK
    if args.check:
        problems = certificate_problems(cfg.family, cfg.theta, cfg.vector, res) if cfg.vector else []
        out["check"] = {"passed": not problems, "problems": problems}
        if problems:
            status = EXIT_FAIL
            for p in problems:
                print(f"certificate check failed: {p}", file=sys.stderr)
    if cfg.output == "json":
        print(_dump(out))
    elif cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["schema_version", "family", "theta", "vector", "value", "value_exact", "certificate"])
        w.writerow([SCHEMA_VERSION, out["family"], out["theta"], out["vector"], repr(out["value"]),
                    out["value_exact"] or "", json.dumps(out["certificate"], separators=(",", ":"))])
        sys.stdout.write(buf.getvalue())
    else:
        print(f"{out['value_exact'] or repr(out['value'])}")
        print(f"certificate: {res.certificate}")
    return status


# ---------------------------------------------------------------- verify

_DEFAULT_SAMPLES = {"step1": 1000, "step3": 200, "step4": 100, "oracle": 500, "unconditional": 1000}


def cmd_verify(args) -> int:
    n = args.n
    theta = parse_theta(args.theta or (f"root:n={n},q=2" if args.claim.startswith("step") else "1/2"))
    family = parse_family(args.family) if args.family else None
    samples = args.samples if args.samples is not None else _DEFAULT_SAMPLES.get(args.claim, 0)
    audit = Auditor() if args.audit else None
    claim = args.claim
    if claim == "step1":
        rep = lp.verify_step1(n, theta, samples, args.seed, args.max_supp or 12, family, audit=audit)
    elif claim == "step2":
        rep = lp.verify_step2(n, theta, args.m_max, family, audit=audit)
    elif claim == "step3":
        rep = lp.verify_step3(n, theta, samples, args.seed, family=family, audit=audit)
    elif claim == "step4":
        rep = lp.verify_step4(n, theta, samples, args.seed, family=family, audit=audit)
    elif claim == "oracle":
        rep = verify_oracle(family or parse_family(f"finite-rank:{n}"), theta, samples, args.seed,
                            args.max_supp or 7, audit=audit)
    else:
        rep = verify_unconditional(family or parse_family(f"finite-rank:{n}"), theta, samples, args.seed,
                                   args.max_supp or 8, audit=audit)
    if args.format == "json":
        print(rep.dumps())
    elif args.format == "csv":
        sys.stdout.write(reports_to_csv([rep]))
    else:
        print(rep.summary())
    print(rep.summary(), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ----------------------------------------------------------------- sweep


def parse_grid(text: str) -> list[Decimal]:
    """``lo:hi:step`` inclusive of ``hi``, in exact decimal steps."""
    try:
        lo, hi, step = (Decimal(part) for part in text.split(":"))
    except (ValueError, InvalidOperation):
        raise ParseError(f"grid must be lo:hi:step, got {text!r}") from None
    if step <= 0:
        raise ParseError("grid step must be positive")
    out = []
    v = lo
    while v <= hi:
        out.append(v)
        v += step
    return out


def cmd_sweep(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.kind == "growth":
        family = parse_family(args.family)
        theta = parse_theta(args.theta)
        w.writerow(["schema_version", "family", "theta", "m", "norm", "norm_exact"])
        for m, v in lp.growth_probe(family, theta, args.m_max):
            w.writerow([SCHEMA_VERSION, format_family(family), str(theta), m, repr(float(v)), _exact(v) or ""])
    else:
        n = args.n
        grid = parse_grid(args.theta_grid)
        w.writerow(["schema_version", "n", "theta", "p", "samples", "seed", "c_low", "c_high", "lower_bound", "ok"])
        for g in grid:
            theta = parse_theta(str(g))
            pair = lp.p_exponent(n, theta)
            c_low, c_high = lp.equivalence_constants(n, theta, args.samples, args.seed, args.max_supp)
            bound = 1 / (2 * n)
            ok = c_low >= bound and c_high <= 1 + 1e-9
            w.writerow([SCHEMA_VERSION, n, str(theta), repr(pair.p), args.samples, args.seed,
                        repr(c_low), repr(c_high), repr(bound), int(ok)])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# ----------------------------------------------------------- family tools


def cmd_family(args) -> int:
    family = parse_family(args.family)
    out: dict = {"schema_version": SCHEMA_VERSION, "family": format_family(family), "rank": str(rank(family))}
    if args.blocks:
        try:
            blocks = json.loads(args.blocks)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad blocks JSON: {exc}") from None
        witness = is_admissible(family, blocks)
        out["blocks"] = blocks
        out["witness"] = list(witness) if witness is not None else None
    if args.truncate:
        out["truncation"] = [list(m) for m in truncate(family, args.truncate).members]
    print(_dump(out))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tsirelson", description="Exact Tsirelson-type norms and l^p checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="compute a norm with its certificate")
    p.add_argument("--family", default="schreier")
    p.add_argument("--theta", default="1/2")
    p.add_argument("--vector", required=True, help='"1:1,2:0.5" or JSON {"1": 1}')
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--check", action="store_true", help="re-validate the certificate")
    p.add_argument("--cap", type=int, default=None, help="DP support limit")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("claim", choices=["step1", "step2", "step3", "step4", "oracle", "unconditional"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--theta", default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-max", type=int, default=32)
    p.add_argument("--max-supp", type=int, default=None)
    p.add_argument("--audit", action="store_true", help="check every certificate along the way")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV tables over parameter grids")
    p.add_argument("kind", choices=["growth", "constants"])
    p.add_argument("--family", default="finite-rank:2")
    p.add_argument("--theta", default="root:n=2,q=2")
    p.add_argument("--m-max", type=int, default=16)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--theta-grid", default="0.55:0.95:0.1")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-supp", type=int, default=8)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("family", help="rank, admissibility and truncation of a family")
    p.add_argument("--family", required=True)
    p.add_argument("--blocks", default=None, help="JSON list of blocks, e.g. [[2],[3]]")
    p.add_argument("--truncate", type=int, default=None)
    p.set_defaults(func=cmd_family)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (TsirelsonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
