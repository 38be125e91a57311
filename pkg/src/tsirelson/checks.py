"""Engine-level verification suites: oracle agreement, unconditionality, certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .analysis import analyze, check_analysis
from .family import FamilyExpr, format_family
from .functional import Leaf, Node, eval_functional, validate_functional
from .norm import NormResult, norm_exact, norm_oracle
from .report import InequalityReport
from .sampling import random_vector, sign_and_mask
from .theta import as_theta
from .vector import SparseVector, parse_vector


def _close(a, b, rel: float) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= rel * max(1.0, abs(b))


def certificate_problems(family: FamilyExpr, theta, x: SparseVector, result: NormResult, rel: float = 1e-9) -> list[str]:
    """Everything wrong with a norm result's certificate (empty when sound)."""
    problems = []
    try:
        validate_functional(family, theta, result.certificate)
    except Exception as exc:
        return [f"certificate rejected: {exc}"]
    got = eval_functional(result.certificate, x, as_theta(theta).value)
    if not _close(got, result.value, rel):
        problems.append(f"certificate evaluates to {got}, norm is {result.value}")
    phi = result.certificate
    problems.extend(check_analysis(family, theta, phi, analyze(family, theta, phi)))
    return problems


@dataclass
class Auditor:
    """Collects certificate checks for every norm a suite computes."""

    rel: float = 1e-9
    checked: int = 0
    problems: list = field(default_factory=list)

    def norm(self, family: FamilyExpr, theta, x: SparseVector) -> NormResult:
        res = norm_exact(family, theta, x)
        self.checked += 1
        bad = certificate_problems(family, theta, x, res, self.rel)
        if bad:
            self.problems.append({"vector": x.to_literal(), "problems": bad})
        return res

    def attach(self, report: InequalityReport):
        report.params["certificates_checked"] = self.checked
        report.params["certificate_failures"] = len(self.problems)
        if self.problems:
            report.failures += len(self.problems)
            if report.counterexample is None:
                report.counterexample = {"kind": "certificate", **self.problems[0]}


def plain_norm(family, theta, x):
    return norm_exact(family, theta, x)


def verify_oracle(
    family: FamilyExpr,
    theta,
    samples: int = 500,
    seed: int = 0,
    max_supp: int = 7,
    rel: float = 1e-12,
    audit: Optional[Auditor] = None,
) -> InequalityReport:
    """Interval DP against the exhaustive oracle on random signed vectors."""
    spec = as_theta(theta)
    rng = random.Random(seed)
    report = InequalityReport(
        "oracle",
        f"norm_exact = norm_oracle (relative {rel:g}), |supp| <= {max_supp}",
        seed,
        params={"family": format_family(family), "theta": str(spec), "max_supp": max_supp, "rel": rel},
    )
    compute = audit.norm if audit else plain_norm
    for _ in range(samples):
        x = random_vector(rng, max_supp, window=max(12, 2 * max_supp), exact=spec.exact)
        dp = compute(family, spec, x).value
        ref = norm_oracle(family, spec, x)
        if isinstance(dp, Fraction) and isinstance(ref, Fraction):
            diff = abs(dp - ref)
        else:
            diff = abs(float(dp) - float(ref))
        report.observe(diff, rel * max(abs(float(ref)), 1e-300), 0.0, {"vector": x.to_literal()})
    if audit:
        audit.attach(report)
    return report


def verify_unconditional(
    family: FamilyExpr,
    theta,
    samples: int = 1000,
    seed: int = 0,
    max_supp: int = 8,
    tol: float = 1e-12,
    audit: Optional[Auditor] = None,
) -> InequalityReport:
    """Sign flips and coordinate zeroing never increase the norm."""
    spec = as_theta(theta)
    rng = random.Random(seed)
    report = InequalityReport(
        "unconditional",
        "||flip(x)|| <= ||x|| and ||mask(x)|| <= ||x||",
        seed,
        params={"family": format_family(family), "theta": str(spec), "max_supp": max_supp, "tol": tol},
    )
    compute = audit.norm if audit else plain_norm
    for _ in range(samples):
        x = random_vector(rng, max_supp, exact=spec.exact)
        signs, mask = sign_and_mask(rng, x)
        base = compute(family, spec, x).value
        flipped = SparseVector({k: signs[k] * v for k, v in x.items()})
        zeroed = SparseVector({k: v for k, v in x.items() if k not in mask})
        witness = {"vector": x.to_literal(), "signs": {str(k): s for k, s in signs.items()}, "mask": sorted(mask)}
        report.observe(compute(family, spec, flipped).value, base, tol, witness)
        report.observe(compute(family, spec, zeroed).value, base, tol, witness)
    if audit:
        audit.attach(report)
    return report


def recheck_engine(report: InequalityReport) -> bool:
    """Re-run an oracle/unconditional counterexample; True if it still fails."""
    from .family import parse_family
    from .theta import parse_theta

    ce = report.counterexample
    if ce is None:
        return False
    family = parse_family(report.params["family"])
    theta = parse_theta(report.params["theta"])
    x = parse_vector(ce["vector"])
    base = norm_exact(family, theta, x).value
    if report.claim == "oracle":
        ref = norm_oracle(family, theta, x)
        return not _close(base, ref, report.params["rel"])
    if report.claim == "unconditional":
        signs = {int(k): s for k, s in ce["signs"].items()}
        flipped = SparseVector({k: signs[k] * v for k, v in x.items()})
        zeroed = SparseVector({k: v for k, v in x.items() if k not in set(ce["mask"])})
        tol = report.params["tol"]
        return any(float(norm_exact(family, theta, y).value) > float(base) + tol for y in (flipped, zeroed))
    raise ValueError(f"not an engine claim: {report.claim}")
