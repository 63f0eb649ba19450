"""Merino-Welsh checks on single matroids and sweeps over whole families."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .bounds import (
    ChainReport,
    check_cocircuit_chain,
    check_density_chain,
    check_loops_chain,
    density_threshold,
)
from .corpus import FamilySpec, Instance, expand
from .errors import EngineMismatch
from .matroid import (
    Matroid,
    dual,
    elements,
    is_u12_direct_sum,
    loops_and_coloops,
    min_cocircuit_size,
)
from .tutte import (
    TuttePolynomial,
    basis_count,
    evaluate,
    max_ground_size,
    nbc_count,
    tutte_delcon,
)

THEOREMS = ("density", "cocircuit", "loops")


@dataclass(frozen=True)
class MWReport:
    n: int
    r: int
    t20: int
    t02: int
    t11: int
    margin: int
    equality: bool
    u12_sum: bool
    hypothesis_ok: bool


@dataclass(frozen=True)
class HypothesisProfile:
    density_ok: bool
    cocircuit_ok: bool
    loops_ok: bool
    loopless: bool
    coloopless: bool
    min_cocircuit_size: Optional[int]
    loop_count: int


@dataclass
class TheoremAudit:
    applicable: bool
    conclusion: Optional[bool] = None
    chain: Optional[ChainReport] = None
    note: str = ""

    @property
    def steps_ok(self) -> Optional[bool]:
        return None if self.chain is None else self.chain.overall


@dataclass
class AuditReport:
    density: TheoremAudit
    cocircuit: TheoremAudit
    loops: TheoremAudit

    def items(self):
        return [(name, getattr(self, name)) for name in THEOREMS]


def mw_check(M: Matroid, T: Optional[TuttePolynomial] = None) -> MWReport:
    """Evaluate T(2,0) + T(0,2) >= 2 T(1,1), cross-checking each evaluation."""
    T = tutte_delcon(M) if T is None else T
    loops, coloops = loops_and_coloops(M)
    t20 = evaluate(T, 2, 0)
    t02 = evaluate(T, 0, 2)
    t11 = basis_count(M)
    if evaluate(T, 1, 1) != t11:
        raise EngineMismatch(f"T(1,1) differs from the basis count on {M!r}")
    if not loops and nbc_count(M) != t20:
        raise EngineMismatch(f"T(2,0) differs from the nbc count on {M!r}")
    if evaluate(tutte_delcon(dual(M)), 2, 0) != t02:
        raise EngineMismatch(f"T(0,2) differs from T*(2,0) on {M!r}")
    margin = t20 + t02 - 2 * t11
    return MWReport(
        n=M.n,
        r=M.r,
        t20=t20,
        t02=t02,
        t11=t11,
        margin=margin,
        equality=margin == 0,
        u12_sum=is_u12_direct_sum(M),
        hypothesis_ok=not loops and not coloops,
    )


def hypothesis_profile(M: Matroid) -> HypothesisProfile:
    loops, coloops = loops_and_coloops(M)
    m = min_cocircuit_size(M)
    density_ok = not coloops and M.r >= 4 and M.n >= density_threshold(M.r)
    return HypothesisProfile(
        density_ok=density_ok,
        cocircuit_ok=m is not None and m >= M.r + 1,
        loops_ok=not coloops and loops.bit_count() >= M.r - 1,
        loopless=not loops,
        coloopless=not coloops,
        min_cocircuit_size=m,
        loop_count=loops.bit_count(),
    )


def _density_audit(M: Matroid, T: TuttePolynomial) -> TheoremAudit:
    n, r = M.n, M.r
    t02 = evaluate(T, 0, 2)
    t11 = basis_count(M)
    chain = ChainReport()
    chain.add("T(0,2) >= 2^(n-r)", t02, 2 ** (n - r))
    chain.add("2^(n-r) >= 2C(n,r)", 2 ** (n - r), 2 * comb(n, r))
    chain.add("2C(n,r) >= 2T(1,1)", 2 * comb(n, r), 2 * t11)
    note = ""
    if r >= 5:
        for s in check_density_chain(n, r).steps:
            chain.steps.append(s._replace(label="bound: " + s.label))
    else:
        note = "numeric bound chain needs r >= 5; only the matroid-level steps are audited"
    chain.conclusion = t02 >= 2 * t11
    return TheoremAudit(True, chain.conclusion, chain, note)


def audit(M: Matroid, T: Optional[TuttePolynomial] = None,
          profile: Optional[HypothesisProfile] = None) -> AuditReport:
    T = tutte_delcon(M) if T is None else T
    profile = hypothesis_profile(M) if profile is None else profile
    out = {}
    out["density"] = _density_audit(M, T) if profile.density_ok else TheoremAudit(False)
    if profile.cocircuit_ok:
        chain = check_cocircuit_chain(M, T)
        out["cocircuit"] = TheoremAudit(True, chain.conclusion, chain)
    else:
        out["cocircuit"] = TheoremAudit(False)
    if profile.loops_ok:
        chain = check_loops_chain(M, T)
        out["loops"] = TheoremAudit(True, chain.conclusion, chain)
    else:
        out["loops"] = TheoremAudit(False)
    return AuditReport(**out)


@dataclass
class InstanceResult:
    ident: str
    matroid: Matroid
    report: MWReport
    profile: HypothesisProfile
    audit: AuditReport


def check_instance(inst: Instance) -> InstanceResult:
    M = inst.matroid
    T = tutte_delcon(M)
    profile = hypothesis_profile(M)
    return InstanceResult(inst.ident, M, mw_check(M, T), profile, audit(M, T, profile))


@dataclass
class TheoremCounts:
    hypothesis: int = 0
    conclusion: int = 0
    steps: int = 0


@dataclass
class SweepSummary:
    instances: int = 0
    skipped: list[str] = field(default_factory=list)
    hypothesis_instances: int = 0
    violations: list[dict] = field(default_factory=list)
    equality_cases: list[str] = field(default_factory=list)
    equality_mismatches: list[str] = field(default_factory=list)
    theorem_failures: list[dict] = field(default_factory=list)
    min_margin: Optional[int] = None
    theorems: dict[str, TheoremCounts] = field(
        default_factory=lambda: {t: TheoremCounts() for t in THEOREMS}
    )

    @property
    def conjecture_violated(self) -> bool:
        """Margin < 0, or margin = 0 off the direct sums of U(1,2), on a loopless coloopless instance."""
        return bool(self.violations or self.equality_mismatches)

    def add(self, res: InstanceResult):
        self.instances += 1
        rep = res.report
        if rep.hypothesis_ok:
            self.hypothesis_instances += 1
            if self.min_margin is None or rep.margin < self.min_margin:
                self.min_margin = rep.margin
            if rep.margin < 0:
                self.violations.append(violation_record(res))
            if rep.equality:
                self.equality_cases.append(res.ident)
            if rep.equality != rep.u12_sum:
                self.equality_mismatches.append(res.ident)
        for name, th in res.audit.items():
            if not th.applicable:
                continue
            counts = self.theorems[name]
            counts.hypothesis += 1
            counts.conclusion += bool(th.conclusion)
            counts.steps += bool(th.steps_ok)
            if not th.conclusion:
                self.theorem_failures.append({"theorem": name, **violation_record(res)})


def violation_record(res: InstanceResult) -> dict:
    rep = res.report
    return {
        "id": res.ident,
        "n": rep.n,
        "r": rep.r,
        "t20": rep.t20,
        "t02": rep.t02,
        "t11": rep.t11,
        "margin": rep.margin,
        "bases": ";".join(" ".join(map(str, elements(b))) for b in res.matroid.bases),
    }


def within_caps(M: Matroid, spec: FamilySpec) -> bool:
    cap = spec.max_n if spec.max_n is not None else max_ground_size()
    return M.n <= cap and len(M.bases) <= spec.max_bases


def sweep(spec: FamilySpec, jobs: int = 1) -> SweepSummary:
    """Check every instance the family config describes; output does not depend on ``jobs``."""
    summary = SweepSummary()
    todo = []
    for inst in expand(spec):
        if within_caps(inst.matroid, spec):
            todo.append(inst)
        else:
            summary.skipped.append(inst.ident)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_instance, todo, chunksize=8))
    else:
        results = [check_instance(i) for i in todo]
    for res in results:
        summary.add(res)
    return summary
