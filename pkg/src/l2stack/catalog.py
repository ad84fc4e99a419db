"""Regression catalog of worked linear-stack examples with known verdicts."""

from __future__ import annotations

import fnmatch
from dataclasses import dataclass, field

from ._exact import fmt_fraction
from .decide import closed_form_check, decide_l2, verify_verdict
from .reps import parse_rep
from .rootdata import build_root_datum

__all__ = ["CatalogCase", "CatalogReport", "catalog_cases", "run_catalog", "CATALOG_VERSION"]

CATALOG_VERSION = "1"

OPEN = "open"


@dataclass(frozen=True)
class CatalogCase:
    name: str
    group: str
    rep: str
    # True / False / "open"
    expected_l2: object
    # True / False / None (not applicable)
    expected_very_good: bool | None
    anchor: str


def _adjoint_cases():
    for g in ("A1", "A2", "A3", "B2", "G2"):
        for r in (1, 2, 3):
            yield CatalogCase(f"adjoint-{g}-r{r}", g, f"pow(adjoint,{r})", r > 1, None,
                              "adjoint powers: L2 iff r > 1")


def _sl2_cases():
    for n in range(5):
        good = n >= 3
        yield CatalogCase(f"sl2-V{n}", "A1", f"sl2({n})", good, good,
                          "SL2 weight criterion; SL2 very good iff L2")
    extra = [
        ("sl2-V1^2", "pow(sl2(1),2)", False),
        ("sl2-V1^3", "pow(sl2(1),3)", True),
        ("sl2-V1+V2", "sum(sl2(1),sl2(2))", True),
        ("sl2-V2^2", "pow(sl2(2),2)", True),
        ("sl2-V1+adjoint", "sum(sl2(1),adjoint)", True),
    ]
    for name, rep, good in extra:
        yield CatalogCase(name, "A1", rep, good, good, "SL2 weight criterion; SL2 very good iff L2")


def _config_cases():
    for r in range(2, 7):
        yield CatalogCase(f"config-sl2-r{r}", f"A1 x T{r}", f"config(standard,{r})", r >= 3, r >= 4,
                          "(P^1)^r / SL2 ambient stack: L2 for r >= 3; very good iff r >= 4")


def _sln_config_cases():
    for n, r in ((3, 3), (3, 4), (3, 5), (3, 6), (4, 6), (4, 7)):
        expected = True if r > 2 * (n - 1) else OPEN
        yield CatalogCase(f"appB-n{n}-r{r}", f"A{n - 1} x T{r}", f"config(standard,{r})", expected, None,
                          "(P^(n-1))^r / SL_n ambient stack: L2 for r > 2(n-1)")


def _torus_cases():
    yield CatalogCase("torus-T1-std", "T1", "weights[(1):1]", True, False,
                      "torus with finite kernel is L2; G_m on A^1 is not very good")
    yield CatalogCase("torus-T2-span", "T2", "weights[(1,0):1,(0,1):1,(-1,-1):1]", True, None,
                      "torus with finite kernel is L2")
    yield CatalogCase("torus-T2-nonspan", "T2", "weights[(1,1):1,(-1,-1):1]", False, None,
                      "torus with infinite kernel: E vanishes on a line")
    yield CatalogCase("torus-T3-nonspan", "T3", "weights[(1,0,0):2,(0,1,0):1]", False, None,
                      "torus with infinite kernel: E vanishes on a line")


def _bg_cases():
    for g in ("A1", "A2"):
        yield CatalogCase(f"bg-{g}", g, "zero", False, None,
                          "BG is L2 iff G(K) is compact; split groups are not")


def catalog_cases() -> list[CatalogCase]:
    cases = [*_torus_cases(), *_adjoint_cases(), *_sl2_cases(), *_config_cases(), *_sln_config_cases(),
             *_bg_cases()]
    return sorted(cases, key=lambda c: c.name)


def _tag(x) -> str:
    if x == OPEN:
        return OPEN
    return "L2" if x else "NOT_L2"


@dataclass
class CatalogReport:
    lines: list[str] = field(default_factory=list)
    table: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    findings: dict[str, bool] = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def text(self) -> str:
        return "\n".join(self.lines + self.table) + "\n"


def run_catalog(cases: list[CatalogCase] | None = None, pattern: str | None = None) -> CatalogReport:
    cases = catalog_cases() if cases is None else sorted(cases, key=lambda c: c.name)
    if pattern:
        cases = [c for c in cases if fnmatch.fnmatchcase(c.name, pattern)]
    report = CatalogReport()
    for case in cases:
        rd = build_root_datum(case.group)
        rep = parse_rep(case.rep, rd)
        verdict = decide_l2(rd, rep)
        report.verdicts[case.name] = verdict
        got = verdict.is_l2
        closed = closed_form_check(rd, rep)
        problems = []
        if not verify_verdict(rd, rep, verdict):
            problems.append("verdict failed re-verification")
        if closed is not None and closed != got:
            problems.append(f"closed form says {_tag(closed)}")
        if case.expected_l2 == OPEN:
            status = "finding"
            report.findings[case.name] = got
        elif case.expected_l2 != got:
            problems.append(f"expected {_tag(case.expected_l2)}")
        if problems:
            status = "fail"
            report.failures.append(f"{case.name}: {'; '.join(problems)}")
        elif case.expected_l2 != OPEN:
            status = "ok"
        report.lines.append(f"case={case.name} expected={_tag(case.expected_l2)} got={_tag(got)} "
                            f"M={fmt_fraction(verdict.max_value)} status={status}")
        if case.expected_very_good is not None:
            vg = "yes" if case.expected_very_good else "no"
            agree = "yes" if case.expected_very_good == got else "no"
            report.table.append(f"table=very_good case={case.name} very_good={vg} l2={_tag(got)} same={agree}")
    return report
