"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Runtime limits are the pinned budgets; all other checks are exact.
"""

import random
import time

import pytest

from sigmagroups.catalog import group_from_text, print_group_expr, small_catalog
from sigmagroups.groups import factors, join
from sigmagroups.report import analyze
from sigmagroups.sigma import SYLOW, nilpotent_residual, parse_sigma, sigma_table
from sigmagroups.structure import chief_series
from sigmagroups.theorems import (cross_validate, is_PsigmaT_brute, robinson_complex,
                                  theorem_B_check, theorem_C_check)
from sigmagroups.verdict import InconsistencyError

LIMIT_EX15III_S = 10
LIMIT_EX15IV_S = 5 * 60
LIMIT_SWEEP_S = 10 * 60
SWEEP_BOUND = 200
SWEEP_SIGMAS = ["sylow", "2 3|*", "2|3 5|*"]
JH_GROUPS = 50


def report_line(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")


def test_criterion_1_ex15iii(capsys):
    t0 = time.perf_counter()
    G = group_from_text("A5 x (C29:C7@7)")
    rep = analyze(G, parse_sigma("7|29|2 3 5|*"), "A5 x (C29:C7@7)")
    dt = time.perf_counter() - t0
    got = (rep["residuals"]["n_sigma"], rep["flags"]["sigma_supersoluble"], rep["flags"]["soluble"],
           rep["flags"]["sigma_nilpotent"])
    ok = got == (29, "yes", "no", "no") and dt < LIMIT_EX15III_S
    report_line(capsys, 1, ok, f"|N residual|, supersol, sol, nilp = {got}; {dt:.2f}s < {LIMIT_EX15III_S}s")
    assert ok


def test_criterion_2_ex15iv_and_core(capsys):
    t0 = time.perf_counter()
    sigma = parse_sigma("2 3 5|7 43|*")
    G = group_from_text("SL(2,7) x A7 x A5 x (C43:C7@4)")
    rep = analyze(G, sigma, "SL(2,7) x A7 x A5 x (C43:C7@4)")
    R = nilpotent_residual(G, sigma)
    fs = factors(G)
    residual_is_core = R == join(fs[0], fs[1])
    rc = robinson_complex(G, sigma, R)
    items = dict(rc.witness["items"])
    cx = rc.witness["complex"]
    first_three = all(items[k].is_yes for k in ("i", "ii", "iii"))
    iv = items["iv"]
    core = group_from_text("preset:ex18_core")
    rc_core = robinson_complex(core, sigma, core)
    core_ok = rc_core.is_yes and all(v.is_yes for _, v in rc_core.witness["items"])
    dt = time.perf_counter() - t0
    ok = (rep["residuals"]["n_sigma"] == 846720 and residual_is_core
          and rep["flags"]["sigma_sc"] == "yes" and rep["flags"]["sigma_supersoluble"] == "no"
          and cx is not None and cx.k == 2 and cx.Z.order == 2 and first_three
          and (iv.is_yes or (not iv.decided and core_ok)) and core_ok and dt < LIMIT_EX15IV_S)
    summary = cx.summary() if cx else None
    report_line(capsys, 2, ok, f"residual 846720 = SL(2,7) x A7: {residual_is_core}; complex {summary}; "
                               f"(iv) {iv.value}; ex18_core full check {core_ok}; {dt:.1f}s < {LIMIT_EX15IV_S}s")
    assert ok


@pytest.fixture(scope="module")
def sweep_rows():
    t0 = time.perf_counter()
    rows, errors = [], []
    for expr, G in small_catalog(SWEEP_BOUND):
        for stext in SWEEP_SIGMAS:
            sigma = parse_sigma(stext)
            try:
                cr = cross_validate(G, sigma)
                ST = sigma_table(G, sigma)
                viol = len(ST.theorem_a_violations()) if ST.full else 0
            except InconsistencyError as exc:
                errors.append((print_group_expr(expr), stext, str(exc)))
                continue
            rows.append((print_group_expr(expr), stext, cr, viol))
    return rows, errors, time.perf_counter() - t0


def test_criterion_3_oracle_equivalence(sweep_rows, capsys):
    rows, errors, dt = sweep_rows
    undecided = sum(1 for *_, cr, _ in rows if not (cr.oracle.decided and cr.transitive.decided))
    differ = sum(1 for *_, cr, _ in rows if cr.oracle.value != cr.transitive.value)
    ok = not errors and undecided == 0 and differ == 0 and dt < LIMIT_SWEEP_S
    report_line(capsys, 3, ok, f"{len(rows)} rows, undecided {undecided}, disagreements {differ}, "
                               f"route errors {len(errors)}; sweep {dt:.0f}s < {LIMIT_SWEEP_S}s")
    assert ok


def test_criterion_4_theorem_b(sweep_rows, capsys):
    rows, _, _ = sweep_rows
    sub = [cr for *_, cr, _ in rows if cr.flags["sigma_soluble"].is_yes]
    same = sum(1 for cr in sub if cr.theorem_b.overall.value == cr.oracle.value)
    ok = bool(sub) and same == len(sub)
    report_line(capsys, 4, ok, f"theorem_B_check = oracle on {same}/{len(sub)} sigma-soluble rows")
    assert ok


def test_criterion_5_theorem_c(sweep_rows, capsys):
    rows, _, _ = sweep_rows
    sub = [cr for *_, cr, _ in rows if cr.theorem_c.item("H").is_yes]
    same = sum(1 for cr in sub if cr.theorem_c.overall.value == cr.oracle.value)
    A5 = group_from_text("A5")
    one = parse_sigma("2 3 5|*")
    tc = theorem_C_check(A5, one)
    a5 = tc.item("H").is_yes and tc.overall.is_yes and is_PsigmaT_brute(A5, one).is_yes
    ok = bool(sub) and same == len(sub) and a5
    report_line(capsys, 5, ok, f"theorem_C_check = oracle on {same}/{len(sub)} rows passing (H); "
                               f"A5 with 2 3 5|* is Yes: {a5}")
    assert ok


def test_criterion_6_theorem_d(sweep_rows, capsys):
    rows, _, _ = sweep_rows
    dec = [cr for *_, cr, _ in rows if cr.theorem_d.overall.decided and cr.sc_direct.decided]
    same = sum(1 for cr in dec if cr.theorem_d.overall.value == cr.sc_direct.value)
    ok = bool(dec) and same == len(dec) and len(dec) == len(rows)
    report_line(capsys, 6, ok, f"theorem_D_check = chief-factor simplicity on {same}/{len(dec)} decidable rows "
                               f"({len(rows)} total)")
    assert ok


def test_criterion_7_classical(sweep_rows, capsys):
    rows, _, _ = sweep_rows
    verdicts = {}
    agree = True
    for text in ("Q8", "S3", "S4"):
        G = group_from_text(text)
        o = is_PsigmaT_brute(G, SYLOW)
        b = theorem_B_check(G, SYLOW).overall
        c = theorem_C_check(G, SYLOW).overall
        verdicts[text] = o.value
        agree = agree and b.value == o.value == c.value
    violations = sum(v for *_, v in rows)
    ok = verdicts == {"Q8": "yes", "S3": "yes", "S4": "no"} and agree and violations == 0
    report_line(capsys, 7, ok, f"PST verdicts {verdicts}, checkers agree {agree}; "
                               f"A^G/A_G violations over the sweep {violations}")
    assert ok


def test_criterion_8_jordan_holder(capsys):
    rng = random.Random(2024)
    cat = [G for _, G in small_catalog(SWEEP_BOUND)]
    picked = rng.sample(cat, JH_GROUPS)
    bad = [G.order for G in picked
           if chief_series(G, seed=1).descriptors() != chief_series(G, seed=2).descriptors()]
    ok = not bad
    report_line(capsys, 8, ok, f"{JH_GROUPS} groups, seeds 1 and 2, mismatches {len(bad)}")
    assert ok


def test_sweep_flags_are_consistent(sweep_rows):
    rows, _, _ = sweep_rows
    assert all(cr.consistent for *_, cr, _ in rows)
