import pytest

from bruteforce import (blocks, brute, brute_halls, brute_subnormal, is_normal_set, part,
                        permutes_sets)
from sigmagroups.catalog import small_catalog
from sigmagroups.groups import Group, derived_subgroup
from sigmagroups.sigma import SYLOW, classify, nilpotent_residual, parse_sigma, sigma_table
from sigmagroups.structure import all_subgroups, normal_subgroups, quotient_group
from sigmagroups.theorems import (ConditionReport, cross_validate, is_PsigmaT_brute,
                                  is_PsigmaT_transitive, is_PST, robinson_complex, sc_by_chief_factors,
                                  theorem_B_check, theorem_C_check, theorem_D_check)
from sigmagroups.verdict import Caps, Verdict

GROUPS = ["S3", "S4", "A4", "D6", "SL(2,3)", "C7:C3@2", "C3 x S3", "Q8", "C5:C4@2", "D5 x C3",
          "S3 x C5", "D4", "C3:C4@2", "A5", "C9:C2@8", "C7:C3@2 x C2"]
SIGMAS = ["sylow", "2 3|*", "2|3 5|*", "3|*", "2 5|3|*", "2 3 5|*"]


def brute_psigmat(text, stext):
    """Every sigma-subnormal subgroup permutes with every Hall sigma_i-subgroup."""
    G, E, subs, normals = brute(text)
    sigma = parse_sigma(stext)
    halls = [brute_halls(E, subs, pi) for pi in blocks(sigma, len(E))]
    if not all(halls):
        return True
    return all(permutes_sets(A, H) for A in brute_subnormal(E, subs, sigma)
               for hs in halls for H in hs)


# -- Robinson complex --------------------------------------------------------------

def test_robinson_example_core(grp):
    G = grp("preset:ex18_core")
    v = robinson_complex(G, parse_sigma("2 3 5|7 43|*"), G)
    assert v.is_yes
    assert v.witness["complex"].summary() == {"D": 846720, "Z": 2, "k": 2, "components": [336, 5040]}
    assert [lab for lab, _ in v.witness["items"]] == ["i", "ii", "iii", "iv"]


def test_robinson_simple_group(grp):
    A5 = grp("A5")
    v = robinson_complex(A5, parse_sigma("2|3 5|*"), A5)
    assert v.is_yes
    assert v.witness["complex"].summary() == {"D": 60, "Z": 1, "k": 1, "components": [60]}
    # with one block covering pi(A5) the group is sigma-nilpotent, not sigma-perfect
    v = robinson_complex(A5, parse_sigma("2 3 5|*"), A5)
    assert v.is_no and dict(v.witness["items"])["i"].is_no


def test_robinson_abelian_d(grp):
    G = grp("C6")
    v = robinson_complex(G, SYLOW, G)
    items = dict(v.witness["items"])
    assert v.is_no and items["ii"].is_no


def test_robinson_not_normal(grp):
    S3 = grp("S3")
    assert robinson_complex(S3, SYLOW, Group([tuple([1, 0, 2])], 3)).is_no


def test_robinson_not_maximal(grp):
    # (A5, 1; A5) inside A5 x A5 misses the larger complex on the whole group
    G = grp("A5 x A5")
    sigma = parse_sigma("2|3 5|*")
    A = [N for N in normal_subgroups(G) if N.order == 60][0]
    v = robinson_complex(G, sigma, A)
    assert v.is_no and dict(v.witness["items"])["iv"].is_no
    assert robinson_complex(G, sigma, G).is_yes


# -- condition reports -------------------------------------------------------------

def test_condition_report_overall():
    y, n, u = Verdict.yes(), Verdict.no(), Verdict.undecided("cap")
    assert ConditionReport.of([("a", y), ("b", y)]).overall.is_yes
    assert ConditionReport.of([("a", u), ("b", n)]).overall.is_no
    assert not ConditionReport.of([("a", y), ("b", u)]).overall.decided


# -- sigma-soluble checker ---------------------------------------------------------

def test_theorem_b_examples(grp):
    assert theorem_B_check(grp("S3"), SYLOW).overall.is_yes
    G = grp("C3:C4@2")
    assert theorem_B_check(G, SYLOW).overall.value == is_PsigmaT_brute(G, SYLOW).value
    for text in ("Q8", "C12", "D4"):
        r = theorem_B_check(grp(text), SYLOW)
        assert r.overall.is_yes


def test_theorem_b_inapplicable(grp):
    r = theorem_B_check(grp("A5"), SYLOW)
    assert not r.overall.decided and "inapplicable" in r.overall.reason


# -- general checker ---------------------------------------------------------------

def test_theorem_c_examples(grp):
    A5 = grp("A5")
    one = parse_sigma("2 3 5|*")
    r = theorem_C_check(A5, one)
    assert r.overall.is_yes and is_PsigmaT_brute(A5, one).is_yes
    S4 = grp("S4")
    r = theorem_C_check(S4, SYLOW)
    assert r.overall.is_no and is_PsigmaT_brute(S4, SYLOW).is_no


def test_theorem_c_explicit_d(grp):
    G = grp("preset:ex18_core")
    sigma = parse_sigma("2 3 5|7 43|*")
    r = theorem_C_check(G, sigma, D=G)
    assert r.item("D").is_yes and r.item("ii").is_yes and r.item("iii").is_yes


def test_theorem_c_kmax(grp):
    G = grp("SL(2,5) x SL(2,5)")
    sigma = parse_sigma("2|3 5|*")
    r = theorem_C_check(G, sigma, caps=Caps(kmax=1))
    assert r.item("ii").is_yes
    assert not r.item("iii").decided and "kmax" in r.item("iii").reason
    assert theorem_C_check(G, sigma).item("iii").decided


# -- sigma-SC checker --------------------------------------------------------------

def test_theorem_d_examples(grp):
    G = grp("preset:ex15iv")
    sigma = parse_sigma("2 3 5|7 43|*")
    assert theorem_D_check(G, sigma).overall.is_yes
    assert theorem_D_check(grp("S3"), SYLOW).overall.is_yes
    S4 = grp("S4")
    assert theorem_D_check(S4, SYLOW).overall.value == sc_by_chief_factors(S4, SYLOW).value


# -- oracles -----------------------------------------------------------------------

def test_oracle_examples(grp):
    assert is_PsigmaT_brute(grp("A5"), parse_sigma("2 3 5|*")).is_yes
    assert is_PsigmaT_brute(grp("S4"), SYLOW).is_no
    assert is_PsigmaT_brute(grp("C1"), SYLOW).is_yes
    assert is_PsigmaT_transitive(grp("C1"), SYLOW).is_yes
    assert is_PsigmaT_transitive(grp("Q8"), SYLOW).is_yes
    assert is_PST(grp("S3")).is_yes and is_PST(grp("Q8")).is_yes and is_PST(grp("S4")).is_no


def test_oracle_caps(grp):
    v = is_PsigmaT_brute(grp("S5"), SYLOW, Caps(subgroup_cap=100))
    assert not v.decided and "subgroup_cap" in v.reason


@pytest.mark.parametrize("text", GROUPS)
@pytest.mark.parametrize("stext", SIGMAS)
def test_oracles_match_definition(text, stext):
    G = brute(text)[0]
    sigma = parse_sigma(stext)
    want = brute_psigmat(text, stext)
    assert is_PsigmaT_brute(G, sigma).is_yes == want
    assert is_PsigmaT_transitive(G, sigma).is_yes == want


# -- permutable subgroups: closure over core ---------------------------------------

@pytest.mark.parametrize("text", GROUPS)
@pytest.mark.parametrize("stext", SIGMAS)
def test_normal_closure_over_core_is_sigma_nilpotent(text, stext):
    G, E, subs, normals = brute(text)
    sigma = parse_sigma(stext)
    halls = [brute_halls(E, subs, pi) for pi in blocks(sigma, len(E))]
    if not all(halls):
        return
    for A in subs:
        if not all(permutes_sets(A, H) for hs in halls for H in hs):
            continue
        closure = min((N for N in normals if A <= N), key=len)
        core = max((N for N in normals if N <= A), key=len)
        # closure/core has a normal Hall sigma_i-subgroup for each block
        idx = len(closure) // len(core)
        for pi in blocks(sigma, idx):
            want = len(core) * part(idx, pi)
            assert any(core <= M <= closure and len(M) == want and is_normal_set(M, closure)
                       for M in subs)
    assert sigma_table(G, sigma).theorem_a_violations() == []


# -- cross-validation and catalog-wide properties ----------------------------------

def test_cross_validate_trivial(grp):
    r = cross_validate(grp("C1"), SYLOW)
    assert r.consistent
    assert r.oracle.is_yes and r.transitive.is_yes
    assert r.theorem_c.overall.is_yes and r.theorem_d.overall.is_yes
    assert all(v.is_yes for k, v in r.flags.items())


def test_cross_validate_fixture(grp):
    r = cross_validate(grp("preset:ex15iii"), parse_sigma("7|29|2 3 5|*"))
    assert r.consistent
    assert r.flags["sigma_supersoluble"].is_yes and r.flags["soluble"].is_no


@pytest.fixture(scope="module")
def catalog60():
    return [(e, G) for e, G in small_catalog(60)]


def test_hall_pst_psigmat_groups_are_sigma_sc(catalog60):
    seen = 0
    for _, G in catalog60:
        for stext in SIGMAS:
            sigma = parse_sigma(stext)
            r = cross_validate(G, sigma)
            if r.oracle.is_yes and r.theorem_c.item("H").is_yes:
                assert r.flags["sigma_sc"].is_yes
                seen += 1
    assert seen > 50


def test_sylow_partition_reproduces_classical_characterizations(catalog60):
    for _, G in catalog60:
        r = cross_validate(G, SYLOW)
        assert r.theorem_c.item("H").is_yes       # nilpotent Sylow subgroups are PST
        assert r.theorem_c.overall.value == r.oracle.value
        assert r.theorem_d.overall.value == r.flags["sigma_sc"].value


def test_sc_and_supersoluble_closure(catalog60):
    for _, G in catalog60[:60]:
        for stext in ("sylow", "2 3|*", "2|3 5|*"):
            sigma = parse_sigma(stext)
            f = classify(G, sigma)
            if f["sigma_sc"].is_yes:
                for N in normal_subgroups(G):
                    assert classify(N, sigma)["sigma_sc"].is_yes
                    assert classify(quotient_group(G, N), sigma)["sigma_sc"].is_yes
            if f["sigma_supersoluble"].is_yes:
                for H in all_subgroups(G):
                    assert classify(H, sigma)["sigma_supersoluble"].is_yes


def test_theorem_d_d_is_soluble_residual_of_nilpotent_residual(grp):
    G = grp("preset:ex18_core")
    sigma = parse_sigma("2 3 5|7 43|*")
    N = nilpotent_residual(G, sigma)
    assert derived_subgroup(N).order == N.order == 846720
