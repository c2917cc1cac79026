"""Robinson sigma-complexes, condition checkers for the PsigmaT
characterisations, the two brute-force PsigmaT oracles and the harness
that compares them.

Power-automorphism tests only look at generators: the elements of G that
induce power automorphisms on a normal section form a subgroup, so a
generating set decides the whole group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .arith import is_prime, pi_part, primes_of
from .groups import (Group, center, derived_subgroup, is_normal, join, o_upper,
                     soluble_residual, trivial_group)
from .sigma import (SYLOW, _power_automorphism_failure, _step_orders, chief_factors_below,
                    classify, complete_hall_set, hall_pi, hall_subgroup,
                    nilpotent_residual, radical, satisfies_N_sigma_i, sigma_table,
                    supersoluble_residual)
from .structure import describe_factor, normal_lattice, quotient_group
from .verdict import (DEFAULT_CAPS, CapExceeded, InconsistencyError, Verdict, conjoin,
                      decide)


@dataclass
class RobinsonComplex:
    D: Group
    Z: Group
    components: list

    @property
    def k(self):
        return len(self.components)

    def summary(self):
        return {"D": self.D.order, "Z": self.Z.order, "k": self.k,
                "components": [U.order for U in self.components]}


@dataclass
class ConditionReport:
    overall: Verdict
    items: list = field(default_factory=list)   # (label, Verdict)

    @classmethod
    def of(cls, items):
        return cls(conjoin(v for _, v in items), list(items))

    def item(self, label):
        for lab, v in self.items:
            if lab == label:
                return v
        raise KeyError(label)

    def to_json(self):
        return {"overall": self.overall.to_json(),
                "items": {lab: v.to_json() for lab, v in self.items}}


# --------------------------------------------------------------------------
# Robinson sigma-complex

def robinson_complex(G: Group, sigma, D: Group, caps=None) -> Verdict:
    """Check (D, Z(D); U_1..U_k) against the four defining conditions.

    The witness is a dict with the complex (when conditions (i)-(iii)
    hold) and the per-condition verdicts.
    """
    caps = caps or DEFAULT_CAPS
    if not is_normal(G, D):
        return Verdict.no(reason="D is not normal in G")
    L = normal_lattice(G, caps)
    d = L.index(D)
    items, cx = _complex_items(G, sigma, L, d, caps)
    if all(v.is_yes for _, v in items[:3]):
        items.append(("iv", decide(_maximal, G, sigma, L, d, caps)))
    else:
        items.append(("iv", Verdict.undecided("earlier condition failed")))
    overall = conjoin(v for _, v in items)
    return Verdict(overall.value, overall.reason,
                   {"complex": cx, "items": items})


def _complex_items(G, sigma, L, d, caps):
    D = L.subs[d]
    Z = center(D, caps.element_cap)
    z = L.index(Z)
    perfect = all(o_upper(D, b.primes_of(D.order)).order == D.order
                  for b in sigma.blocks_meeting(D.order))
    items = [("i", Verdict.of(perfect, reason="" if perfect else "D is not sigma-perfect"))]
    comps = [k for k in L.covers(z) if L.le(k, d)]
    ok = True
    why = ""
    if D.order > 1 and not comps:
        ok, why = False, "D = Z(D) has no non-abelian simple chief factors"
    for k in comps:
        f = describe_factor(L.subs[k], Z, caps)
        if f.is_abelian or not f.is_simple:
            ok, why = False, f"chief factor of order {f.order} over Z(D) is not non-abelian simple"
            break
    if ok:
        prod = 1
        for k in comps:
            prod *= L.subs[k].order // Z.order
        if prod != D.order // Z.order:
            ok, why = False, "D/Z(D) is not the product of the minimal normal subgroups over Z(D)"
    items.append(("ii", Verdict.of(ok, reason=why)))
    cyc = all(is_prime(o) for o in _step_orders(L, 0, z))
    items.append(("iii", Verdict.of(cyc, reason="" if cyc else "non-cyclic chief factor below Z(D)")))
    cx = RobinsonComplex(D, Z, [L.subs[k] for k in comps]) if ok else None
    return items, cx


def _maximal(G, sigma, L, d, caps):
    for k in range(len(L)):
        if L.le(k, d):
            continue
        items, _ = _complex_items(G, sigma, L, k, caps)
        if all(v.is_yes for _, v in items):
            return Verdict.no(witness={"larger": L.subs[k].order},
                              reason="a normal subgroup outside D satisfies (i)-(iii)")
    return Verdict.yes()


# --------------------------------------------------------------------------
# oracles

def is_PsigmaT_brute(G: Group, sigma, caps=None) -> Verdict:
    """Every sigma-subnormal subgroup is sigma-permutable (route R1)."""
    return decide(lambda: sigma_table(G, sigma, caps).psigmat_brute())


def is_PsigmaT_transitive(G: Group, sigma, caps=None) -> Verdict:
    """The transitivity definition, checked over all pairs K <= H <= G."""
    return decide(lambda: sigma_table(G, sigma, caps).psigmat_transitive())


def is_PST(G: Group, caps=None) -> Verdict:
    return is_PsigmaT_brute(G, SYLOW, caps)


# --------------------------------------------------------------------------
# the sigma-soluble checker

def theorem_B_check(G: Group, sigma, caps=None) -> ConditionReport:
    caps = caps or DEFAULT_CAPS
    sol = classify_flag(G, sigma, "sigma_soluble", caps)
    if not sol.is_yes:
        v = Verdict.undecided("inapplicable: G is not sigma-soluble" if sol.is_no else sol.reason)
        return ConditionReport(v, [("applicable", v)])
    D = nilpotent_residual(G, sigma)
    items = []
    items.append(("D abelian", Verdict.of(D.is_abelian())))
    hall = gcd(D.order, G.order // D.order) == 1
    items.append(("D Hall", Verdict.of(hall)))
    items.append(("D odd", Verdict.of(D.order % 2 == 1)))
    if hall:
        items.append(("complement", decide(_complement_nilpotent, G, sigma, D, caps)))
    else:
        items.append(("complement", Verdict.undecided("D is not a Hall subgroup")))
    if D.is_abelian():
        bad = decide(lambda: Verdict.of(_power_automorphism_failure(D, trivial_group(D.degree),
                                                                    list(G.gens), caps) is None))
        items.append(("power automorphisms", bad))
    else:
        items.append(("power automorphisms", Verdict.no(reason="D is not abelian")))
    if hall:
        items.append(("normal complements", decide(_normal_complements, G, sigma, D, caps)))
    else:
        items.append(("normal complements", Verdict.undecided("D is not a Hall subgroup")))
    return ConditionReport.of(items)


def classify_flag(G, sigma, flag, caps):
    try:
        return classify(G, sigma, caps)[flag]
    except CapExceeded as e:
        return Verdict.undecided(e.reason)


def _complement_nilpotent(G, sigma, D, caps):
    # a complement of the normal Hall subgroup D is a Hall pi(D)'-subgroup
    rest = set(primes_of(G.order)) - set(primes_of(D.order))
    v = hall_pi(G, rest, caps)
    if not v.is_yes:
        return v
    M = v.witness
    nil = nilpotent_residual(M, sigma).order == 1
    return Verdict.of(nil, witness={"M": M.order})


def _normal_complements(G, sigma, D, caps):
    # O = O_{sigma_i}(D) is a normal Hall subgroup of a Hall sigma_i-subgroup H,
    # so a normal complement exists iff |O^{pi(O)}(H)| = |H|/|O|.
    for b in sigma.blocks_meeting(G.order):
        pi = b.primes_of(D.order)
        if not pi:
            continue
        v = hall_subgroup(G, sigma, b, caps)
        if not v.is_yes:
            return v
        H = v.witness
        if o_upper(H, pi).order != H.order // pi_part(D.order, pi):
            return Verdict.no(witness={"block": b.label}, reason=f"no normal complement for block {b.label}")
    return Verdict.yes()


# --------------------------------------------------------------------------
# the general checker

def theorem_C_check(G: Group, sigma, caps=None, D=None) -> ConditionReport:
    caps = caps or DEFAULT_CAPS
    items = [("H", decide(_hypothesis_H, G, sigma, caps))]
    if D is None:
        try:
            D = supersoluble_residual(G, sigma, caps)
        except CapExceeded as e:
            v = Verdict.undecided(e.reason)
            items += [("D", v), ("i", v), ("ii", v), ("iii", v)]
            return ConditionReport.of(items)
    perfect = nilpotent_residual(D, sigma).order == D.order
    items.append(("D", Verdict.of(perfect, witness={"D": D.order},
                                  reason="" if perfect else "D is not sigma-perfect")))
    items.append(("i", decide(_quotient_condition, G, sigma, D, caps)))
    if D.order == 1:
        items.append(("ii", Verdict.yes(reason="D = 1")))
        items.append(("iii", Verdict.yes(reason="D = 1")))
        return ConditionReport.of(items)
    rc = decide(robinson_complex, G, sigma, D, caps)
    items.append(("ii", rc))
    cx = rc.witness["complex"] if isinstance(rc.witness, dict) else None
    if cx is None:
        items.append(("iii", Verdict.undecided("no Robinson complex on D")))
    else:
        items.append(("iii", decide(_condition_iii, G, sigma, cx, caps)))
    return ConditionReport.of(items)


def _hypothesis_H(G, sigma, caps):
    hs = complete_hall_set(G, sigma, caps)
    if not hs.is_yes:
        return hs
    verdicts = [(lab, is_PST(H, caps)) for lab, H in hs.witness.items()]
    v = conjoin(v for _, v in verdicts)
    return Verdict(v.value, v.reason, {lab: x.to_json() for lab, x in verdicts})


def _quotient_condition(G, sigma, D, caps):
    Q = quotient_group(G, D, caps)
    sol = classify_flag(Q, sigma, "sigma_soluble", caps)
    if not sol.is_yes:
        return sol
    b = theorem_B_check(Q, sigma, caps).overall
    o = is_PsigmaT_brute(Q, sigma, caps)
    if b.decided and o.decided and b.value != o.value:
        raise InconsistencyError(f"on G/D: theorem_b says {b.value}, oracle says {o.value}")
    v = b if b.decided else o
    return Verdict(v.value, v.reason, {"theorem_b": b.to_json(), "oracle": o.to_json()})


def _condition_iii(G, sigma, cx, caps):
    blocks = [b for b in sigma.blocks_meeting(G.order) if b.primes_of(cx.Z.order)]
    if not blocks:
        return Verdict.yes(reason="pi(Z(D)) is empty")
    k = cx.k
    subsets = [()]
    if k > 1:
        if k > caps.kmax:
            return Verdict.undecided(f"k = {k} exceeds kmax = {caps.kmax}")
        subsets += [c for r in range(1, k) for c in itertools.combinations(range(k), r)]
    derived = [derived_subgroup(U) for U in cx.components]
    for sub in subsets:
        M = join(*[derived[i] for i in sub]) if sub else None
        for b in blocks:
            v = satisfies_N_sigma_i(G, sigma, b, caps, modulo=M)
            if not v.is_yes:
                return Verdict(v.value, v.reason, {"subset": list(sub), "block": b.label})
    return Verdict.yes()


# --------------------------------------------------------------------------
# the sigma-SC checker

def theorem_D_check(G: Group, sigma, caps=None) -> ConditionReport:
    caps = caps or DEFAULT_CAPS
    N = nilpotent_residual(G, sigma)
    D = soluble_residual(N)
    items = []
    u = decide(lambda: Verdict.yes(supersoluble_residual(G, sigma, caps)))
    if u.decided:
        same = u.witness.order == D.order and D.is_subgroup_of(u.witness)
        items.append(("i", Verdict.of(same, witness={"D": D.order, "U": u.witness.order})))
    else:
        items.append(("i", u))
    if D.order == 1:
        items.append(("ii", Verdict.yes(reason="D = 1")))
        return ConditionReport.of(items)
    rc = decide(robinson_complex, G, sigma, D, caps)
    items.append(("ii", rc))
    if rc.decided:
        cx = rc.witness["complex"] if isinstance(rc.witness, dict) else None
        if cx is not None:
            rad = decide(lambda: Verdict.yes(radical(D, sigma, "soluble", caps)))
            if rad.decided:
                eq = rad.witness.order == cx.Z.order and cx.Z.is_subgroup_of(rad.witness)
                items.append(("Z(D) = soluble radical", Verdict.of(eq)))
            else:
                items.append(("Z(D) = soluble radical", rad))
    return ConditionReport.of(items)


def sc_by_chief_factors(G, sigma, caps=None) -> Verdict:
    """sigma-SC directly: every chief factor below G^{N_sigma} is simple."""
    return decide(lambda: Verdict.of(all(f.is_simple for f in
                                         chief_factors_below(G, nilpotent_residual(G, sigma), caps))))


# --------------------------------------------------------------------------
# cross-validation

@dataclass
class CrossReport:
    flags: dict
    oracle: Verdict
    transitive: Verdict
    theorem_b: ConditionReport
    theorem_c: ConditionReport
    theorem_d: ConditionReport
    sc_direct: Verdict
    disagreements: list

    @property
    def consistent(self):
        return not self.disagreements


def cross_validate(G: Group, sigma, caps=None) -> CrossReport:
    """Run the classification, both oracles and the three checkers, and
    list every decidable disagreement."""
    caps = caps or DEFAULT_CAPS
    flags = classify(G, sigma, caps)
    oracle = is_PsigmaT_brute(G, sigma, caps)
    trans = is_PsigmaT_transitive(G, sigma, caps)
    tb = theorem_B_check(G, sigma, caps)
    tc = theorem_C_check(G, sigma, caps)
    td = theorem_D_check(G, sigma, caps)
    sc = flags["sigma_sc"]
    bad = []

    def cmp(name, a, b):
        if a.decided and b.decided and a.value != b.value:
            bad.append(f"{name}: {a.value} vs {b.value}")

    cmp("oracle vs transitive", oracle, trans)
    if flags["sigma_soluble"].is_yes:
        cmp("theorem_b vs oracle", tb.overall, oracle)
    if tc.item("H").is_yes:
        cmp("theorem_c vs oracle", tc.overall, oracle)
    cmp("theorem_d_sc vs sigma_sc flag", td.overall, sc)
    direct = sc_by_chief_factors(G, sigma, caps)
    cmp("sigma-SC flag vs chief factors", sc, direct)
    return CrossReport(flags, oracle, trans, tb, tc, td, direct, bad)
