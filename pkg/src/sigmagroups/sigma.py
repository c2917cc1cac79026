"""Partitions of the primes and everything indexed by them.

A ``SigmaPartition`` lists some blocks explicitly and may carry a rest
block ``*`` holding every unlisted prime.  Without ``*``, an unlisted
prime forms a block of its own, so the map prime -> block is total.
Blocks that do not meet the group order are skipped everywhere: their
Hall subgroups are trivial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .arith import is_prime, pi_part, primes_of
from .groups import (Group, Semidirect, core, direct_of, factors, intersection,
                     is_normal, is_soluble, o_upper, soluble_residual, subgroup, trivial_group,
                     _canonical_rep)
from .perms import conj, mul
from .structure import (chief_series, normal_lattice, sylow, table,
                        _grow_pi_subgroup)
from .verdict import (DEFAULT_CAPS, CapExceeded, InconsistencyError, ParseError, Verdict,
                      decide)


# --------------------------------------------------------------------------
# partitions

@dataclass(frozen=True)
class Block:
    """One block of a partition.  With ``complement`` set it holds every
    prime *not* in ``primes``."""

    label: str
    primes: frozenset
    complement: bool = False

    def __contains__(self, p):
        return (p in self.primes) != self.complement

    def primes_of(self, n) -> frozenset:
        return frozenset(p for p in primes_of(n) if p in self)

    def part(self, n) -> int:
        return pi_part(n, self.primes_of(n))

    def is_number(self, n) -> bool:
        return self.part(n) == n


class SigmaPartition:
    def __init__(self, blocks=(), rest=False, sylow=False):
        self.blocks = tuple(frozenset(b) for b in blocks)
        self.rest = rest
        self.sylow = sylow
        self._listed = frozenset().union(*self.blocks) if self.blocks else frozenset()

    @property
    def text(self) -> str:
        if self.sylow:
            return "sylow"
        parts = [" ".join(map(str, sorted(b))) for b in self.blocks]
        if self.rest:
            parts.append("*")
        return "|".join(parts)

    def __repr__(self):
        return f"SigmaPartition({self.text!r})"

    def __eq__(self, other):
        return isinstance(other, SigmaPartition) and self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def block_of(self, p) -> Block:
        for b in self.blocks:
            if p in b:
                return Block(" ".join(map(str, sorted(b))), b)
        if self.rest:
            return Block("*", self._listed, complement=True)
        return Block(str(p), frozenset([p]))

    def blocks_meeting(self, n) -> list:
        """Blocks meeting pi(n), ordered by their smallest prime dividing n."""
        out = {}
        for p in primes_of(n):
            b = self.block_of(p)
            out.setdefault(b.label, b)
        return list(out.values())

    def sigma_of_number(self, n) -> set:
        return {b.label for b in self.blocks_meeting(n)}

    def is_primary(self, n) -> bool:
        return len(self.blocks_meeting(n)) <= 1


SYLOW = SigmaPartition(sylow=True)


def sigma_pi(pi) -> SigmaPartition:
    """The partition {pi, pi'}."""
    return SigmaPartition([pi], rest=True)


def is_sigma_primary_number(sigma, n) -> bool:
    return sigma.is_primary(n)


def sigma_of_number(sigma, n) -> set:
    return sigma.sigma_of_number(n)


_SIGMA_TOKEN = re.compile(r"\s*(?:(\d+)|(\*)|(\|)|(\S+))")


def parse_sigma(text: str) -> SigmaPartition:
    """Parse ``'sylow' | block ('|' block)*`` where a block is primes or ``*``."""
    if text.strip() == "sylow":
        return SYLOW
    blocks, cur, rest = [], [], False
    seen = {}
    pos = 0
    star_here = False

    def close(at):
        nonlocal cur, star_here
        if not cur and not star_here:
            raise ParseError("empty block", at, "|")
        if cur:
            blocks.append(frozenset(cur))
        cur, star_here = [], False

    while True:
        m = _SIGMA_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        num, star, bar, bad = m.groups()
        at = m.start(m.lastindex)
        if bad is not None:
            raise ParseError(f"unexpected token {bad!r}", at, bad)
        if bar:
            close(at)
        elif star:
            if rest:
                raise ParseError("more than one '*' block", at, "*")
            if cur:
                raise ParseError("'*' must stand alone in its block", at, "*")
            rest = star_here = True
        else:
            if star_here:
                raise ParseError("'*' must stand alone in its block", at, num)
            p = int(num)
            if not is_prime(p):
                raise ParseError(f"{p} is not prime", at, num)
            if p in seen:
                raise ParseError(f"blocks overlap at {p}", at, num)
            seen[p] = len(blocks)
            cur.append(p)
    if text[pos:].strip():
        raise ParseError("trailing input", pos, text[pos:].strip())
    close(len(text))
    return SigmaPartition(blocks, rest=rest)


def _block(sigma, block):
    """Accept a Block, a prime in the block, or a block label."""
    if isinstance(block, Block):
        return block
    if isinstance(block, int):
        return sigma.block_of(block)
    if block == "*" and sigma.rest:
        return sigma.block_of(_first_unlisted(sigma))
    b = sigma.block_of(int(str(block).split()[0]))
    if b.label != block:
        raise KeyError(f"no block {block!r} in {sigma.text}")
    return b


def _first_unlisted(sigma):
    p = 2
    while p in sigma._listed or not is_prime(p):
        p += 1
    return p


# --------------------------------------------------------------------------
# O^sigma_i, O_sigma_i, residuals and radicals

def O_upper(G: Group, sigma, block) -> Group:
    """O^{sigma_i}(G): smallest normal subgroup with a sigma_i-quotient."""
    b = _block(sigma, block)
    return o_upper(G, b.primes_of(G.order))


def O_lower(G: Group, sigma, block, caps=None) -> Group:
    """O_{sigma_i}(G): largest normal sigma_i-subgroup."""
    b = _block(sigma, block)
    try:
        L = normal_lattice(G, caps)
    except CapExceeded:
        h = hall_subgroup(G, sigma, b, caps)
        if not h.is_yes:
            raise
        return core(G, h.witness, (caps or DEFAULT_CAPS).element_cap)
    best = 0
    for i, N in enumerate(L.subs):
        if b.is_number(N.order):
            best = i
    return L.subs[best]


def nilpotent_residual(G: Group, sigma) -> Group:
    """G^{N_sigma} as the intersection of the O^{sigma_i}(G)."""
    def build():
        Os = [O_upper(G, sigma, b) for b in sigma.blocks_meeting(G.order)]
        if not Os:
            return G
        return reduce(lambda A, B: intersection(A, B, G), Os)

    return G.memo(("n_sigma", sigma.text), build)


def soluble_sigma_residual(G: Group, sigma) -> Group:
    """G^{S_sigma}: the stable term of the iterated N_sigma-residual."""
    def build():
        cur = G
        while True:
            nxt = nilpotent_residual(cur, sigma)
            if nxt.order == cur.order:
                return cur
            cur = nxt

    return G.memo(("s_sigma", sigma.text), build)


def _chain_steps(L, lo, hi):
    """Orders of the factors of one maximal chain of the lattice from lo to hi."""
    out = []
    cur = lo
    while cur != hi:
        nxt = min((k for k in L.covers(cur) if L.le(k, hi)), key=lambda k: L.subs[k].order)
        out.append((nxt, cur))
        cur = nxt
    return out


def _step_orders(L, lo, hi):
    return [L.subs[a].order // L.subs[b].order for a, b in _chain_steps(L, lo, hi)]


def supersoluble_residual(G: Group, sigma, caps=None) -> Group:
    """G^{U_sigma}: smallest normal N with G/N sigma-supersoluble.

    G/N is sigma-supersoluble when the G-chief factors between N and
    N G^{N_sigma} have prime order.
    """
    def build():
        L = normal_lattice(G, caps)
        r = L.index(nilpotent_residual(G, sigma))
        good = [k for k in range(len(L))
                if all(is_prime(o) for o in _step_orders(L, k, L.join(k, r)))]
        best = good[0]
        if any(not L.le(best, k) for k in good):
            raise InconsistencyError("sigma-supersoluble quotients not closed under intersection")
        return L.subs[best]

    return G.memo(("u_sigma", sigma.text), build)


def residual(G: Group, sigma, tag, caps=None) -> Group:
    if tag == "sigma_nilpotent":
        return nilpotent_residual(G, sigma)
    if tag == "sigma_soluble":
        return soluble_sigma_residual(G, sigma)
    if tag == "soluble":
        return soluble_residual(G)
    if tag == "sigma_supersoluble":
        return supersoluble_residual(G, sigma, caps)
    raise ValueError(f"unknown residual {tag!r}")


def radical(G: Group, sigma, tag, caps=None) -> Group:
    """Largest normal subgroup of G in the class ``tag``."""
    fs = factors(G)
    if fs is not None:
        return direct_of([radical(f, sigma, tag, caps) for f in fs], G.degree)
    L = normal_lattice(G, caps)
    if tag == "soluble":
        test = lambda k: all(len(primes_of(o)) == 1 for o in _step_orders(L, 0, k))  # noqa: E731
    elif tag == "sigma_soluble":
        test = lambda k: all(sigma.is_primary(o) for o in _step_orders(L, 0, k))  # noqa: E731
    else:
        raise ValueError(f"unknown radical {tag!r}")
    best = max((k for k in range(len(L)) if test(k)), key=lambda k: L.subs[k].order)
    return L.subs[best]


def is_sigma_soluble_section(L, sigma, lo, hi) -> bool:
    return all(sigma.is_primary(o) for o in _step_orders(L, lo, hi))


# --------------------------------------------------------------------------
# classification

FLAGS = ("sigma_primary", "sigma_nilpotent", "soluble", "sigma_soluble",
         "sigma_supersoluble", "sigma_sc", "sigma_perfect", "sigma_full")


def classify(G: Group, sigma, caps=None) -> dict:
    """Classification flags as Verdicts.  Independent computations of the
    same flag are compared and a mismatch raises InconsistencyError."""
    flags = {"sigma_primary": Verdict.of(sigma.is_primary(G.order))}
    R = nilpotent_residual(G, sigma)
    flags["sigma_nilpotent"] = decide(_sigma_nilpotent, G, sigma, R, caps)
    flags["soluble"] = Verdict.of(is_soluble(G))
    flags["sigma_soluble"] = decide(_sigma_soluble, G, sigma, caps)
    below = decide(_factors_below, G, R, caps)
    if below.decided:
        fs = below.witness
        flags["sigma_supersoluble"] = Verdict.of(all(f.is_cyclic_prime for f in fs),
                                                 witness=[f.order for f in fs])
        flags["sigma_sc"] = Verdict.of(all(f.is_simple for f in fs),
                                       witness=[f.order for f in fs])
    else:
        flags["sigma_supersoluble"] = flags["sigma_sc"] = below
    flags["sigma_perfect"] = Verdict.of(R.order == G.order)
    flags["sigma_full"] = complete_hall_set(G, sigma, caps)
    return flags


def _sigma_nilpotent(G, sigma, R, caps):
    by_residual = R.order == 1
    try:
        by_halls = all(O_lower(G, sigma, b, caps).order == b.part(G.order)
                       for b in sigma.blocks_meeting(G.order))
    except CapExceeded:
        return Verdict.of(by_residual)
    if by_residual != by_halls:
        raise InconsistencyError(f"sigma-nilpotency: residual says {by_residual}, "
                                 f"normal Hall subgroups say {by_halls}")
    return Verdict.of(by_residual)


def _sigma_soluble(G, sigma, caps):
    by_residual = soluble_sigma_residual(G, sigma).order == 1
    cs = chief_series(G, caps=caps)
    by_series = all(sigma.is_primary(f.order) for f in cs.factors)
    if by_residual != by_series:
        raise InconsistencyError(f"sigma-solubility: residual says {by_residual}, "
                                 f"chief series says {by_series}")
    return Verdict.of(by_series, witness=[f.order for f in cs.factors])


def _factors_below(G, R, caps):
    """Chief factors of G below R, from a chief series through R."""
    cs = chief_series(G, through=R, caps=caps)
    k = next(i for i, N in enumerate(cs.terms) if N.order == R.order)
    return Verdict.yes(witness=cs.factors[k:])


def chief_factors_below(G, N, caps=None) -> list:
    return _factors_below(G, N, caps).witness


# --------------------------------------------------------------------------
# Hall subgroups

def hall_subgroup(G: Group, sigma, block, caps=None) -> Verdict:
    """A Hall sigma_i-subgroup of G, as the witness of a Yes."""
    caps = caps or DEFAULT_CAPS
    b = _block(sigma, block)
    return G.memo(("hall", sigma.text, b.label, caps.subgroup_cap),
                  lambda: decide(_hall, G, b.primes_of(G.order), caps))


def hall_pi(G: Group, pi, caps=None) -> Verdict:
    """A Hall pi-subgroup of G for an arbitrary prime set."""
    caps = caps or DEFAULT_CAPS
    pi = frozenset(p for p in primes_of(G.order) if p in pi)
    return G.memo(("hall_pi", pi, caps.subgroup_cap), lambda: decide(_hall, G, pi, caps))


def _hall(G, pi, caps):
    target = pi_part(G.order, pi)
    if target == 1:
        return Verdict.yes(trivial_group(G.degree), "trivial")
    if target == G.order:
        return Verdict.yes(G, "whole group")
    if len(pi) == 1:
        return Verdict.yes(sylow(G, next(iter(pi)), caps), "Sylow")
    fs = factors(G)
    if fs is not None:
        parts = [hall_pi(f, pi, caps) for f in fs]
        for v in parts:
            if not v.is_yes:
                return v
        return Verdict.yes(direct_of([v.witness for v in parts], G.degree), "factor-wise")
    if isinstance(G.meta, Semidirect):
        a, b = G.gens
        n, m = G.meta.n, G.meta.m
        H = subgroup(G, [a ** (n // pi_part(n, pi)), b ** (m // pi_part(m, pi))])
        return Verdict.yes(H, "cyclic-by-cyclic split")
    if G.order <= caps.subgroup_cap:
        T = table(G, caps)
        S = _table_hall_search(T, pi, target, caps.node_budget)
        if S is not None:
            return Verdict.yes(T.to_group(S), "Sylow join search")
        for S in T.all_subgroups():
            if S.order == target:
                raise InconsistencyError("Sylow join search missed a Hall subgroup")
        return Verdict.no(reason="no subgroup of Hall order")
    try:
        return Verdict.yes(_grow_pi_subgroup(G, pi, target, caps, caps.seed), "random growth")
    except CapExceeded as e:
        return Verdict.undecided(f"hall search: {e.reason}")


def _table_hall_search(T, pi, target, budget):
    """Depth-first search over joins of Sylow conjugates.

    A Hall pi-subgroup containing the fixed Sylow P of the first prime, if
    any exists, is reached by joining P with suitable Sylow conjugates of
    the other primes; every intermediate join is a pi-subgroup.
    """
    primes = sorted(pi, key=lambda p: (-pi_part(T.n, {p}), p))
    sylows = [T.sylow(p) for p in primes]
    conjs = [T.conjugates(P) for P in sylows[1:]]
    nodes = [0]

    def dfs(H, depth, seen):
        nodes[0] += 1
        if nodes[0] > budget:
            raise CapExceeded("node_budget", nodes[0], budget)
        if depth == len(conjs):
            return H if H.order == target else None
        for Q in conjs[depth]:
            if Q <= H:
                return dfs(H, depth + 1, seen)
        for Q in conjs[depth]:
            J = T.closure(H, Q.gens, limit=target)
            if J is None or target % J.order or (depth, J.mask) in seen:
                continue
            seen.add((depth, J.mask))
            found = dfs(J, depth + 1, seen)
            if found is not None:
                return found
        return None

    return dfs(sylows[0], 0, set())


def complete_hall_set(G: Group, sigma, caps=None) -> Verdict:
    """One Hall sigma_i-subgroup per block meeting pi(G); Yes iff all exist."""
    members = {}
    pending = None
    for b in sigma.blocks_meeting(G.order):
        v = hall_subgroup(G, sigma, b, caps)
        if v.is_no:
            return Verdict.no(witness={"block": b.label}, reason=f"no Hall subgroup for block {b.label}")
        if not v.decided:
            pending = pending or v
            continue
        members[b.label] = v.witness
    if pending is not None:
        return pending
    return Verdict.yes(members)


def is_sigma_full(G, sigma, caps=None) -> Verdict:
    return complete_hall_set(G, sigma, caps)


# --------------------------------------------------------------------------
# sigma-subnormality and sigma-permutability

def sigma_table(G, sigma, caps=None):
    from .sigmatable import SigmaTable

    caps = caps or DEFAULT_CAPS
    table(G, caps)   # raises above the cap
    return G.memo(("sigma_table", sigma.text), lambda: SigmaTable(G, sigma, caps))


def sigma_subnormal_subgroups(G: Group, sigma, caps=None) -> list:
    ST = sigma_table(G, sigma, caps)
    return [ST.T.to_group(S) for S in ST.subs if S.mask in ST.subnormal]


def is_sigma_subnormal(G: Group, sigma, A: Group, caps=None) -> Verdict:
    if A.order == 1 or A.order == G.order or is_normal(G, A):
        return Verdict.yes(reason="normal")
    try:
        ST = sigma_table(G, sigma, caps)
    except CapExceeded as e:
        return Verdict.undecided(e.reason)
    S = ST.T.sub_of_group(A)
    return Verdict.of(S.mask in ST.subnormal)


def is_sigma_permutable(G: Group, sigma, A: Group, caps=None) -> Verdict:
    """Routes R1 (all Hall subgroups), R2 (conjugates of one complete Hall
    set) and R3 (normaliser test for sigma_i-groups), recorded in the witness."""
    routes = {}
    full = complete_hall_set(G, sigma, caps)
    if full.is_no:
        return Verdict.no(witness={"sigma_full": "no"}, reason="G is not sigma-full")
    if A.order == 1 or A.order == G.order or is_normal(G, A):
        if full.is_yes:
            return Verdict.yes(witness={"normal": "yes"})
        return full
    try:
        ST = sigma_table(G, sigma, caps)
    except CapExceeded as e:
        ST = None
        routes["R1"] = routes["R2"] = Verdict.undecided(e.reason)
    if ST is not None:
        S = ST.T.sub_of_group(A)
        r1 = ST.permutable_r1(S)
        r2 = ST.permutable_r2(S)
        routes["R1"], routes["R2"] = Verdict.of(r1), Verdict.of(r2)
        if r1 != r2:
            raise InconsistencyError(f"routes R1 and R2 disagree on {A}")
    bs = [b for b in sigma.blocks_meeting(G.order) if b.is_number(A.order)]
    if bs:
        r3 = decide(_r3, G, sigma, bs[0], A, caps)
        routes["R3"] = r3
    decided = [v for k, v in routes.items() if k != "R3" and v.decided]
    if decided:
        return Verdict(decided[0].value, "", {k: v.to_json() for k, v in routes.items()})
    return Verdict.undecided("no route decided", {k: v.to_json() for k, v in routes.items()})


def _r3(G, sigma, b, A, caps):
    # O^{sigma_i}(G) <= N_G(A), tested on generators
    X = O_upper(G, sigma, b)
    return Verdict.of(all(A.contains(conj(a, x)) for x in X.gens for a in A.gens))


# --------------------------------------------------------------------------
# the N_sigma_i property

def satisfies_N_sigma_i(G: Group, sigma, block, caps=None, modulo=None) -> Verdict:
    """sigma_i'-elements induce power automorphisms on O_{sigma_i}(G/N) for
    every sigma-soluble normal N.

    With ``modulo`` = M (normal in G) the test is for G/M: N ranges over
    normal subgroups containing M with N/M sigma-soluble.
    """
    caps = caps or DEFAULT_CAPS
    return decide(_n_sigma_i, G, sigma, _block(sigma, block), caps, modulo)


def _n_sigma_i(G, sigma, b, caps, modulo):
    L = normal_lattice(G, caps)
    m = L.index(modulo) if modulo is not None else 0
    if not b.primes_of(G.order):
        return Verdict.yes(reason="block does not meet pi(G)")
    xs = list(O_upper(G, sigma, b).gens)
    for k in L.above(m):
        if not is_sigma_soluble_section(L, sigma, m, k):
            continue
        N = L.subs[k]
        v = max((j for j in L.above(k) if b.is_number(L.subs[j].order // N.order)),
                key=lambda j: L.subs[j].order)
        if v == k:
            continue
        V = L.subs[v]
        bad = _power_automorphism_failure(V, N, xs, caps)
        if bad is not None:
            return Verdict.no(witness={"N": N.order, "V": V.order, "x": str(bad[0]), "v": str(bad[1])})
    return Verdict.yes()


def _power_automorphism_failure(V, N, xs, caps):
    """First (x, v) with v^x outside <v>N, or None if every x induces a
    power automorphism on V/N."""
    idx = V.order // N.order
    if idx > caps.index_cap:
        raise CapExceeded("index_cap", idx, caps.index_cap)
    canon = lambda g: _canonical_rep(N, tuple(g))  # noqa: E731
    one = canon(V.identity)
    reps, seen = [one], {one}
    for r in reps:
        for g in V.gens:
            c = canon(mul(r, g))
            if c not in seen:
                seen.add(c)
                reps.append(c)
    for r in reps[1:]:
        powers = {one}
        y = r
        c = canon(y)
        while c != one:
            powers.add(c)
            y = mul(y, r)
            c = canon(y)
        for x in xs:
            if canon(conj(r, x)) not in powers:
                return x, r
    return None


def is_power_automorphism(x, D: Group, caps=None) -> bool:
    """Conjugation by x maps every cyclic subgroup of D into itself."""
    caps = caps or DEFAULT_CAPS
    return _power_automorphism_failure(D, trivial_group(D.degree), [x], caps) is None

