"""Subgroup-level structure: subgroup and normal-subgroup lists, the lattice
of normal subgroups, chief series, Sylow subgroups and complements.

Small groups (order up to ``Caps.subgroup_cap``) go through a ``Table``.
Larger groups built as direct products use the factor lattices; anything
else falls back to conjugacy classes over the element list, within the
element cap.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from .arith import factorize, is_pi_number, is_prime, pi_part, primes_of
from .groups import (DirectProduct, Group, direct_of, direct_product, extend, factors,
                     intersection, is_normal, join, normal_closure, pi_part_element, quotient,
                     split_along, trivial_group)
from .perms import commutator, conj
from .table import Table
from .verdict import DEFAULT_CAPS, CapExceeded


def table(G: Group, caps=None) -> Table:
    caps = caps or DEFAULT_CAPS
    if G.order > caps.subgroup_cap:
        raise CapExceeded("subgroup_cap", G.order, caps.subgroup_cap)
    return G.memo("table", lambda: Table(G, caps.subgroup_cap))


def all_subgroups(G: Group, caps=None) -> list:
    """Every subgroup of G, ordered by (order, element index mask)."""
    T = table(G, caps)
    return G.memo("all_subgroups", lambda: [T.to_group(S) for S in T.all_subgroups()])


# --------------------------------------------------------------------------
# normal subgroups

def normal_subgroups(G: Group, caps=None) -> list:
    """Every normal subgroup of G, smallest first."""
    return normal_lattice(G, caps).subs


class NormalLattice:
    """The normal subgroups of G with containment stored as bitmasks.

    ``subs`` is sorted by order, so ``subs[0]`` is 1 and ``subs[-1]`` is G;
    bit j of ``below[i]`` is set when ``subs[j] <= subs[i]``.
    """

    def __init__(self, G: Group, subs, below=None):
        self.G = G
        self.subs = subs
        if below is None:
            below = []
            for i, H in enumerate(subs):
                m = 0
                for j in range(i + 1):
                    K = subs[j]
                    if H.order % K.order == 0 and K.is_subgroup_of(H):
                        m |= 1 << j
                below.append(m)
        self.below = below
        self._keys = {}

    def __len__(self):
        return len(self.subs)

    @property
    def top(self):
        return len(self.subs) - 1

    def le(self, i, j):
        return bool((self.below[j] >> i) & 1)

    def index(self, H: Group) -> int:
        for i, N in enumerate(self.subs):
            if N.order == H.order and H.is_subgroup_of(N):
                return i
        raise KeyError("not a normal subgroup of the ambient group")

    def above(self, i):
        return [k for k in range(len(self.subs)) if (self.below[k] >> i) & 1]

    def meet(self, i, j):
        return (self.below[i] & self.below[j]).bit_length() - 1

    def join(self, i, j):
        for k in range(max(i, j), len(self.subs)):
            if (self.below[k] >> i) & 1 and (self.below[k] >> j) & 1:
                return k
        raise AssertionError("lattice has no top")

    def covers(self, i):
        """Normal subgroups minimal among those strictly above subs[i]."""
        up = [k for k in self.above(i) if k != i]
        return [k for k in up if not any(j != k and self.le(j, k) for j in up)]

    def interval(self, lo, hi):
        return [k for k in range(lo, hi + 1) if self.le(lo, k) and self.le(k, hi)]

    def key(self, i):
        if i not in self._keys:
            self._keys[i] = self.subs[i].element_key()
        return self._keys[i]


def normal_lattice(G: Group, caps=None) -> NormalLattice:
    caps = caps or DEFAULT_CAPS

    def build():
        if G.order <= caps.subgroup_cap:
            T = table(G, caps)
            subs = T.normal_subgroups()
            below = [sum(1 << j for j, K in enumerate(subs[:i + 1]) if K <= H)
                     for i, H in enumerate(subs)]
            return NormalLattice(G, [T.to_group(S) for S in subs], below)
        fs = factors(G)
        if fs is not None and _products_suffice(fs, caps):
            return _product_lattice(G, fs, caps)
        return NormalLattice(G, _normals_by_classes(G, caps))

    return G.memo(("normal_lattice", caps.subgroup_cap, caps.element_cap), build)


def central_chief_primes(G: Group, caps=None) -> set:
    """Primes p such that G has a central chief factor of order p."""
    out = set()
    cs = chief_series(G, caps=caps)
    for H, K in zip(cs.terms, cs.terms[1:]):
        if all(K.contains(commutator(h, g)) for h in H.gens for g in G.gens):
            out.add(H.order // K.order)
    return out


def _products_suffice(fs, caps) -> bool:
    # A normal subgroup of A x B that is not a product of normal subgroups
    # identifies a central section of A with one of B, and a nontrivial
    # central section contains a central chief factor.  Disjoint central
    # chief primes therefore rule such subgroups out.
    seen = set()
    for f in fs:
        ps = central_chief_primes(f, caps)
        if ps & seen:
            return False
        seen |= ps
    return True


def _product_lattice(G, fs, caps) -> NormalLattice:
    lats = [normal_lattice(f, caps) for f in fs]
    combos = sorted(itertools.product(*[range(len(L)) for L in lats]),
                    key=lambda c: (_prod_order(lats, c), c))
    subs = [_product_group(G, [L.subs[i] for L, i in zip(lats, c)]) for c in combos]
    below = []
    for i, c in enumerate(combos):
        m = 0
        for j, d in enumerate(combos[:i + 1]):
            if all(L.le(a, b) for L, a, b in zip(lats, d, c)):
                m |= 1 << j
        below.append(m)
    return NormalLattice(G, subs, below)


def _prod_order(lats, combo):
    o = 1
    for L, i in zip(lats, combo):
        o *= L.subs[i].order
    return o


def _product_group(G, comps):
    nontrivial = [c for c in comps if c.order > 1]
    if len(nontrivial) == 1:
        return nontrivial[0]
    return direct_of(nontrivial, G.degree)


def _normals_by_classes(G, caps) -> list:
    elems = G.raw_elements(caps.element_cap)
    gens = [tuple(g) for g in G.gens]
    seen = set()
    reps = []
    for e in elems:
        if e in seen:
            continue
        seen.add(e)
        reps.append(e)
        orbit = [e]
        for x in orbit:
            for g in gens:
                y = tuple(conj(x, g))
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
    closures = []
    for r in reps:
        N = normal_closure(G, [r])
        if not any(N.order == M.order and N <= M for M in closures):
            closures.append(N)
    found = [trivial_group(G.degree)]
    for N in found:
        for S in closures:
            if S <= N:
                continue
            J = join(N, S)
            if not any(J.order == M.order and J <= M for M in found):
                found.append(J)
    found.sort(key=lambda H: H.order)
    return found


def minimal_normal_subgroups(G: Group, caps=None) -> list:
    L = normal_lattice(G, caps)
    return [L.subs[k] for k in L.covers(0)]


# --------------------------------------------------------------------------
# chief series

@dataclass(frozen=True)
class ChiefFactor:
    order: int
    is_abelian: bool
    is_cyclic_prime: bool
    is_simple: bool


@dataclass
class ChiefSeries:
    ambient: Group
    terms: list            # G = N_0 > N_1 > ... > N_r = 1
    factors: list = field(default_factory=list)
    indices: list = field(default_factory=list)   # positions in the normal lattice

    def descriptors(self):
        return sorted((f.order, f.is_abelian, f.is_simple) for f in self.factors)


def chief_series(G: Group, seed=None, through=None, caps=None) -> ChiefSeries:
    """A chief series of G, built bottom-up through the normal lattice.

    Ties are broken by the smallest sorted element list, or at random from
    ``seed``.  With ``through`` (a normal subgroup) the series passes
    through it.
    """
    L = normal_lattice(G, caps)
    target = L.index(through) if through is not None else None
    rng = random.Random(seed) if seed is not None else None
    cur, chain = 0, [0]
    while cur != L.top:
        cands = L.covers(cur)
        if target is not None and L.le(cur, target) and cur != target:
            cands = [k for k in cands if L.le(k, target)]
        cands.sort(key=L.key)
        cur = cands[0] if rng is None else rng.choice(cands)
        chain.append(cur)
    chain.reverse()
    terms = [L.subs[i] for i in chain]
    facs = [describe_factor(H, K, caps) for H, K in zip(terms, terms[1:])]
    return ChiefSeries(G, terms, facs, chain)


def describe_factor(H: Group, K: Group, caps=None) -> ChiefFactor:
    """Descriptor of a chief factor H/K."""
    n = H.order // K.order
    abelian = all(K.contains(commutator(a, b)) for a, b in itertools.combinations(H.gens, 2))
    if abelian:
        return ChiefFactor(n, True, is_prime(n), is_prime(n))
    return ChiefFactor(n, False, False, _nonabelian_chief_factor_is_simple(H, K, caps))


def _nonabelian_chief_factor_is_simple(H, K, caps):
    # A chief factor is T^k for a simple T, so |H/K| = |T|^k; if the
    # exponents of |H/K| are coprime then k = 1.
    if reduce(gcd, (e for _, e in factorize(H.order // K.order))) == 1:
        return True
    caps = caps or DEFAULT_CAPS
    Q, _ = quotient(H, K, caps.index_cap)
    return len(normal_subgroups(Q, caps)) == 2


# --------------------------------------------------------------------------
# Sylow subgroups, products, complements

def sylow(G: Group, p: int, caps=None, seed=None) -> Group:
    """A Sylow p-subgroup of G."""
    caps = caps or DEFAULT_CAPS
    if seed is None:
        seed = caps.seed
    target = pi_part(G.order, {p})
    if target == 1:
        return trivial_group(G.degree)
    if target == G.order:
        return G

    def build():
        fs = factors(G)
        if fs is not None:
            return direct_of([sylow(f, p, caps, seed) for f in fs], G.degree)
        if G.order <= caps.subgroup_cap:
            T = table(G, caps)
            return T.to_group(T.sylow(p))
        return _grow_pi_subgroup(G, {p}, target, caps, seed)

    return G.memo(("sylow", p), build)


def _grow_pi_subgroup(G, pi, target, caps, seed):
    """Random growth of a pi-subgroup of order ``target`` (budgeted)."""
    rng = random.Random(seed)
    P = trivial_group(G.degree)
    budget = max(1000, caps.node_budget // max(1, G.degree * 100))
    misses = 0
    for _ in range(budget):
        y = pi_part_element(G.sample(rng), pi)
        if y.is_identity() or P.contains(y):
            continue
        Q = extend(P, [y])
        if is_pi_number(Q.order, pi):
            P, misses = Q, 0
            if P.order == target:
                return P
        else:
            misses += 1
            if misses > 200:
                # P may lie in no subgroup of the target order; start over
                P, misses = trivial_group(G.degree), 0
    raise CapExceeded("node_budget", budget, budget)


def quotient_group(G: Group, N: Group, caps=None) -> Group:
    """G/N as a permutation group (no epimorphism).

    When N splits along G's direct factors the quotient is assembled from
    the factor quotients, which keeps the degree small.
    """
    caps = caps or DEFAULT_CAPS
    if N.order == 1:
        return compact(G)
    fs = factors(G)
    comps = split_along(G, N) if fs is not None else None
    if comps is None:
        return quotient(G, N, caps.index_cap)[0]
    parts = [quotient_group(f, c, caps) for f, c in zip(fs, comps) if c.order < f.order]
    if not parts:
        return trivial_group(1)
    return parts[0] if len(parts) == 1 else direct_product(parts)


def compact(G: Group) -> Group:
    """A copy of G acting on its moved points only, relabelled 0..k-1."""
    pts = G.moved_points()
    if len(pts) == G.degree:
        return G
    pos = {p: i for i, p in enumerate(pts)}
    gens = [[pos[g[p]] for p in pts] for g in G.gens]
    meta = None if isinstance(G.meta, DirectProduct) else G.meta
    return Group(gens, max(1, len(pts)), meta=meta)


def product_is_subgroup(A: Group, B: Group, ambient=None, caps=None) -> bool:
    """AB = BA, tested as |<A, B>| = |A||B| / |A ∩ B|."""
    if A.is_subgroup_of(B) or B.is_subgroup_of(A):
        return True
    caps = caps or DEFAULT_CAPS
    inter = intersection(A, B, ambient, caps.element_cap)
    J = join(A, B)
    return J.order * inter.order == A.order * B.order


def complements(G: Group, N: Group, caps=None) -> list:
    """Subgroups M with NM = G and N ∩ M = 1."""
    caps = caps or DEFAULT_CAPS
    want = G.order // N.order
    if G.order <= caps.subgroup_cap:
        T = table(G, caps)
        n = T.sub_of_group(N)
        return [T.to_group(S) for S in T.all_subgroups()
                if S.order == want and S.mask & n.mask == 1]
    if gcd(N.order, want) == 1 and N.is_abelian() and is_normal(G, N):
        pi = set(primes_of(want))
        return [_grow_pi_subgroup(G, pi, want, caps, caps.seed)]
    raise CapExceeded("subgroup_cap", G.order, caps.subgroup_cap)
