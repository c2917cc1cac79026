"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain.

Groups are immutable once built.  Derived data (element lists, centres,
normal-subgroup lattices) is memoised on the instance under a lock, so a
group may be shared between threads.
"""

from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass
from math import prod

from .arith import is_pi_number, pi_part, primes_of
from .perms import Perm, conj, inverse, mul, perm_order, power
from .verdict import DEFAULT_CAPS, CapExceeded, DimensionError, NormalityError


# --------------------------------------------------------------------------
# construction metadata

@dataclass(frozen=True)
class Atomic:
    name: str


@dataclass(frozen=True, eq=False)
class DirectProduct:
    """Internal direct product; factors act on pairwise disjoint point sets."""

    factors: tuple


@dataclass(frozen=True)
class Semidirect:
    """C_n : C_m with the generator of C_m acting as x -> x^k.

    The group's generators are (a, b) with a of order n and b of order m.
    """

    n: int
    m: int
    k: int


# --------------------------------------------------------------------------
# stabilizer chain

class _Chain:
    """Mutable BSGS used while building; frozen into a Group afterwards."""

    def __init__(self, degree):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base = []
        self.gens = []
        self.trans = []
        self.itrans = []
        self.checked = []

    def copy(self):
        c = _Chain(self.degree)
        c.base = list(self.base)
        c.gens = [list(g) for g in self.gens]
        c.trans = [dict(t) for t in self.trans]
        c.itrans = [dict(t) for t in self.itrans]
        c.checked = [set(s) for s in self.checked]
        return c

    def sift(self, g, start=0):
        base, itrans = self.base, self.itrans
        for i in range(start, len(base)):
            ui = itrans[i].get(g[base[i]])
            if ui is None:
                return g, i
            g = tuple(map(ui.__getitem__, g))
        return g, len(base)

    def _new_level(self, point):
        e = self.identity
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: e})
        self.itrans.append({point: e})
        self.checked.append(set())

    def _orbit(self, lvl):
        trans, itrans, gens = self.trans[lvl], self.itrans[lvl], self.gens[lvl]
        queue = list(trans)
        for pt in queue:
            u = trans[pt]
            for s in gens:
                img = s[pt]
                if img not in trans:
                    v = tuple(map(s.__getitem__, u))
                    trans[img] = v
                    itrans[img] = tuple(inverse(v))
                    queue.append(img)

    def _insert(self, h, lo, hi):
        if hi == len(self.base):
            self._new_level(next(i for i, v in enumerate(h) if i != v))
        for lvl in range(lo, hi + 1):
            self.gens[lvl].append(h)
            self._orbit(lvl)

    def _check_level(self, i):
        trans, itrans, gens, checked = self.trans[i], self.itrans[i], self.gens[i], self.checked[i]
        e = self.identity
        for beta in list(trans):
            u = trans[beta]
            for si, s in enumerate(gens):
                key = (beta, si)
                if key in checked:
                    continue
                us = tuple(map(s.__getitem__, u))
                h = tuple(map(itrans[s[beta]].__getitem__, us))
                if h != e:
                    r, j = self.sift(h, i + 1)
                    if r != e:
                        self._insert(r, i + 1, j)
                        return j
                checked.add(key)
        return None

    def _complete(self, i):
        while i >= 0:
            j = self._check_level(i)
            i = i - 1 if j is None else j

    def add(self, g) -> bool:
        g = tuple(g)
        h, j = self.sift(g)
        if h == self.identity:
            return False
        self._insert(h, 0, j)
        self._complete(j)
        return True

    def order(self):
        return prod(len(t) for t in self.trans)


# --------------------------------------------------------------------------

class Group:
    """A permutation group on {0..degree-1}.

    ``gens`` may be empty, in which case ``degree`` is required.
    """

    def __init__(self, gens=(), degree=None, meta=None, _chain=None):
        gens = [Perm(g) for g in gens]
        if degree is None:
            if not gens:
                raise DimensionError("degree required for an empty generating set")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DimensionError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.gens = tuple(g for g in gens if not g.is_identity())
        self.meta = meta
        if _chain is None:
            _chain = _Chain(degree)
            for g in self.gens:
                _chain.add(g)
        self._chain = _chain
        self.order = _chain.order()
        self._lock = threading.RLock()
        self._memo = {}

    # -- basic queries ----------------------------------------------------

    @property
    def base(self):
        return tuple(self._chain.base)

    @property
    def strong_gens(self):
        seen, out = set(), []
        for lvl in self._chain.gens:
            for g in lvl:
                if g not in seen:
                    seen.add(g)
                    out.append(Perm(g))
        return out

    @property
    def transversal_sizes(self):
        return tuple(len(t) for t in self._chain.trans)

    @property
    def identity(self):
        return Perm.identity(self.degree)

    def contains(self, p) -> bool:
        if len(p) != self.degree:
            raise DimensionError(f"degree {len(p)} element tested in degree {self.degree} group")
        r, _ = self._chain.sift(tuple(p))
        return r == self._chain.identity

    __contains__ = contains

    def is_subgroup_of(self, other: "Group") -> bool:
        if other.degree != self.degree or other.order % self.order:
            return False
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.is_subgroup_of(other)

    def __lt__(self, other):
        return self.order < other.order and self.is_subgroup_of(other)

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and all(self.contains(g) for g in other.gens))

    def __hash__(self):
        return hash((self.degree, self.order))

    def __repr__(self):
        name = f" {self.meta.name}" if isinstance(self.meta, Atomic) else ""
        return f"<Group{name} degree={self.degree} order={self.order}>"

    @property
    def is_trivial(self):
        return self.order == 1

    def is_abelian(self) -> bool:
        gs = self.gens
        return all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(gs, 2))

    def memo(self, key, fn):
        with self._lock:
            if key not in self._memo:
                self._memo[key] = fn()
            return self._memo[key]

    # -- elements ---------------------------------------------------------

    def raw_elements(self, cap=None):
        """All elements as plain tuples, in a deterministic order."""
        cap = DEFAULT_CAPS.element_cap if cap is None else cap
        if self.order > cap:
            raise CapExceeded("element_cap", self.order, cap)

        def build():
            elems = [self._chain.identity]
            for lvl in reversed(range(len(self._chain.base))):
                reps = list(self._chain.trans[lvl].values())
                elems = [tuple(map(u.__getitem__, e)) for e in elems for u in reps]
            return elems

        return self.memo("elements", build)

    def elements(self, cap=None):
        return [Perm(e) for e in self.raw_elements(cap)]

    def sample(self, rng: random.Random):
        """A uniformly random element via the transversals."""
        g = self._chain.identity
        for lvl in reversed(range(len(self._chain.base))):
            reps = self._chain.trans[lvl]
            u = reps[rng.choice(list(reps))]
            g = tuple(map(u.__getitem__, g))
        return Perm(g)

    def moved_points(self):
        pts = set()
        for g in self.gens:
            pts.update(i for i, v in enumerate(g) if i != v)
        return sorted(pts)

    def element_key(self, cap=10_000):
        """Deterministic canonical key: sorted element list when small."""
        if self.order <= cap:
            return (self.order, tuple(sorted(self.raw_elements())))
        return (self.order, tuple(sorted(tuple(g) for g in self.strong_gens)))


# --------------------------------------------------------------------------
# constructors

def group_from_generators(gens, degree=None, meta=None) -> Group:
    return Group(gens, degree, meta)


def trivial_group(degree) -> Group:
    return Group((), degree)


def subgroup(G: Group, gens) -> Group:
    """Subgroup of G generated by ``gens``; membership is checked."""
    H = Group(gens, G.degree)
    for g in H.gens:
        if not G.contains(g):
            raise ValueError(f"{g} is not an element of the ambient group")
    return H


def join(*groups) -> Group:
    degree = groups[0].degree
    chain = None
    big = max(groups, key=lambda g: g.order)
    chain = big._chain.copy()
    gens = list(big.gens)
    for H in groups:
        if H is big:
            continue
        for g in H.gens:
            if chain.add(g):
                gens.append(g)
            elif g not in gens:
                gens.append(g)
    return Group(gens, degree, _chain=chain)


def extend(H: Group, new) -> Group:
    """⟨H, new...⟩ reusing H's chain."""
    chain = H._chain.copy()
    gens = list(H.gens)
    for g in new:
        g = Perm(g)
        if chain.add(g):
            gens.append(g)
    return Group(gens, H.degree, _chain=chain)


def group_from_elements(elems, degree) -> Group:
    """Smallest-effort generating set for a subgroup given by its elements."""
    chain = _Chain(degree)
    gens = []
    for e in elems:
        if chain.add(e):
            gens.append(Perm(e))
    return Group(gens, degree, _chain=chain)


def _concat_chains(groups, degree) -> _Chain:
    """BSGS of a product of groups with pairwise disjoint supports."""
    chain = _Chain(degree)
    later = []
    for idx in reversed(range(len(groups))):
        c = groups[idx]._chain
        levels = []
        for lvl in range(len(c.base)):
            levels.append((c.base[lvl], list(c.gens[lvl]) + later, c.trans[lvl], c.itrans[lvl]))
        later = later + [g for lv in c.gens for g in lv]
        groups[idx] = levels
    for levels in groups:
        for b, gens, t, it in levels:
            chain.base.append(b)
            chain.gens.append(gens)
            chain.trans.append(dict(t))
            chain.itrans.append(dict(it))
            chain.checked.append(set((beta, si) for beta in t for si in range(len(gens))))
    return chain


def direct_of(components, degree) -> Group:
    """Internal direct product of same-degree groups with disjoint supports."""
    comps = [c for c in components if c.order > 1]
    supports = [set(c.moved_points()) for c in comps]
    for a, b in itertools.combinations(supports, 2):
        if a & b:
            raise ValueError("components must have disjoint supports")
    chain = _concat_chains(list(comps), degree)
    gens = [g for c in comps for g in c.gens]
    meta = DirectProduct(tuple(comps)) if len(comps) > 1 else None
    return Group(gens, degree, meta=meta, _chain=chain)


def shift(G: Group, offset: int, degree: int) -> Group:
    """Copy of G acting on points offset..offset+G.degree-1 of a larger set."""
    def sh(p):
        out = list(range(degree))
        for i, v in enumerate(p):
            out[i + offset] = v + offset
        return tuple(out)

    c = G._chain
    chain = _Chain(degree)
    memo = {}

    def msh(p):
        if p not in memo:
            memo[p] = sh(p)
        return memo[p]

    chain.base = [b + offset for b in c.base]
    chain.gens = [[msh(g) for g in lvl] for lvl in c.gens]
    chain.trans = [{k + offset: msh(v) for k, v in t.items()} for t in c.trans]
    chain.itrans = [{k + offset: msh(v) for k, v in t.items()} for t in c.itrans]
    chain.checked = [set(s) for s in c.checked]
    meta = None if isinstance(G.meta, DirectProduct) else G.meta
    return Group([sh(g) for g in G.gens], degree, meta=meta, _chain=chain)


def direct_product(groups) -> Group:
    """External direct product on the disjoint union of the point sets."""
    degree = sum(g.degree for g in groups)
    offset = 0
    parts = []
    for g in groups:
        for f in factors(g) or [g]:
            parts.append(shift(f, offset, degree))
        offset += g.degree
    chain = _concat_chains(list(parts), degree)
    gens = [g for p in parts for g in p.gens]
    return Group(gens, degree, meta=DirectProduct(tuple(parts)), _chain=chain)


def factors(G: Group):
    """Direct factors recorded in the metadata, or None."""
    if isinstance(G.meta, DirectProduct):
        return G.meta.factors
    return None


def restrict(g, support, degree):
    out = list(range(degree))
    for i in support:
        out[i] = g[i]
    return Perm(out)


def split_along(G: Group, H: Group):
    """Components of H along G's direct decomposition, if H is a product of them."""
    fs = factors(G)
    if fs is None:
        return None
    supports = [f.moved_points() for f in fs]
    comps = []
    for sup in supports:
        pieces = [restrict(h, sup, G.degree) for h in H.gens]
        comps.append(pieces)
    for pieces in comps:
        for p in pieces:
            if not H.contains(p):
                return None
    return [Group(p, G.degree) for p in comps]


def with_split_meta(G: Group, H: Group) -> Group:
    """H itself, carrying DirectProduct metadata when it splits along G."""
    if H.meta is not None:
        return H
    comps = split_along(G, H)
    if comps is None:
        return H
    flat = []
    for f, c in zip(factors(G), comps):
        if c.order == 1:
            continue
        part = with_split_meta(f, c)
        flat.extend(factors(part) or [part])
    if len(flat) < 2:
        return H
    return Group(H.gens, H.degree, meta=DirectProduct(tuple(flat)), _chain=H._chain)


# --------------------------------------------------------------------------
# normal structure

def is_normal(G: Group, H: Group) -> bool:
    return all(H.contains(conj(h, g)) for g in G.gens for h in H.gens)


def normal_closure(G: Group, S) -> Group:
    """Smallest normal subgroup of G containing S (a Group or a list of elements)."""
    gens = list(S.gens) if isinstance(S, Group) else [Perm(s) for s in S]
    chain = _Chain(G.degree)
    kept = []
    for g in gens:
        if chain.add(g):
            kept.append(g)
    queue = list(kept)
    while queue:
        n = queue.pop()
        for g in G.gens:
            c = conj(n, g)
            if chain.add(c):
                kept.append(c)
                queue.append(c)
    N = Group(kept, G.degree, _chain=chain)
    return with_split_meta(G, N)


def derived_subgroup(G: Group) -> Group:
    from .perms import commutator

    def build():
        comms = [commutator(a, b) for a, b in itertools.combinations(G.gens, 2)]
        return normal_closure(G, [c for c in comms if not c.is_identity()] or [G.identity])

    return G.memo("derived", build)


def derived_series(G: Group) -> list:
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def soluble_residual(G: Group) -> Group:
    return derived_series(G)[-1]


def is_soluble(G: Group) -> bool:
    return soluble_residual(G).order == 1


def centralizer(G: Group, H, cap=None) -> Group:
    """Elements of G commuting with every generator of H (element enumeration)."""
    hs = list(H.gens) if isinstance(H, Group) else list(H)
    if not hs:
        return G
    keep = [e for e in G.raw_elements(cap) if all(mul(e, h) == mul(h, e) for h in hs)]
    return with_split_meta(G, group_from_elements(keep, G.degree))


def center(G: Group, cap=None) -> Group:
    def build():
        fs = factors(G)
        if fs is not None:
            return direct_of([center(f, cap) for f in fs], G.degree)
        if G.is_abelian():
            return G
        return centralizer(G, list(G.gens), cap)

    return G.memo("center", build)


def core(G: Group, H: Group, cap=None) -> Group:
    """Largest normal subgroup of G inside H (intersection of conjugates)."""
    if is_normal(G, H):
        return H
    current = set(H.raw_elements(cap))
    gens = [tuple(g) for g in G.gens]
    ginv = [tuple(inverse(g)) for g in gens]
    changed = True
    while changed:
        changed = False
        for g, gi in zip(gens, ginv):
            keep = set()
            for c in current:
                # g c g^-1 in current  <=>  c in current^g
                x = tuple(map(gi.__getitem__, tuple(map(c.__getitem__, g))))
                if x in current:
                    keep.add(c)
            if len(keep) != len(current):
                current = keep
                changed = True
    return group_from_elements(sorted(current), G.degree)


def normalizer(G: Group, H: Group, cap=None) -> Group:
    keep = [e for e in G.raw_elements(cap) if all(H.contains(conj(h, e)) for h in H.gens)]
    return group_from_elements(keep, G.degree)


def intersection(A: Group, B: Group, ambient: Group | None = None, cap=None) -> Group:
    """A ∩ B.  Uses containment, then the ambient product decomposition,
    then enumeration of the smaller group."""
    if A.is_subgroup_of(B):
        return A
    if B.is_subgroup_of(A):
        return B
    if ambient is not None and factors(ambient) is not None:
        ca, cb = split_along(ambient, A), split_along(ambient, B)
        if ca is not None and cb is not None:
            comps = [intersection(x, y, f, cap) for x, y, f in zip(ca, cb, factors(ambient))]
            return with_split_meta(ambient, direct_of(comps, A.degree))
    small, big = (A, B) if A.order <= B.order else (B, A)
    keep = [e for e in small.raw_elements(cap) if big.contains(e)]
    return group_from_elements(keep, A.degree)


def coprime_part(g, primes):
    """g^m where m is the primes-part of |g|; the result has order prime to ``primes``."""
    n = perm_order(g)
    return power(Perm(g), pi_part(n, primes))


def pi_part_element(g, primes):
    """The primes-component of g (order is a primes-number)."""
    n = perm_order(g)
    return power(Perm(g), n // pi_part(n, primes))


def o_upper(G: Group, primes, seed=0) -> Group:
    """O^pi(G): smallest normal subgroup whose quotient is a pi-group."""

    def build():
        fs = factors(G)
        if fs is not None:
            return direct_of([o_upper(f, primes, seed) for f in fs], G.degree)
        gens = [coprime_part(g, primes) for g in G.gens]
        gens = [g for g in gens if not g.is_identity()]
        N = normal_closure(G, gens or [G.identity])
        if is_pi_number(G.order // N.order, primes):
            return N
        candidates = itertools.chain(
            (Perm(g) for g in G.strong_gens),
            (Perm(u) for t in G._chain.trans for u in t.values()),
            _random_elements(G, seed),
        )
        for x in candidates:
            y = coprime_part(x, primes)
            if y.is_identity() or N.contains(y):
                continue
            N = normal_closure(G, list(N.gens) + [y])
            if is_pi_number(G.order // N.order, primes):
                return N
        raise AssertionError("unreachable")  # the random stream is infinite

    return G.memo(("o_upper", frozenset(p for p in primes_of(G.order) if p in primes)), build)


def _random_elements(G, seed):
    rng = random.Random(seed)
    while True:
        yield G.sample(rng)


# --------------------------------------------------------------------------
# quotients

def _canonical_rep(N: Group, x):
    c = N._chain
    for lvl in range(len(c.base)):
        best, bu = None, None
        for delta, u in c.trans[lvl].items():
            img = x[delta]
            if best is None or img < best:
                best, bu = img, u
        x = tuple(map(x.__getitem__, bu))
    return x


class CosetHom:
    """The natural map G -> G/N realised on the right cosets of N."""

    def __init__(self, G, N, reps, index):
        self.G, self.N = G, N
        self.reps = reps
        self.index = index

    def coset_of(self, g):
        return self.index[_canonical_rep(self.N, tuple(g))]

    def __call__(self, g):
        g = tuple(g)
        return Perm(self.index[_canonical_rep(self.N, mul(r, g))] for r in self.reps)

    def preimage_rep(self, q):
        """A representative of the coset that q sends the identity coset to."""
        return Perm(self.reps[q[0]])


def quotient(G: Group, N: Group, cap=None):
    """G/N as a permutation group on the cosets of N, plus the epimorphism."""
    cap = DEFAULT_CAPS.index_cap if cap is None else cap
    if not N.is_subgroup_of(G) or not is_normal(G, N):
        raise NormalityError("quotient by a subgroup that is not normal")
    idx = G.order // N.order
    if idx > cap:
        raise CapExceeded("index_cap", idx, cap)
    start = _canonical_rep(N, G._chain.identity)
    reps, index = [start], {start: 0}
    gens = [tuple(g) for g in G.gens]
    images = [[None] * idx for _ in gens]
    for ci in itertools.count():
        if ci >= len(reps):
            break
        r = reps[ci]
        for gi, g in enumerate(gens):
            c = _canonical_rep(N, mul(r, g))
            j = index.get(c)
            if j is None:
                j = len(reps)
                index[c] = j
                reps.append(c)
            images[gi][ci] = j
    hom = CosetHom(G, N, reps, index)
    Q = Group([Perm(im) for im in images], idx)
    return Q, hom


def preimage(hom: CosetHom, Q_sub: Group) -> Group:
    """Full preimage in G of a subgroup of the quotient."""
    gens = [hom.preimage_rep(q) for q in Q_sub.gens] + list(hom.N.gens)
    return Group(gens or [hom.G.identity], hom.G.degree)
