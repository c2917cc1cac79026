"""Element-level machinery for small groups.

A ``Table`` enumerates the elements of a group once, builds the right
regular representation column by column, and represents subgroups as
Python-int bitmasks over element indices.  Everything here is exact; the
only limit is the element count.
"""

from __future__ import annotations

from math import gcd

from .arith import factorize
from .groups import Group, group_from_elements
from .perms import perm_order
from .verdict import DEFAULT_CAPS, CapExceeded


class Sub:
    """A subgroup of a Table: bitmask, element indices, generators."""

    __slots__ = ("mask", "elems", "gens", "order")

    def __init__(self, mask, elems, gens):
        self.mask = mask
        self.elems = elems
        self.gens = gens
        self.order = len(elems)

    def __le__(self, other):
        return self.mask & other.mask == self.mask

    def __contains__(self, i):
        return (self.mask >> i) & 1

    def __eq__(self, other):
        return isinstance(other, Sub) and self.mask == other.mask

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"<Sub order={self.order}>"


class Table:
    """Regular-representation view of a small group.

    ``rmul[j][i]`` is the index of ``e_i * e_j``.
    """

    def __init__(self, G: Group, cap=None):
        cap = DEFAULT_CAPS.subgroup_cap if cap is None else cap
        if G.order > cap:
            raise CapExceeded("subgroup_cap", G.order, cap)
        self.group = G
        n = G.order
        self.n = n
        ident = tuple(range(G.degree))
        gens = [tuple(g) for g in G.gens]
        # BFS over the Cayley graph; column of e_j*g is column(e_j) then column(g).
        elems = [ident]
        index = {ident: 0}
        parent = [None]
        for x in elems:
            for gi, g in enumerate(gens):
                y = tuple(map(g.__getitem__, x))
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    parent.append((index[x], gi))
        self.elems = elems
        self.index = index
        gcols = [[index[tuple(map(g.__getitem__, x))] for x in elems] for g in gens]
        rmul = [None] * n
        rmul[0] = list(range(n))
        for j in range(1, n):
            pj, gi = parent[j]
            col, gc = rmul[pj], gcols[gi]
            rmul[j] = [gc[c] for c in col]
        self.rmul = rmul
        self.inv = [0] * n
        for j in range(n):
            self.inv[rmul[j].index(0)] = j
        self.orders = [perm_order(e) for e in elems]
        self.gen_idx = [index[g] for g in gens]
        self.full = self._sub_from_elems(list(range(n)), list(self.gen_idx))
        self.trivial = Sub(1, [0], [])
        self._powers = {}

    # -- arithmetic --------------------------------------------------------

    def mul(self, i, j):
        return self.rmul[j][i]

    def conj(self, a, x):
        """a^x = x^-1 a x."""
        return self.rmul[x][self.rmul[a][self.inv[x]]]

    def powers(self, i):
        p = self._powers.get(i)
        if p is None:
            p = [0]
            col = self.rmul[i]
            x = i
            while x != 0:
                p.append(x)
                x = col[x]
            self._powers[i] = p
        return p

    def pi_part(self, i, pi):
        """Index of the pi-component of element i."""
        o = self.orders[i]
        m = 1
        for p, e in factorize(o):
            if p in pi:
                m *= p**e
        return self.powers(i)[(o // m) % o] if m > 1 else 0

    # -- subgroups -------------------------------------------------------

    def _sub_from_elems(self, elems, gens):
        mask = 0
        for e in elems:
            mask |= 1 << e
        return Sub(mask, sorted(elems), gens)

    def closure(self, base: Sub, new, limit=None):
        """⟨base, new...⟩ by coset enumeration over ``base``.

        With ``limit``, gives up and returns None once the result would
        have more than ``limit`` elements.
        """
        gens = list(base.gens)
        mask = base.mask
        elems = list(base.elems)
        helems = base.elems
        add = [g for g in new if not (mask >> g) & 1]
        if not add:
            return base
        gens.extend(add)
        reps = [0]
        rmul = self.rmul
        for r in reps:
            for s in gens:
                x = rmul[s][r]
                if not (mask >> x) & 1:
                    col = rmul[x]
                    coset = [col[h] for h in helems]
                    for c in coset:
                        mask |= 1 << c
                    elems.extend(coset)
                    reps.append(x)
                    if limit is not None and len(elems) > limit:
                        return None
        return Sub(mask, elems, gens)

    def generated(self, gens):
        return self.closure(self.trivial, list(gens))

    def sub_of_group(self, H: Group) -> Sub:
        idx = [self.index[tuple(g)] for g in H.gens]
        return self.generated(idx)

    def to_group(self, S: Sub) -> Group:
        return group_from_elements([self.elems[i] for i in S.gens] or [self.elems[0]],
                                   self.group.degree)

    def elements_of(self, mask):
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    def intersect(self, A: Sub, B: Sub) -> Sub:
        m = A.mask & B.mask
        if m == A.mask:
            return A
        if m == B.mask:
            return B
        small = A if A.order <= B.order else B
        elems = [e for e in small.elems if (m >> e) & 1]
        return self.generated_from_elems(elems)

    def generated_from_elems(self, elems):
        S = self.trivial
        for e in elems:
            if not (S.mask >> e) & 1:
                S = self.closure(S, [e])
        return S

    def join(self, A: Sub, B: Sub) -> Sub:
        if A <= B:
            return B
        if B <= A:
            return A
        big, small = (A, B) if A.order >= B.order else (B, A)
        return self.closure(big, small.gens)

    def is_normal_in(self, H: Sub, K: Sub) -> bool:
        """H normal in K (H <= K assumed)."""
        m = H.mask
        for k in K.gens:
            for h in H.gens:
                if not (m >> self.conj(h, k)) & 1:
                    return False
        return True

    def conjugate(self, H: Sub, x) -> Sub:
        elems = [self.conj(h, x) for h in H.elems]
        return self._sub_from_elems(elems, [self.conj(g, x) for g in H.gens])

    def core_in(self, H: Sub, K: Sub) -> Sub:
        """Largest normal subgroup of K contained in H."""
        cur = H.mask
        changed = True
        while changed:
            changed = False
            for k in K.gens:
                ki = self.inv[k]
                new = 0
                for h in self.elements_of(cur):
                    # h in cur^k  <=>  k h k^-1 in cur
                    if (cur >> self.conj(h, ki)) & 1:
                        new |= 1 << h
                if new != cur:
                    cur, changed = new, True
        if cur == H.mask:
            return H
        return self.generated_from_elems(self.elements_of(cur))

    def normal_closure_in(self, H: Sub, K: Sub) -> Sub:
        """Smallest normal subgroup of K containing H."""
        cur = H
        queue = list(H.gens)
        while queue:
            h = queue.pop()
            for k in K.gens:
                c = self.conj(h, k)
                if not (cur.mask >> c) & 1:
                    cur = self.closure(cur, [c])
                    queue.append(c)
        return cur

    def normalizes(self, x, H: Sub) -> bool:
        m = H.mask
        return all((m >> self.conj(h, x)) & 1 for h in H.gens)

    def permutes(self, A: Sub, B: Sub) -> bool:
        """AB = BA, i.e. |<A, B>| = |A||B| / |A ∩ B|."""
        if A.mask & B.mask in (A.mask, B.mask):
            return True
        if all(self.normalizes(a, B) for a in A.gens) or all(self.normalizes(b, A) for b in B.gens):
            return True
        size = A.order * B.order // (A.mask & B.mask).bit_count()
        if self.n % size:
            return False
        big, small = (A, B) if A.order >= B.order else (B, A)
        J = self.closure(big, small.gens, limit=size)
        return J is not None and J.order == size

    product_is_subgroup = permutes

    def sylow(self, p) -> Sub:
        """A Sylow p-subgroup, grown by p-elements c normalising P with c^p in P.

        While P is not Sylow, N(P)/P has an element of order p, so a
        suitable c always exists.
        """
        target = 1
        while self.n % (target * p) == 0:
            target *= p
        cands = [c for c in self.prime_power_cyclics() if self.orders[c] % p == 0]
        P = self.trivial
        while P.order < target:
            m = P.mask
            for c in cands:
                if (m >> c) & 1 or not (m >> self.powers(c)[p % self.orders[c]]) & 1:
                    continue
                if self.normalizes(c, P):
                    P = self.closure(P, [c])
                    break
            else:
                raise AssertionError("no p-element normalises a non-Sylow p-subgroup")
        return P

    def conjugates(self, H: Sub) -> list:
        """Distinct conjugates of H, H first."""
        seen = {H.mask: H}
        for x in range(self.n):
            if (H.mask >> x) & 1:
                continue
            K = self.conjugate(H, x)
            seen.setdefault(K.mask, K)
        return list(seen.values())

    # -- enumeration -------------------------------------------------------

    def prime_power_cyclics(self):
        """One generator per cyclic subgroup of prime-power order (> 1)."""
        seen = 0
        out = []
        for i in range(1, self.n):
            o = self.orders[i]
            f = factorize(o)
            if len(f) != 1 or (seen >> i) & 1:
                continue
            for k in range(1, o):
                if gcd(k, o) == 1:
                    seen |= 1 << self.powers(i)[k]
            out.append(i)
        return out

    def all_subgroups(self):
        """Every subgroup, sorted by (order, mask)."""
        from .groups import is_soluble

        def build():
            if is_soluble(self.group):
                found = self._soluble_layers()
            else:
                found = self._joins()
            return sorted(found.values(), key=lambda s: (s.order, s.mask))

        return self.group.memo(("table_subgroups", self.n), build)

    def _soluble_layers(self):
        # A nontrivial soluble U has a normal V of prime index p, and
        # U = <V, c> for a p-element c normalising V with c^p in V.
        cyc = [(c, factorize(self.orders[c])[0][0]) for c in self.prime_power_cyclics()]
        found = {1: self.trivial}
        layer = [self.trivial]
        while layer:
            nxt = []
            for H in layer:
                m = H.mask
                for c, p in cyc:
                    if (m >> c) & 1 or not (m >> self.powers(c)[p % self.orders[c]]) & 1:
                        continue
                    if not all((m >> self.conj(h, c)) & 1 for h in H.gens):
                        continue
                    col = self.rmul[c]
                    elems = list(H.elems)
                    mask = m
                    x = c
                    for _ in range(p - 1):
                        xc = self.rmul[x]
                        coset = [xc[h] for h in H.elems]
                        for e in coset:
                            mask |= 1 << e
                        elems.extend(coset)
                        x = col[x]
                    if mask not in found:
                        K = Sub(mask, elems, H.gens + [c])
                        found[mask] = K
                        nxt.append(K)
            layer = nxt
        return found

    def _joins(self):
        cyc = self.prime_power_cyclics()
        rmul = self.rmul
        found = {1: self.trivial}
        queue = [self.trivial]
        for H in queue:
            # <H, c> depends only on the coset Hc and on c up to H-conjugacy
            used = H.mask
            for c in cyc:
                if (used >> c) & 1:
                    continue
                col = rmul[c]
                for h in H.elems:
                    used |= 1 << col[h]
                orbit = [c]
                for x in orbit:
                    for h in H.gens:
                        y = self.conj(x, h)
                        if not (used >> y) & 1:
                            used |= 1 << y
                            orbit.append(y)
                K = self.closure(H, [c])
                if K.mask not in found:
                    found[K.mask] = K
                    queue.append(K)
        return found

    def classes(self):
        """Conjugacy classes as lists of element indices, in index order."""
        def build():
            seen = [False] * self.n
            out = []
            for i in range(self.n):
                if seen[i]:
                    continue
                seen[i] = True
                cls = [i]
                for x in cls:
                    for g in self.gen_idx:
                        y = self.conj(x, g)
                        if not seen[y]:
                            seen[y] = True
                            cls.append(y)
                out.append(cls)
            return out

        return self.group.memo(("table_classes", self.n), build)

    def normal_subgroups(self):
        """Every normal subgroup, as joins of normal closures of classes."""
        def build():
            closures = {}
            for cls in self.classes():
                S = self.generated_from_elems(cls)
                closures.setdefault(S.mask, S)
            gens = list(closures.values())
            found = {1: self.trivial}
            queue = [self.trivial]
            for N in queue:
                for S in gens:
                    if S <= N:
                        continue
                    J = self.join(N, S)
                    if J.mask not in found:
                        found[J.mask] = J
                        queue.append(J)
            return sorted(found.values(), key=lambda s: (s.order, s.mask))

        return self.group.memo(("table_normals", self.n), build)
