"""sigma-subnormality and sigma-permutability over the full subgroup list.

Everything here works on ``Sub`` bitmasks of one ``Table``, so the
brute-force oracles never build permutation groups for subgroups.
"""

from __future__ import annotations

from .arith import pi_part, primes_of
from .structure import table
from .verdict import Verdict


class SigmaTable:
    def __init__(self, G, sigma, caps=None):
        self.G, self.sigma = G, sigma
        T = self.T = table(G, caps)
        self.subs = T.all_subgroups()
        self.by_mask = {S.mask: S for S in self.subs}
        self.blocks = sigma.blocks_meeting(G.order)
        self.pis = [b.primes_of(G.order) for b in self.blocks]
        # bit i of elem_blocks[e] is set when |e| meets block i
        bit = {p: 1 << i for i, pi in enumerate(self.pis) for p in pi}
        self.elem_blocks = [sum({bit[p] for p in primes_of(o)}) if o > 1 else 0
                            for o in T.orders]
        self.halls = [self._halls_in(T.full, pi) for pi in self.pis]
        self.full = all(self.halls)
        self._upper = {}
        self._perm = {}
        self._subnormal = None
        self._classes = None

    # -- helpers --------------------------------------------------------

    def sub(self, mask):
        return self.by_mask[mask]

    def inside(self, H):
        """Subgroups of H (as Subs), smallest first."""
        m = H.mask
        return [S for S in self.subs if H.order % S.order == 0 and S.mask & m == S.mask]

    def _halls_in(self, H, pi):
        want = pi_part(H.order, pi)
        m = H.mask
        return [S for S in self.subs if S.order == want and S.mask & m == S.mask]

    def upper_masks(self, C):
        """Masks of O^{sigma_i}(C) for the blocks i meeting |C|."""
        out = self._upper.get(C.mask)
        if out is None:
            present = 0
            for e in C.elems:
                present |= self.elem_blocks[e]
            out = []
            for i in range(len(self.blocks)):
                if not (present >> i) & 1:
                    continue
                keep = [e for e in C.elems if not (self.elem_blocks[e] >> i) & 1]
                out.append(self.T.generated_from_elems(keep).mask)
            self._upper[C.mask] = out
        return out

    def nilpotent_residual_mask(self, C):
        m = C.mask
        for u in self.upper_masks(C):
            m &= u
        return m

    # -- sigma-subnormality ---------------------------------------------

    @property
    def subnormal(self) -> set:
        """Masks of the sigma-subnormal subgroups (fixed point from G down).

        B joins below C when B is normal in C or C/core_C(B) is sigma-primary,
        that is, when B contains O^{sigma_j}(C) for some j.
        """
        if self._subnormal is None:
            T = self.T
            found = {T.full.mask}
            queue = [T.full]
            for C in queue:
                ups = self.upper_masks(C)
                for B in self.inside(C):
                    if B.mask in found:
                        continue
                    if any(u & B.mask == u for u in ups) or T.is_normal_in(B, C):
                        found.add(B.mask)
                        queue.append(B)
            self._subnormal = found
        return self._subnormal

    # -- sigma-permutability --------------------------------------------

    def permutable_r1(self, A) -> bool:
        """A permutes with every Hall sigma_i-subgroup, in a sigma-full G."""
        r = self._perm.get(A.mask)
        if r is None:
            r = self.full and all(self.T.permutes(A, H) for hs in self.halls for H in hs)
            self._perm[A.mask] = r
        return r

    def hall_classes(self):
        if self._classes is None:
            out = []
            for hs in self.halls:
                left = {H.mask for H in hs}
                classes = []
                for H in hs:
                    if H.mask not in left:
                        continue
                    cls = self.T.conjugates(H)
                    left -= {K.mask for K in cls}
                    classes.append(cls)
                out.append(classes)
            self._classes = out
        return self._classes

    def permutable_r2(self, A) -> bool:
        """Some complete Hall set has every conjugate of every member
        permuting with A."""
        if not self.full:
            return False
        return all(any(all(self.T.permutes(A, L) for L in cls) for cls in classes)
                   for classes in self.hall_classes())

    def permutable_in(self, K, H, halls=None) -> bool:
        """K sigma-permutable in the subgroup H."""
        if halls is None:
            halls = self.relative_halls(H)
        if halls is None:
            return False
        return all(self.T.permutes(K, X) for X in halls)

    def relative_halls(self, H):
        """All Hall sigma_i-subgroups of H over the blocks meeting |H|, or
        None when H is not sigma-full."""
        out = []
        for b in self.sigma.blocks_meeting(H.order):
            hs = self._halls_in(H, b.primes_of(H.order))
            if not hs:
                return None
            out.extend(hs)
        return out

    def permutable_set(self) -> set:
        return {S.mask for S in self.subs if self.permutable_r1(S)}

    # -- oracles --------------------------------------------------------

    def psigmat_brute(self) -> Verdict:
        """Every sigma-subnormal subgroup is sigma-permutable."""
        if not self.full:
            return Verdict.yes(reason="vacuous: G is not sigma-full")
        sn = self.subnormal
        for S in self.subs:
            if S.mask in sn and not self.permutable_r1(S):
                return Verdict.no(witness={"subgroup": S.order, "gens": self._gens_text(S)},
                                  reason="sigma-subnormal subgroup that is not sigma-permutable")
        return Verdict.yes()

    def psigmat_transitive(self) -> Verdict:
        """K sigma-permutable in H, H sigma-permutable in G => K sigma-permutable in G."""
        if not self.full:
            return Verdict.yes(reason="vacuous: G is not sigma-full")
        P = self.permutable_set()
        for H in self.subs:
            if H.mask not in P or H.order == 1:
                continue
            halls = self.relative_halls(H)
            if halls is None:
                continue
            for K in self.inside(H):
                if K.mask in P:
                    continue
                if self.permutable_in(K, H, halls):
                    return Verdict.no(witness={"K": self._gens_text(K), "H": self._gens_text(H)},
                                      reason="transitivity fails")
        return Verdict.yes()

    def theorem_a_violations(self) -> list:
        """sigma-permutable A with A^G/A_G not sigma-nilpotent."""
        T = self.T
        bad = []
        for mask in sorted(self.permutable_set()):
            A = self.sub(mask)
            X = T.normal_closure_in(A, T.full)
            Y = T.core_in(A, T.full)
            if self.nilpotent_residual_mask(X) & Y.mask != self.nilpotent_residual_mask(X):
                bad.append(A)
        return bad

    def _gens_text(self, S):
        return [str(g) for g in self.T.to_group(S).gens]
