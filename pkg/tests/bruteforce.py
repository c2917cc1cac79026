"""Brute-force reference computations, kept independent of the library's
algorithms: elements are plain tuples and subgroups are frozensets."""

import itertools
from functools import lru_cache

from sigmagroups.arith import primes_of
from sigmagroups.sigma import sigma_of_number


def compose(p, q):
    # apply p first, then q
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def elements(gens, degree):
    e = tuple(range(degree))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, tuple(g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def generated(xs, degree):
    return elements(list(xs), degree)


def subgroups(elems):
    """Every subgroup is a join of cyclic subgroups: close the set of cyclic
    subgroups under joins."""
    elems = list(elems)
    degree = len(elems[0])
    cyclics = {generated([x], degree) for x in elems}
    found = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclics:
                if C <= H:
                    continue
                J = generated(list(H) + list(C), degree)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return found


def conjugate_set(H, x):
    xi = inv(x)
    return frozenset(compose(compose(xi, h), x) for h in H)


def is_normal_set(H, G):
    return all(conjugate_set(H, x) == H for x in G)


def normal_sets(G):
    return {H for H in subgroups(G) if is_normal_set(H, G)}


def product_set(A, B):
    return {compose(a, b) for a in A for b in B}


def permutes_sets(A, B):
    return product_set(A, B) == product_set(B, A)


def perm_order(p):
    e = tuple(range(len(p)))
    k, x = 1, p
    while x != e:
        x = compose(x, p)
        k += 1
    return k


def group_elements(G):
    return elements([tuple(g) for g in G.gens], G.degree)


def pairs(xs):
    return itertools.combinations(xs, 2)


# -- sigma references ----------------------------------------------------------

@lru_cache(maxsize=None)
def brute(text):
    from sigmagroups.catalog import group_from_text
    G = group_from_text(text)
    E = group_elements(G)
    subs = subgroups(E)
    normals = {H for H in subs if is_normal_set(H, E)}
    return G, E, subs, normals


def blocks(sigma, n):
    return [frozenset(b.primes_of(n)) for b in sigma.blocks_meeting(n)]


def is_pi_number(n, pi):
    return all(p in pi for p in primes_of(n))


def part(n, pi):
    out = 1
    for p in primes_of(n):
        if p in pi:
            while n % p == 0:
                n //= p
                out *= p
    return out


def coset_index(E, N):
    return len(E) // len(N)


def sigma_nilpotent_quotient(E, N, normals, sigma):
    """G/N has a normal Hall sigma_i-subgroup for every block."""
    idx = coset_index(E, N)
    for pi in blocks(sigma, idx):
        want = len(N) * part(idx, pi)
        if not any(N <= M and len(M) == want for M in normals):
            return False
    return True


def brute_nilpotent_residual(E, normals, sigma):
    out = E
    for N in normals:
        if sigma_nilpotent_quotient(E, N, normals, sigma):
            out = out & N
    return out


def brute_chief_chain(E, normals, through=None):
    """A maximal chain of normal subgroups, passing through ``through``."""
    chain = [E]
    while len(chain[-1]) > 1:
        top = chain[-1]
        below = [N for N in normals if N < top and (through is None or through <= N or N <= through)]
        nxt = max(below, key=len)
        chain.append(nxt)
    return chain


def brute_factors_below(E, normals, R):
    chain = brute_chief_chain(E, normals, through=R)
    return [len(a) // len(b) for a, b in zip(chain, chain[1:]) if a <= R]


def brute_upper(E, normals, pi):
    return min((N for N in normals if is_pi_number(coset_index(E, N), pi)), key=len)


def brute_lower(E, normals, pi):
    return max((N for N in normals if is_pi_number(len(N), pi)), key=len)


def core_set(B, C):
    out = B
    for x in C:
        out = out & conjugate_set(B, x)
    return out


def brute_subnormal(E, subs, sigma):
    found = {E}
    frontier = [E]
    while frontier:
        nxt = []
        for C in frontier:
            for B in subs:
                if B in found or not B < C:
                    continue
                k = core_set(B, C)
                if is_normal_set(B, C) or len(sigma_of_number(sigma, len(C) // len(k))) <= 1:
                    found.add(B)
                    nxt.append(B)
        frontier = nxt
    return found


def brute_halls(E, subs, pi):
    want = part(len(E), pi)
    return [H for H in subs if len(H) == want]


def elems(H):
    return frozenset(group_elements(H))
