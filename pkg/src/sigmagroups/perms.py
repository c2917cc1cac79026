"""Permutations of {0..n-1} stored as image tuples.

Products act on the right: ``(p * q)[i] == q[p[i]]``, so ``i^(pq) = (i^p)^q``
and conjugation is ``a ** x == x^-1 a x``.  Text uses 1-based points.
"""

from __future__ import annotations

import re
from math import gcd

from .verdict import DimensionError, ParseError


class Perm(tuple):
    """An immutable permutation; ``p[i]`` is the image of point ``i``."""

    __slots__ = ()

    def __new__(cls, images):
        return tuple.__new__(cls, images)

    @classmethod
    def checked(cls, images) -> "Perm":
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple:
        return tuple(self)

    def __mul__(self, other):
        if len(other) != len(self):
            raise DimensionError(f"degrees differ: {len(self)} vs {len(other)}")
        return Perm(map(other.__getitem__, self))

    def __invert__(self):
        return inverse(self)

    def __pow__(self, x):
        if isinstance(x, int):
            return power(self, x)
        return conj(self, x)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self))

    def order(self) -> int:
        return perm_order(self)

    def cycles(self) -> list:
        return cycles(self)

    def moved_points(self) -> list:
        return [i for i, v in enumerate(self) if i != v]

    def __repr__(self):
        return f"Perm({to_cycles(self)!r}, {len(self)})"

    def __str__(self):
        return to_cycles(self)


# Raw-tuple helpers.  Hot loops call these on plain tuples.

def mul(p, q):
    return tuple(map(q.__getitem__, p))


def inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return Perm(inv)


def conj(a, x):
    """a^x = x^-1 a x."""
    xi = inverse(x)
    return Perm(x[a[xi[i]]] for i in range(len(a)))


def commutator(a, b):
    """[a, b] = a^-1 b^-1 a b."""
    return Perm(mul(mul(mul(inverse(a), inverse(b)), a), b))


def cycles(p) -> list:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(cyc)
    return out


def perm_order(p) -> int:
    m = 1
    for c in cycles(p):
        m = m // gcd(m, len(c)) * len(c)
    return m


def power(p, k: int):
    n = len(p)
    out = list(range(n))
    for c in cycles(p):
        L = len(c)
        s = k % L
        for idx, pt in enumerate(c):
            out[pt] = c[(idx + s) % L]
    return Perm(out)


def to_cycles(p) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cs)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\d+)|(\S))")


def perm_from_cycles(text: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation with 1-based points, e.g. ``"(1 2)(3 4)"``."""
    if degree < 1:
        raise ParseError("degree must be positive")
    images = list(range(degree))
    seen = set()
    pos = 0
    text = text.rstrip()
    cur = None
    saw_cycle = False
    empty_ok = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        pos = m.end()
        lp, rp, num, bad = m.groups()
        if bad is not None:
            raise ParseError(f"unexpected token {bad!r}", start, bad)
        if lp:
            if cur is not None:
                raise ParseError("nested '('", start, "(")
            cur = []
        elif rp:
            if cur is None:
                raise ParseError("unbalanced ')'", start, ")")
            if not cur:
                if saw_cycle or empty_ok:
                    raise ParseError("empty cycle must stand alone", start, "()")
                empty_ok = True
            for a, b in zip(cur, cur[1:] + cur[:1]):
                images[a] = b
            saw_cycle = saw_cycle or bool(cur)
            if empty_ok and saw_cycle:
                raise ParseError("empty cycle must stand alone", start, ")")
            cur = None
        else:
            if cur is None:
                raise ParseError(f"point {num} outside a cycle", start, num)
            pt = int(num)
            if not 1 <= pt <= degree:
                raise ParseError(f"point {pt} out of range 1..{degree}", start, num)
            if pt - 1 in seen:
                raise ParseError(f"repeated point {pt}", start, num)
            seen.add(pt - 1)
            cur.append(pt - 1)
    if cur is not None:
        raise ParseError("unclosed '('", len(text), "(")
    if not saw_cycle and not empty_ok:
        raise ParseError("no cycles given", 0, text)
    return Perm(images)
