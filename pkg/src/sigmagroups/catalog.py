"""Group-construction DSL, permutation realisations and named presets.

Grammar (whitespace insignificant)::

    expr := term ('x' term)*
    term := 'C'int | 'D'int | 'S'int | 'A'int | 'Q8' | 'SL(2,'int')'
          | 'C'int ':' 'C'int '@' int | '(' expr ')'
          | 'perm[' degree ';' cycles (',' cycles)* ']' | 'preset:'name

``D n`` is the dihedral group of order 2n acting on n points (n >= 3).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import factorial, gcd

from .arith import multiplicative_order
from .groups import Atomic, Group, Semidirect, direct_product
from .perms import Perm, perm_from_cycles, perm_order
from .verdict import DEFAULT_CAPS, CapExceeded, ParseError


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Sym:
    n: int


@dataclass(frozen=True)
class Alt:
    n: int


@dataclass(frozen=True)
class Q8:
    pass


@dataclass(frozen=True)
class SL2:
    q: int


@dataclass(frozen=True)
class SemidirectExpr:
    n: int
    m: int
    k: int


@dataclass(frozen=True)
class Direct:
    left: object
    right: object


@dataclass(frozen=True)
class ExplicitPerms:
    degree: int
    cycles: tuple


@dataclass(frozen=True)
class Preset:
    name: str


SL2_PRIMES = (2, 3, 5, 7)


def validate_semidirect(n, m, k, pos=None):
    if n < 1 or m < 1:
        raise ParseError("semidirect factors must have positive order", pos)
    if gcd(n, k) != 1:
        raise ParseError(f"action parameter {k} is not a unit modulo {n}", pos)
    if pow(k, m, n) != 1 % n:
        raise ParseError(f"{k}^{m} is not 1 modulo {n}; x -> x^{k} does not define a C{m}-action", pos)


# --------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        self.ws()
        if not self.text.startswith(s, self.pos):
            got = self.text[self.pos:self.pos + len(s)] or "end of input"
            raise ParseError(f"expected {s!r}, got {got!r}", self.pos, got)
        self.pos += len(s)

    def integer(self):
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            got = self.text[start:start + 1] or "end of input"
            raise ParseError(f"expected an integer, got {got!r}", start, got)
        return int(self.text[start:self.pos])

    def parse(self):
        node = self.expr()
        self.ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected trailing input {self.text[self.pos:]!r}", self.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek("x"):
            self.pos += 1
            node = Direct(node, self.term())
        return node

    def term(self):
        self.ws()
        start = self.pos
        t = self.text
        if self.peek("("):
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if self.peek("perm["):
            self.pos += 5
            return self.explicit(start)
        if self.peek("preset:"):
            self.pos += 7
            self.ws()
            s = self.pos
            while self.pos < len(t) and (t[self.pos].isalnum() or t[self.pos] == "_"):
                self.pos += 1
            name = t[s:self.pos]
            if name not in PRESETS:
                raise ParseError(f"unknown preset {name!r}", s, name)
            return Preset(name)
        if self.peek("SL("):
            self.pos += 3
            self.expect("2")
            self.expect(",")
            q = self.integer()
            self.expect(")")
            if q not in SL2_PRIMES:
                raise ParseError(f"SL(2,{q}) unsupported; q must be one of {SL2_PRIMES}", start)
            return SL2(q)
        if self.peek("Q8"):
            self.pos += 2
            return Q8()
        if self.pos < len(t) and t[self.pos] in "CDSA":
            kind = t[self.pos]
            self.pos += 1
            n = self.integer()
            if kind == "C":
                if self.peek(":"):
                    self.pos += 1
                    self.expect("C")
                    m = self.integer()
                    self.expect("@")
                    k = self.integer()
                    validate_semidirect(n, m, k, start)
                    return SemidirectExpr(n, m, k)
                if n < 1:
                    raise ParseError("C0 is not a group", start)
                return Cyclic(n)
            if kind == "D":
                if n < 3:
                    raise ParseError("dihedral D n needs n >= 3", start)
                return Dihedral(n)
            if n < 1:
                raise ParseError(f"{kind}0 is not a group", start)
            return Sym(n) if kind == "S" else Alt(n)
        got = t[self.pos:self.pos + 1] or "end of input"
        raise ParseError(f"unexpected {got!r}", self.pos, got)

    def explicit(self, start):
        degree = self.integer()
        if degree < 1:
            raise ParseError("degree must be positive", start)
        self.expect(";")
        gens = []
        while True:
            self.ws()
            s = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in ",]":
                self.pos += 1
            chunk = self.text[s:self.pos].strip()
            try:
                perm_from_cycles(chunk, degree)
            except ParseError as exc:
                raise ParseError(f"bad cycles {chunk!r}: {exc}", s, chunk) from None
            gens.append(" ".join(chunk.split()).replace("( ", "(").replace(" )", ")"))
            if self.peek(","):
                self.pos += 1
                continue
            self.expect("]")
            return ExplicitPerms(degree, tuple(gens))


def parse_group_expr(text: str):
    return _Parser(text).parse()


def print_group_expr(node, _inner=False) -> str:
    if isinstance(node, Cyclic):
        return f"C{node.n}"
    if isinstance(node, Dihedral):
        return f"D{node.n}"
    if isinstance(node, Sym):
        return f"S{node.n}"
    if isinstance(node, Alt):
        return f"A{node.n}"
    if isinstance(node, Q8):
        return "Q8"
    if isinstance(node, SL2):
        return f"SL(2,{node.q})"
    if isinstance(node, SemidirectExpr):
        s = f"C{node.n}:C{node.m}@{node.k}"
        return f"({s})" if _inner else s
    if isinstance(node, Direct):
        right = print_group_expr(node.right, True)
        if isinstance(node.right, Direct):
            right = f"({right})"
        return f"{print_group_expr(node.left, True)} x {right}"
    if isinstance(node, ExplicitPerms):
        return f"perm[{node.degree};{','.join(node.cycles)}]"
    if isinstance(node, Preset):
        return f"preset:{node.name}"
    raise TypeError(f"not a group expression: {node!r}")


# --------------------------------------------------------------------------
# constructors

def cyclic(n: int) -> Group:
    return Group([Perm([(i + 1) % n for i in range(n)])], n, meta=Atomic(f"C{n}"))


def dihedral(n: int) -> Group:
    r = Perm([(i + 1) % n for i in range(n)])
    s = Perm([(-i) % n for i in range(n)])
    return Group([r, s], n, meta=Atomic(f"D{n}"))


def symmetric(n: int) -> Group:
    gens = []
    if n >= 2:
        gens = [Perm([1, 0] + list(range(2, n))), Perm([(i + 1) % n for i in range(n)])]
    return Group(gens, n, meta=Atomic(f"S{n}"))


def alternating(n: int) -> Group:
    gens = []
    if n >= 3:
        three = Perm([1, 2, 0] + list(range(3, n)))
        if n % 2:
            long = Perm([(i + 1) % n for i in range(n)])
        else:
            long = Perm([0] + [1 + (i + 1) % (n - 1) for i in range(n - 1)])
        gens = [three, long]
    return Group(gens, n, meta=Atomic(f"A{n}"))


_QUAT = ["1", "i", "j", "k"]


def _qmul(a, b):
    """Quaternion units as (sign, index) with index into 1, i, j, k."""
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    s, idx = table[(a[1], b[1])]
    return (a[0] * b[0] * s, idx)


def quaternion() -> Group:
    elems = [(s, i) for s in (1, -1) for i in range(4)]
    index = {e: n for n, e in enumerate(elems)}

    def right(g):
        return Perm([index[_qmul(x, g)] for x in elems])

    return Group([right((1, 1)), right((1, 2))], 8, meta=Atomic("Q8"))


def sl2(q: int) -> Group:
    """SL(2,q) acting on the q^2-1 nonzero row vectors of F_q^2."""
    if q not in SL2_PRIMES:
        raise ValueError(f"SL(2,{q}) unsupported")
    vecs = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    index = {v: n for n, v in enumerate(vecs)}

    def act(M):
        (a, b), (c, d) = M
        return Perm([index[((x * a + y * c) % q, (x * b + y * d) % q)] for x, y in vecs])

    return Group([act(((1, 1), (0, 1))), act(((0, q - 1), (1, 0)))], len(vecs),
                 meta=Atomic(f"SL(2,{q})"))


def semidirect(n: int, m: int, k: int) -> Group:
    validate_semidirect(n, m, k)
    deg = n + m
    a = Perm([(i + 1) % n for i in range(n)] + list(range(n, deg)))
    b = Perm([(k * i) % n for i in range(n)] + [n + (j + 1) % m for j in range(m)])
    return Group([a, b], deg, meta=Semidirect(n, m, k))


def explicit(degree: int, cycles) -> Group:
    return Group([perm_from_cycles(c, degree) for c in cycles], degree,
                 meta=Atomic(f"perm[{degree}]"))


# --------------------------------------------------------------------------
# presets

def smallest_action(n: int, m: int) -> int:
    """Smallest k > 1 of multiplicative order exactly m modulo n."""
    for k in range(2, n):
        if gcd(k, n) == 1 and multiplicative_order(k, n) == m:
            return k
    raise ValueError(f"no element of order {m} modulo {n}")


# Pinned action parameters; tests recompute them with smallest_action.
K_29_7 = 7    # 7^7 = 1 (mod 29), 7 != 1
K_43_7 = 4    # 4^7 = 16384 = 381*43 + 1

PRESETS = {
    "ex13_sl23": SL2(3),
    "ex13_c7c3": SemidirectExpr(7, 3, 2),
    "ex15iii": Direct(Alt(5), SemidirectExpr(29, 7, K_29_7)),
    "ex15iv": Direct(Direct(Direct(SL2(7), Alt(7)), Alt(5)), SemidirectExpr(43, 7, K_43_7)),
    "ex18_core": Direct(SL2(7), Alt(7)),
}


def preset(name: str):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None


# --------------------------------------------------------------------------
# realisation

def predicted_order(node):
    """Order read off the expression, or None when it needs explicit permutations."""
    if isinstance(node, Cyclic):
        return node.n
    if isinstance(node, Dihedral):
        return 2 * node.n
    if isinstance(node, Sym):
        return factorial(node.n)
    if isinstance(node, Alt):
        return max(1, factorial(node.n) // 2)
    if isinstance(node, Q8):
        return 8
    if isinstance(node, SL2):
        return node.q * (node.q ** 2 - 1)
    if isinstance(node, SemidirectExpr):
        return node.n * node.m
    if isinstance(node, Direct):
        a, b = predicted_order(node.left), predicted_order(node.right)
        return None if a is None or b is None else a * b
    if isinstance(node, Preset):
        return predicted_order(preset(node.name))
    return None


def predicted_degree(node) -> int:
    if isinstance(node, (Cyclic, Dihedral, Sym, Alt)):
        return node.n
    if isinstance(node, Q8):
        return 8
    if isinstance(node, SL2):
        return node.q ** 2 - 1
    if isinstance(node, SemidirectExpr):
        return node.n + node.m
    if isinstance(node, Direct):
        return predicted_degree(node.left) + predicted_degree(node.right)
    if isinstance(node, ExplicitPerms):
        return node.degree
    if isinstance(node, Preset):
        return predicted_degree(preset(node.name))
    raise TypeError(node)


def _flatten(node):
    if isinstance(node, Direct):
        return _flatten(node.left) + _flatten(node.right)
    if isinstance(node, Preset):
        return _flatten(preset(node.name))
    return [node]


def _atom(node) -> Group:
    if isinstance(node, Cyclic):
        return cyclic(node.n)
    if isinstance(node, Dihedral):
        return dihedral(node.n)
    if isinstance(node, Sym):
        return symmetric(node.n)
    if isinstance(node, Alt):
        return alternating(node.n)
    if isinstance(node, Q8):
        return quaternion()
    if isinstance(node, SL2):
        return sl2(node.q)
    if isinstance(node, SemidirectExpr):
        return semidirect(node.n, node.m, node.k)
    if isinstance(node, ExplicitPerms):
        return explicit(node.degree, node.cycles)
    raise TypeError(f"not a group expression: {node!r}")


def realize(node, caps=None) -> Group:
    caps = caps or DEFAULT_CAPS
    deg = predicted_degree(node)
    if deg > caps.max_degree:
        raise CapExceeded("max_degree", deg, caps.max_degree)
    parts = [_atom(a) for a in _flatten(node)]
    if len(parts) == 1:
        return parts[0]
    return direct_product(parts)


def group_from_text(text: str, caps=None) -> Group:
    return realize(parse_group_expr(text), caps)


# --------------------------------------------------------------------------
# small catalog

def _atoms(bound):
    for n in range(1, bound + 1):
        yield Cyclic(n)
    for n in range(3, bound // 2 + 1):
        yield Dihedral(n)
    for node in (Q8(), Alt(4), Sym(4), SL2(3), Alt(5), Sym(5)):
        if predicted_order(node) <= bound:
            yield node
    for n in range(3, bound + 1):
        for m in range(2, bound // n + 1):
            for k in range(2, n):
                if gcd(n, k) == 1 and pow(k, m, n) == 1:
                    yield SemidirectExpr(n, m, k)


def invariant_key(G: Group):
    orders = Counter(perm_order(e) for e in G.raw_elements())
    return (G.order, G.is_abelian(), tuple(sorted(orders.items())))


def small_catalog(bound: int):
    """Constructor-sweep catalog: atoms and direct products of two atoms, up to
    ``bound``, deduplicated by (order, abelian, element-order multiset).

    Yields (expression, group) pairs sorted by order, then by construction.
    """
    atoms = [a for a in _atoms(bound) if predicted_order(a) <= bound]
    candidates = list(atoms)
    nontrivial = [a for a in atoms if predicted_order(a) > 1]
    for a, b in itertools.combinations_with_replacement(nontrivial, 2):
        if predicted_order(a) * predicted_order(b) <= bound:
            candidates.append(Direct(a, b))
    candidates.sort(key=lambda e: (predicted_order(e), isinstance(e, Direct)))
    seen = set()
    for expr in candidates:
        G = realize(expr)
        key = invariant_key(G)
        if key in seen:
            continue
        seen.add(key)
        yield expr, G
