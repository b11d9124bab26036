"""Multivariate polynomials over a prime field.

Polynomials are sparse maps ``exponent tuple -> coefficient`` with coefficients
kept as least nonnegative residues.  Monomial orders are encoded as flat integer
sort keys so that the Groebner engine can compare terms with plain tuple
comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

MAX_EXPONENT = 2**31 - 1

LT, EQ, GT = -1, 0, 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = 32003

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"modulus must be an odd prime, got {self.p}")

    def inv(self, a: int) -> int:
        return pow(a % self.p, -1, self.p)

    def __call__(self, a: int) -> int:
        return a % self.p


@dataclass(frozen=True)
class PolyRing:
    """Graded polynomial ring ``F_p[variables]`` with a monomial order."""

    variables: tuple
    order: str = "grevlex"
    field: PrimeField = field(default_factory=PrimeField)
    weights: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        if self.order not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.order!r}")
        w = self.weights
        w = tuple([1] * len(self.variables)) if w is None else tuple(w)
        if len(w) != len(self.variables) or any(x <= 0 for x in w):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "weights", w)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def degree(self, exp) -> int:
        return sum(a * w for a, w in zip(exp, self.weights))

    def key(self, exp) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.order == "grevlex":
            return (self.degree(exp),) + tuple(-a for a in reversed(exp))
        return tuple(exp)

    def one(self) -> tuple:
        return (0,) * self.nvars

    def var(self, name: str) -> "Poly":
        i = self.variables.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def const(self, c: int) -> "Poly":
        c %= self.p
        return Poly(self, {self.one(): c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def monomials(self, d: int) -> tuple:
        """All exponent vectors of weighted degree ``d``, ascending in the order."""
        return _monomials(self.weights, d, self.order)

    def parse(self, text: str) -> "Poly":
        return Poly(self, _Parser(self, text).parse())

    def __call__(self, text) -> "Poly":
        if isinstance(text, Poly):
            return text
        if isinstance(text, int):
            return self.const(text)
        return self.parse(text)


@lru_cache(maxsize=None)
def _monomials(weights: tuple, d: int, order: str) -> tuple:
    n = len(weights)
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    if all(w == 1 for w in weights):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    else:
        def rec(i, left, acc):
            if i == n - 1:
                if left % weights[i] == 0:
                    out.append(tuple(acc + [left // weights[i]]))
                return
            for a in range(left // weights[i] + 1):
                rec(i + 1, left - a * weights[i], acc + [a])

        rec(0, d, [])
    ring = PolyRing(tuple(f"v{i}" for i in range(n)), order, PrimeField(), weights)
    out.sort(key=ring.key)
    return tuple(out)


def monomial_compare(m1, m2, ring_or_order) -> int:
    """Three-way comparison of exponent vectors; returns LT, EQ or GT."""
    if len(m1) != len(m2):
        raise ValueError("exponent vectors of different lengths")
    if isinstance(ring_or_order, PolyRing):
        ring = ring_or_order
    else:
        ring = PolyRing(tuple(f"v{i}" for i in range(len(m1))), ring_or_order)
    k1, k2 = ring.key(tuple(m1)), ring.key(tuple(m2))
    return (k1 > k2) - (k1 < k2)


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero residues."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, pairs) -> "Poly":
        p = ring.p
        d = {}
        for e, c in pairs:
            e = tuple(e)
            c = (d.get(e, 0) + c) % p
            if c:
                d[e] = c
            else:
                d.pop(e, None)
        return cls(ring, d)

    def _check(self, other) -> "Poly":
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Poly) or other.ring != self.ring:
            raise ValueError("polynomials belong to different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Poly(self.ring, padd(self.terms, other.terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        return Poly(self.ring, padd(self.terms, other.terms, self.ring.p, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        out = pmul(self.terms, other.terms, self.ring.p)
        for e in out:
            if any(a > MAX_EXPONENT for a in e):
                raise OverflowError("exponent exceeds machine width")
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            return None
        e = max(self.terms, key=self.ring.key)
        return e, self.terms[e]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial_term(self) -> bool:
        return len(self.terms) == 1

    def __str__(self):
        return format_poly(self.terms, self.ring)

    def __repr__(self):
        return f"Poly({self})"


def padd(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + sign * c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pmul(a: dict, b: dict, p: int) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = (out.get(e, 0) + c1 * c2) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def pscale(a: dict, mono, c: int, p: int) -> dict:
    return {tuple(x + y for x, y in zip(e, mono)): v * c % p for e, v in a.items()}


def format_poly(terms: dict, ring: PolyRing) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms.items(), key=lambda t: ring.key(t[0]), reverse=True):
        factors = []
        for name, a in zip(ring.variables, e):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class PolySyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at column {pos + 1}")
        self.pos = pos


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
            num, name, op = m.groups()
            start = m.start(m.lastindex)
            if num is not None:
                self.toks.append(("num", int(num), start))
            elif name is not None:
                self.toks.append(("var", name, start))
            else:
                self.toks.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> dict:
        if not self.toks:
            raise PolySyntaxError("empty polynomial", 0)
        out = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise PolySyntaxError(f"unexpected token {val!r}", pos)
        return out

    def expr(self) -> dict:
        p = self.ring.p
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            out = padd(out, self.term(), p, 1 if op == "+" else -1)
        return out

    def term(self) -> dict:
        out = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            out = pmul(out, self.factor(), self.ring.p)
        return out

    def factor(self) -> dict:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            p = self.ring.p
            return {e: p - c for e, c in self.factor().items()}
        if kind == "op" and val == "+":
            self.take()
            return self.factor()
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, k, pos = self.take()
            if kind != "num":
                raise PolySyntaxError("exponent must be a nonnegative integer", pos)
            if k > MAX_EXPONENT:
                raise OverflowError("exponent exceeds machine width")
            out = {self.ring.one(): 1}
            for _ in range(k):
                out = pmul(out, base, self.ring.p)
            return out
        return base

    def base(self) -> dict:
        kind, val, pos = self.take()
        ring = self.ring
        if kind == "num":
            c = val % ring.p
            return {ring.one(): c} if c else {}
        if kind == "var":
            if val not in ring.variables:
                raise PolySyntaxError(f"unknown variable {val!r}", pos)
            return dict(ring.var(val).terms)
        if kind == "op" and val == "(":
            out = self.expr()
            kind, v, pos = self.take()
            if v != ")":
                raise PolySyntaxError("expected ')'", pos)
            return out
        raise PolySyntaxError("unexpected end of input" if kind is None else f"unexpected token {val!r}", pos)
