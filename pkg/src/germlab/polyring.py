"""Exact sparse multivariate polynomials over the rationals.

Polynomials live in a :class:`PolyRing` (ordered variable names plus a
monomial order) and carry :class:`fractions.Fraction` coefficients.  Every
operation returns a new, canonical polynomial: no zero coefficients, no
repeated monomials, terms sorted by the ring's order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "ParseError",
    "RingMismatchError",
    "degrevlex",
    "lex",
    "weighted",
    "negdegrevlex",
    "weighted_local",
    "block",
    "parse_poly",
    "jacobian_matrix",
    "determinant",
    "minors_ideal",
    "specialize",
    "MAX_EXPONENT",
]

MAX_EXPONENT = 65535

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Malformed polynomial text.  ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors.

    ``kind`` is one of ``degrevlex``, ``lex``, ``weighted``,
    ``negdegrevlex``, ``weighted_local`` or ``block``.  Weighted kinds carry
    ``weights``; ``block`` carries two sub-orders and the size of the first
    block.
    """

    kind: str
    weights: tuple[int, ...] | None = None
    first: "MonomialOrder | None" = None
    second: "MonomialOrder | None" = None
    split: int = 0

    def __post_init__(self):
        kinds = {"degrevlex", "lex", "weighted", "negdegrevlex", "weighted_local", "block"}
        if self.kind not in kinds:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind in ("weighted", "weighted_local"):
            if not self.weights or any(w <= 0 for w in self.weights):
                raise ValueError("weights must be positive integers")
        if self.kind == "block" and (self.first is None or self.second is None or self.split <= 0):
            raise ValueError("block order needs two sub-orders and a positive split")

    @property
    def is_local(self) -> bool:
        if self.kind == "block":
            return self.first.is_local and self.second.is_local
        return self.kind in ("negdegrevlex", "weighted_local")

    @property
    def is_global(self) -> bool:
        if self.kind == "block":
            return self.first.is_global and self.second.is_global
        return not self.is_local

    def degree_weights(self, nvars: int) -> tuple[int, ...]:
        """Weights defining the degree used by this order (all ones if unweighted)."""
        if self.weights is not None:
            if len(self.weights) != nvars:
                raise ValueError("weight vector length does not match the ring")
            return tuple(self.weights)
        return (1,) * nvars

    def key(self, exps: Sequence[int]) -> tuple:
        """Sort key: ``a > b`` in this order iff ``key(a) > key(b)``."""
        k = self.kind
        if k == "lex":
            return tuple(exps)
        if k == "block":
            return (self.first.key(exps[: self.split]), self.second.key(exps[self.split :]))
        rev = tuple(-e for e in reversed(exps))
        if k == "degrevlex":
            return (sum(exps),) + rev
        if k == "negdegrevlex":
            return (-sum(exps),) + rev
        wdeg = sum(w * e for w, e in zip(self.weights, exps))
        return ((wdeg if k == "weighted" else -wdeg),) + rev

    def __str__(self):
        if self.kind == "block":
            return f"block({self.first}|{self.split}|{self.second})"
        if self.weights is not None:
            return f"{self.kind}{self.weights}"
        return self.kind


def degrevlex() -> MonomialOrder:
    return MonomialOrder("degrevlex")


def lex() -> MonomialOrder:
    return MonomialOrder("lex")


def weighted(w: Iterable[int]) -> MonomialOrder:
    return MonomialOrder("weighted", tuple(w))


def negdegrevlex() -> MonomialOrder:
    return MonomialOrder("negdegrevlex")


def weighted_local(w: Iterable[int]) -> MonomialOrder:
    return MonomialOrder("weighted_local", tuple(w))


def block(first: MonomialOrder, split: int, second: MonomialOrder) -> MonomialOrder:
    """Order comparing the first ``split`` variables by ``first``, ties by ``second``."""
    return MonomialOrder("block", None, first, second, split)


# ---------------------------------------------------------------------------
# rings and polynomials


@dataclass(frozen=True)
class PolyRing:
    variables: tuple[str, ...]
    order: MonomialOrder = MonomialOrder("degrevlex")

    def __init__(self, variables: Iterable[str], order: MonomialOrder | None = None):
        names = tuple(variables)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for v in names:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        order = order if order is not None else degrevlex()
        if order.weights is not None and len(order.weights) != len(names):
            raise ValueError("weight vector length does not match the ring")
        object.__setattr__(self, "variables", names)
        object.__setattr__(self, "order", order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise KeyError(f"unknown variable {var!r}") from None

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.variables, order)

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): Fraction(coeff)})

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def __str__(self):
        return f"Q[{','.join(self.variables)}]/{self.order}"


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "__dict__")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object] | None = None):
        clean = {}
        n = ring.nvars
        for e, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c == 0:
                continue
            e = tuple(e)
            if len(e) != n:
                raise ValueError("exponent vector length does not match the ring")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            if any(x > MAX_EXPONENT for x in e):
                raise OverflowError(f"exponent exceeds {MAX_EXPONENT}")
            clean[e] = clean.get(e, 0) + c
            if clean[e] == 0:
                del clean[e]
        self.ring = ring
        self._terms = clean

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> "Polynomial":
        # terms already canonical: tuple keys, nonzero Fraction values
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        return p

    # -- inspection ---------------------------------------------------------

    @cached_property
    def terms(self) -> tuple[tuple[Fraction, tuple[int, ...]], ...]:
        """``(coefficient, exponents)`` pairs, descending in the ring's order."""
        key = self.ring.order.key
        return tuple((self._terms[e], e) for e in sorted(self._terms, key=key, reverse=True))

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def leading_term(self) -> tuple[Fraction, tuple[int, ...]]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    @property
    def leading_monomial(self) -> tuple[int, ...]:
        return self.leading_term[1]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term[0]

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (the order at the origin); -1 for zero."""
        return min((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_coefficient(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def variables_used(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(v for v, x in zip(self.ring.variables, e) if x)
        return used

    def is_weighted_homogeneous(self, weights: Sequence[int], degree: int) -> bool:
        return all(sum(w * x for w, x in zip(weights, e)) == degree for e in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring.variables != other.ring.variables:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, da = self._packed
        b, db = other._packed
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        den = da * db
        n = self.ring.nvars
        terms = {}
        for k, v in out.items():
            if v:
                e = _unpack(k, n)
                if max(e, default=0) > MAX_EXPONENT:
                    raise OverflowError(f"exponent exceeds {MAX_EXPONENT}")
                terms[e] = Fraction(v, den)
        return Polynomial._raw(self.ring, terms)

    @cached_property
    def _packed(self) -> tuple[dict[int, int], int]:
        """Integer coefficients over a common denominator, with packed exponents."""
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return {_pack(e): int(c * den) for e, c in self._terms.items()}, den

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: c * v for e, v in self._terms.items()})

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.variables == other.ring.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring.variables, frozenset(self._terms.items())))

    # -- calculus and substitution -----------------------------------------

    def diff(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
                out[e2] = c * e[i]
        return Polynomial._raw(self.ring, out)

    def specialize(self, bindings: Mapping[str, object]) -> "Polynomial":
        """Replace variables by rational numbers; the ring is unchanged."""
        idx = {self.ring.index(v): Fraction(val) for v, val in bindings.items()}
        out: dict = {}
        for e, c in self._terms.items():
            e2 = list(e)
            for i, val in idx.items():
                if e[i]:
                    c = c * val ** e[i]
                    e2[i] = 0
            if c:
                e2 = tuple(e2)
                s = out.get(e2, 0) + c
                if s:
                    out[e2] = s
                else:
                    out.pop(e2, None)
        return Polynomial._raw(self.ring, out)

    def compose(self, ring: PolyRing, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Substitute polynomials of ``ring`` for every variable of this polynomial.

        ``images`` must map each variable of ``self.ring`` to a polynomial in
        ``ring``.
        """
        vals = [images[v] for v in self.ring.variables]
        for p in vals:
            if p.ring.variables != ring.variables:
                raise RingMismatchError("images must live in the target ring")
        if not vals:
            return ring.const(self.constant_coefficient())
        powers: dict[int, Polynomial] = {0: ring.one()}

        def power(k):
            if k not in powers:
                powers[k] = power(k - 1) * vals[0]
            return powers[k]

        def rec(terms, i):
            # Horner in variable i-1; the first variable goes through cached powers
            if i == 1:
                acc: dict = {}
                for e, c in terms.items():
                    for m, a in power(e[0])._terms.items():
                        s = acc.get(m, 0) + c * a
                        if s:
                            acc[m] = s
                        else:
                            acc.pop(m, None)
                return Polynomial._raw(ring, acc)
            groups: dict[int, dict] = {}
            for e, c in terms.items():
                groups.setdefault(e[i - 1], {})[e] = c
            acc = ring.zero()
            for k in range(max(groups), -1, -1):
                if not acc.is_zero():
                    acc = acc * vals[i - 1]
                if k in groups:
                    acc = acc + rec(groups[k], i - 1)
            return acc

        if not self._terms:
            return ring.zero()
        return rec(self._terms, len(vals))

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-express in ``ring``, mapping variables by name (missing ones must be unused)."""
        pos = []
        for v, _ in zip(self.ring.variables, range(self.ring.nvars)):
            pos.append(ring.variables.index(v) if v in ring.variables else None)
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise RingMismatchError(f"variable {self.ring.variables[i]!r} missing in target ring")
                    e2[pos[i]] = x
            out[tuple(e2)] = c
        return Polynomial._raw(ring, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # -- printing -----------------------------------------------------------

    def render(self) -> str:
        if not self._terms:
            return "0"
        names = self.ring.variables
        parts = []
        for c, e in self.terms:
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(sign + body)
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s

    __str__ = render

    def __repr__(self):
        return f"Polynomial({self.render()!r})"


_PW = 17  # packed exponent field width: sums of two exponents fit


def _pack(e: Sequence[int]) -> int:
    k = 0
    for i, x in enumerate(e):
        k |= x << (_PW * i)
    return k


def _unpack(k: int, n: int) -> tuple[int, ...]:
    mask = (1 << _PW) - 1
    return tuple((k >> (_PW * i)) & mask for i in range(n))


def specialize(p: Polynomial, bindings: Mapping[str, object]) -> Polynomial:
    return p.specialize(bindings)


# ---------------------------------------------------------------------------
# parser


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.ring = ring
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # trailing whitespace
                break
            if m.group(0).strip() == "":
                break
            start = m.start(m.lastindex)
            kind = ("num", "name", "op")[m.lastindex - 1]
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.end = len(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}" if val else f"expected {value!r}", pos)

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            if kind in ("num", "name") or val == "(":
                raise ParseError("implicit multiplication is not allowed", pos)
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[1] == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            k = int(val)
            if k > MAX_EXPONENT:
                raise ParseError(f"exponent overflow (max {MAX_EXPONENT})", pos)
            try:
                return base**k
            except OverflowError:
                raise ParseError(f"exponent overflow (max {MAX_EXPONENT})", pos) from None
        return base

    def base(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            num = int(val)
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise ParseError("expected denominator", p2)
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2)
                return self.ring.const(Fraction(num, int(v2)))
            return self.ring.const(num)
        if kind == "name":
            if val not in self.ring.variables:
                raise ParseError(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind is None:
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``.

    Grammar: sums of products of powers of rational literals, variables and
    parenthesised expressions; ``*`` is mandatory, ``-`` may open an
    expression.
    """
    return _Parser(text, ring).parse()


# ---------------------------------------------------------------------------
# matrices of polynomials


def jacobian_matrix(funcs: Sequence[Polynomial], variables: Sequence[str]) -> list[list[Polynomial]]:
    return [[f.diff(v) for v in variables] for f in funcs]


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoised on column subsets."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    ring = M[0][0].ring
    memo: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def det(r: int, cols: tuple[int, ...]) -> Polynomial:
        if r == n:
            return ring.one()
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = ring.zero()
        for j, c in enumerate(cols):
            entry = M[r][c]
            if entry.is_zero():
                continue
            sub = det(r + 1, cols[:j] + cols[j + 1 :])
            if sub.is_zero():
                continue
            t = entry * sub
            acc = acc - t if j % 2 else acc + t
        memo[key] = acc
        return acc

    return det(0, tuple(range(n)))


def minors_ideal(M: Sequence[Sequence[Polynomial]], k: int) -> list[Polynomial]:
    """All ``k x k`` minors, rows subsets outer, column subsets inner, both lexicographic."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if not 1 <= k <= min(rows, cols):
        raise ValueError(f"minor size {k} out of range for a {rows}x{cols} matrix")
    out = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            out.append(determinant([[M[r][c] for c in cs] for r in rs]))
    return out
