"""Standard bases for global and local monomial orders.

Global orders run Buchberger's algorithm; local orders run Mora's tangent
cone algorithm (ecart-driven weak normal forms).  For local orders, once the
leading ideal contains a pure power of every variable, the highest corner
gives a degree ``N`` with ``m^N`` inside the ideal, and from then on every
polynomial is truncated at degree ``N`` so reductions become finite.

Internally polynomials are dicts ``{key: int}``.  The key of a monomial is an
integer whose natural ordering *is* the monomial order and which is affine
in the exponent vector, so monomial multiplication is integer addition and
leading terms are ``max(dict)``.  Coefficients are kept fraction-free and
primitive; exact rational values are recovered at the boundary.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import (
    MAX_EXPONENT,
    MonomialOrder,
    Polynomial,
    PolyRing,
    block,
    degrevlex,
    negdegrevlex,
)

__all__ = [
    "IdealBasis",
    "StandardBasis",
    "Staircase",
    "INFINITE",
    "standard_basis",
    "normal_form",
    "colength",
    "eliminate",
    "lift",
    "exact_divide",
    "resultant",
    "quotient_modulo",
    "StandardBasisAborted",
]

INFINITE = math.inf

_B = 16  # bits per exponent field
_C = (1 << _B) - 1
_PB = _B + 1  # packed width with guard bit


class StandardBasisAborted(RuntimeError):
    """Local computation exceeded the degree ceiling before finding a corner."""


# ---------------------------------------------------------------------------
# monomial encodings


class _Encoding:
    """Order-preserving affine integer encoding of exponent vectors."""

    def __init__(self, order: MonomialOrder, nvars: int):
        self.order = order
        self.n = nvars
        kind = order.kind
        if kind == "block":
            k = order.split
            if not 0 < k < nvars:
                raise ValueError("block split out of range")
            self.sub1 = _Encoding(order.first, k)
            self.sub2 = _Encoding(order.second, nvars - k)
            self.lowbits = self.sub2.width + 1
            self.offset = 1 << self.sub2.width
            self.width = None
        elif kind == "lex":
            self.width = nvars * _B
        else:
            self.sign = 1 if kind in ("degrevlex", "weighted") else -1
            self.w = order.degree_weights(nvars)
            self.width = nvars * _B + 2 * _B + 1
        self.zero = self._encode((0,) * nvars)
        self._dec: dict[int, tuple] = {}
        self._pk: dict[int, int] = {}
        self.guard = sum(1 << (_PB * i + _B) for i in range(nvars))
        self.dw = order.degree_weights(nvars) if order.weights is not None else (1,) * nvars

    def _encode(self, e: Sequence[int]) -> int:
        kind = self.order.kind
        if kind == "block":
            k = self.order.split
            return (self.sub1._encode(e[:k]) << self.lowbits) + self.sub2._encode(e[k:]) + self.offset
        if kind == "lex":
            key = 0
            for x in e:
                key = (key << _B) | x
            return key
        key = 0
        for x in reversed(e):
            key = (key << _B) | (_C - x)
        wdeg = sum(a * b for a, b in zip(self.w, e))
        return key + ((self.sign * wdeg) << (self.n * _B))

    def encode(self, e: Sequence[int]) -> int:
        if any(x > MAX_EXPONENT or x < 0 for x in e):
            raise OverflowError("exponent out of range")
        k = self._encode(e)
        self._dec[k] = tuple(e)
        return k

    def _decode(self, k: int) -> tuple:
        kind = self.order.kind
        if kind == "block":
            hi = k >> self.lowbits
            lo = k - (hi << self.lowbits) - self.offset
            return self.sub1._decode(hi) + self.sub2._decode(lo)
        n = self.n
        mask = _C
        if kind == "lex":
            out = []
            for _ in range(n):
                out.append(k & mask)
                k >>= _B
            return tuple(reversed(out))
        top = k >> (n * _B)
        r = k - (top << (n * _B))
        out = []
        for _ in range(n):
            out.append(_C - (r & mask))
            r >>= _B
        return tuple(out)

    def decode(self, k: int) -> tuple:
        e = self._dec.get(k)
        if e is None:
            e = self._decode(k)
            if any(x > MAX_EXPONENT or x < 0 for x in e) or self._encode(e) != k:
                raise OverflowError("exponent out of range in standard basis computation")
            self._dec[k] = e
        return e

    def packed(self, k: int) -> int:
        p = self._pk.get(k)
        if p is None:
            p = 0
            for i, x in enumerate(self.decode(k)):
                p |= x << (_PB * i)
            self._pk[k] = p
        return p

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((self.packed(b) | g) - self.packed(a)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(map(max, self.decode(a), self.decode(b))))

    def coprime(self, a: int, b: int) -> bool:
        return all(not (x and y) for x, y in zip(self.decode(a), self.decode(b)))

    def deg(self, k: int) -> int:
        """Degree (weighted for weighted orders) of the monomial with key ``k``."""
        if self.order.kind in ("negdegrevlex", "weighted_local", "degrevlex", "weighted"):
            return self.sign * (k >> (self.n * _B))
        return sum(a * b for a, b in zip(self.dw, self.decode(k)))

    def threshold(self, N: int) -> int:
        """Smallest key of local degree ``< N`` (local degree orders only)."""
        return -((N - 1) << (self.n * _B))


# ---------------------------------------------------------------------------
# internal polynomial records


class _SP:
    __slots__ = ("t", "lm", "lc", "ecart", "deg", "rep", "den")

    def __init__(self, t: dict, enc: _Encoding, rep=None, den=1):
        self.t = t
        self.lm = max(t)
        self.lc = t[self.lm]
        if enc.order.is_local:
            self.ecart = enc.deg(min(t)) - enc.deg(self.lm)
        else:
            self.ecart = 0
        self.deg = enc.deg(self.lm)
        self.rep = rep
        self.den = den


def _content(t: dict) -> int:
    return math.gcd(*t.values())


def _make_primitive(t: dict, rep=None, den=1):
    c = _content(t)
    lead = t[max(t)]
    if lead < 0:
        c = -c
    if c != 1:
        t = {k: v // c for k, v in t.items()}
        den *= c
    return t, rep, den


def _to_internal(p: Polynomial, enc: _Encoding) -> tuple[dict, Fraction]:
    """Integer dict and the scalar ``s`` with ``p = s * dict``."""
    terms = p.as_dict()
    if not terms:
        return {}, Fraction(1)
    den = 1
    for c in terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    t = {enc.encode(e): int(c * den) for e, c in terms.items()}
    c = _content(t)
    t = {k: v // c for k, v in t.items()}
    return t, Fraction(c, den)


def _from_internal(t: dict, enc: _Encoding, ring: PolyRing, scale: Fraction = Fraction(1)) -> Polynomial:
    return Polynomial._raw(ring, {enc.decode(k): scale * v for k, v in t.items()})


# ---------------------------------------------------------------------------
# reduction primitives


def _axpy(h: dict, a: int, b: int, g: dict, dt: int, thresh=None) -> dict:
    """Return ``a*h - b*x^dt*g`` (in place when a == 1)."""
    if a != 1:
        h = {k: a * v for k, v in h.items()}
    get = h.get
    if thresh is None:
        for k, v in g.items():
            k2 = k + dt
            nv = get(k2, 0) - b * v
            if nv:
                h[k2] = nv
            else:
                del h[k2]
    else:
        for k, v in g.items():
            k2 = k + dt
            if k2 < thresh:
                continue
            nv = get(k2, 0) - b * v
            if nv:
                h[k2] = nv
            else:
                del h[k2]
    return h


def _axpy_rep(hrep, hden, a, b, g: _SP, dt, nrep):
    """Cofactor update matching ``a*h - b*x^dt*g``; returns (rep, den)."""
    # h_new = a*h - b*m*g, with h = hrep/hden, g = grep/gden
    L = hden * g.den // math.gcd(hden, g.den)
    fh = a * (L // hden)
    fg = b * (L // g.den)
    out = []
    for i in range(nrep):
        r = {k: fh * v for k, v in hrep[i].items()} if fh != 1 else dict(hrep[i])
        for k, v in g.rep[i].items():
            k2 = k + dt
            nv = r.get(k2, 0) - fg * v
            if nv:
                r[k2] = nv
            else:
                r.pop(k2, None)
        out.append(r)
    return out, L


class _Engine:
    def __init__(self, ring: PolyRing, order: MonomialOrder, max_degree: int = 512, track: bool = False):
        self.ring = ring
        self.order = order
        self.enc = _Encoding(order, ring.nvars)
        self.local = order.is_local
        if self.local and order.kind not in ("negdegrevlex", "weighted_local"):
            raise NotImplementedError("local block orders are not supported")
        if not self.local and not order.is_global:
            raise NotImplementedError("mixed orders are not supported")
        self.max_degree = max_degree
        self.track = track
        self.thresh = None  # truncation key threshold once a corner is known
        self.corner_N = None
        self.basis: list[_SP] = []
        self.nrep = 0

    # -- normal forms -------------------------------------------------------

    def _find_reducer(self, lm: int, pool) -> _SP | None:
        enc = self.enc
        best = None
        for g in pool:
            if g.lm == lm or enc.divides(g.lm, lm):
                if best is None or g.ecart < best.ecart:
                    best = g
                    if g.ecart == 0:
                        break
        return best

    def _truncate(self, t: dict) -> dict:
        th = self.thresh
        if th is None:
            return t
        return {k: v for k, v in t.items() if k >= th}

    def weak_nf(self, h: dict, rep=None, den=1):
        """Reduce the leading term until it is standard (Mora NF for local orders)."""
        enc = self.enc
        pool = self.basis
        local = self.local and self.thresh is None
        h = self._truncate(h)
        extra: list[_SP] = []
        steps = 0
        while h:
            lm = max(h)
            g = self._find_reducer(lm, pool)
            if local:
                g2 = self._find_reducer(lm, extra)
                if g2 is not None and (g is None or g2.ecart < g.ecart):
                    g = g2
            if g is None:
                break
            if local:
                eh = enc.deg(min(h)) - enc.deg(lm)
                if g.ecart > eh:
                    extra.append(_SP(dict(h), enc))
                if enc.deg(lm) > self.max_degree:
                    raise StandardBasisAborted(f"degree ceiling {self.max_degree} reached")
            h, rep, den = self._step(h, lm, g, rep, den)
            steps += 1
            if steps % 8 == 0 and h:
                h, rep, den = self._reprimitive(h, rep, den)
        return h, rep, den

    def full_nf(self, h: dict, rep=None, den=1):
        """Reduce every term (global orders, or local orders after the corner)."""
        pool = self.basis
        h = self._truncate(h)
        bound = None
        steps = 0
        while True:
            if bound is None:
                cands = h
            else:
                cands = [k for k in h if k < bound]
            if not cands:
                break
            lm = max(cands)
            g = self._find_reducer(lm, pool)
            if g is None:
                bound = lm
                continue
            h, rep, den = self._step(h, lm, g, rep, den)
            steps += 1
            if steps % 8 == 0 and h:
                h, rep, den = self._reprimitive(h, rep, den)
        return h, rep, den

    def _step(self, h, lm, g: _SP, rep, den):
        ch = h[lm]
        d = math.gcd(ch, g.lc)
        a = g.lc // d
        b = ch // d
        if a < 0:
            a, b = -a, -b
        dt = lm - g.lm
        if rep is not None:
            rep, den = _axpy_rep(rep, den, a, b, g, dt, self.nrep)
        h = _axpy(h, a, b, g.t, dt, self.thresh)
        return h, rep, den

    def _reprimitive(self, h, rep, den):
        c = _content(h)
        if c != 1:
            h = {k: v // c for k, v in h.items()}
            den *= c
        if rep is not None:
            rc = 0
            for r in rep:
                if r:
                    rc = math.gcd(rc, _content(r))
            rc = math.gcd(rc, den)
            if rc > 1:
                rep = [{k: v // rc for k, v in r.items()} for r in rep]
                den //= rc
        return h, rep, den

    # -- basis bookkeeping --------------------------------------------------

    def _normalize(self, h, rep, den):
        return _make_primitive(h, rep, den)

    def _spoly(self, f: _SP, g: _SP):
        enc = self.enc
        L = enc.lcm(f.lm, g.lm)
        d = math.gcd(f.lc, g.lc)
        a = g.lc // d
        b = f.lc // d
        h = _axpy({}, 1, -a, f.t, L - f.lm, self.thresh)
        h = _axpy(h, 1, b, g.t, L - g.lm, self.thresh)
        rep, den = None, 1
        if self.track:
            # rep = a*x^(L-f)*frep/fden - b*x^(L-g)*grep/gden
            Lden = f.den * g.den // math.gcd(f.den, g.den)
            fa = a * (Lden // f.den)
            fb = b * (Lden // g.den)
            rep = []
            for i in range(self.nrep):
                r = {}
                for k, v in f.rep[i].items():
                    r[k + L - f.lm] = fa * v
                for k, v in g.rep[i].items():
                    k2 = k + L - g.lm
                    nv = r.get(k2, 0) - fb * v
                    if nv:
                        r[k2] = nv
                    else:
                        r.pop(k2, None)
                rep.append(r)
            den = Lden
        return h, rep, den


class _ModEngine(_Engine):
    """Buchberger over GF(p) for global orders; elements are kept monic."""

    def __init__(self, ring, order, p: int, track: bool = False, max_degree: int = 512):
        super().__init__(ring, order, max_degree=max_degree, track=track)
        self.p = p

    def _normalize(self, h, rep, den):
        p = self.p
        inv = pow(h[max(h)], -1, p)
        if inv != 1:
            h = {k: v * inv % p for k, v in h.items()}
            if rep is not None:
                rep = [{k: v * inv % p for k, v in r.items()} for r in rep]
        return h, rep, 1

    def _step(self, h, lm, g: _SP, rep, den):
        p = self.p
        b = h[lm]
        dt = lm - g.lm
        h = _sub_mod(h, b, g.t, dt, p, self.thresh)
        if rep is not None:
            rep = [_sub_mod(r, b, gr, dt, p) for r, gr in zip(rep, g.rep)]
        return h, rep, 1

    def _reprimitive(self, h, rep, den):
        return h, rep, den

    def _spoly(self, f: _SP, g: _SP):
        p = self.p
        L = self.enc.lcm(f.lm, g.lm)
        th = self.thresh
        dt = L - f.lm
        if th is None:
            h = {k + dt: v for k, v in f.t.items()}
        else:
            h = {k + dt: v for k, v in f.t.items() if k + dt >= th}
        h = _sub_mod(h, 1, g.t, L - g.lm, p, th)
        rep = None
        if self.track:
            rep = [_sub_mod({k + L - f.lm: v for k, v in fr.items()}, 1, gr, L - g.lm, p) for fr, gr in zip(f.rep, g.rep)]
        return h, rep, 1


def _sub_mod(h: dict, b: int, g: dict, dt: int, p: int, thresh=None) -> dict:
    """``h - b*x^dt*g`` over GF(p), in place, dropping keys below ``thresh``."""
    get = h.get
    for k, v in g.items():
        k2 = k + dt
        if thresh is not None and k2 < thresh:
            continue
        nv = (get(k2, 0) - b * v) % p
        if nv:
            h[k2] = nv
        else:
            h.pop(k2, None)
    return h


# ---------------------------------------------------------------------------
# modular arithmetic helpers

_PRIME_CACHE: list[int] = []


def _primes():
    """Primes just below 2**30, in decreasing order."""
    i = 0
    while True:
        while i >= len(_PRIME_CACHE):
            q = _PRIME_CACHE[-1] - 2 if _PRIME_CACHE else (1 << 30) - 1
            while not _is_prime(q):
                q -= 2
            _PRIME_CACHE.append(q)
        yield _PRIME_CACHE[i]
        i += 1


def _is_prime(q: int) -> bool:
    if q % 2 == 0:
        return q == 2
    r = math.isqrt(q)
    f = 3
    while f <= r:
        if q % f == 0:
            return False
        f += 2
    return True


def _rational_reconstruction(a: int, m: int) -> Fraction | None:
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


class _Reconstructor:
    """Chinese remaindering of modular images of a family of polynomials.

    An image is a list of ``{key: residue}`` dicts.  Images whose leading
    key signature disagrees with the majority are discarded as unlucky.
    """

    def __init__(self):
        self.groups: dict[tuple, list] = {}  # signature -> [modulus, residues]

    def add(self, image: list[dict], p: int) -> tuple:
        sig = tuple(tuple(sorted(t)) for t in image)
        slot = self.groups.get(sig)
        if slot is None:
            self.groups[sig] = [p, [dict(t) for t in image], 1]
            return sig
        M, acc, cnt = slot
        inv = pow(M, -1, p)
        for t, ti in zip(acc, image):
            for k, a in t.items():
                t[k] = a + M * ((ti[k] - a) * inv % p)
        slot[0] = M * p
        slot[2] = cnt + 1
        return sig

    def best(self):
        return max(self.groups.items(), key=lambda kv: (kv[1][2], kv[0]))

    def reconstruct(self, sig) -> list[dict] | None:
        M, acc, _ = self.groups[sig]
        out = []
        for t in acc:
            r = {}
            for k, a in t.items():
                q = _rational_reconstruction(a, M)
                if q is None:
                    return None
                r[k] = q
            out.append(r)
        return out


@dataclass(frozen=True)
class IdealBasis:
    """Generators of an ideal; an empty list is the zero ideal."""

    ring: PolyRing
    generators: tuple[Polynomial, ...] = ()

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring.variables != ring.variables:
                raise ValueError("generator lives in a different ring")
            if not g.is_zero():
                gens.append(g if g.ring == ring else Polynomial._raw(ring, g.as_dict()))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other: "IdealBasis | Iterable[Polynomial]") -> "IdealBasis":
        extra = other.generators if isinstance(other, IdealBasis) else tuple(other)
        return IdealBasis(self.ring, self.generators + tuple(extra))


@dataclass(frozen=True)
class Staircase:
    """Standard monomials of a leading ideal, or ``None`` when infinitely many."""

    standard_monomials: tuple[tuple[int, ...], ...] | None

    @property
    def is_finite(self) -> bool:
        return self.standard_monomials is not None

    def __len__(self):
        if self.standard_monomials is None:
            raise ValueError("infinite staircase")
        return len(self.standard_monomials)

    @property
    def size(self):
        return INFINITE if self.standard_monomials is None else len(self.standard_monomials)


@dataclass
class StandardBasis:
    ideal: IdealBasis
    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    leading_ideal: tuple[tuple[int, ...], ...]
    corner_degree: int | None = None
    _engine: _Engine | None = field(default=None, repr=False, compare=False)

    def staircase(self) -> Staircase:
        return Staircase(_enumerate_staircase(self.leading_ideal, self.ideal.ring.nvars))

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()


def _minimal_monomials(ms: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    ms = sorted(set(ms), key=lambda e: (sum(e), e))
    out: list[tuple[int, ...]] = []
    for m in ms:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def _enumerate_staircase(lms: Sequence[tuple[int, ...]], n: int) -> tuple | None:
    pure = [False] * n
    for e in lms:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            pure[nz[0]] = True
        if not nz:
            return ()
    if not all(pure):
        return None
    out = []
    stack = [((0,) * n, 0)]
    while stack:
        e, start = stack.pop()
        if any(all(a <= b for a, b in zip(m, e)) for m in lms):
            continue
        out.append(e)
        for i in range(start, n):
            stack.append((e[:i] + (e[i] + 1,) + e[i + 1 :], i))
    out.sort(key=lambda e: (sum(e), e))
    return tuple(out)


def _run(engine: _Engine, gens: list[dict], reps=None):
    """Complete ``gens`` to a standard basis inside ``engine``."""
    enc = engine.enc
    pairs: dict[tuple[int, int], int] = {}
    heap: list = []
    active: list[int] = []
    pure: dict[int, int] = {}
    local = engine.local

    def pair_key(i, j, lcm):
        if local:
            return (enc.deg(lcm), j, i)
        return (enc.deg(lcm), lcm, j, i) if enc.order.kind in ("degrevlex", "weighted") else (enc.deg(lcm), j, i)

    def update_corner():
        n = engine.ring.nvars
        if len(pure) < n:
            return
        lms = _minimal_monomials(enc.decode(g.lm) for g in engine.basis)
        st = _enumerate_staircase(lms, n)
        dw = enc.dw
        N = max((sum(a * b for a, b in zip(dw, e)) for e in st), default=-1) + 1
        if N <= 0:
            N = 0
        if engine.corner_N is None or N < engine.corner_N:
            engine.corner_N = N
            engine.thresh = enc.threshold(N) if N > 0 else None
            if N == 0:
                # ideal is the unit ideal
                engine.thresh = 1 << 4096
            for g in engine.basis:
                t = engine._truncate(g.t)
                if not t or max(t) != g.lm:
                    # the leading monomial lies past the corner, hence in the ideal
                    t = {g.lm: 1}
                    g.lc = 1
                    g.rep, g.den = None, 1
                g.t = t
                g.ecart = 0

    def add(h: dict, rep, den):
        h, rep, den = engine._normalize(h, rep, den)
        sp = _SP(h, enc, rep, den)
        r = len(engine.basis)
        engine.basis.append(sp)
        L = sp.lm
        # Gebauer-Moeller: drop old pairs made redundant by the new element
        for (i, j), lij in list(pairs.items()):
            if enc.divides(L, lij):
                bi, bj = engine.basis[i].lm, engine.basis[j].lm
                if enc.lcm(bi, L) != lij and enc.lcm(bj, L) != lij:
                    del pairs[(i, j)]
        new = {}
        for i in active:
            new[i] = enc.lcm(engine.basis[i].lm, L)
        # chain criterion among new pairs
        keep = {}
        items = sorted(new.items(), key=lambda it: (enc.deg(it[1]), it[0]))
        for i, lij in items:
            if any(l2 != lij and enc.divides(l2, lij) for l2 in keep.values()):
                continue
            keep[i] = lij
        byl: dict[int, list[int]] = {}
        for i, lij in keep.items():
            byl.setdefault(lij, []).append(i)
        for lij, idx in byl.items():
            if any(enc.coprime(engine.basis[i].lm, L) for i in idx):
                continue
            i = min(idx)
            if engine.thresh is not None and lij < engine.thresh:
                continue
            pairs[(i, r)] = lij
            heapq.heappush(heap, (pair_key(i, r, lij), i, r))
        # elements whose leading monomial is a multiple of L stop spawning pairs
        active[:] = [i for i in active if not enc.divides(L, engine.basis[i].lm)]
        active.append(r)
        if local:
            e = enc.decode(L)
            nz = [i for i, x in enumerate(e) if x]
            if len(nz) == 1:
                v = nz[0]
                if v not in pure or e[v] < pure[v]:
                    pure[v] = e[v]
                    update_corner()
            elif not nz:
                pure.update({v: 0 for v in range(engine.ring.nvars)})
                update_corner()
            elif engine.corner_N is not None:
                update_corner()

    for idx, t in enumerate(gens):
        rep = reps[idx] if reps is not None else None
        den = 1
        t = engine._truncate(t)
        if not t:
            continue
        h, rep, den = engine.weak_nf(dict(t), rep, den)
        if h:
            add(h, rep, den)

    while heap:
        _, i, j = heapq.heappop(heap)
        lij = pairs.pop((i, j), None)
        if lij is None:
            continue
        if engine.thresh is not None and lij < engine.thresh:
            continue
        f, g = engine.basis[i], engine.basis[j]
        h, rep, den = engine._spoly(f, g)
        if not h:
            continue
        h, rep, den = engine.weak_nf(h, rep, den)
        if h:
            add(h, rep, den)


def _interreduce(engine: _Engine) -> list[_SP]:
    """Minimal basis; tails fully reduced where reduction is finite."""
    enc = engine.enc
    basis = engine.basis
    keep: list[_SP] = []
    order = sorted(range(len(basis)), key=lambda i: (basis[i].lm, -i))
    for i in order:
        g = basis[i]
        if any(enc.divides(o.lm, g.lm) for o in keep):
            continue
        keep = [o for o in keep if not enc.divides(g.lm, o.lm)]
        keep.append(g)
    finite = (not engine.local) or engine.thresh is not None
    if not finite:
        return keep
    out = []
    for g in keep:
        others = [o for o in keep if o is not g]
        saved = engine.basis
        engine.basis = others
        lm, lc = g.lm, g.t[g.lm]
        tail = {k: v for k, v in g.t.items() if k != lm}
        # reduce tail, keeping the leading term scaled consistently
        h = dict(tail)
        h[lm] = lc
        # only tail terms are reducible by others (lm is not)
        h, rep, den = engine.full_nf(h, g.rep, g.den)
        engine.basis = saved
        if not h or max(h) != lm:
            h, rep, den = {lm: 1}, None, 1
        h, rep, den = engine._normalize(h, rep, den)
        out.append(_SP(h, enc, rep, den))
    return out


def standard_basis(
    I: IdealBasis,
    order: MonomialOrder | None = None,
    *,
    max_degree: int = 512,
) -> StandardBasis:
    """Standard basis of ``I`` with respect to ``order`` (default: the ring's order).

    Local orders yield a basis of the ideal generated in the localisation at
    the origin.
    """
    order = order or I.ring.order
    ring = I.ring.with_order(order)
    engine = _Engine(ring, order, max_degree=max_degree)
    gens = [_to_internal(g, engine.enc)[0] for g in I.generators]
    _run(engine, gens)
    return _package(engine, I, order)


def _package(engine: _Engine, I: IdealBasis, order: MonomialOrder) -> StandardBasis:
    enc = engine.enc
    ring = I.ring.with_order(order)
    final = _interreduce(engine)
    engine.basis = final
    polys = []
    for g in sorted(final, key=lambda s: s.lm, reverse=True):
        polys.append(_from_internal(g.t, enc, ring, Fraction(1, g.lc)))
    lms = tuple(_minimal_monomials(enc.decode(g.lm) for g in final))
    return StandardBasis(I, tuple(polys), order, lms, engine.corner_N, engine)


def normal_form(p: Polynomial, B: StandardBasis) -> Polynomial:
    """Remainder of ``p`` with respect to ``B``.

    For global orders (and local orders whose leading ideal has finite
    colength) every term of the result is standard.  Otherwise the result is
    a weak normal form: its leading term is standard and it vanishes iff
    ``p`` lies in the ideal.  Local remainders are determined up to a unit.
    """
    engine = B._engine
    ring = B.ideal.ring.with_order(B.order)
    if engine is None or p.ring.variables != ring.variables:
        raise ValueError("polynomial is not in the basis ring")
    if p.is_zero():
        return Polynomial._raw(ring, {})
    t, s = _to_internal(p, engine.enc)
    t = engine._truncate(t)
    if not t:
        return Polynomial._raw(ring, {})
    if engine.local and engine.thresh is None:
        h, _, den = engine.weak_nf(t)
    else:
        h, _, den = engine.full_nf(t)
    return _from_internal(h, engine.enc, ring, s / den)


TRUNCATION_LIMIT = 64


def colength(
    I: IdealBasis,
    order: MonomialOrder | None = None,
    *,
    max_degree: int = 512,
    modular: bool = True,
):
    """``dim_Q`` of the local quotient ring at the origin, or ``INFINITE``.

    The default path works over GF(p) for large primes p and needs two
    primes to agree; the count over the rationals differs from the count mod
    p only for the finitely many primes dividing some pivot along the way.
    For the degree order it first computes the standard basis of
    ``I + m^N``, everything truncated at degree N, and accepts the count
    once no standard monomial of degree ``N - 1`` is left: then ``m^(N-1)``
    lies in ``I + m^N`` and hence, by Nakayama, in ``I``.  Otherwise it falls
    back to Mora's algorithm.  ``modular=False`` runs Mora over the rationals.
    """
    order = order or negdegrevlex()
    if not order.is_local:
        raise ValueError("colength needs a local order")
    if not I.generators:
        return INFINITE
    if not modular:
        try:
            B = standard_basis(I, order, max_degree=max_degree)
        except StandardBasisAborted:
            return INFINITE
        return B.staircase().size
    ring = I.ring.with_order(order)
    enc = _Encoding(order, ring.nvars)
    internal = [_to_internal(g, enc)[0] for g in I.generators]
    results = []
    hint = None
    for prime in _primes():
        value, hint = _colength_mod(ring, order, enc, internal, prime, max_degree, hint)
        results.append(value)
        if len(results) >= 2 and results[-1] == results[-2]:
            return value
        if len(results) >= 5:
            return Counter(results).most_common(1)[0][0]


def _colength_mod(ring, order, enc, internal, p, max_degree, hint):
    gens = [t for t in (_mod_image(t, p) for t in internal) if t]
    if not gens:
        return INFINITE, hint
    n = ring.nvars
    if order.kind == "negdegrevlex":
        N = hint or 8
        while N <= TRUNCATION_LIMIT:
            engine = _ModEngine(ring, order, p)
            engine.thresh = enc.threshold(N)
            engine.corner_N = N
            _run(engine, [t for t in (engine._truncate(t) for t in gens) if t])
            lms = [enc.decode(g.lm) for g in engine.basis]
            lms += [tuple(N if j == i else 0 for j in range(n)) for i in range(n)]
            st = _enumerate_staircase(_minimal_monomials(lms), n)
            st = [e for e in st if sum(e) < N]
            if max((sum(e) for e in st), default=-1) <= N - 2:
                return len(st), N
            N = max(N + 4, N * 3 // 2)
    engine = _ModEngine(ring, order, p, max_degree=max_degree)
    try:
        _run(engine, gens)
    except StandardBasisAborted:
        return INFINITE, hint
    lms = _minimal_monomials(enc.decode(g.lm) for g in engine.basis)
    st = _enumerate_staircase(lms, n)
    return (INFINITE if st is None else len(st)), hint


def _linear_solvable(p: Polynomial, i: int) -> bool:
    """True if variable ``i`` occurs in ``p`` only as a lone linear term."""
    hit = False
    for e in p.as_dict():
        if e[i]:
            if e[i] != 1 or any(x for j, x in enumerate(e) if j != i):
                return False
            hit = True
    return hit


MAX_PRIMES = 400


def eliminate(
    I: IdealBasis,
    drop_vars: Sequence[str],
    *,
    modular: bool = True,
    method: str = "groebner",
) -> IdealBasis:
    """Generators of ``I`` intersected with the polynomial ring in the kept variables.

    Generators that solve linearly for a dropped variable are substituted
    first; the rest runs Buchberger for the block order (degrevlex on the
    dropped variables, then degrevlex on the kept ones).  The result lives in
    a ring on the kept variables, in their original order, and is a reduced
    degrevlex Groebner basis.

    With ``modular`` (the default) the block basis is computed over GF(p)
    for word-size primes p and lifted to the rationals by Chinese
    remaindering and rational reconstruction, stopping once two consecutive
    reconstructions agree.  Coefficient growth over the rationals makes the
    direct computation far slower on discriminants of degree 10 and up.

    ``method="auto"`` short-cuts the case of one remaining variable, two
    generators with constant leading coefficients in it and two kept
    variables: the result is then the resultant, which generates the 0th
    Fitting ideal of the projection.  It has the same zero set as the
    elimination ideal and coincides with it when the projection is
    generically one-to-one onto a reduced curve.
    """
    if method not in ("groebner", "auto"):
        raise ValueError(f"unknown elimination method {method!r}")
    ring = I.ring
    drop = list(dict.fromkeys(drop_vars))
    for v in drop:
        ring.index(v)
    keep = [v for v in ring.variables if v not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    gens = list(I.generators)
    remaining = list(drop)
    changed = True
    while changed:
        changed = False
        for v in list(remaining):
            i = ring.index(v)
            for p in gens:
                if _linear_solvable(p, i):
                    c = p.as_dict()[tuple(1 if j == i else 0 for j in range(ring.nvars))]
                    rest = p - ring.var(v).scale(c)
                    image = rest.scale(Fraction(-1) / c)
                    images = {w: (image if w == v else ring.var(w)) for w in ring.variables}
                    gens = [q.compose(ring, images) for q in gens if q is not p]
                    gens = [q for q in gens if not q.is_zero()]
                    remaining.remove(v)
                    changed = True
                    break
            if changed:
                break
    keep_ring = PolyRing(keep, degrevlex())
    if method == "auto" and len(remaining) == 1 and len(gens) == 2 and len(keep) == 2:
        v = remaining[0]
        r3 = PolyRing([v] + keep, degrevlex())
        a, b = (q.to_ring(r3) for q in gens)
        if _constant_lead(a, 0) and _constant_lead(b, 0):
            r = resultant(a, b, v)
            if r.is_zero():
                return IdealBasis(keep_ring, [])
            return IdealBasis(keep_ring, [r.to_ring(keep_ring).monic()])
    if remaining:
        new_vars = remaining + keep
        bring = PolyRing(new_vars, block(degrevlex(), len(remaining), degrevlex()))
        bgens = [q.to_ring(bring) for q in gens]
        out = None
        if modular:
            out = _eliminate_modular(bring, bgens, len(remaining))
        if out is None:
            B = standard_basis(IdealBasis(bring, bgens), bring.order)
            out = [q for q in B.basis if not q.variables_used() & set(remaining)]
        out = [q.to_ring(keep_ring) for q in out]
    else:
        out = [q.to_ring(keep_ring) for q in gens]
    if not out:
        return IdealBasis(keep_ring, [])
    if len(out) == 1:
        return IdealBasis(keep_ring, [out[0].monic()])
    B2 = standard_basis(IdealBasis(keep_ring, out), degrevlex())
    return IdealBasis(keep_ring, B2.basis)


def _constant_lead(p: Polynomial, i: int) -> bool:
    top = max(e[i] for e in p.as_dict())
    return top > 0 and all(sum(e) == e[i] for e in p.as_dict() if e[i] == top)


def _uni_resultant(A: list, B: list, p: int) -> int:
    """Resultant over GF(p) of coefficient lists (lowest degree first, no zero lead)."""
    res = 1
    while True:
        m, n = len(A) - 1, len(B) - 1
        if n == 0:
            return res * pow(B[0], m, p) % p
        # R = A mod B
        R = A[:]
        inv = pow(B[-1], -1, p)
        for k in range(m - n, -1, -1):
            q = R[k + n] * inv % p
            if q:
                for j in range(n + 1):
                    R[k + j] = (R[k + j] - q * B[j]) % p
        R = R[:n]
        while R and R[-1] == 0:
            R.pop()
        if not R:
            return 0
        r = len(R) - 1
        if (m * n) % 2:
            res = -res
        res = res * pow(B[-1], m - r, p) % p
        A, B = B, R


def _interpolate(xs: list, ys: list, p: int) -> list:
    """Coefficients (lowest first) of the polynomial through (xs, ys) over GF(p)."""
    n = len(xs)
    c = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    out = [0] * n
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + c[i]
        nxt = [0] * n
        for k in range(n - 1):
            nxt[k + 1] = out[k]
        for k in range(n):
            nxt[k] = (nxt[k] - xs[i] * out[k]) % p
        nxt[0] = (nxt[0] + c[i]) % p
        out = nxt
    return out


def _resultant_mod(a: dict, b: dict, zi: int, keep: tuple, p: int, D: int) -> dict:
    """Res_z(a, b) mod p as ``{(e_u, e_v): c}``; a, b map exponent tuples to ints."""
    def split(t):
        cols: dict[int, dict] = {}
        for e, c in t.items():
            cols.setdefault(e[zi], {})
            key = (e[keep[0]], e[keep[1]])
            cols[e[zi]][key] = (cols[e[zi]].get(key, 0) + c) % p
        top = max(cols)
        return [cols.get(k, {}) for k in range(top + 1)]

    ca, cb = split(a), split(b)
    pts = list(range(1, D + 2))
    pw = [[pow(x, k, p) for k in range(D + 1)] for x in pts]
    grid = []
    for ia in range(len(pts)):
        row = []
        for ib in range(len(pts)):
            PA = [sum(c * pw[ia][i] * pw[ib][j] for (i, j), c in col.items()) % p for col in ca]
            PB = [sum(c * pw[ia][i] * pw[ib][j] for (i, j), c in col.items()) % p for col in cb]
            row.append(_uni_resultant(PA, PB, p))
        grid.append(row)
    # interpolate in v for each u-node, then in u for each v-power
    rows = [_interpolate(pts, r, p) for r in grid]
    out = {}
    for j in range(D + 1):
        col = _interpolate(pts, [rows[i][j] for i in range(len(pts))], p)
        for i, c in enumerate(col):
            if c and i + j <= D:
                out[(i, j)] = c
    return out


def resultant(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    """Resultant of ``a`` and ``b`` with respect to ``var``, in a three-variable ring.

    Both polynomials must have constant leading coefficients in ``var``.
    Computed modulo word-size primes by evaluation and interpolation, then
    lifted by Chinese remaindering and rational reconstruction; the
    (monic-normalized) result is accepted once two consecutive
    reconstructions agree.
    """
    ring = a.ring
    if ring.nvars != 3:
        raise ValueError("resultant is implemented for three variables")
    zi = ring.index(var)
    if not (_constant_lead(a, zi) and _constant_lead(b, zi)):
        raise ValueError("leading coefficients in the eliminated variable must be constants")
    keep = tuple(i for i in range(3) if i != zi)
    kring = PolyRing([ring.variables[i] for i in keep], degrevlex())
    enc3 = _Encoding(degrevlex(), 3)
    ia = {enc3.decode(k): v for k, v in _to_internal(a, enc3)[0].items()}
    ib = {enc3.decode(k): v for k, v in _to_internal(b, enc3)[0].items()}
    D = a.total_degree() * b.total_degree()
    enc2 = _Encoding(degrevlex(), 2)
    rec = _Reconstructor()
    last = {}
    for count, prime in enumerate(_primes()):
        if count >= MAX_PRIMES:
            raise ArithmeticError("resultant reconstruction did not stabilize")
        if any(v % prime == 0 for v in (_lead_z(ia, zi), _lead_z(ib, zi))):
            continue
        r = _resultant_mod(ia, ib, zi, keep, prime, D)
        if not r:
            image = []
        else:
            t = {enc2.encode(e): c for e, c in r.items()}
            inv = pow(t[max(t)], -1, prime)
            image = [{k: c * inv % prime for k, c in t.items()}]
        sig = rec.add(image, prime)
        if rec.best()[0] != sig:
            continue
        cand = rec.reconstruct(sig)
        if cand is not None and cand == last.get(sig):
            if not cand:
                return kring.zero()
            return Polynomial._raw(kring, {enc2.decode(k): c for k, c in cand[0].items()})
        last[sig] = cand


def _lead_z(t: dict, zi: int) -> int:
    top = max(e[zi] for e in t)
    return next(c for e, c in t.items() if e[zi] == top)


def _mod_image(t: dict, p: int) -> dict:
    return {k: v % p for k, v in t.items() if v % p}


def _eliminate_modular(bring: PolyRing, gens: Sequence[Polynomial], ndrop: int):
    """Reduced block-order basis elements free of the first ``ndrop`` variables, or None."""
    order = bring.order
    enc = _Encoding(order, bring.nvars)
    internal = [_to_internal(g, enc)[0] for g in gens]
    rec = _Reconstructor()
    last = {}
    for count, prime in enumerate(_primes()):
        if count >= MAX_PRIMES:
            return None
        if any(t[max(t)] % prime == 0 for t in internal):
            continue
        engine = _ModEngine(bring, order, prime)
        _run(engine, [_mod_image(t, prime) for t in internal])
        basis = _interreduce(engine)
        image = []
        for g in sorted(basis, key=lambda b: b.lm, reverse=True):
            if not any(enc.decode(g.lm)[:ndrop]):
                image.append(g.t)
        sig = rec.add(image, prime)
        if rec.best()[0] != sig:
            continue
        cand = rec.reconstruct(sig)
        if cand is not None and cand == last.get(sig):
            return [Polynomial._raw(bring, {enc.decode(k): c for k, c in t.items()}) for t in cand]
        last[sig] = cand
    return None


def lift(p: Polynomial, gens: Sequence[Polynomial], *, modular: bool = True) -> list[Polynomial]:
    """Cofactors ``q`` with ``p = sum(q_i * gens_i)`` over the polynomial ring.

    Uses a Groebner basis for a global order with cofactor tracking.  Raises
    ``ValueError`` when ``p`` is not in the ideal.  The modular variant runs
    the same computation over GF(p) for several primes, reconstructs the
    cofactors and accepts them only after checking the identity exactly.
    """
    if p.is_zero():
        return [p.ring.zero() for _ in gens]
    if modular:
        out = _lift_modular(p, gens)
        if out is not None:
            return out
    return _lift_exact(p, gens)


def quotient_modulo(p: Polynomial, a: Polynomial, gens: Sequence[Polynomial]) -> Polynomial:
    """A polynomial ``h`` with ``p - h*a`` in the ideal of ``gens``.

    ``h`` is returned in normal form modulo a Groebner basis of ``gens``, so
    only the class of ``h`` in the quotient ring is computed.  The modular
    images are reconstructed and the result is checked exactly.  Raises
    ``ValueError`` when ``p`` is not in the ideal of ``gens`` and ``a``.
    """
    gens = list(gens)
    if not gens:
        return exact_divide(p, a)
    if p.is_zero():
        return p.ring.zero()
    ring, order, enc, internal, scales, tp, sp = _lift_setup(p, gens + [a])
    k = len(gens)
    exact = standard_basis(IdealBasis(ring, [g.to_ring(ring) for g in gens]), order)
    rec = _Reconstructor()
    misses, prev = 0, None
    for count, prime in enumerate(_primes()):
        if count >= MAX_PRIMES:
            break
        if any(t and t[max(t)] % prime == 0 for t in internal) or tp[max(tp)] % prime == 0:
            continue
        full = _ModEngine(ring, order, prime, track=True)
        full.nrep = k + 2
        reps = [[{enc.zero: 1} if j == i else {} for j in range(k + 2)] for i in range(k + 1)]
        _run(full, [_mod_image(t, prime) for t in internal], reps)
        rep = [{} for _ in range(k + 1)] + [{enc.zero: 1}]
        h, rep, _ = full.full_nf(_mod_image(tp, prime), rep, 1)
        if h:
            misses += 1
            if misses >= 3:
                raise ValueError("polynomial is not in the ideal")
            continue
        rp = rep[k + 1]
        if set(rp) != {enc.zero}:
            continue
        base = _ModEngine(ring, order, prime)
        _run(base, [_mod_image(t, prime) for t in internal[:k]])
        q, _, _ = base.full_nf(rep[k], None, 1)
        f = -pow(rp[enc.zero], -1, prime) % prime
        sig = rec.add([{key: v * f % prime for key, v in q.items()}], prime)
        if rec.best()[0] != sig:
            continue
        cand = rec.reconstruct(sig)
        if cand is None or cand != prev:
            prev = cand
            continue
        h = Polynomial._raw(ring, {enc.decode(key): c * sp / scales[k] for key, c in cand[0].items()})
        h = Polynomial._raw(p.ring, h.as_dict())
        if normal_form((p - h * a).to_ring(ring), exact).is_zero():
            return h
    # no agreement among the modular images: fall back to an exact cofactor
    h = _lift_exact(p, gens + [a])[-1]
    return Polynomial._raw(p.ring, normal_form(h.to_ring(ring), exact).as_dict())


def _lift_setup(p: Polynomial, gens: Sequence[Polynomial]):
    ring = p.ring
    order = ring.order if ring.order.is_global else degrevlex()
    ring = ring.with_order(order)
    enc = _Encoding(order, ring.nvars)
    internal, scales = [], []
    for g in gens:
        t, s = _to_internal(g, enc)
        internal.append(t)
        scales.append(s)
    tp, sp = _to_internal(p, enc)
    return ring, order, enc, internal, scales, tp, sp


def _lift_modular(p: Polynomial, gens: Sequence[Polynomial]):
    ring, order, enc, internal, scales, tp, sp = _lift_setup(p, gens)
    k = len(gens)
    rec = _Reconstructor()
    misses = 0
    for count, prime in enumerate(_primes()):
        if count >= MAX_PRIMES // 4:
            return None
        if any(t and t[max(t)] % prime == 0 for t in internal) or tp[max(tp)] % prime == 0:
            continue
        engine = _ModEngine(ring, order, prime, track=True)
        engine.nrep = k + 1
        reps = [[{enc.zero: 1} if j == i else {} for j in range(k + 1)] for i in range(k)]
        _run(engine, [_mod_image(t, prime) for t in internal], reps)
        rep = [{} for _ in range(k)] + [{enc.zero: 1}]
        h, rep, _ = engine.full_nf(_mod_image(tp, prime), rep, 1)
        if h:
            misses += 1
            if misses >= 3:
                raise ValueError("polynomial is not in the ideal")
            continue
        rp = rep[k]
        if set(rp) != {enc.zero}:
            return None
        # 0 = c*p + sum r_i g_i  =>  p = sum (-r_i/c) g_i
        f = -pow(rp[enc.zero], -1, prime) % prime
        image = [{key: v * f % prime for key, v in r.items()} for r in rep[:k]]
        sig = rec.add(image, prime)
        if rec.best()[0] != sig:
            continue
        cand = rec.reconstruct(sig)
        if cand is None:
            continue
        out = []
        for i in range(k):
            q = Polynomial._raw(ring, {enc.decode(key): c * sp / scales[i] for key, c in cand[i].items()})
            out.append(Polynomial._raw(p.ring, q.as_dict()))
        total = p.ring.zero()
        for q, g in zip(out, gens):
            total = total + q * g
        if total == p:
            return out
    return None


def _lift_exact(p: Polynomial, gens: Sequence[Polynomial]) -> list[Polynomial]:
    ring, order, enc, internal, scales, t, sp = _lift_setup(p, gens)
    engine = _Engine(ring, order, track=True)
    k = len(gens)
    engine.nrep = k + 1
    reps = [[{enc.zero: 1} if j == i else {} for j in range(k + 1)] for i in range(k)]
    _run(engine, internal, reps)
    # slot k carries the multiple of p accumulated by fraction-free reduction
    rep = [{} for _ in range(k)] + [{enc.zero: 1}]
    h, rep, den = engine.full_nf(dict(t), rep, 1)
    if h:
        raise ValueError("polynomial is not in the ideal")
    # 0 = rep_p * p/sp + sum_i rep_i * gens_i/s_i   (everything over den)
    rp = rep[k]
    if set(rp) != {enc.zero}:
        raise ArithmeticError("non-constant multiplier in lift")
    a = Fraction(rp[enc.zero])
    out = []
    for i in range(k):
        q = _from_internal(rep[i], enc, ring, -sp / (a * scales[i]))
        out.append(Polynomial._raw(p.ring, q.as_dict()))
    return out


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises ``ValueError`` if ``b`` does not divide ``a``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    (q,) = lift(a, [b])
    return q
