"""Invariants of a map germ f: (X, 0) -> (C^2, 0) on a surface ICIS.

X = V(phi_1, ..., phi_{n-2}) in (C^n, 0).  The critical locus S is cut out
on X by delta, the determinant of the Jacobian of (f1, f2, phi); its image
Delta = f(S) is the discriminant.  Everything local is a colength in the
local ring at the origin; the discriminant equation comes from a global
elimination and is only ever used through local colengths afterwards.

Random choices (linear combinations, generic linear forms) are drawn from
a generator seeded by ``(seed, task name)``, so results do not depend on the
order in which invariants are computed.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateGermError,
    GenericityError,
    GermlabError,
    InconsistencyError,
    InputError,
    NotFiniteError,
)
from .polyring import Polynomial, PolyRing, degrevlex, determinant, jacobian_matrix, minors_ideal
from .stdbasis import INFINITE, IdealBasis, colength, eliminate, exact_divide, quotient_modulo

__all__ = [
    "GermProblem",
    "InvariantReport",
    "subseed",
    "singular_locus_ideal",
    "milnor_icis",
    "degree_m",
    "cusp_count",
    "discriminant_equation",
    "mu_plane_curve",
    "double_fold_count",
    "discriminant_milnor_number",
    "reduced_preimage",
    "preimage_curve_milnor",
    "germ_multiplicity",
    "curve_milnor_on_surface",
    "analyze",
]

COEFF_BOUND = 101
DEFAULT_TRIALS = 3


def subseed(seed: int, name: str) -> int:
    """Deterministic 64-bit seed for the task ``name`` under ``seed``."""
    digest = hashlib.blake2b(f"{seed}/{name}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(subseed(seed, name))


@dataclass(frozen=True)
class GermProblem:
    """A germ f = (f1, f2) on X = V(phi) inside C^n, n = len(ring.variables)."""

    ring: PolyRing
    phi: tuple[Polynomial, ...]
    f: tuple[Polynomial, Polynomial]
    weights: tuple[int, ...] | None = None
    phi_degrees: tuple[int, ...] | None = None
    f_degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        ring = self.ring
        n = ring.nvars
        object.__setattr__(self, "phi", tuple(self.phi))
        object.__setattr__(self, "f", tuple(self.f))
        if n < 2:
            raise InputError("need at least two variables")
        if len(self.f) != 2:
            raise InputError("f must have exactly two components")
        if len(self.phi) != n - 2:
            raise InputError(f"{n} variables need {n - 2} equations for X, got {len(self.phi)}")
        for p in self.phi + self.f:
            if p.ring.variables != ring.variables:
                raise InputError("all polynomials must live in the problem ring")
            if p.constant_coefficient() != 0:
                raise InputError(f"{p} does not vanish at the origin")
        if self.weights is not None:
            w = tuple(int(a) for a in self.weights)
            object.__setattr__(self, "weights", w)
            if len(w) != n or min(w) <= 0:
                raise InputError("weights must be n positive integers")
            for name, polys, degs in (("phi", self.phi, self.phi_degrees), ("f", self.f, self.f_degrees)):
                if degs is None:
                    continue
                degs = tuple(int(d) for d in degs)
                object.__setattr__(self, f"{name}_degrees", degs)
                if len(degs) != len(polys):
                    raise InputError(f"{name}_degrees has the wrong length")
                for p, dg in zip(polys, degs):
                    if not p.is_weighted_homogeneous(w, dg):
                        raise InputError(f"{p} is not weighted homogeneous of degree {dg} for weights {w}")

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables


@dataclass
class InvariantReport:
    mu_X: int
    mu_S: int
    mu_Delta: int
    m: int
    c: int
    d: int
    mu_disc: int
    mu_preimage: int
    m0_X: int
    m0_S: int
    m0_preimage: int
    discriminant_gen: Polynomial
    identity_checks: dict[str, bool | None]
    afinite: bool = True
    submersion: bool = False
    notes: list[str] = field(default_factory=list)

    INTEGER_FIELDS = ("mu_X", "mu_S", "mu_Delta", "m", "c", "d", "mu_disc", "mu_preimage", "m0_X", "m0_S", "m0_preimage")

    def values(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in self.INTEGER_FIELDS}

    def all_checks_pass(self) -> bool:
        return all(v is not False for v in self.identity_checks.values())


# ---------------------------------------------------------------------------
# building blocks


def _delta(P: GermProblem) -> Polynomial:
    J = jacobian_matrix(list(P.f) + list(P.phi), P.variables)
    return determinant(J)


def singular_locus_ideal(P: GermProblem) -> IdealBasis:
    """(phi, delta) with delta = det J(f1, f2, phi) in that row order."""
    delta = _delta(P)
    if delta.is_zero():
        raise DegenerateGermError("det J(f, phi) vanishes identically; f is not of finite singularity type")
    return IdealBasis(P.ring, list(P.phi) + [delta])


def _random_invertible(k: int, rng: random.Random, bound: int) -> list[list[int]]:
    while True:
        M = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)]
        if _int_det(M) != 0:
            return M


def _int_det(M: Sequence[Sequence[int]]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            det = -det
        det *= A[i][i]
        for r in range(i + 1, n):
            q = A[r][i] / A[i][i]
            if q:
                A[r] = [a - q * b for a, b in zip(A[r], A[i])]
    return det


def _combine(gens: Sequence[Polynomial], M) -> list[Polynomial]:
    out = []
    for row in M:
        acc = gens[0].ring.zero()
        for c, g in zip(row, gens):
            if c:
                acc = acc + g * c
        out.append(acc)
    return out


def _le_greuel(gens: Sequence[Polynomial], rng: random.Random, bound: int):
    """One randomized Le-Greuel chain; None when some colength is infinite."""
    k = len(gens)
    ring = gens[0].ring
    g = _combine(gens, _random_invertible(k, rng, bound))
    mu = 0
    for j in range(1, k + 1):
        J = jacobian_matrix(g[:j], ring.variables)
        col = colength(IdealBasis(ring, g[: j - 1] + minors_ideal(J, j)))
        if col == INFINITE:
            return None
        mu = col - mu
    return mu


def milnor_icis(gens: Sequence[Polynomial], seed: int = 0, trials: int = DEFAULT_TRIALS, *, name: str = "icis") -> int:
    """Milnor number of the ICIS V(gens) at the origin.

    Runs the Le-Greuel recursion on ``trials`` independent random invertible
    combinations of ``gens``; all runs must agree.  On disagreement the
    coefficient range grows tenfold once before giving up.
    """
    gens = [g for g in gens]
    if not gens:
        return 0
    if any(g.is_zero() for g in gens):
        raise NotFiniteError("zero equation; not a complete intersection of the expected dimension")
    bound = COEFF_BOUND
    seen = []
    for attempt in range(2):
        vals = [_le_greuel(gens, _rng(seed, f"{name}/{attempt}/{i}"), bound) for i in range(max(1, trials))]
        seen.append(vals)
        if all(v is None for v in vals):
            raise NotFiniteError("infinite colength in the Le-Greuel chain; not an isolated complete intersection")
        if None not in vals and len(set(vals)) == 1:
            return vals[0]
        bound *= 10
    raise GenericityError(f"Le-Greuel chains disagree: {seen}", seen)


def curve_milnor_on_surface(phi: Sequence[Polynomial], h: Polynomial, mu_X: int) -> int:
    """Milnor number of the curve V(phi, h) on the surface ICIS X = V(phi).

    The Le-Greuel formula needs only the pair X, X cap {h = 0} to be ICIS, so
    the chain may pass through X itself:
    mu(X cap {h=0}) = colength(phi + maximal minors of J(phi, h)) - mu(X).
    """
    phi = list(phi)
    ring = h.ring
    J = jacobian_matrix(phi + [h], ring.variables)
    col = colength(IdealBasis(ring, phi + minors_ideal(J, len(phi) + 1)))
    if col == INFINITE:
        raise NotFiniteError("curve on X has a non-isolated singularity")
    return int(col) - mu_X


def germ_multiplicity(gens: IdealBasis | Sequence[Polynomial], dim: int, seed: int = 0, trials: int = DEFAULT_TRIALS, *, name: str = "m0") -> int:
    """Multiplicity at 0: colength after cutting by ``dim`` generic linear forms (minimum over trials)."""
    if isinstance(gens, IdealBasis):
        ring, gl = gens.ring, list(gens.generators)
    else:
        gl = list(gens)
        ring = gl[0].ring
    if dim not in (1, 2):
        raise ValueError("dim must be 1 or 2")
    best = None
    for i in range(max(1, trials)):
        rng = _rng(seed, f"{name}/{i}")
        forms = []
        for _ in range(dim):
            forms.append(_combine(ring.gens(), [[rng.randint(-COEFF_BOUND, COEFF_BOUND) for _ in range(ring.nvars)]])[0])
        col = colength(IdealBasis(ring, gl + forms))
        if col != INFINITE and (best is None or col < best):
            best = col
    if best is None:
        raise NotFiniteError(f"generic linear sections have infinite colength; not of dimension {dim}")
    return int(best)


def degree_m(P: GermProblem) -> int:
    """Local degree of f on X: colength of (phi, f1, f2)."""
    col = colength(IdealBasis(P.ring, list(P.phi) + list(P.f)))
    if col == INFINITE:
        raise NotFiniteError("f^-1(0) on X is not the origin alone; f is not finite", invariant="m")
    return int(col)


def cusp_count(P: GermProblem, delta: Polynomial | None = None) -> int:
    """Colength of phi plus the maximal minors of J(f1, f2, phi, delta)."""
    if delta is None:
        delta = _delta(P)
    M = jacobian_matrix(list(P.f) + list(P.phi) + [delta], P.variables)
    col = colength(IdealBasis(P.ring, list(P.phi) + minors_ideal(M, P.n)))
    if col == INFINITE:
        raise NotFiniteError("cusp ideal has infinite colength; f is not A-finite", invariant="c")
    return int(col)


def _fresh_names(taken: Sequence[str]) -> tuple[str, str]:
    u, v = "u", "v"
    while u in taken or v in taken:
        u, v = u + "_", v + "_"
    return u, v


def discriminant_equation(P: GermProblem, delta: Polynomial | None = None) -> Polynomial:
    """Generator g(u, v) of the image of the critical locus under f."""
    if delta is None:
        delta = _delta(P)
    u, v = _fresh_names(P.variables)
    big = PolyRing(list(P.variables) + [u, v], degrevlex())
    lift_ = lambda p: p.to_ring(big)  # noqa: E731
    gens = [lift_(p) for p in P.phi] + [lift_(delta), big.var(u) - lift_(P.f[0]), big.var(v) - lift_(P.f[1])]
    E = eliminate(IdealBasis(big, gens), P.variables, method="auto")
    if not E.generators:
        raise NotFiniteError("elimination ideal is zero; f restricted to S is not finite", invariant="discriminant")
    g = min(E.generators, key=lambda q: (q.total_degree(), len(q)))
    if g.constant_coefficient() != 0:
        raise DegenerateGermError("the discriminant does not pass through the origin", invariant="discriminant")
    return g.monic()


def mu_plane_curve(g: Polynomial) -> int:
    """Milnor number of the plane curve germ V(g) at the origin."""
    ring = g.ring
    if ring.nvars != 2:
        raise ValueError("expected a polynomial in two variables")
    col = colength(IdealBasis(ring, [g.diff(x) for x in ring.variables]))
    if col == INFINITE:
        raise NotFiniteError("curve is not reduced at the origin; f is not A-finite", invariant="mu_Delta")
    return int(col)


def double_fold_count(mu_Delta: int, mu_S: int, c: int) -> int:
    diff = mu_Delta - mu_S
    if diff % 2:
        raise InconsistencyError(
            f"mu(Delta) - mu(S) = {diff} is odd; input is probably not A-finite or a random choice was not generic",
            invariant="d",
        )
    d = diff // 2 - c
    if d < 0:
        raise InconsistencyError(
            f"double-fold count would be {d}; input is probably not A-finite or a random choice was not generic",
            invariant="d",
        )
    return d


def discriminant_milnor_number(mu_Delta: int, c: int, d: int, mu_S: int) -> int:
    a = mu_Delta - 2 * c - d
    b = d + mu_S
    if a != b:
        raise InconsistencyError(f"mu(Delta)-2c-d = {a} but d+mu(S) = {b}", invariant="mu_disc")
    return a


def reduced_preimage(P: GermProblem, g: Polynomial, delta: Polynomial | None = None) -> Polynomial:
    """Equation h with V(phi, h) = f^-1(Delta) as a reduced curve germ.

    The pullback G = g(f1, f2) vanishes to order two along S, and on the
    normal surface X one has G = delta * h.  With no phi this is an exact
    division; otherwise h is the delta-cofactor of G in (phi, delta),
    taken modulo phi.
    """
    if delta is None:
        delta = _delta(P)
    u, v = g.ring.variables
    G = g.compose(P.ring, {u: P.f[0], v: P.f[1]})
    try:
        if not P.phi:
            return exact_divide(G, delta)
        return quotient_modulo(G, delta, P.phi)
    except ValueError:
        raise NotFiniteError(
            "pullback of the discriminant is not divisible by delta; f is not A-finite",
            invariant="mu_preimage",
        ) from None


def preimage_curve_milnor(
    P: GermProblem,
    g: Polynomial,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    *,
    h: Polynomial | None = None,
    mu_X: int | None = None,
) -> int:
    """Milnor number of the curve f^-1(Delta) on X."""
    if h is None:
        h = reduced_preimage(P, g)
    try:
        if mu_X is None:
            mu_X = milnor_icis(list(P.phi), seed, trials, name="mu_X")
        return curve_milnor_on_surface(P.phi, h, mu_X)
    except GermlabError as e:
        raise e.labelled("mu_preimage")


# ---------------------------------------------------------------------------
# the full report


def _checks(mu_X, mu_S, mu_Delta, m, c, d, mu_disc, mu_pre) -> dict[str, bool]:
    return {
        "thm1": 2 * (c + d) == mu_Delta - mu_S,
        "thm2": c + mu_X == mu_S + m - 2,
        "cor_mu_disc": mu_disc == mu_Delta - 2 * c - d == d + mu_S,
        "lemma_preimage": (m - 1) * mu_Delta == mu_pre + m - 2,
    }


def _step(label, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except GermlabError as e:
        raise e.labelled(label)


def analyze(P: GermProblem, seed: int = 0, trials: int = DEFAULT_TRIALS) -> InvariantReport:
    """Compute every invariant of ``P`` and check the identities linking them."""
    mu_X = _step("mu_X", milnor_icis, list(P.phi), seed, trials, name="mu_X")
    m0_X = _step("m0_X", germ_multiplicity, list(P.phi), 2, seed, trials, name="m0_X") if P.phi else 1
    I_S = _step("delta", singular_locus_ideal, P)
    delta = I_S.generators[-1]
    m = degree_m(P)
    uv = PolyRing(_fresh_names(P.variables), degrevlex())
    if delta.constant_coefficient() != 0:
        # f is a local diffeomorphism of a smooth X: no critical locus at all
        return InvariantReport(
            mu_X, 0, 0, m, 0, 0, 0, 0, m0_X, 0, 0, uv.one(),
            {"thm1": None, "thm2": None, "cor_mu_disc": None, "lemma_preimage": None},
            submersion=True,
            notes=["submersion germ, no singularity: S and Delta are empty"],
        )
    mu_S = _step("mu_S", curve_milnor_on_surface, P.phi, delta, mu_X)
    c = cusp_count(P, delta)
    g = discriminant_equation(P, delta)
    mu_Delta = mu_plane_curve(g)
    d = double_fold_count(mu_Delta, mu_S, c)
    mu_disc = discriminant_milnor_number(mu_Delta, c, d, mu_S)
    h = reduced_preimage(P, g, delta)
    mu_pre = preimage_curve_milnor(P, g, seed, trials, h=h, mu_X=mu_X)
    m0_S = _step("m0_S", germ_multiplicity, I_S, 1, seed, trials, name="m0_S")
    m0_pre = _step("m0_preimage", germ_multiplicity, list(P.phi) + [h], 1, seed, trials, name="m0_preimage")
    checks = _checks(mu_X, mu_S, mu_Delta, m, c, d, mu_disc, mu_pre)
    return InvariantReport(mu_X, mu_S, mu_Delta, m, c, d, mu_disc, mu_pre, m0_X, m0_S, m0_pre, g, checks)
