"""Closed-form invariants for weighted-homogeneous germs.

A weighted-homogeneous pair (X, f) is summarised by its weights w_1..w_n,
the degrees d_1, d_2 of f and the degrees d_3..d_n of the equations of X.
From these alone one gets mu(S), c, m, mu(X) and mu(Delta), and with them
d and the discriminant Milnor number.

mu(Delta) uses the denominator d1*d2*B**2, i.e. (E - d1)(E - d2)/(d1*d2)
with E = D(C - A)/B.  That is the Milnor-Orlik number of the discriminant's
weighted type; the Whitney cusp (weights (2, 1), degrees (2, 3)) has
mu(Delta) = 2 and checks it.  ``mu_delta_single_b`` keeps the variant with
denominator d1*d2*B, which gives 4 on the same cusp, for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .errors import InconsistencyError, InputError, NonRealizableError
from .invariants import GermProblem, analyze

__all__ = [
    "WHSignature",
    "WHInvariants",
    "WeightedType",
    "CrossValidation",
    "wh_signature",
    "wh_invariants",
    "wh_discriminant_type",
    "wh_cross_validate",
    "mu_delta_single_b",
]


@dataclass(frozen=True)
class WHSignature:
    weights: tuple[int, ...]
    f_degrees: tuple[int, int]
    phi_degrees: tuple[int, ...]
    A: int
    A2: int
    B: int
    C: int
    C2: int
    D: int

    @property
    def n(self) -> int:
        return len(self.weights)

    def recomputed(self) -> "WHSignature":
        return wh_signature(self.weights, self.f_degrees, self.phi_degrees)


def wh_signature(weights: Sequence[int], f_degrees: Sequence[int], phi_degrees: Sequence[int] = ()) -> WHSignature:
    w = tuple(int(x) for x in weights)
    df = tuple(int(x) for x in f_degrees)
    dp = tuple(int(x) for x in phi_degrees)
    n = len(w)
    if n < 2:
        raise InputError("need at least two weights")
    if len(df) != 2:
        raise InputError("f has exactly two degrees")
    if len(dp) != n - 2:
        raise InputError(f"{n} weights need {n - 2} equation degrees, got {len(dp)}")
    if min(w + df + dp) <= 0:
        raise InputError("weights and degrees must be positive")
    A = sum(w)
    A2 = sum(w[i] * w[j] for i in range(n) for j in range(i + 1, n))
    B = prod(w)
    degs = df + dp
    C = sum(degs)
    C2 = sum(dp[i] * dp[j] for i in range(len(dp)) for j in range(i, len(dp)))
    D = prod(degs)
    return WHSignature(w, df, dp, A, A2, B, C, C2, D)


@dataclass(frozen=True)
class WHInvariants:
    mu_S: int
    c: int
    m: int
    mu_X: int
    mu_Delta: int
    d: int
    mu_disc: int

    FIELDS = ("mu_S", "c", "m", "mu_X", "mu_Delta", "d", "mu_disc")

    def as_dict(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in self.FIELDS}


def _natural(name: str, value: Fraction) -> int:
    if value.denominator != 1:
        raise NonRealizableError(f"{name} = {value} is not an integer; signature is not realizable", invariant=name)
    if value < 0:
        raise NonRealizableError(f"{name} = {value} is negative; signature is not realizable", invariant=name)
    return int(value)


def _raw(sig: WHSignature) -> dict[str, Fraction]:
    d1, d2 = sig.f_degrees
    A, A2, B, C, C2, D = sig.A, sig.A2, sig.B, sig.C, sig.C2, sig.D
    K = C - A
    base = Fraction(D, B * d1 * d2)
    mu_S = base * K * (2 * K - d1 - d2) + 1
    c = base * (2 * K * K - C * (d1 + d2 - A) + d1 * d2 - A2 - C2)
    m = Fraction(D, B)
    mu_X = base * (A2 + C2 - A * (C - d1 - d2)) - 1
    E = Fraction(D * K, B)
    mu_Delta = (E - d1) * (E - d2) / (d1 * d2)
    return {"m": m, "mu_X": mu_X, "mu_S": mu_S, "c": c, "mu_Delta": mu_Delta}


def wh_invariants(sig: WHSignature) -> WHInvariants:
    """Closed-form invariants; raises NonRealizableError on fractional or negative values."""
    raw = _raw(sig)
    vals = {k: _natural(k, v) for k, v in raw.items()}
    d = _natural("d", Fraction(vals["mu_Delta"] - vals["mu_S"], 2) - vals["c"])
    mu_disc = d + vals["mu_S"]
    return WHInvariants(vals["mu_S"], vals["c"], vals["m"], vals["mu_X"], vals["mu_Delta"], d, mu_disc)


def mu_delta_single_b(sig: WHSignature) -> Fraction:
    """[D(C-A) - d1*B][D(C-A) - d2*B] / (d1*d2*B): the variant with a single factor B."""
    d1, d2 = sig.f_degrees
    top = sig.D * (sig.C - sig.A)
    return Fraction((top - d1 * sig.B) * (top - d2 * sig.B), d1 * d2 * sig.B)


@dataclass(frozen=True)
class WeightedType:
    weights: tuple[int, ...]
    degree: int


def wh_discriminant_type(
    s_weights: Sequence[int],
    s_degrees: Sequence[int],
    f_degrees: Sequence[int],
    s: int = 1,
) -> WeightedType:
    """Weighted type of Delta = f(S) when S has type (w; c_1..c_{n-1}) and f has degrees (c_n, c_{n+1}).

    ``s`` is the degree of f restricted to S onto its image (1 for A-finite germs).
    """
    w = tuple(int(x) for x in s_weights)
    cs = tuple(int(x) for x in s_degrees)
    cf = tuple(int(x) for x in f_degrees)
    if len(cs) != len(w) - 1 or len(cf) != 2:
        raise InputError("S needs n-1 degrees for n weights, f needs two degrees")
    if s <= 0 or min(w + cs + cf) <= 0:
        raise InputError("weights, degrees and s must be positive")
    deg = Fraction(prod(cs + cf), s * prod(w))
    if deg.denominator != 1:
        raise NonRealizableError(f"discriminant degree {deg} is not an integer", invariant="discriminant_type")
    return WeightedType(cf, int(deg))


@dataclass
class CrossValidation:
    closed_form: dict[str, int]
    engine: dict[str, int]

    @property
    def mismatches(self) -> dict[str, tuple[int, int]]:
        return {k: (v, self.engine[k]) for k, v in self.closed_form.items() if self.engine[k] != v}

    @property
    def all_equal(self) -> bool:
        return not self.mismatches


def signature_of(P: GermProblem) -> WHSignature:
    if P.weights is None or P.f_degrees is None or (P.phi and P.phi_degrees is None):
        raise InputError("weights, f_degrees and phi_degrees are required")
    return wh_signature(P.weights, P.f_degrees, P.phi_degrees or ())


def wh_cross_validate(P: GermProblem, seed: int = 0, trials: int = 3, *, strict: bool = True) -> CrossValidation:
    """Compare the closed forms with the general engine field by field.

    The problem's polynomials are checked for weighted homogeneity when the
    problem is built, so a mismatch here is a genuine disagreement.
    """
    sig = signature_of(P)
    closed = wh_invariants(sig).as_dict()
    report = analyze(P, seed, trials)
    engine = {k: getattr(report, k) for k in closed}
    cv = CrossValidation(closed, engine)
    if strict and not cv.all_equal:
        raise InconsistencyError(f"closed forms and engine disagree (closed, engine): {cv.mismatches}")
    return cv
