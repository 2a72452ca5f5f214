"""One-parameter families (X_t, f_t) sampled at finitely many parameter values.

Each sample is analysed on its own and the invariants are tabulated.
Equisingularity verdicts then read off which columns stay constant:

* Whitney for the surfaces: mu(X_t) and m1(X_t) constant.
* Whitney for the unfolding F(t, x) = (t, f_t(x)): additionally mu(Delta_t)
  and the multiplicity of f_t^-1(Delta_t) constant.
* Zariski (for a generic projection): Whitney for the surfaces and c_t, d_t
  constant.

A jump between samples is a proof of non-constancy.  Agreement on samples is
evidence only, and the notes say so.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import GenericityError, GermlabError, InputError
from .invariants import (
    COEFF_BOUND,
    DEFAULT_TRIALS,
    GermProblem,
    _combine,
    _delta,
    _rng,
    analyze,
    germ_multiplicity,
)
from .polyring import Polynomial, PolyRing, degrevlex

__all__ = [
    "GENERIC",
    "FamilyProblem",
    "SampleRecord",
    "FamilyProfile",
    "specialize_family",
    "generic_projection",
    "polar_multiplicity_m1",
    "family_profile",
    "sampling_adequacy",
]

GENERIC = "generic-projection"

SURFACE_KEYS = ("mu_X", "m1_X")
UNFOLDING_KEYS = ("mu_X", "m1_X", "mu_Delta", "m0_preimage")
ZARISKI_KEYS = ("mu_X", "m1_X", "c", "d")
TRACKED = ("mu_X", "m0_X", "m1_X", "m2_X", "mu_S", "mu_Delta", "c", "d", "m", "m0_preimage")


@dataclass(frozen=True)
class FamilyProblem:
    """phi and f live in ``ring``, whose variables are the space coordinates plus ``parameter``."""

    ring: PolyRing
    parameter: str
    phi: tuple[Polynomial, ...]
    f: tuple[Polynomial, Polynomial] | str
    t_samples: tuple[Fraction, ...]

    def __post_init__(self):
        if self.parameter not in self.ring.variables:
            raise InputError(f"parameter {self.parameter!r} is not a ring variable")
        object.__setattr__(self, "phi", tuple(self.phi))
        samples = tuple(Fraction(t) for t in self.t_samples)
        if not samples:
            raise InputError("t_samples must not be empty")
        if 0 not in samples:
            raise InputError("t_samples must include 0")
        if len(set(samples)) != len(samples):
            raise InputError("t_samples has repeated values")
        object.__setattr__(self, "t_samples", samples)
        if self.f == GENERIC:
            polys = self.phi
        elif isinstance(self.f, str):
            raise InputError(f"f must be two polynomials or {GENERIC!r}")
        else:
            object.__setattr__(self, "f", tuple(self.f))
            if len(self.f) != 2:
                raise InputError("f must have exactly two components")
            polys = self.phi + self.f
        ti = self.ring.index(self.parameter)
        for p in polys:
            if p.ring.variables != self.ring.variables:
                raise InputError("all polynomials must live in the family ring")
            # f(t, 0) = 0 for every t: no term may be a pure power of t
            if any(all(k == 0 for i, k in enumerate(e) if i != ti) for e in p.as_dict()):
                raise InputError(f"{p} does not vanish at the origin for every t")

    @property
    def space_variables(self) -> tuple[str, ...]:
        return tuple(v for v in self.ring.variables if v != self.parameter)

    @property
    def space_ring(self) -> PolyRing:
        return PolyRing(self.space_variables, degrevlex())

    @property
    def generic(self) -> bool:
        return self.f == GENERIC


def generic_projection(ring: PolyRing, seed: int, name: str = "projection", bound: int = COEFF_BOUND) -> tuple[Polynomial, Polynomial]:
    """Two random integer linear forms in the variables of ``ring``."""
    rng = _rng(seed, name)
    rows = [[rng.randint(-bound, bound) for _ in range(ring.nvars)] for _ in range(2)]
    f1, f2 = _combine(ring.gens(), rows)
    return f1, f2


def specialize_family(F: FamilyProblem, t0, seed: int = 0, *, projection: Sequence[Polynomial] | None = None) -> GermProblem:
    """The member at t = t0.  A generic family uses ``projection`` or the default draw for ``seed``."""
    t0 = Fraction(t0)
    if t0 not in F.t_samples:
        raise InputError(f"t = {t0} is not one of the samples")
    R = F.space_ring
    at = lambda p: p.specialize({F.parameter: t0}).to_ring(R)  # noqa: E731
    phi = tuple(at(p) for p in F.phi)
    if F.generic:
        f = tuple(projection) if projection is not None else generic_projection(R, seed)
    else:
        f = tuple(at(p) for p in F.f)
    return GermProblem(R, phi, f)


def polar_multiplicity_m1(P: GermProblem, seed: int = 0, trials: int = DEFAULT_TRIALS) -> int:
    """Multiplicity of the polar curve of a generic linear projection of X; 0 when X is smooth."""
    if not P.phi:
        return 0
    best = None
    for i in range(max(1, trials)):
        f = generic_projection(P.ring, seed, f"m1/{i}")
        delta = _delta(GermProblem(P.ring, P.phi, f))
        if delta.is_zero():
            continue
        if delta.constant_coefficient() != 0:
            val = 0
        else:
            val = germ_multiplicity(list(P.phi) + [delta], 1, seed, 1, name=f"m1/{i}/cut")
        if best is None or val < best:
            best = val
    if best is None:
        raise GenericityError("every projection drawn for the polar curve was degenerate", invariant="m1_X")
    return best


@dataclass
class SampleRecord:
    t: Fraction
    mu_X: int
    m0_X: int
    m1_X: int
    m2_X: int
    mu_S: int
    mu_Delta: int
    c: int
    d: int
    m: int
    m0_preimage: int
    mu_disc: int
    mu_preimage: int
    identity_checks: dict[str, bool | None]

    def values(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in TRACKED}


@dataclass
class FamilyProfile:
    records: list[SampleRecord]
    verdicts: dict[str, bool | str]
    notes: list[str] = field(default_factory=list)
    failures: dict[str, str] = field(default_factory=dict)
    failure_codes: dict[str, int] = field(default_factory=dict)
    projection: tuple[Polynomial, Polynomial] | None = None
    sample_seconds: dict[str, float] = field(default_factory=dict)  # summed over projection draws

    def column(self, key: str) -> list[int]:
        return [getattr(r, key) for r in self.records]


def _sample(P: GermProblem, t: Fraction, seed: int, trials: int) -> SampleRecord:
    rep = analyze(P, seed, trials)
    m1 = polar_multiplicity_m1(P, seed, trials)
    m2 = rep.mu_X + m1 + 1 - rep.m0_X
    return SampleRecord(
        t, rep.mu_X, rep.m0_X, m1, m2, rep.mu_S, rep.mu_Delta, rep.c, rep.d, rep.m,
        rep.m0_preimage, rep.mu_disc, rep.mu_preimage, dict(rep.identity_checks),
    )


def _fmt(t: Fraction) -> str:
    return str(t)


def _table(F: FamilyProblem, seed: int, trials: int, projection, clock: dict):
    records, failures = [], {}
    for t in F.t_samples:
        start = time.perf_counter()
        try:
            records.append(_sample(specialize_family(F, t, seed, projection=projection), t, seed, trials))
        except GermlabError as e:
            failures[_fmt(t)] = e
        clock[_fmt(t)] = clock.get(_fmt(t), 0.0) + time.perf_counter() - start
    return records, failures


def verdicts_from(records: Sequence[SampleRecord]) -> dict[str, bool]:
    """Verdicts as a pure function of the sample table."""
    const = lambda keys: all(len({getattr(r, k) for r in records}) == 1 for k in keys)  # noqa: E731
    surfaces = const(SURFACE_KEYS)
    return {
        "whitney_surfaces": surfaces,
        "whitney_unfolding": const(UNFOLDING_KEYS),
        "zariski": const(ZARISKI_KEYS),
    }


def _jump_notes(records: Sequence[SampleRecord]) -> list[str]:
    notes = []
    for k in TRACKED:
        vals = [(r.t, getattr(r, k)) for r in records]
        if len({v for _, v in vals}) == 1:
            notes.append(f"{k}: no jump detected on samples (value {vals[0][1]})")
        else:
            shown = ", ".join(f"{v} at t={_fmt(t)}" for t, v in vals)
            notes.append(f"{k}: jump detected ({shown})")
    return notes


def family_profile(F: FamilyProblem, seed: int = 0, trials: int = DEFAULT_TRIALS) -> FamilyProfile:
    """Analyse every sample and derive the equisingularity verdicts.

    For a generic-projection family one projection is shared by all samples.
    It is drawn ``trials`` times and the tables must agree; on disagreement
    the coefficient range grows tenfold once.
    """
    projection = None
    clock: dict[str, float] = {}
    if F.generic:
        R = F.space_ring
        bound, seen = COEFF_BOUND, []
        for attempt in range(2):
            tables = []
            for k in range(max(1, trials)):
                proj = generic_projection(R, seed, f"projection/{attempt}/{k}", bound)
                tables.append((proj,) + _table(F, seed, trials, proj, clock))
            keyed = [([r.values() for r in recs], {t: str(e) for t, e in fails.items()}) for _, recs, fails in tables]
            seen.append(keyed)
            if all(kv == keyed[0] for kv in keyed):
                projection, records, failures = tables[0]
                break
            bound *= 10
        else:
            records = []
            failures = {"projection": GenericityError(f"projections disagree after escalation: {seen}")}
    else:
        records, failures = _table(F, seed, trials, None, clock)

    codes = {t: e.exit_code for t, e in failures.items()}
    failures = {t: f"{type(e).__name__}: {e}" for t, e in failures.items()}
    notes = [f"sample t={t} failed: {msg}" for t, msg in failures.items()]
    if failures:
        verdicts = {k: "undetermined" for k in ("whitney_surfaces", "whitney_unfolding", "zariski")}
    else:
        verdicts = verdicts_from(records)
        notes += _jump_notes(records)
    return FamilyProfile(records, verdicts, notes, failures, codes, projection, clock)


def sampling_adequacy(F: FamilyProblem, profile: FamilyProfile) -> list[str]:
    warnings = []
    nonzero = [t for t in F.t_samples if t != 0]
    if len(nonzero) < 3:
        warnings.append(f"only {len(nonzero)} nonzero samples; add nonzero samples (at least 3 recommended)")
    recs = [r for r in profile.records if r.t != 0]
    for k in TRACKED:
        vals = {getattr(r, k) for r in recs}
        if len(vals) > 1:
            shown = ", ".join(f"{getattr(r, k)} at t={_fmt(r.t)}" for r in recs)
            warnings.append(f"nonzero samples disagree on {k} ({shown}); some nonzero sample may be non-generic")
    warnings.append("constancy over finitely many samples is evidence, not proof")
    return warnings
