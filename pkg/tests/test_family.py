from fractions import Fraction

import pytest

from germlab.errors import InputError
from germlab.family import (
    GENERIC,
    FamilyProblem,
    FamilyProfile,
    SampleRecord,
    TRACKED,
    family_profile,
    generic_projection,
    polar_multiplicity_m1,
    sampling_adequacy,
    specialize_family,
    verdicts_from,
)
from germlab.invariants import GermProblem, milnor_icis
from germlab.polyring import PolyRing, parse_poly

from conftest import SEED, family, germ

FAMILIES = ["briancon_speder", "constant_family", "smooth_family", "swallowtail_family"]
RT = PolyRing(["x", "y", "z", "t"])


def fam(phi, f, samples=("0", "1", "2", "-1")):
    return FamilyProblem(
        RT,
        "t",
        [parse_poly(p, RT) for p in phi],
        f if isinstance(f, str) else [parse_poly(p, RT) for p in f],
        [Fraction(s) for s in samples],
    )


def test_family_validation():
    with pytest.raises(InputError):
        fam(["x^2+y^2+z^2"], GENERIC, ["1", "2"])  # no t = 0
    with pytest.raises(InputError):
        fam(["x^2+y^2+z^2"], GENERIC, [])
    with pytest.raises(InputError):
        fam(["x^2+y^2+z^2"], GENERIC, ["0", "1", "1"])
    with pytest.raises(InputError):
        fam(["x^2+y^2+z^2+t"], GENERIC)  # leaves the origin for t != 0
    with pytest.raises(InputError):
        fam(["x^2+y^2+z^2"], "projection")
    with pytest.raises(InputError):
        FamilyProblem(RT, "s", [], GENERIC, [0])


def test_specialize_bs():
    F = family("briancon_speder")
    P0 = specialize_family(F, 0, SEED)
    P1 = specialize_family(F, 1, SEED)
    R = P0.ring
    assert P0.phi == (parse_poly("x^6+y^6+z^3", R),)
    assert P1.phi == (parse_poly("x^6+y^6+z^3+x^4*z", R),)
    assert P0.f == P1.f  # one projection shared by every member
    assert P0.f == generic_projection(R, SEED)
    with pytest.raises(InputError):
        specialize_family(F, 5, SEED)


def test_specialize_explicit_f():
    P = specialize_family(family("swallowtail_family"), 2)
    assert P.f[1] == parse_poly("y^4+2*y^3+x*y", P.ring)


def test_projection_is_reproducible():
    R = PolyRing(["x", "y", "z"])
    assert generic_projection(R, 1) == generic_projection(R, 1)
    assert generic_projection(R, 1) != generic_projection(R, 2)
    assert generic_projection(R, 1, "a") != generic_projection(R, 1, "b")


def test_m1_examples():
    assert polar_multiplicity_m1(germ("cusp"), SEED) == 0
    assert polar_multiplicity_m1(germ("cone"), SEED) == 2
    for seed in (0, 5, SEED):
        assert polar_multiplicity_m1(germ("example1"), seed) == 6


def test_mu_bs_member_matches_product_formula():
    # weights (1, 1, 2), degree 6: (6 - 1)(6 - 1)(3 - 1)
    P = specialize_family(family("briancon_speder"), 0, SEED)
    assert milnor_icis(list(P.phi), SEED) == 50


def test_constant_and_smooth_families():
    for name in ("constant_family", "smooth_family"):
        prof = family_profile(family(name), SEED)
        assert prof.verdicts == {"whitney_surfaces": True, "whitney_unfolding": True, "zariski": True}
        assert not prof.failures
        assert all("no jump" in n for n in prof.notes)
        assert len({tuple(r.values().values()) for r in prof.records}) == 1


def test_swallowtail_jump():
    prof = family_profile(family("swallowtail_family"), SEED)
    assert prof.column("mu_Delta") == [6, 2, 2, 2]
    assert prof.column("c") == [2, 1, 1, 1]
    assert prof.column("d") == [1, 0, 0, 0]
    assert prof.column("m") == [4, 3, 3, 3]
    assert prof.verdicts == {"whitney_surfaces": True, "whitney_unfolding": False, "zariski": False}
    assert "c: jump detected (2 at t=0, 1 at t=1, 1 at t=2, 1 at t=-1)" in prof.notes


def test_failures_make_verdicts_undetermined():
    F = fam(["x*y+t*z^2"], ["x+2*y+3*z", "5*x-y+z"])  # X_0 has a line of singularities
    prof = family_profile(F, SEED)
    assert set(prof.failures) == {"0"}
    assert prof.failure_codes["0"] == 2
    assert set(prof.verdicts.values()) == {"undetermined"}
    assert prof.notes[0].startswith("sample t=0 failed: NotFiniteError")


def _record(t, **vals):
    base = dict.fromkeys(TRACKED, 1)
    base.update(vals)
    return SampleRecord(Fraction(t), mu_disc=0, mu_preimage=0, identity_checks={}, **base)


def test_verdicts_are_a_function_of_the_table():
    rows = [_record(0), _record(1), _record(2)]
    assert verdicts_from(rows) == {"whitney_surfaces": True, "whitney_unfolding": True, "zariski": True}
    assert verdicts_from([_record(0, c=2), _record(1)])["zariski"] is False
    assert verdicts_from([_record(0, c=2), _record(1)])["whitney_unfolding"] is True
    assert verdicts_from([_record(0, m0_preimage=2), _record(1)]) == {
        "whitney_surfaces": True, "whitney_unfolding": False, "zariski": True,
    }
    assert set(verdicts_from([_record(0, m1_X=2), _record(1)]).values()) == {False}
    # columns outside the criteria do not matter
    assert set(verdicts_from([_record(0, mu_S=5, m=3, m0_X=7), _record(1)]).values()) == {True}


def test_sampling_adequacy_messages():
    F = fam(["x^2+y^2+z^2"], ["x", "y"], ["0", "1"])
    warnings = sampling_adequacy(F, FamilyProfile([_record(0), _record(1)], {}))
    assert any("add nonzero samples" in w for w in warnings)
    assert warnings[-1] == "constancy over finitely many samples is evidence, not proof"

    F = fam(["x^2+y^2+z^2"], ["x", "y"], ["0", "1", "2", "3"])
    prof = FamilyProfile([_record(0, c=30), _record(1, c=24), _record(2, c=30), _record(3, c=24)], {})
    warnings = sampling_adequacy(F, prof)
    assert not any("add nonzero" in w for w in warnings)
    assert any(w.startswith("nonzero samples disagree on c (24 at t=1, 30 at t=2") for w in warnings)


# -- the Briancon-Speder family --------------------------------------------------------


def test_bs_profile(bs_profile):
    prof, _ = bs_profile
    assert prof.column("c") == [30, 24, 24, 24]
    assert prof.column("mu_X") == [50] * 4
    assert len(set(prof.column("m1_X"))) == 1
    assert prof.verdicts["whitney_surfaces"] is True
    assert prof.verdicts["zariski"] is False
    assert prof.projection is not None
    assert not prof.failures


def test_bs_sampling_adequacy(bs_profile):
    prof, _ = bs_profile
    warnings = sampling_adequacy(family("briancon_speder"), prof)
    assert warnings == ["constancy over finitely many samples is evidence, not proof"]


def _profiles(bs_profile):
    yield bs_profile[0]
    for name in FAMILIES[1:]:
        yield family_profile(family(name), SEED)


def test_upper_semicontinuity(bs_profile):
    for prof in _profiles(bs_profile):
        zero = next(r for r in prof.records if r.t == 0)
        for r in prof.records:
            for k in ("mu_X", "mu_S", "mu_Delta", "c", "d"):
                assert getattr(zero, k) >= getattr(r, k), (k, r.t)


def test_per_sample_identities_and_m2(bs_profile):
    for prof in _profiles(bs_profile):
        for r in prof.records:
            assert all(v is not False for v in r.identity_checks.values()), r.t
            assert r.m2_X >= 0
            assert r.m0_X + r.m2_X == r.mu_X + r.m1_X + 1


def test_verdicts_rederived_from_bs_table(bs_profile):
    prof, _ = bs_profile
    assert verdicts_from(prof.records) == prof.verdicts
