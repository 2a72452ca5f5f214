from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germlab.cli import germ_problem
from germlab.errors import InconsistencyError, InputError, NonRealizableError
from germlab.weighted import (
    WHSignature,
    mu_delta_single_b,
    wh_cross_validate,
    wh_discriminant_type,
    wh_invariants,
    wh_signature,
)

from conftest import SEED, germ, problem_data, random_signatures

CUSP = wh_signature((2, 1), (2, 3))
CONE = wh_signature((1, 1, 1), (1, 1), (2,))


def test_signature_aggregates():
    assert (CUSP.A, CUSP.A2, CUSP.B, CUSP.C, CUSP.C2, CUSP.D) == (3, 2, 2, 5, 0, 6)
    assert (CONE.A, CONE.A2, CONE.B, CONE.C, CONE.C2, CONE.D) == (3, 3, 1, 4, 4, 2)
    s = wh_signature((1, 2, 3, 4), (5, 6), (7, 8))
    assert s.C2 == 7 * 7 + 7 * 8 + 8 * 8
    assert s.recomputed() == s


@pytest.mark.parametrize(
    "args",
    [((1,), (1, 1), ()), ((), (1, 1), ()), ((1, 1, 1), (1, 1), ()), ((1, 1), (1,), ()), ((0, 1), (1, 1), ())],
)
def test_signature_errors(args):
    with pytest.raises(InputError):
        wh_signature(*args)


def test_cusp_invariants():
    assert wh_invariants(CUSP).as_dict() == {"mu_S": 0, "c": 1, "m": 3, "mu_X": 0, "mu_Delta": 2, "d": 0, "mu_disc": 0}


def test_cone_invariants():
    assert wh_invariants(CONE).as_dict() == {"mu_S": 1, "c": 0, "m": 2, "mu_X": 1, "mu_Delta": 1, "d": 0, "mu_disc": 1}


def test_single_b_variant_differs_on_the_cusp():
    assert mu_delta_single_b(CUSP) == 4
    assert wh_invariants(CUSP).mu_Delta == 2


def test_c_equal_a_forces_mu_s_one():
    from germlab.weighted import _raw

    for sig in (wh_signature((1, 1), (1, 1)), wh_signature((1, 1, 2), (1, 1), (2,)), wh_signature((3, 2), (2, 3))):
        assert sig.C == sig.A
        assert _raw(sig)["mu_S"] == 1
    inv = wh_invariants(wh_signature((1, 1), (1, 1)))
    assert inv.mu_S == 1 and inv.c == inv.m - 1 == 0


def test_non_realizable_names_the_formula():
    with pytest.raises(NonRealizableError) as err:
        wh_invariants(wh_signature((2, 2), (1, 3)))
    assert err.value.invariant == "m"
    assert "3/4" in str(err.value)


RANDOM = random_signatures(1000, seed=SEED)


def test_random_signatures_satisfy_identities():
    assert len(RANDOM) == 1000
    for sig, inv in RANDOM:
        assert inv.c + inv.mu_X == inv.mu_S + inv.m - 2, sig
        assert inv.mu_disc == inv.mu_Delta - 2 * inv.c - inv.d, sig
        assert 2 * (inv.c + inv.d) == inv.mu_Delta - inv.mu_S


def test_milnor_orlik_consistency():
    checked = 0
    for sig, inv in RANDOM:
        d1, d2 = sig.f_degrees
        E = Fraction(sig.D * (sig.C - sig.A), sig.B)
        if E.denominator == 1 and E % d1 == 0 and E % d2 == 0:
            assert inv.mu_Delta == (E / d1 - 1) * (E / d2 - 1)
            checked += 1
    assert checked > 100


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 30), st.integers(1, 30))
def test_smooth_specialization(w1, w2, d1, d2):
    sig = wh_signature((w1, w2), (d1, d2))
    from germlab.weighted import _raw

    raw = _raw(sig)
    assert raw["mu_X"] == 0
    assert raw["c"] == raw["mu_S"] + raw["m"] - 2


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=4), st.data())
def test_signature_recomputes(weights, data):
    n = len(weights)
    df = data.draw(st.tuples(st.integers(1, 30), st.integers(1, 30)))
    dp = data.draw(st.lists(st.integers(1, 30), min_size=n - 2, max_size=n - 2))
    sig = wh_signature(weights, df, dp)
    assert isinstance(sig, WHSignature) and sig.recomputed() == sig and sig.n == n


def test_discriminant_type():
    t = wh_discriminant_type((2, 1), (2,), (2, 3))
    assert (t.weights, t.degree) == ((2, 3), 6)
    t = wh_discriminant_type((1, 1, 1), (2, 1), (1, 1))
    assert (t.weights, t.degree) == ((1, 1), 2)
    assert wh_discriminant_type((1, 1, 1), (2, 1), (1, 1), s=2).degree == 1
    with pytest.raises(NonRealizableError):
        wh_discriminant_type((1, 1, 1), (1, 1), (1, 1), s=2)
    with pytest.raises(InputError):
        wh_discriminant_type((1, 1), (1, 1), (1, 1))


def test_discriminant_type_matches_engine():
    # the cusp discriminant 4u^3 + 27v^2 is homogeneous of degree 6 for weights (2, 3)
    from germlab.invariants import discriminant_equation

    g = discriminant_equation(germ("cusp"))
    assert {2 * e[0] + 3 * e[1] for e in g.as_dict()} == {6}


@pytest.mark.parametrize("name", ["cusp", "cone"])
def test_cross_validation(name):
    cv = wh_cross_validate(germ(name), SEED)
    assert cv.all_equal and cv.closed_form == cv.engine


def test_cross_validation_reports_mismatch(monkeypatch):
    import germlab.weighted as wmod

    real = wmod.wh_invariants

    def off(sig):
        inv = real(sig)
        return type(inv)(inv.mu_S, inv.c + 1, *list(inv.as_dict().values())[2:])

    monkeypatch.setattr(wmod, "wh_invariants", off)
    cv = wh_cross_validate(germ("cusp"), SEED, strict=False)
    assert cv.mismatches == {"c": (2, 1)}
    with pytest.raises(InconsistencyError):
        wh_cross_validate(germ("cusp"), SEED)


def test_generic_linear_f_is_not_weighted_homogeneous():
    with pytest.raises(InputError):
        germ_problem(problem_data("bs_generic_t0_weighted"), SEED)
