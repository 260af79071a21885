from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimstat.errors import (
    InvalidFamily,
    NonTransitivePrimaryAction,
    RankDeficientPrimaries,
    ScaleViolation,
    ShapeMismatch,
    SingularR1,
)
from dimstat.invariance import (
    AffineElement,
    AffineFamily,
    AffineGroup,
    MaximalInvariant,
    ScalarElement,
    ScalarGroup,
    VerificationReport,
    builtin_family,
    deviation,
    maximal_invariant_affine,
    maximal_invariant_scalar,
    trial_rng,
    verify_group_axioms,
    verify_invariance,
    verify_maximality,
    verify_orbit_indexing,
)
from dimstat.model import parse_model
from dimstat.pi import extract_pi_groups

TRIALS = 500


def test_rainfall_invariant_values(spec):
    inv = maximal_invariant_scalar(spec("rainfall"))
    assert inv.labels == ("x3 * x1^-1 * x2",)
    assert inv((2.0, 4.0, 3.0)) == (1, 1, pytest.approx(6.0))


def test_scalar_exponents_match_pi_basis(spec):
    for name in ("rainfall", "reynolds", "tree"):
        s = spec(name)
        inv = maximal_invariant_scalar(s)
        prim = [v.name for v in s.variables if v.role.value == "primary"]
        basis, _ = extract_pi_groups(s, prim)
        assert set(inv.exponents) == set(basis.vectors)


def test_reynolds_invariant_is_mu_over_rho_v_d(spec):
    inv = maximal_invariant_scalar(spec("reynolds"))
    assert (0, -1, -1, -1, 1) in inv.exponents


def test_scalar_invariant_is_exact_on_rationals(spec):
    inv = maximal_invariant_scalar(spec("rainfall"))
    g = inv.group
    x = (Fraction(7, 2), Fraction(5, 3), Fraction(11, 13))
    h = ScalarElement((Fraction(3, 7), Fraction(9, 4)))
    assert inv(g.apply(h, x)) == inv(x)


@pytest.mark.parametrize("name", ["rainfall", "reynolds", "tree"])
def test_scalar_suites(spec, name):
    inv = maximal_invariant_scalar(spec(name))
    for check in (verify_invariance, verify_maximality, verify_orbit_indexing):
        rep = check(inv, TRIALS, seed=3)
        assert rep.passed, rep


@pytest.mark.parametrize("family", ["scalar", "normal", "affine-i", "affine-i-det", "affine-ii"])
def test_group_axioms(family):
    rep = verify_group_axioms(family, TRIALS, seed=5)
    assert rep.passed and rep.max_deviation < 1e-10


@pytest.mark.parametrize("family", ["normal", "affine-i", "affine-i-det", "affine-ii"])
def test_affine_invariants(family):
    inv = maximal_invariant_affine(family)
    for check in (verify_invariance, verify_maximality, verify_orbit_indexing):
        assert check(inv, TRIALS, seed=9).passed


def test_normal_standardization(spec):
    inv = maximal_invariant_affine(spec("normal"))
    # scale 2, location 5, observation 9 -> (9 - 5) / 2
    assert inv((2.0, 5.0, 9.0)) == pytest.approx((1.0, 0.0, 2.0))
    case_i = maximal_invariant_affine(spec("normal"), case="i")
    assert case_i((2.0, 5.0, 9.0))[-1] == pytest.approx(4.5)


def test_negative_control_is_detected(spec):
    inv = maximal_invariant_scalar(spec("rainfall"))
    bad = MaximalInvariant(inv.group, lambda x: [x[1] * x[2]])
    rep = verify_invariance(bad, 100, seed=1)
    assert rep.failures == 100 and rep.max_deviation > 0.5


def test_reports_are_deterministic_and_merge(spec):
    inv = maximal_invariant_scalar(spec("reynolds"))
    a = verify_invariance(inv, 300, seed=11)
    b = verify_invariance(inv, 300, seed=11)
    assert a == b
    m = a.merge(b)
    assert m.trials == 600 and m.max_deviation == a.max_deviation
    with pytest.raises(ValueError):
        a.merge(VerificationReport("maximality", 1, 11, 0.0, 0, a.tolerance))


def test_trial_streams_are_independent_of_chunking():
    assert trial_rng(1, 5).random() == trial_rng(1, 5).random()
    assert trial_rng(1, 5).random() != trial_rng(1, 6).random()


def test_scalar_group_errors(spec):
    with pytest.raises(ScaleViolation):
        maximal_invariant_scalar(spec("normal"))
    with pytest.raises(RankDeficientPrimaries):
        maximal_invariant_scalar(spec("reynolds"), primaries=["V", "D"])
    g = maximal_invariant_scalar(spec("rainfall")).group
    with pytest.raises(ShapeMismatch):
        g.apply(ScalarElement((1.0,)), (1.0, 1.0, 1.0))
    with pytest.raises(ShapeMismatch):
        g.apply(ScalarElement((1.0, -1.0)), (1.0, 1.0, 1.0))


def test_affine_group_errors():
    group = AffineGroup(builtin_family("affine-ii"))
    with pytest.raises(SingularR1):
        group.check_element(AffineElement(np.zeros((2, 2)), np.zeros(2)))
    with pytest.raises(ShapeMismatch):
        group.check_element(AffineElement(np.eye(3), np.zeros(3)))
    with pytest.raises(InvalidFamily):
        builtin_family("affine-iii")
    broken = AffineFamily("broken", 1, 1, lambda R: R + 1.0, lambda R: np.zeros(1))
    with pytest.raises(InvalidFamily):
        AffineGroup(broken)
    with pytest.raises(NonTransitivePrimaryAction):
        maximal_invariant_affine(parse_model(
            "dimensions: L\nvariables:\n  a : L primary\n  b : L primary\n  c : L\n"))


def test_deviation_metric():
    assert deviation([1.0, 100.0], [1.0, 100.0]) == 0
    assert deviation([0.0], [1e-12]) == pytest.approx(1e-12)
    assert deviation([200.0], [202.0]) == pytest.approx(2 / 202)


# equivariance of the standardizer: s(g x) composed with g equals s(x)
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_standardizer_equivariance(seed):
    rng = np.random.default_rng(seed)
    group = AffineGroup(builtin_family("affine-ii"))
    x = group.sample_point(rng)
    g = group.sample_element(rng)
    lhs = group.compose(group.standardizer(group.apply(g, x)), g)
    rhs = group.standardizer(x)
    assert deviation(np.ravel(lhs.R), np.ravel(rhs.R)) < 1e-9
    assert deviation(lhs.P, rhs.P) < 1e-9
