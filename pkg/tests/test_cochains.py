import random

import pytest
from hypothesis import given, settings, strategies as st

from htqft import cochains as co, pathint as pi, spaces as sp
from htqft.exact import Field, QQ
from htqft.finab import make_group
from htqft.hopf import FUNCTION, GROUP
from htqft.sampling import composable_pair, composable_triple, random_cospan

F5 = Field(5)
theories = st.builds(sp.BrownTheory, st.sampled_from([GROUP, FUNCTION]),
                     st.sampled_from([(2,), (3,), (2, 2)]).map(make_group),
                     st.sampled_from([1, 2]), st.sampled_from([QQ, F5]))
seeds = st.integers(0, 10 ** 6)


def omegas(T):
    return [co.Cochain(2, lambda a, b: pi.omega_hat(T, a, b), T.field, "omega_hat"),
            co.Cochain(2, lambda a, b: pi.omega_check(T, a, b), T.field, "omega_check")]


@settings(max_examples=10)
@given(theories, seeds)
def test_omega_is_a_normalized_cocycle(T, seed):
    rng = random.Random(seed)
    triple = composable_triple(rng)
    for w in omegas(T):
        assert co.cocycle_check(w, [triple]).passed
        assert co.normalized_check(w, list(triple)).passed


@settings(max_examples=10)
@given(theories, seeds)
def test_omega_is_monoidal(T, seed):
    rng = random.Random(seed)
    p, q = composable_pair(rng), composable_pair(rng)
    for w in omegas(T):
        assert co.monoidal_check(w, [(p, q)]).passed


@settings(max_examples=10)
@given(theories, seeds)
def test_coboundary_of_theta_is_a_cocycle(T, seed):
    th = co.Cochain(1, lambda c: pi.theta(T, c), T.field, "theta")
    d = co.delta1(th)
    assert co.cocycle_check(d, [composable_triple(random.Random(seed))]).passed
    assert co.normalized_check(th, [random_cospan(random.Random(seed))]).passed


def test_constant_cochain_is_cocycle():
    one = co.constant_cochain(2, QQ)
    t = composable_triple(random.Random(0))
    assert co.delta2_residual(one, *t).is_one()


def test_composability_enforced():
    w = co.constant_cochain(2, QQ)
    a = random_cospan(random.Random(1), sp.sphere(1), sp.sphere(2))
    b = random_cospan(random.Random(2), sp.sphere(1), sp.sphere(2))
    with pytest.raises(co.NotComposable):
        w(a, b)
    with pytest.raises(co.NotComposable):
        co.delta2_residual(w, a, a, b)
    with pytest.raises(ValueError):
        w(a)


def test_violations_are_reported():
    bad = co.Cochain(2, lambda a, b: QQ.scalar(2), QQ, "two")
    rep = co.normalized_check(bad, [random_cospan(random.Random(4))])
    assert not rep.passed and rep.samples == 2
