import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from htqft import hopf, pathint as pi, spaces as sp
from htqft.exact import Field, KMatrix, QQ
from htqft.finab import make_group
from htqft.hopf import FUNCTION, GROUP
from htqft.sampling import composable_pair, mapping_class_examples, random_cospan, self_equivalence_cospan

F5 = Field(5)
theories = st.builds(sp.BrownTheory, st.sampled_from([GROUP, FUNCTION]),
                     st.sampled_from([(2,), (3,), (2, 2)]).map(make_group),
                     st.sampled_from([1, 2]), st.sampled_from([QQ, F5]))
seeds = st.integers(0, 10 ** 6)
few = settings(max_examples=15)


@few
@given(theories, seeds)
def test_inversion_formula(T, seed):
    c2, c1 = composable_pair(random.Random(seed))
    wh = pi.omega_hat(T, c2, c1, cross_check=True)
    wc = pi.omega_check(T, c2, c1, cross_check=True)
    assert wh * wc == pi.delta_theta(lambda c: pi.theta(T, c), c2, c1)


@few
@given(theories, seeds)
def test_degree_exchange(T, seed):
    c2, c1 = composable_pair(random.Random(seed))
    assert pi.omega_check(T.with_degree(T.degree + 1), c2, c1) == pi.omega_hat(T, c2, c1)


@few
@given(theories, seeds)
def test_pi_check_is_pi_hat_under_suspension(T, seed):
    c = random_cospan(random.Random(seed))
    T1 = T.with_degree(T.degree + 1)
    k = T.field
    chk = pi.pi_check(T1, c).matrix
    hat = pi.pi_hat(T, c).matrix
    s0 = hopf.materialize_hom(pi.suspension_hopf_iso(T, c.K0), k)
    s1 = hopf.materialize_hom(pi.suspension_hopf_iso(T, c.K1), k)
    assert chk @ s0 == s1 @ hat


@few
@given(theories, seeds)
def test_bounded_below_lift(T, seed):
    c2, c1 = composable_pair(random.Random(seed))
    q = T.degree
    assert pi.omega_hat(T, c2, c1) == pi.delta_theta(lambda c: pi.theta_leq(T, q, c), c2, c1)
    Z = lambda c: pi.lift_ordinary_Z(T, q, c).matrix
    assert Z(c2) @ Z(c1) == Z(sp.compose_space_cospans(c2, c1))


@settings(max_examples=8)
@given(theories, seeds)
def test_tensor_and_reduced_lifts_are_functorial(T, seed):
    c2, c1 = composable_pair(random.Random(seed))
    c21 = sp.compose_space_cospans(c2, c1)
    for lift in (pi.lift_tensor_Z, pi.lift_reduced_Z):
        assert lift(T, c2).matrix @ lift(T, c1).matrix == lift(T, c21).matrix


@few
@given(theories, seeds)
def test_dimension_reduction_defect(T, seed):
    c2, c1 = composable_pair(random.Random(seed))
    R = pi.dim_reduce(T)
    assert R.omega(c2, c1) == pi.delta_theta(lambda c: pi.theta(T, c), c2, c1)


@given(theories, seeds)
def test_identity_cospans_are_strict(T, seed):
    K = random_cospan(random.Random(seed)).K0
    ident = sp.identity_cospan(K)
    assert pi.theta(T, ident).is_one()
    assert pi.pi_hat(T, ident).matrix == KMatrix.identity(T.field, T.value(K).dim)


@pytest.mark.parametrize("plus", [True, False])
@pytest.mark.parametrize("flavor", [GROUP, FUNCTION])
def test_heegaard(plus, flavor):
    T = sp.BrownTheory(flavor, make_group([2]), 1, QQ)
    lam, lam2 = pi.heegaard_pieces(plus)
    assert pi.omega_hat(T, lam2, lam, cross_check=True) == QQ.scalar(Fraction(1, 2))
    assert pi.omega_check(T, lam2, lam, cross_check=True) == QQ.one()
    Z = lambda c: pi.lift_ordinary_Z(T, 1, c).matrix
    assert Z(lam2) @ Z(lam) == Z(sp.compose_space_cospans(lam2, lam))


@pytest.mark.parametrize("manifold,G,value", [
    ("circle", (2,), 1), ("torus", (2,), 2), ("klein", (2,), 2), ("klein", (3,), 1),
    ("rp2", (2,), 1), ("rp2", (3,), Fraction(1, 3)), ("s3", (2,), Fraction(1, 2)),
    ("torus", (3,), 3), ("s2", (2,), Fraction(1, 2)),
])
def test_dijkgraaf_witten(manifold, G, value):
    G = make_group(G)
    assert pi.dw_invariant(manifold, G) == QQ.scalar(value)
    assert pi.dw_tabulated(manifold, G) == value


@pytest.mark.parametrize("name,f", mapping_class_examples())
def test_mapping_class(name, f):
    c = self_equivalence_cospan(f)
    for fl in (GROUP, FUNCTION):
        T = sp.BrownTheory(fl, make_group([3]), 1, QQ)
        assert pi.theta(T, c).is_one()
        assert pi.lift_ordinary_Z(T, 1, c).matrix == hopf.materialize_hom(T.induced(f), QQ)


@pytest.mark.parametrize("mk", [pi.unreduced_circle, pi.unreduced_torus])
@pytest.mark.parametrize("G", [(2,), (3,)])
def test_pairing(mk, G):
    T = sp.BrownTheory(FUNCTION, make_group(G), 1, QQ)
    K = mk()
    assert pi.pairing(T, K).matrix == pi.expected_pairing(T, K).matrix


def test_pairing_requires_function_flavor():
    with pytest.raises(ValueError):
        pi.pairing(sp.BrownTheory(GROUP, make_group([2]), 1, QQ), sp.circle_plus())


def test_char_two_trivializes_defects():
    T = sp.BrownTheory(FUNCTION, make_group([3]), 1, Field(2))
    rng = random.Random(3)
    for _ in range(10):
        c2, c1 = composable_pair(rng)
        assert pi.omega_hat(T, c2, c1).is_one() and pi.omega_check(T, c2, c1).is_one()


def test_closed_sphere_theta():
    T = sp.BrownTheory(FUNCTION, make_group([2]), 1, QQ)
    assert pi.theta(T, pi.closed_cospan(sp.sphere(1))) == QQ.scalar(Fraction(1, 2))


def test_tensor_lift_closed_value_is_dimension():
    T = sp.BrownTheory(FUNCTION, make_group([2]), 1, QQ)
    L = sp.sphere(1)
    Z = pi.lift_tensor_Z(T, pi.closed_cospan(L)).matrix
    assert Z.to_dense() == [[T.value(L).dim]]


@pytest.mark.parametrize("manifold,value", [("s3", 2), ("klein", Fraction(1, 2)), ("rp2", 1)])
def test_theta_leq_on_closed_manifolds(manifold, value):
    # |H^0(M⁺)| / |H^1(M⁺)| with Z/2 coefficients
    T = sp.BrownTheory(FUNCTION, make_group([2]), 1, QQ)
    assert pi.theta_leq(T, 1, pi.closed_cospan(sp.manifold_plus(manifold))) == QQ.scalar(value)


def test_unlifted_pairing_scale():
    T = sp.BrownTheory(FUNCTION, make_group([2]), 1, QQ)
    K = pi.unreduced_torus()
    got = pi.pairing(T, K, lifted=False).matrix
    c = QQ.elem(Fraction(1, T.group(K).order))
    assert all(got[i][j] == (c if i == j else 0) for i in range(len(got)) for j in range(len(got)))
    assert pi.pairing(T, sp.point()).matrix == [[QQ.elem(1)]]
