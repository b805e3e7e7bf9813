import random

from hypothesis import given, strategies as st

from htqft import cospans as cs, finab, hopf
from htqft.exact import Field, KMatrix, QQ
from htqft.hopf import FUNCTION, GROUP, HopfObject
from htqft.sampling import composable_hopf_cospans, random_hopf_cospan, random_hopf_span

F5 = Field(5)
flavors = st.sampled_from([GROUP, FUNCTION])
fields = st.sampled_from([QQ, F5])
seeds = st.integers(0, 10 ** 6)


def integral(L, k):
    return cs.integrate_cospan(L, k).matrix


@given(flavors, fields, seeds)
def test_composition_contract(fl, k, seed):
    outer, inner = composable_hopf_cospans(random.Random(seed), fl)
    comp, d = cs.compose_cospans(outer, inner, k)
    assert integral(outer, k) @ integral(inner, k) == integral(comp, k).scale(d)


@given(flavors, fields, seeds)
def test_symbolic_composition_tracks_matrix(fl, k, seed):
    outer, inner = composable_hopf_cospans(random.Random(seed), fl)
    a, b = cs.integrate_cospan(outer, k), cs.integrate_cospan(inner, k)
    c = cs.ck_compose(a, b)
    assert c.matrix == a.matrix @ b.matrix


@given(flavors, fields, seeds)
def test_mono_extension_invariance(fl, k, seed):
    rng = random.Random(seed)
    L = random_hopf_cospan(rng, fl)
    extra = finab.make_group(rng.choice([(2,), (3,), (2, 2)]))
    assert integral(cs.mono_extension(L, extra), k) == integral(L, k)
    assert integral(cs.twisted_mono_extension(L, extra, rng), k) == integral(L, k)
    R = cs.reduce(L)
    assert cs.equivalent(L, R) and integral(R, k) == integral(L, k)


@given(flavors, fields, seeds)
def test_span_transpose(fl, k, seed):
    V = random_hopf_span(random.Random(seed), fl)
    assert cs.transpose_square_is_exact(V)
    assert cs.span_integral_matrix(V, k) == integral(cs.transpose(V), k)


@given(flavors, fields, seeds)
def test_identity_is_unit(fl, k, seed):
    L = random_hopf_cospan(random.Random(seed), fl)
    comp, d = cs.compose_cospans(cs.identity_cospan(L.foot1), L, k)
    assert d.is_one() and cs.equivalent(comp, L)


def test_pivotal_dimension():
    for orders, fl in [((2,), GROUP), ((3,), GROUP), ((4,), GROUP), ((2, 2), FUNCTION)]:
        A = HopfObject(finab.make_group(orders), fl)
        for k in (QQ, F5):
            i, e = cs.coevaluation(A, k), cs.evaluation(A, k)
            I = KMatrix.identity(k, A.dim)
            assert (e @ i).entry(0, 0) == k.elem(A.dim)
            assert e.kron(I) @ I.kron(i) == I
            assert I.kron(e) @ i.kron(I) == I


@given(flavors, seeds)
def test_dagger_ratio_closed_form(fl, seed):
    L = random_hopf_cospan(random.Random(seed), fl)
    kers = [finab.kernel(leg.carrier)[0].order for leg in (L.leg0, L.leg1)]
    assert cs.dagger_ratio(L, QQ) == QQ.scalar(kers[1]) / kers[0]


@given(flavors, fields, seeds)
def test_tensor_is_kron_up_to_basis(fl, k, seed):
    rng = random.Random(seed)
    L1, L2 = random_hopf_cospan(rng, fl, 4), random_hopf_cospan(rng, fl, 4)
    P0 = hopf.tensor_identification(L1.foot0, L2.foot0, k)
    P1 = hopf.tensor_identification(L1.foot1, L2.foot1, k)
    assert integral(cs.tensor(L1, L2), k) == P1 @ integral(L1, k).kron(integral(L2, k)) @ P0.T()
