import random

import pytest
from hypothesis import given, strategies as st

from htqft import finab, spaces as sp
from htqft.exact import Field, QQ
from htqft.finab import make_group
from htqft.hopf import FUNCTION, GROUP, NotFiniteVolume
from htqft.sampling import corpus, random_cospan
from htqft.spaces import random_chain_map

CORPUS = dict(corpus())
names = st.sampled_from(sorted(CORPUS))
coeffs = st.sampled_from([(2,), (3,), (2, 2), (4,)]).map(make_group)
seeds = st.integers(0, 10 ** 6)


def order(K, G, q, variance=sp.HOMOLOGY):
    return (sp.homology if variance == sp.HOMOLOGY else sp.cohomology)(K, G, q)[0].order


@pytest.mark.parametrize("space,G,q,expected", [
    ("klein", (2,), 1, (2, 2)),
    ("klein", (3,), 1, (3,)),
    ("rp2", (2,), 1, (2,)),
    ("rp2", (2,), 2, (2,)),
    ("rp2", (3,), 1, ()),
    ("torus", (3,), 2, (3,)),
    ("torus", (2,), 1, (2, 2)),
    ("moore(3,1)", (3,), 1, (3,)),
    ("moore(3,1)", (3,), 2, (3,)),
    ("point", (5,), 3, ()),
    ("s0", (2,), 0, (2,)),
])
def test_known_homology(space, G, q, expected):
    grp, reps = sp.homology(CORPUS[space], make_group(G), q)
    assert grp == make_group(expected)


def test_known_cohomology():
    Z2, Z3 = make_group([2]), make_group([3])
    assert sp.cohomology(sp.rp2(), Z2, 1)[0].order == 2
    assert sp.cohomology(sp.rp2(), Z3, 2)[0].order == 1
    assert sp.cohomology(sp.klein(), Z3, 2)[0].order == 1
    assert sp.cohomology(sp.klein(), Z2, 2)[0].order == 2


def test_integral_homology():
    assert sp.integral_homology(sp.rp2(), 1) == (0, [2])
    assert sp.integral_homology(sp.torus(), 1) == (2, [])
    assert sp.integral_homology(sp.klein(), 1) == (1, [2])


def test_builtin_names():
    assert sp.builtin("sphere(2)") == sp.sphere(2)
    assert sp.load_space("s1") == sp.sphere(1) == sp.load_space("sphere1")
    assert sp.load_space("moore(2,1)") == sp.moore(2, 1)
    with pytest.raises((ValueError, KeyError)):
        sp.load_space("no-such-space")


def test_bad_complex_rejected():
    with pytest.raises(ValueError):
        sp.ChainComplex([1, 1, 1], {1: [[1]], 2: [[1]]})


@given(names)
def test_json_round_trip(name):
    K = CORPUS[name]
    assert sp.ChainComplex.from_json(K.to_json()) == K


@given(names, coeffs, st.integers(0, 3))
def test_universal_coefficients_orders_agree(name, G, q):
    # homology and cohomology with finite coefficients have the same order in each degree
    K = CORPUS[name]
    assert order(K, G, q) == order(K, G, q, sp.COHOMOLOGY)


@given(names, coeffs, st.integers(0, 3))
def test_suspension_iso(name, G, q):
    K = CORPUS[name]
    for var in (sp.HOMOLOGY, sp.COHOMOLOGY):
        s = sp.suspension_iso(K, G, q, var)
        assert s.is_mono() and s.is_epi()
        assert finab.compose(sp.desuspension_iso(K, G, q + 1, var), s) == finab.identity(s.src)


@given(names, names, coeffs, st.integers(0, 3))
def test_wedge_is_biproduct(a, b, G, q):
    K, L = CORPUS[a], CORPUS[b]
    W = sp.wedge(K, L)
    assert order(W.complex, G, q) == order(K, G, q) * order(L, G, q)
    assert sp.compose_maps(W.proj0, W.inj0) == sp.identity_map(K)
    assert sp.compose_maps(W.proj1, W.inj1) == sp.identity_map(L)


@given(names, seeds)
def test_cone_of_identity_is_acyclic(name, seed):
    K = CORPUS[name]
    assert sp.is_acyclic(sp.mapping_cone(sp.identity_map(K))[0])
    assert sp.is_quasi_iso(sp.identity_map(K))


@given(names, names, seeds)
def test_random_chain_maps_are_chain_maps(a, b, seed):
    f = random_chain_map(random.Random(seed), CORPUS[a], CORPUS[b], 2)
    sp.ChainMap(f.src, f.tgt, [f.comp(n) for n in range(max(f.src.top, f.tgt.top) + 1)])


@given(names, names, names, seeds)
def test_induced_is_functorial(a, b, c, seed):
    rng = random.Random(seed)
    K, L, M = CORPUS[a], CORPUS[b], CORPUS[c]
    f, g = random_chain_map(rng, K, L, 2), random_chain_map(rng, L, M, 2)
    G = make_group([2])
    for var in (sp.HOMOLOGY, sp.COHOMOLOGY):
        gf = sp.induced(sp.compose_maps(g, f), G, 1, var)
        parts = (sp.induced(g, G, 1, var), sp.induced(f, G, 1, var))
        assert gf == (finab.compose(*parts) if var == sp.HOMOLOGY else finab.compose(parts[1], parts[0]))


@given(names, names, coeffs)
def test_smash_kunneth_with_sphere(a, b, G):
    # K ∧ S^1 is the suspension of K
    K = CORPUS[a]
    S = sp.smash(K, sp.sphere(1))
    for q in range(4):
        assert order(S, G, q + 1) == order(K, G, q)


@given(names, coeffs)
def test_dimension_reduction_dimensions(name, G):
    K = CORPUS[name]
    for fl in (GROUP, FUNCTION):
        T = sp.BrownTheory(fl, G, 1, QQ)
        W = sp.smashed(T, sp.circle_plus())
        assert W.value(K).dim == T.value(K).dim * T.value(sp.suspend(K)[0]).dim


@pytest.mark.parametrize("variance_flavor", [GROUP, FUNCTION])
def test_torus_triad_exact(variance_flavor):
    for G in ((2,), (3,)):
        T = sp.BrownTheory(variance_flavor, make_group(G), 1, QQ)
        assert sp.exact_square_check(T, sp.torus_triad())
        assert sp.exact_square_check(T, sp.trivial_triad())


@given(names, names, seeds)
def test_cone_triad_exact(a, b, seed):
    f = random_chain_map(random.Random(seed), CORPUS[a], CORPUS[b], 2)
    for fl in (GROUP, FUNCTION):
        assert sp.exact_square_check(sp.BrownTheory(fl, make_group([2]), 1, QQ), sp.cone_triad(f))


def test_non_triad_rejected():
    S = sp.sphere(1)
    P = sp.point()
    z = sp.zero_map(S, P)
    t = sp.Triad(z, z, sp.zero_map(P, S), sp.zero_map(P, S))
    with pytest.raises(ValueError):
        sp.exact_square_check(sp.BrownTheory(GROUP, make_group([2]), 1, QQ), t)


def test_finite_volume_gate():
    with pytest.raises(NotFiniteVolume):
        sp.BrownTheory(FUNCTION, make_group([2]), 1, Field(2))


def test_dim_cap():
    T = sp.BrownTheory(GROUP, make_group([2]), 1, QQ, dim_cap=1)
    with pytest.raises(ValueError):
        T.value(sp.sphere(2))


@given(names, names, seeds)
def test_cospan_composition_shape(a, b, seed):
    rng = random.Random(seed)
    inner = random_cospan(rng, CORPUS[a], CORPUS[b])
    outer = random_cospan(rng, CORPUS[b], sp.sphere(1))
    c = sp.compose_space_cospans(outer, inner)
    assert c.K0 == inner.K0 and c.K1 == outer.K1
    ident = sp.compose_space_cospans(sp.identity_cospan(inner.K1), inner)
    assert ident.K0 == inner.K0
