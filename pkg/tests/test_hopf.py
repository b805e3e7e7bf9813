import random

import pytest
from hypothesis import given, strategies as st

from htqft import finab, hopf
from htqft.exact import Field, KMatrix, QQ
from htqft.hopf import FUNCTION, GROUP, HopfObject, NotFiniteVolume
from htqft.sampling import SMALL_GROUPS, random_hopf_morphism

F5 = Field(5)
small = [g for g in SMALL_GROUPS if len(g) < 3]
objects = st.builds(HopfObject, st.sampled_from(small).map(finab.make_group), st.sampled_from([GROUP, FUNCTION]))
fields = st.sampled_from([QQ, F5])
seeds = st.integers(0, 10 ** 6)


@given(objects, st.sampled_from([QQ, F5, Field(2)]))
def test_materialized_axioms(A, k):
    assert hopf.check_axioms(hopf.materialize(A, k), k) == []


@given(objects, fields)
def test_integrals_match_oracle(A, k):
    T = hopf.materialize(A, k)
    assert hopf.oracle_integral(T, k) == hopf.integral_matrix(hopf.counit(A), k)
    vol = (hopf.oracle_cointegral(T, k) @ hopf.oracle_integral(T, k)).entry(0, 0)
    assert hopf.inverse_volume(A, k) == vol


@given(objects, objects, fields, seeds)
def test_bracket_is_inverse_image_order(A, B, k, seed):
    xi = random_hopf_morphism(random.Random(seed), A.__class__(A.group, B.flavor), B)
    assert hopf.bracket(xi, k) == hopf.oracle_bracket(xi, k)
    assert hopf.is_hopf_map(hopf.materialize(xi.src, k), hopf.materialize(xi.tgt, k),
                            hopf.materialize_hom(xi, k))


@given(objects, fields, seeds, st.data())
def test_integral_composition_defect(A, k, seed, data):
    rng = random.Random(seed)
    B = HopfObject(finab.make_group(data.draw(st.sampled_from(small))), A.flavor)
    C = HopfObject(finab.make_group(data.draw(st.sampled_from(small))), A.flavor)
    xi, xi2 = random_hopf_morphism(rng, A, B), random_hopf_morphism(rng, B, C)
    lam = hopf.composition_defect(xi2, xi, k)
    lhs = hopf.integral_matrix(xi, k) @ hopf.integral_matrix(xi2, k)
    rhs = hopf.integral_matrix(hopf.hopf_compose(xi2, xi), k).scale(lam)
    assert lhs == rhs


@given(objects, objects, fields, seeds)
def test_section_and_retract(A, B, k, seed):
    xi = random_hopf_morphism(random.Random(seed), A, HopfObject(B.group, A.flavor))
    M, mu = hopf.materialize_hom(xi, k), hopf.integral_matrix(xi, k)
    if xi.is_epi():
        assert M @ mu == KMatrix.identity(k, xi.tgt.dim)
    if xi.is_mono():
        assert mu @ M == KMatrix.identity(k, xi.src.dim)


def test_function_flavor_reverses_carrier():
    rho = finab.random_hom(random.Random(1), finab.make_group([4]), finab.make_group([2]))
    xi = hopf.from_group_map(rho, FUNCTION)
    assert xi.src.group == rho.tgt and xi.tgt.group == rho.src


def test_not_finite_volume():
    A = HopfObject(finab.make_group([5]), GROUP)
    assert not A.finite_volume(F5)
    with pytest.raises(NotFiniteVolume):
        hopf.inverse_volume(A, F5)


def test_inverse_volume_is_inverse_dimension():
    A = HopfObject(finab.make_group([2, 2]), FUNCTION)
    assert hopf.inverse_volume(A, QQ) == QQ.scalar(1) / 4
    assert hopf.inverse_volume(A, F5) == F5.scalar(4).inverse()


def test_parse_flavor():
    assert hopf.parse_flavor("k^G") == FUNCTION and hopf.parse_flavor("group") == GROUP
    with pytest.raises(ValueError):
        hopf.parse_flavor("ring")
