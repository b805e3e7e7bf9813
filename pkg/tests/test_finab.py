import random

import pytest
from hypothesis import given, strategies as st

from htqft import finab
from htqft.finab import (GroupHom, compose, cokernel, image, is_exact_square, kernel, make_group,
                         parse_group, pullback, pushout)
from htqft.sampling import SMALL_GROUPS

groups = st.sampled_from(SMALL_GROUPS).map(make_group)
seeds = st.integers(0, 10 ** 6)


def hom(seed, A, B):
    return finab.random_hom(random.Random(seed), A, B)


def test_canonical_form():
    assert make_group([2, 3]).orders == (6,)
    assert make_group([4, 2]).orders == (2, 4)
    assert make_group([1, 1]).is_trivial()
    assert parse_group("Z/2+Z/2").order == 4
    assert parse_group("0").is_trivial()
    with pytest.raises(ValueError):
        parse_group("Z2")


def test_hom_count():
    assert len(list(finab.all_homs(make_group([4]), make_group([2, 2])))) == 4
    assert len(list(finab.all_homs(make_group([2]), make_group([3])))) == 1


@given(groups, groups, seeds)
def test_first_isomorphism(A, B, seed):
    f = hom(seed, A, B)
    K, i = kernel(f)
    Q, p = cokernel(f)
    I = image(f)[0]
    assert compose(f, i).is_zero() and compose(p, f).is_zero()
    assert i.is_mono() and p.is_epi()
    assert K.order * I.order == A.order
    assert I.order * Q.order == B.order


@given(groups, groups, groups, seeds)
def test_pushout_square(A, B, C, seed):
    f, g = hom(seed, A, B), hom(seed + 1, A, C)
    P, iB, iC = pushout(f, g)
    assert compose(iB, f) == compose(iC, g)
    assert is_exact_square(f, iB, g, iC)
    assert P.order * image(f)[0].order >= 1


@given(groups, groups, groups, seeds)
def test_pullback_square(B, C, D, seed):
    f, g = hom(seed, B, D), hom(seed + 1, C, D)
    P, pB, pC = pullback(f, g)
    assert compose(f, pB) == compose(g, pC)
    assert is_exact_square(pB, f, pC, g)


def test_non_commuting_square_rejected():
    Z2 = make_group([2])
    one = finab.identity(Z2)
    zero = finab.zero_hom(Z2, Z2)
    with pytest.raises(ValueError):
        is_exact_square(one, one, zero, one)


@given(groups, groups, seeds)
def test_hom_group_operations(A, B, seed):
    f, g = hom(seed, A, B), hom(seed + 7, A, B)
    assert f + g - g == f
    assert (f - f).is_zero()
    for x in list(A.elements())[:10]:
        assert (f + g)(x) == B.reduce([a + b for a, b in zip(f(x), g(x))])


def test_gate():
    big = make_group([64, 64, 64])
    with pytest.raises(finab.SizeGateExceeded):
        list(big.elements())


def test_bad_hom_rejected():
    with pytest.raises(ValueError):
        GroupHom(make_group([2]), make_group([3]), [[1]])


def test_zero_square_through_trivial_groups_is_exact():
    # A -> 0 + 0 -> D is exact in the middle, whatever A and D are
    Z2, O = make_group([2]), make_group([])
    to0, from0 = finab.zero_hom(Z2, O), finab.zero_hom(O, Z2)
    assert is_exact_square(to0, from0, to0, from0)


def test_connecting_examples():
    Z2, Z4, O = make_group([2]), make_group([4]), make_group([])
    f = GroupHom(Z2, Z4, [[2]])
    g = GroupHom(Z4, Z2, [[1]])
    assert finab.connecting(f, g).is_zero()
    d = finab.connecting(finab.zero_hom(O, Z2), finab.zero_hom(Z2, O))
    assert d.is_mono() and d.is_epi()
