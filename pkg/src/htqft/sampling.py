"""Seeded generators of spaces, cospans, and composable tuples."""
from __future__ import annotations

import random

from . import finab, spaces as sp
from .cospans import HopfCospan, HopfSpan
from .finab import make_group
from .hopf import GROUP, HopfMorphism, HopfObject
from .spaces import SpaceCospan


def corpus():
    """Small fixed space corpus: (name, complex) pairs."""
    return [
        ("point", sp.point()),
        ("s0", sp.sphere(0)),
        ("s1", sp.sphere(1)),
        ("s2", sp.sphere(2)),
        ("torus", sp.torus()),
        ("circle_plus", sp.circle_plus()),
        ("s1vs1", sp.wedge(sp.sphere(1), sp.sphere(1)).complex),
        ("rp2", sp.rp2()),
        ("klein", sp.klein()),
        ("moore(3,1)", sp.moore(3, 1)),
    ]


_FEET = ["point", "s0", "s1", "s2", "circle_plus", "s1vs1", "rp2", "torus"]


def make_rng(seed) -> random.Random:
    return random.Random(seed)


def random_space(rng, names=None):
    table = dict(corpus())
    return table[rng.choice(names or list(table))]


def random_foot(rng):
    return random_space(rng, _FEET)


def random_cospan(rng, K0=None, K1=None) -> SpaceCospan:
    """A random K0 -> L <- K1 assembled from corpus maps, wedges, and cones."""
    K0 = random_foot(rng) if K0 is None else K0
    K1 = random_foot(rng) if K1 is None else K1
    r = rng.random()
    if r < 0.45:
        L = random_space(rng)
    elif r < 0.75:
        L = sp.wedge(sp.wedge(K0, K1).complex, random_space(rng, ["point", "s1", "s2", "rp2"])).complex
    else:
        X = random_space(rng, ["s1", "s2", "torus", "rp2", "s1vs1"])
        g = sp.random_chain_map(rng, K0, X, 2)
        L = sp.mapping_cone(g)[0]
    f0 = sp.random_chain_map(rng, K0, L, 2)
    f1 = sp.random_chain_map(rng, K1, L, 2)
    return SpaceCospan(K0, L, K1, f0, f1)


def composable_pair(rng):
    """(outer, inner) with inner: K0 -> K1 and outer: K1 -> K2."""
    K0, K1, K2 = random_foot(rng), random_foot(rng), random_foot(rng)
    inner = random_cospan(rng, K0, K1)
    outer = random_cospan(rng, K1, K2)
    return outer, inner


def composable_triple(rng):
    """(f1, f2, f3) with f1 outermost."""
    K = [random_foot(rng) for _ in range(4)]
    f3 = random_cospan(rng, K[0], K[1])
    f2 = random_cospan(rng, K[1], K[2])
    f1 = random_cospan(rng, K[2], K[3])
    return f1, f2, f3


def self_equivalence_cospan(f) -> SpaceCospan:
    """[K -f-> K <-id- K]."""
    K = f.src
    return SpaceCospan(K, K, K, f, sp.identity_map(K))


def mapping_class_examples():
    S1 = sp.sphere(1)
    W = sp.wedge(S1, S1).complex
    return [("s1_degree_minus_one", sp.ChainMap(S1, S1, {1: [[-1]]})),
            ("s1vs1_swap", sp.ChainMap(W, W, {1: [[0, 1], [1, 0]]}))]


# ------------------------------------------------------------ Hopf level

SMALL_GROUPS = [(), (2,), (3,), (4,), (2, 2), (6,), (2, 4), (8,), (2, 2, 2)]


def groups_up_to(max_order: int):
    """Every finite abelian group of order <= max_order, in invariant-factor form."""
    seen, out = set(), []

    def parts(n, smallest):
        # invariant factor chains d1 | d2 | ... with product n, returned as tuples
        if n == 1:
            yield ()
            return
        for d in range(smallest, n + 1):
            if n % d == 0:
                for rest in parts(n // d, d):
                    if not rest or rest[0] % d == 0:
                        yield (d,) + rest
    for n in range(1, max_order + 1):
        for p in parts(n, 2):
            G = make_group(p)
            if G not in seen:
                seen.add(G)
                out.append(G)
    return out


def random_group(rng, max_order=8):
    return make_group(rng.choice([g for g in SMALL_GROUPS if _prod(g) <= max_order]))


def _prod(xs):
    n = 1
    for x in xs:
        n *= x
    return n


def random_hopf_morphism(rng, A, B):
    if A.flavor == GROUP:
        return HopfMorphism(A, B, finab.random_hom(rng, A.group, B.group))
    return HopfMorphism(A, B, finab.random_hom(rng, B.group, A.group))


def random_hopf_cospan(rng, flavor, max_order=8):
    A0, B, A1 = (HopfObject(random_group(rng, max_order), flavor) for _ in range(3))
    return HopfCospan.from_legs(random_hopf_morphism(rng, A0, B), random_hopf_morphism(rng, A1, B))


def random_hopf_span(rng, flavor, max_order=8):
    A0, B, A1 = (HopfObject(random_group(rng, max_order), flavor) for _ in range(3))
    return HopfSpan.from_legs(random_hopf_morphism(rng, B, A0), random_hopf_morphism(rng, B, A1))


def composable_hopf_cospans(rng, flavor, max_order=8):
    """(outer, inner) sharing a random middle foot."""
    A0, B, A1, B2, A2 = (HopfObject(random_group(rng, max_order), flavor) for _ in range(5))
    inner = HopfCospan.from_legs(random_hopf_morphism(rng, A0, B), random_hopf_morphism(rng, A1, B))
    outer = HopfCospan.from_legs(random_hopf_morphism(rng, A1, B2), random_hopf_morphism(rng, A2, B2))
    return outer, inner
