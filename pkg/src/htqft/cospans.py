"""Cospans and spans of Hopf objects and their integrals.

A cospan ``A0 -xi0-> B <-xi1- A1`` integrates to the linear map
``mu_{xi1} ∘ xi0 : A0 -> A1`` and a span ``A0 <-xi0- B -xi1-> A1`` to
``xi1 ∘ mu_{xi0}``.  Composition of cospans is by Hopf pushout, and the
integrals compose up to the scalar recorded as the ``defect``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import finab, hopf
from .exact import Field, KMatrix, Scalar
from .finab import SizeGateExceeded
from .hopf import (HopfMorphism, HopfObject, hopf_compose, hopf_identity,
                   hopf_image, hopf_pullback, hopf_pushout, hopf_tensor)

MATRIX_GATE = 2 ** 20


@dataclass(frozen=True)
class HopfCospan:
    foot0: HopfObject
    leg0: HopfMorphism
    apex: HopfObject
    leg1: HopfMorphism
    foot1: HopfObject

    def __post_init__(self):
        if self.leg0.src != self.foot0 or self.leg1.src != self.foot1:
            raise ValueError("legs must start at the feet")
        if self.leg0.tgt != self.apex or self.leg1.tgt != self.apex:
            raise ValueError("legs must end at the apex")

    @property
    def flavor(self):
        return self.apex.flavor

    @classmethod
    def from_legs(cls, leg0, leg1):
        return cls(leg0.src, leg0, leg0.tgt, leg1, leg1.src)


@dataclass(frozen=True)
class HopfSpan:
    foot0: HopfObject
    leg0: HopfMorphism
    apex: HopfObject
    leg1: HopfMorphism
    foot1: HopfObject

    def __post_init__(self):
        if self.leg0.src != self.apex or self.leg1.src != self.apex:
            raise ValueError("legs must start at the apex")
        if self.leg0.tgt != self.foot0 or self.leg1.tgt != self.foot1:
            raise ValueError("legs must end at the feet")

    @property
    def flavor(self):
        return self.apex.flavor

    @classmethod
    def from_legs(cls, leg0, leg1):
        return cls(leg0.tgt, leg0, leg0.src, leg1, leg1.tgt)


def identity_cospan(A: HopfObject) -> HopfCospan:
    i = hopf_identity(A)
    return HopfCospan(A, i, A, i, A)


def joint_map(L: HopfCospan):
    """The map foot0 ⊗ foot1 -> apex, with the tensor structure."""
    t = hopf_tensor(L.foot0, L.foot1)
    return t.joint(L.leg0, L.leg1), t


def reduce(L: HopfCospan) -> HopfCospan:
    """Replace the apex by the image of the joint map, making the legs jointly epi."""
    J, t = joint_map(L)
    _, epi, _ = hopf_image(J)
    return HopfCospan.from_legs(hopf_compose(epi, t.inj(0)), hopf_compose(epi, t.inj(1)))


def _joint_kernel(L: HopfCospan) -> finab.GroupHom:
    """The joint-map kernel, encoded as a subgroup of the group of foot0 ⊗ foot1.

    For kG this is the group kernel; for k^G the Hopf kernel of the joint map
    is the function algebra on the cokernel of the carrier, which as a
    subobject is determined by the image of the carrier.
    """
    J, _ = joint_map(L)
    if L.flavor == hopf.GROUP:
        return finab.kernel(J.carrier)[1]
    return finab.image(J.carrier)[1]


def equivalent(L1: HopfCospan, L2: HopfCospan) -> bool:
    """Decide L1 ≈ L2 by comparing the joint-map kernels as subobjects."""
    if L1.foot0 != L2.foot0 or L1.foot1 != L2.foot1:
        raise ValueError("cospans have different feet")
    return finab.same_subgroup(_joint_kernel(reduce(L1)), _joint_kernel(reduce(L2)))


def compose_cospans(outer: HopfCospan, inner: HopfCospan, k: Field):
    """(outer ∘ inner, defect) with ∫_outer ∘ ∫_inner = defect · ∫_(outer∘inner)."""
    if inner.foot1 != outer.foot0:
        raise ValueError("cospans are not composable")
    _, phi, phi2 = hopf_pushout(inner.leg1, outer.leg0)
    comp = HopfCospan.from_legs(hopf_compose(phi, inner.leg0), hopf_compose(phi2, outer.leg1))
    defect = hopf.composition_defect(phi2, outer.leg1, k)
    return comp, defect


def transpose(V: HopfSpan) -> HopfCospan:
    """The cospan completing the span to a pushout square."""
    _, phi0, phi1 = hopf_pushout(V.leg0, V.leg1)
    return HopfCospan.from_legs(phi0, phi1)


def cotranspose(L: HopfCospan) -> HopfSpan:
    """The span completing the cospan to a pullback square."""
    _, p0, p1 = hopf_pullback(L.leg0, L.leg1)
    return HopfSpan.from_legs(p0, p1)


def transpose_square_is_exact(V: HopfSpan) -> bool:
    """Exactness of the square formed by V and transpose(V), on carriers."""
    T = transpose(V)
    if V.flavor == hopf.GROUP:
        return finab.is_exact_square(V.leg0.carrier, T.leg0.carrier, V.leg1.carrier, T.leg1.carrier)
    # reversed arrows: the square of carriers runs apex(T) -> feet -> apex(V)
    return finab.is_exact_square(T.leg0.carrier, V.leg0.carrier, T.leg1.carrier, V.leg1.carrier)


def dagger(L: HopfCospan) -> HopfCospan:
    return HopfCospan(L.foot1, L.leg1, L.apex, L.leg0, L.foot0)


def tensor(L1: HopfCospan, L2: HopfCospan) -> HopfCospan:
    l0, _, _ = hopf.tensor_morphism(L1.leg0, L2.leg0)
    l1, _, _ = hopf.tensor_morphism(L1.leg1, L2.leg1)
    return HopfCospan.from_legs(l0, l1)


# ------------------------------------------------------------- C_k morphisms

class CkMorphism:
    """scale · ∫_cospan, optionally with its materialized matrix.

    Equality is equality of matrices; the (scale, cospan) pair is only a
    convenient presentation.
    """

    __slots__ = ("src", "tgt", "scale", "cospan", "_matrix", "field")

    def __init__(self, src, tgt, scale: Scalar, cospan: HopfCospan, matrix: KMatrix | None = None):
        if scale.is_zero():
            raise ValueError("scale must be a unit")
        self.src, self.tgt, self.scale, self.cospan = src, tgt, scale, cospan
        self.field = scale.field
        self._matrix = matrix

    @property
    def matrix(self) -> KMatrix:
        if self._matrix is None:
            self._matrix = _integral_matrix(self.cospan, self.field).scale(self.scale)
        return self._matrix

    def has_matrix(self):
        return self._matrix is not None

    def scaled(self, c: Scalar) -> "CkMorphism":
        m = self._matrix.scale(c) if self._matrix is not None else None
        return CkMorphism(self.src, self.tgt, self.scale * c, self.cospan, m)

    def __eq__(self, other):
        return (isinstance(other, CkMorphism) and self.src == other.src
                and self.tgt == other.tgt and self.matrix == other.matrix)

    __hash__ = None

    def __repr__(self):
        return f"CkMorphism({self.src} -> {self.tgt}, scale={self.scale})"


def ck_compose(outer: CkMorphism, inner: CkMorphism) -> CkMorphism:
    """outer ∘ inner, tracking the defect symbolically."""
    comp, defect = compose_cospans(outer.cospan, inner.cospan, outer.field)
    m = None
    if outer.has_matrix() and inner.has_matrix():
        m = outer.matrix @ inner.matrix
    return CkMorphism(inner.src, outer.tgt, outer.scale * inner.scale * defect, reduce(comp), m)


def _check_gate(L, k):
    for A in (L.foot0, L.apex, L.foot1):
        if not A.finite_volume(k):
            raise hopf.NotFiniteVolume(f"char {k.char} divides dim {A}")
    if L.foot0.dim * L.foot1.dim > MATRIX_GATE:
        raise SizeGateExceeded("matrix would exceed the size gate")


def _integral_matrix(L: HopfCospan, k: Field) -> KMatrix:
    _check_gate(L, k)
    R = reduce(L)
    return (hopf.integral_matrix(R.leg1, k, limit=MATRIX_GATE)
            @ hopf.materialize_hom(R.leg0, k, limit=MATRIX_GATE))


def integrate_cospan(L: HopfCospan, k: Field, materialize=True) -> CkMorphism:
    """∫_L = mu_{leg1} ∘ leg0 as a C_k morphism foot0 -> foot1."""
    for A in (L.foot0, L.apex, L.foot1):
        if not A.finite_volume(k):
            raise hopf.NotFiniteVolume(f"char {k.char} divides dim {A}")
    m = None
    if materialize and L.foot0.dim * L.foot1.dim <= MATRIX_GATE:
        m = _integral_matrix(L, k)
    return CkMorphism(L.foot0, L.foot1, k.one(), reduce(L), m)


def span_integral_matrix(V: HopfSpan, k: Field) -> KMatrix:
    """∫^V = leg1 ∘ mu_{leg0}, computed directly from the span."""
    for A in (V.foot0, V.apex, V.foot1):
        if not A.finite_volume(k):
            raise hopf.NotFiniteVolume(f"char {k.char} divides dim {A}")
    return (hopf.materialize_hom(V.leg1, k, limit=MATRIX_GATE)
            @ hopf.integral_matrix(V.leg0, k, limit=MATRIX_GATE))


def integrate_span(V: HopfSpan, k: Field, materialize=True) -> CkMorphism:
    """∫^V as a C_k morphism; presented through the transpose cospan."""
    T = transpose(V)
    m = None
    if materialize and V.foot0.dim * V.foot1.dim <= MATRIX_GATE:
        m = span_integral_matrix(V, k)
    return CkMorphism(V.foot0, V.foot1, k.one(), reduce(T), m)


# ---------------------------------------------------------- self-duality

def coevaluation_cospan(A: HopfObject) -> tuple[HopfCospan, hopf.HopfTensor]:
    """k -eta-> A <-nabla- A ⊗ A."""
    nabla, t = hopf.multiplication(A)
    return HopfCospan.from_legs(hopf.unit(A), nabla), t


def coevaluation(A: HopfObject, k: Field):
    """i_A : k -> A ⊗ A as a matrix in the Kronecker basis."""
    L, t = coevaluation_cospan(A)
    P = hopf.tensor_identification(A, A, k, t)
    return P.T() @ integrate_cospan(L, k).matrix


def evaluation(A: HopfObject, k: Field):
    """e_A = vol(A) · ∫ along the reversed coevaluation cospan, Kronecker basis."""
    L, t = coevaluation_cospan(A)
    P = hopf.tensor_identification(A, A, k, t)
    vol = hopf.inverse_volume(A, k).inverse()
    return integrate_cospan(dagger(L), k).matrix.scale(vol) @ P


def dagger_ratio(L: HopfCospan, k: Field):
    """The scalar c with ∫_{L†} = c · (∫_L)^T, or None when no such scalar exists."""
    a = integrate_cospan(dagger(L), k).matrix
    b = integrate_cospan(L, k).matrix.T()
    return a.ratio_to(b)


def mono_extension(L: HopfCospan, extra: finab.FinAbGroup) -> HopfCospan:
    """Push both legs along a monomorphism of the apex into apex ⊗ k(extra)."""
    E = HopfObject(extra, L.flavor)
    t = hopf_tensor(L.apex, E)
    g = t.inj(0)
    return HopfCospan.from_legs(hopf_compose(g, L.leg0), hopf_compose(g, L.leg1))


def twisted_mono_extension(L: HopfCospan, extra: finab.FinAbGroup, rng) -> HopfCospan:
    """Like :func:`mono_extension` but through a random non-split monomorphism."""
    E = HopfObject(extra, L.flavor)
    t = hopf_tensor(L.apex, E)
    # a random map B -> E is added to the inclusion; the result stays mono
    if L.flavor == hopf.GROUP:
        r = finab.random_hom(rng, L.apex.group, extra)
        c = t.sum.pair(finab.identity(L.apex.group), r)
        g = HopfMorphism(L.apex, t.obj, c)
    else:
        r = finab.random_hom(rng, extra, L.apex.group)
        c = t.sum.copair(finab.identity(L.apex.group), r)
        g = HopfMorphism(L.apex, t.obj, c)
    return HopfCospan.from_legs(hopf_compose(g, L.leg0), hopf_compose(g, L.leg1))
