"""Projective path-integral HTQFTs, their obstruction cocycles, and the lifts.

Everything here is evaluated on chain-level representatives of cospans.
PÎ(E) integrates the cospan E(Λ); PǏ(E) integrates the span E(TΣΛ).
The obstruction ω of either is read off symbolically from the composition
defect of Hopf cospans and, when matrices are small, cross-checked against
the matrix ratio F(Λ′)F(Λ) / F(Λ′∘Λ).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import cospans as cs
from . import finab, hopf, spaces as sp
from .exact import Field, KMatrix, QQ, Scalar
from .finab import FinAbGroup
from .hopf import FUNCTION, GROUP, HopfMorphism, HopfObject
from .spaces import BrownTheory, ChainComplex, ChainMap, SpaceCospan

PI_HAT = "pi_hat"
PI_CHECK = "pi_check"
LIFTED_TENSOR = "lifted_tensor"
LIFTED_ORDINARY = "lifted_ordinary"
LIFTED_REDUCED = "lifted_reduced"


class InconsistentDefect(RuntimeError):
    """The symbolic defect disagrees with the matrix ratio."""


# ------------------------------------------------------------ extensions

def _cap(T):
    return getattr(T, "dim_cap", None)


def cospanical_value(T, c: SpaceCospan) -> cs.HopfCospan:
    """Ê(Λ): apply E legwise."""
    c.check_cap(_cap(T))
    return cs.HopfCospan.from_legs(T.induced(c.f0), T.induced(c.f1))


def spanical_value(T, c: SpaceCospan) -> cs.HopfSpan:
    """Ě(Λ) = E(TΣΛ), a span between E(ΣK0) and E(ΣK1)."""
    c.check_cap(_cap(T))
    s = sp.t_sigma(c)
    return cs.HopfSpan.from_legs(T.induced(s.p0), T.induced(s.p1))


def pi_hat(T, c: SpaceCospan, materialize=True) -> cs.CkMorphism:
    return cs.integrate_cospan(cospanical_value(T, c), T.field, materialize)


def pi_check(T, c: SpaceCospan, materialize=True) -> cs.CkMorphism:
    return cs.integrate_span(spanical_value(T, c), T.field, materialize)


def _small(*objs):
    n = 1
    for o in objs:
        n *= o.dim
    return n <= cs.MATRIX_GATE


def _cross_check(name, defect, F, c2, c1, c21):
    if not all(_small(m.src, m.tgt) for m in (F(c1), F(c2))):
        return
    lhs = F(c2).matrix @ F(c1).matrix
    rhs = F(c21).matrix
    ratio = lhs.ratio_to(rhs)
    if ratio is None or ratio != defect:
        raise InconsistentDefect(f"{name}: symbolic defect {defect} but matrix ratio {ratio}")


def omega_hat(T, c2: SpaceCospan, c1: SpaceCospan, cross_check=False) -> Scalar:
    """ω̂(E)(Λ′, Λ) with Λ′ = c2 outer and Λ = c1 inner."""
    _, defect = cs.compose_cospans(cospanical_value(T, c2), cospanical_value(T, c1), T.field)
    if cross_check:
        _cross_check("omega_hat", defect, lambda c: pi_hat(T, c), c2, c1, sp.compose_space_cospans(c2, c1))
    return defect


def omega_check(T, c2: SpaceCospan, c1: SpaceCospan, cross_check=False) -> Scalar:
    """ω̌(E)(Λ′, Λ), from the transposed spans."""
    a = cs.transpose(spanical_value(T, c1))
    b = cs.transpose(spanical_value(T, c2))
    _, defect = cs.compose_cospans(b, a, T.field)
    if cross_check:
        _cross_check("omega_check", defect, lambda c: pi_check(T, c), c2, c1, sp.compose_space_cospans(c2, c1))
    return defect


# ------------------------------------------------------------ θ cochains

def theta(T, c: SpaceCospan) -> Scalar:
    """vol⁻¹ of E on the mapping cone of the incoming leg f1."""
    C, _, _ = sp.mapping_cone(c.f1)
    return hopf.inverse_volume(T.value(C), T.field)


def theta_leq(T: BrownTheory, q: int, c: SpaceCospan) -> Scalar:
    """Π_{l=0..q} θ(E_{q-l})^{(-1)^l} for the ordinary family of T."""
    out = T.field.one()
    for l in range(q + 1):
        t = theta(T.with_degree(q - l), c)
        out = out * (t if l % 2 == 0 else t.inverse())
    return out


def delta_theta(th, c2: SpaceCospan, c1: SpaceCospan) -> Scalar:
    """θ(Λ)·θ(Λ′∘Λ)⁻¹·θ(Λ′) for an evaluator th."""
    return th(c1) * th(sp.compose_space_cospans(c2, c1)).inverse() * th(c2)


# ------------------------------------------------------------ lifts

def lift_tensor_Z(T, c: SpaceCospan) -> cs.CkMorphism:
    """θ(E)⁻¹·(PÎ(E) ⊗ PǏ(E)), objects E(K) ⊗ E(ΣK)."""
    k = T.field
    hat, chk = pi_hat(T, c), pi_check(T, c)
    Ehat = cospanical_value(T, c)
    Echk = cs.transpose(spanical_value(T, c))
    L = cs.tensor(Ehat, Echk)
    s = theta(T, c).inverse()
    ts = hopf.hopf_tensor(hat.src, chk.src)
    tt = hopf.hopf_tensor(hat.tgt, chk.tgt)
    Ps = hopf.tensor_identification(hat.src, chk.src, k, ts)
    Pt = hopf.tensor_identification(hat.tgt, chk.tgt, k, tt)
    M = (Pt @ hat.matrix.kron(chk.matrix) @ Ps.T()).scale(s)
    return cs.CkMorphism(L.foot0, L.foot1, s, cs.reduce(L), M)


def lift_ordinary_Z(T: BrownTheory, q: int, c: SpaceCospan) -> cs.CkMorphism:
    """θ_{≤q}⁻¹·PÎ(E_q): a strict functor for ordinary theories."""
    Tq = T.with_degree(q)
    return pi_hat(Tq, c).scaled(theta_leq(T, q, c).inverse())


def lift_reduced_Z(T: BrownTheory, c: SpaceCospan) -> cs.CkMorphism:
    """θ(E)⁻¹·PÎ(W*_{𝕋⁺}E), the lifted dimension reduction."""
    return pi_hat(sp.smashed(T, sp.circle_plus()), c).scaled(theta(T, c).inverse())


@dataclass(frozen=True)
class TheorySpec:
    """A (projective or lifted) path-integral theory over a Brown theory."""

    base: object
    kind: str
    degree: int | None = None

    def evaluate(self, c: SpaceCospan) -> cs.CkMorphism:
        if self.kind == PI_HAT:
            return pi_hat(self.base, c)
        if self.kind == PI_CHECK:
            return pi_check(self.base, c)
        if self.kind == LIFTED_TENSOR:
            return lift_tensor_Z(self.base, c)
        if self.kind == LIFTED_ORDINARY:
            return lift_ordinary_Z(self.base, self.degree, c)
        if self.kind == LIFTED_REDUCED:
            return lift_reduced_Z(self.base, c)
        raise ValueError(f"unknown theory kind {self.kind}")

    def omega(self, c2, c1) -> Scalar:
        if self.kind == PI_HAT:
            return omega_hat(self.base, c2, c1)
        if self.kind == PI_CHECK:
            return omega_check(self.base, c2, c1)
        return self.base.field.one()

    @property
    def field(self):
        return self.base.field


def dim_reduce(T: BrownTheory) -> TheorySpec:
    """PÎ of E precomposed with (−) ∧ 𝕋⁺."""
    return TheorySpec(sp.smashed(T, sp.circle_plus()), PI_HAT)


def suspension_hopf_iso(T: BrownTheory, K: ChainComplex) -> HopfMorphism:
    """E_q(K) ≅ E_{q+1}(ΣK) from the chain-level suspension isomorphism."""
    T1 = T.with_degree(T.degree + 1)
    S, _ = sp.suspend(K)
    A, B = T.value(K), T1.value(S)
    if T.flavor == GROUP:
        rho = sp.suspension_iso(K, T.coeff, T.degree, sp.HOMOLOGY)
    else:
        rho = sp.desuspension_iso(K, T.coeff, T.degree + 1, sp.COHOMOLOGY)
    return HopfMorphism(A, B, rho)


# ------------------------------------------------------------ cobordisms

@dataclass(frozen=True)
class Cobordism:
    """Unreduced cellular model of M with inclusions of the two boundary parts."""

    M: ChainComplex
    M0: ChainComplex
    M1: ChainComplex
    i0: ChainMap
    i1: ChainMap

    def __post_init__(self):
        for i, N in ((self.i0, self.M0), (self.i1, self.M1)):
            if i.src != N or i.tgt != self.M:
                raise ValueError("boundary inclusion has wrong endpoints")


def phi(cob: Cobordism) -> SpaceCospan:
    """[M0 ↪ M ↩ M1] ↦ [M0⁺ → M⁺ ← M1⁺]; unreduced chains of M are reduced chains of M⁺."""
    return SpaceCospan(cob.M0, cob.M, cob.M1, cob.i0, cob.i1)


def closed_cobordism(M: ChainComplex) -> Cobordism:
    Z = sp.point()
    return Cobordism(M, Z, Z, sp.zero_map(Z, M), sp.zero_map(Z, M))


def closed_cospan(L: ChainComplex) -> SpaceCospan:
    """(∗ → L ← ∗)."""
    return phi(closed_cobordism(L))


def unreduced_circle():
    return ChainComplex([1, 1])


def unreduced_torus():
    return ChainComplex([1, 2, 1])


def unreduced_solid_torus():
    return ChainComplex([1, 1])


def cylinder_cobordism() -> Cobordism:
    """S¹ × I with cells v0, v1 | a0, a1, e | F, from one boundary circle to the other."""
    M = ChainComplex([2, 3, 1], {1: [[0, 0, -1], [0, 0, 1]], 2: [[1], [-1], [0]]})
    S = unreduced_circle()
    i0 = ChainMap(S, M, {0: [[1], [0]], 1: [[1], [0], [0]]})
    i1 = ChainMap(S, M, {0: [[0], [1]], 1: [[0], [1], [0]]})
    return Cobordism(M, S, S, i0, i1)


def heegaard_pieces(plus=True):
    """The two solid-torus halves of S³, as (Λ: ∗ → T², Λ′: T² → ∗).

    The first filling kills the meridian a, the second the longitude b.
    With ``plus`` the pieces are unreduced models (cobordisms between
    plus-spaces); otherwise reduced models of the pointed spaces.
    """
    if plus:
        Tt, ST = unreduced_torus(), unreduced_solid_torus()
        f = ChainMap(Tt, ST, {0: [[1]], 1: [[0, 1]]})
        g = ChainMap(Tt, ST, {0: [[1]], 1: [[1, 0]]})
    else:
        Tt, ST = sp.torus(), sp.solid_torus()
        f = ChainMap(Tt, ST, {1: [[0, 1]]})
        g = ChainMap(Tt, ST, {1: [[1, 0]]})
    Z = sp.point()
    lam = SpaceCospan(Z, ST, Tt, sp.zero_map(Z, ST), f)
    lam2 = SpaceCospan(Tt, ST, Z, g, sp.zero_map(Z, ST))
    return lam, lam2


def heegaard_cobordisms():
    Z = sp.point()
    lam, lam2 = heegaard_pieces(plus=True)
    return (Cobordism(lam.L, Z, lam.K1, lam.f0, lam.f1), Cobordism(lam2.L, lam2.K0, Z, lam2.f0, lam2.f1))


# ------------------------------------------------------------ Dijkgraaf–Witten

# abelianized fundamental groups: (free rank, torsion orders)
PI1_ABELIANIZED = {
    "circle": (1, ()), "torus": (2, ()), "klein": (1, (2,)), "rp2": (0, (2,)),
    "s2": (0, ()), "s3": (0, ()),
}


def count_homs_abelian(free_rank: int, torsion, G: FinAbGroup) -> int:
    """|Hom(Z^r ⊕ ⊕ Z/t, G)|."""
    from math import gcd
    n = G.order ** free_rank
    for t in torsion:
        for o in G.orders:
            n *= gcd(t, o)
    return n


def dw_tabulated(name: str, G: FinAbGroup) -> Fraction | None:
    """|Hom(π₁(M), G)| / |G| for a connected builtin manifold."""
    key = str(name).lower()
    key = {"s1": "circle", "sphere3": "s3", "sphere2": "s2"}.get(key, key)
    if key not in PI1_ABELIANIZED:
        return None
    r, tors = PI1_ABELIANIZED[key]
    return Fraction(count_homs_abelian(r, tors, G), G.order)


def dw_invariant(manifold, G: FinAbGroup, k: Field = QQ, q: int = 1) -> Scalar:
    """Closed value of the lifted ordinary theory (function flavor) on M⁺."""
    T = BrownTheory(FUNCTION, G, q, k)
    if str(manifold).lower() in ("s3", "sphere3", "heegaard"):
        lam, lam2 = heegaard_pieces(plus=True)
        Z = cs.ck_compose(lift_ordinary_Z(T, q, lam2), lift_ordinary_Z(T, q, lam))
        return Scalar(k, Z.matrix.entry(0, 0))
    L = sp.manifold_plus(manifold)
    Z = lift_ordinary_Z(T, q, closed_cospan(L))
    return Scalar(k, Z.matrix.entry(0, 0))


# ------------------------------------------------------------ pairing

def evaluation_cospan(K: ChainComplex) -> SpaceCospan:
    """ev_K = (K ∨ K -fold-> K <- ∗)."""
    Z = sp.point()
    nab = sp.fold_map(K)
    return SpaceCospan(nab.src, K, Z, nab, sp.zero_map(Z, K))


@dataclass
class Pairing:
    basis: list          # elements x of H^q(K; G) indexing delta functions
    matrix: list         # matrix[i][j] = <δ_{x_i}, δ_{x_j}>
    field: Field


def pairing(T: BrownTheory, K: ChainComplex, lifted=True) -> Pairing:
    """Bilinear form (f, g) ↦ Z(ev_K)(f ⊗ g) on E(K) in the delta basis.

    Function flavor only; complex conjugation is taken to be the identity.
    """
    if T.flavor != FUNCTION:
        raise ValueError("pairing requires the function flavor")
    k, q = T.field, T.degree
    ev = evaluation_cospan(K)
    Z = lift_ordinary_Z(T, q, ev) if lifted else pi_hat(T, ev)
    w = sp.wedge(K, K)
    p0 = sp.induced(w.inj0, T.coeff, q, sp.COHOMOLOGY)
    p1 = sp.induced(w.inj1, T.coeff, q, sp.COHOMOLOGY)
    HW = p0.src
    X = T.group(K)
    xs = X.elements()
    index = {}
    for z in HW.elements():
        index[(tuple(p0(z)), tuple(p1(z)))] = HW.index(z)
    M = [[Z.matrix.entry(0, index[(tuple(a), tuple(b))]) for b in xs] for a in xs]
    return Pairing([tuple(x) for x in xs], M, k)


def expected_pairing(T: BrownTheory, K: ChainComplex) -> Pairing:
    """|H⁰|⁻¹ Σ_x f(x) g(x) in the delta basis: a scaled identity."""
    k = T.field
    X = T.group(K)
    h0 = T.with_degree(0).group(K).order
    c = k.elem(Fraction(1, h0))
    xs = X.elements()
    M = [[c if i == j else k.elem(0) for j in range(len(xs))] for i in range(len(xs))]
    return Pairing([tuple(x) for x in xs], M, k)
