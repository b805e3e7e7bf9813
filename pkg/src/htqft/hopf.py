"""Group-induced bicommutative Hopf algebras, symbolically and concretely.

A :class:`HopfObject` is a finite abelian group together with a flavor:
``"group"`` for the group algebra kG and ``"function"`` for the function
algebra k^G.  Morphisms carry a group homomorphism, covariantly for kG and
contravariantly for k^G, so the function flavor is FinAb with arrows
reversed.  Every categorical construction below is computed on carriers.

The materialization functions build explicit matrices (basis = group
elements for kG, delta functions for k^G) and serve as the brute-force
oracle for the symbolic formulas.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from . import finab
from .exact import Field, KMatrix, Scalar, solve_linear
from .finab import FinAbGroup, GroupHom, compose

GROUP = "group"
FUNCTION = "function"
FLAVORS = (GROUP, FUNCTION)

__all__ = [
    "GROUP", "FUNCTION", "HopfObject", "HopfMorphism", "NotFiniteVolume",
    "inverse_volume", "hopf_kernel", "hopf_cokernel", "hopf_image", "bracket",
    "composition_defect", "materialize", "materialize_hom", "integral_matrix",
    "unit", "counit", "hopf_identity", "hopf_compose", "hopf_pushout",
    "hopf_pullback", "hopf_tensor", "multiplication", "StructureTensors",
    "from_group_map", "tensor_morphism", "parse_flavor", "trivial",
]


class NotFiniteVolume(ValueError):
    """The characteristic of the field divides the dimension."""


def parse_flavor(text):
    t = str(text).strip().lower()
    if t in ("group", "groupalgebra", "kg"):
        return GROUP
    if t in ("function", "functionalgebra", "k^g", "fun"):
        return FUNCTION
    raise ValueError(f"unknown flavor {text!r}")


@dataclass(frozen=True)
class HopfObject:
    group: FinAbGroup
    flavor: str = GROUP

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")

    @property
    def dim(self):
        return self.group.order

    def finite_volume(self, k: Field):
        return not k.divides_char(self.dim)

    def __str__(self):
        return f"k[{self.group}]" if self.flavor == GROUP else f"k^{{{self.group}}}"


def trivial(flavor):
    return HopfObject(finab.trivial_group(), flavor)


class HopfMorphism:
    """A Hopf map src -> tgt induced by ``carrier``.

    For the group flavor the carrier is src.group -> tgt.group; for the
    function flavor it is tgt.group -> src.group.
    """

    __slots__ = ("src", "tgt", "carrier")

    def __init__(self, src: HopfObject, tgt: HopfObject, carrier: GroupHom):
        if src.flavor != tgt.flavor:
            raise ValueError("flavors do not match")
        if src.flavor == GROUP:
            ok = carrier.src == src.group and carrier.tgt == tgt.group
        else:
            ok = carrier.src == tgt.group and carrier.tgt == src.group
        if not ok:
            raise ValueError("carrier endpoints do not fit the flavor")
        self.src, self.tgt, self.carrier = src, tgt, carrier

    @property
    def flavor(self):
        return self.src.flavor

    def is_epi(self):
        return self.carrier.is_epi() if self.flavor == GROUP else self.carrier.is_mono()

    def is_mono(self):
        return self.carrier.is_mono() if self.flavor == GROUP else self.carrier.is_epi()

    def __eq__(self, other):
        return (isinstance(other, HopfMorphism) and self.src == other.src
                and self.tgt == other.tgt and self.carrier == other.carrier)

    def __hash__(self):
        return hash((self.src, self.tgt, self.carrier))

    def __repr__(self):
        return f"HopfMorphism({self.src} -> {self.tgt}, carrier={self.carrier.matrix.tolist()})"


def _mk(src_group, tgt_group, flavor, carrier):
    return HopfMorphism(HopfObject(src_group, flavor), HopfObject(tgt_group, flavor), carrier)


def from_group_map(rho: GroupHom, flavor) -> HopfMorphism:
    """rho_* : kG -> kH, or rho^* : k^H -> k^G."""
    if flavor == GROUP:
        return _mk(rho.src, rho.tgt, GROUP, rho)
    return _mk(rho.tgt, rho.src, FUNCTION, rho)


def hopf_identity(A: HopfObject):
    return HopfMorphism(A, A, finab.identity(A.group))


def hopf_compose(xi2: HopfMorphism, xi1: HopfMorphism) -> HopfMorphism:
    """xi2 after xi1."""
    if xi1.tgt != xi2.src:
        raise ValueError("endpoint mismatch in composition")
    if xi1.flavor == GROUP:
        c = compose(xi2.carrier, xi1.carrier)
    else:
        c = compose(xi1.carrier, xi2.carrier)
    return HopfMorphism(xi1.src, xi2.tgt, c)


def unit(A: HopfObject):
    """eta : k -> A."""
    k = trivial(A.flavor)
    if A.flavor == GROUP:
        return HopfMorphism(k, A, finab.zero_hom(k.group, A.group))
    return HopfMorphism(k, A, finab.zero_hom(A.group, k.group))


def counit(A: HopfObject):
    """epsilon : A -> k."""
    k = trivial(A.flavor)
    if A.flavor == GROUP:
        return HopfMorphism(A, k, finab.zero_hom(A.group, k.group))
    return HopfMorphism(A, k, finab.zero_hom(k.group, A.group))


def zero_morphism(A: HopfObject, B: HopfObject):
    """eta_B ∘ epsilon_A."""
    return hopf_compose(unit(B), counit(A))


@dataclass(frozen=True)
class HopfTensor:
    """A ⊗ B realized as the Hopf object of the direct sum of groups."""

    obj: HopfObject
    sum: finab.DirectSum

    def inj(self, i):
        """Hopf map A_i -> A ⊗ B (a ↦ a ⊗ 1)."""
        if self.obj.flavor == GROUP:
            leg = self.sum.inj0 if i == 0 else self.sum.inj1
            return HopfMorphism(HopfObject(leg.src, GROUP), self.obj, leg)
        leg = self.sum.proj0 if i == 0 else self.sum.proj1
        return HopfMorphism(HopfObject(leg.tgt, FUNCTION), self.obj, leg)

    def proj(self, i):
        """Hopf map A ⊗ B -> A_i (tensoring with the counit)."""
        if self.obj.flavor == GROUP:
            leg = self.sum.proj0 if i == 0 else self.sum.proj1
            return HopfMorphism(self.obj, HopfObject(leg.tgt, GROUP), leg)
        leg = self.sum.inj0 if i == 0 else self.sum.inj1
        return HopfMorphism(self.obj, HopfObject(leg.src, FUNCTION), leg)

    def joint(self, xi0: HopfMorphism, xi1: HopfMorphism) -> HopfMorphism:
        """The Hopf map A ⊗ B -> C given by a ⊗ b ↦ xi0(a)·xi1(b)."""
        tgt = xi0.tgt
        if self.obj.flavor == GROUP:
            return HopfMorphism(self.obj, tgt, self.sum.copair(xi0.carrier, xi1.carrier))
        return HopfMorphism(self.obj, tgt, self.sum.pair(xi0.carrier, xi1.carrier))


def hopf_tensor(A: HopfObject, B: HopfObject) -> HopfTensor:
    if A.flavor != B.flavor:
        raise ValueError("flavors do not match")
    s = finab.direct_sum(A.group, B.group)
    return HopfTensor(HopfObject(s.group, A.flavor), s)


def tensor_morphism(xi0: HopfMorphism, xi1: HopfMorphism):
    """xi0 ⊗ xi1, returned with the tensor structures of source and target."""
    s = hopf_tensor(xi0.src, xi1.src)
    t = hopf_tensor(xi0.tgt, xi1.tgt)
    parts = [hopf_compose(hopf_compose(t.inj(i), x), s.proj(i)) for i, x in enumerate((xi0, xi1))]
    return HopfMorphism(s.obj, t.obj, parts[0].carrier + parts[1].carrier), s, t


def multiplication(A: HopfObject):
    """nabla : A ⊗ A -> A, with the tensor structure used."""
    t = hopf_tensor(A, A)
    ident = hopf_identity(A)
    return t.joint(ident, ident), t


# --------------------------------------------- kernels / cokernels / images

def hopf_kernel(xi: HopfMorphism):
    """(Ker_H(xi), ker) with ker: Ker_H -> xi.src."""
    if xi.flavor == GROUP:
        K, i = finab.kernel(xi.carrier)
        return HopfObject(K, GROUP), HopfMorphism(HopfObject(K, GROUP), xi.src, i)
    Q, p = finab.cokernel(xi.carrier)
    K = HopfObject(Q, FUNCTION)
    return K, HopfMorphism(K, xi.src, p)


def hopf_cokernel(xi: HopfMorphism):
    """(Cok_H(xi), cok) with cok: xi.tgt -> Cok_H."""
    if xi.flavor == GROUP:
        Q, p = finab.cokernel(xi.carrier)
        return HopfObject(Q, GROUP), HopfMorphism(xi.tgt, HopfObject(Q, GROUP), p)
    K, i = finab.kernel(xi.carrier)
    C = HopfObject(K, FUNCTION)
    return C, HopfMorphism(xi.tgt, C, i)


def hopf_image(xi: HopfMorphism):
    """(Im_H(xi), epi, mono) with mono ∘ epi = xi."""
    I, incl, core = finab.image(xi.carrier)
    obj = HopfObject(I, xi.flavor)
    if xi.flavor == GROUP:
        return obj, HopfMorphism(xi.src, obj, core), HopfMorphism(obj, xi.tgt, incl)
    return obj, HopfMorphism(xi.src, obj, incl), HopfMorphism(obj, xi.tgt, core)


def hopf_pushout(xi0: HopfMorphism, xi1: HopfMorphism):
    """Pushout of B0 <-xi0- A -xi1-> B1: (P, phi0: B0 -> P, phi1: B1 -> P)."""
    if xi0.src != xi1.src:
        raise ValueError("pushout needs a shared source")
    if xi0.flavor == GROUP:
        P, a, b = finab.pushout(xi0.carrier, xi1.carrier)
    else:
        P, a, b = finab.pullback(xi0.carrier, xi1.carrier)
    obj = HopfObject(P, xi0.flavor)
    return obj, HopfMorphism(xi0.tgt, obj, a), HopfMorphism(xi1.tgt, obj, b)


def hopf_pullback(xi0: HopfMorphism, xi1: HopfMorphism):
    """Pullback of B0 -xi0-> D <-xi1- B1: (P, pi0: P -> B0, pi1: P -> B1)."""
    if xi0.tgt != xi1.tgt:
        raise ValueError("pullback needs a shared target")
    if xi0.flavor == GROUP:
        P, a, b = finab.pullback(xi0.carrier, xi1.carrier)
    else:
        P, a, b = finab.pushout(xi0.carrier, xi1.carrier)
    obj = HopfObject(P, xi0.flavor)
    return obj, HopfMorphism(obj, xi0.src, a), HopfMorphism(obj, xi1.src, b)


# --------------------------------------------------------------- scalars

def _require_volume(k: Field, *objs):
    for A in objs:
        if not A.finite_volume(k):
            raise NotFiniteVolume(f"char {k.char} divides dim {A} = {A.dim}")


def inverse_volume(A: HopfObject, k: Field) -> Scalar:
    """vol^{-1}(A) = (dim A)^{-1}."""
    _require_volume(k, A)
    return k.scalar(1) / A.dim


def bracket(xi: HopfMorphism, k: Field) -> Scalar:
    """sigma^B ∘ xi ∘ sigma_A, which equals 1/|Im carrier|."""
    _require_volume(k, xi.src, xi.tgt)
    return k.scalar(1) / finab.image_order(xi.carrier)


def connecting_morphism(xi2: HopfMorphism, xi1: HopfMorphism) -> HopfMorphism:
    """cok_H(xi1) ∘ ker_H(xi2) : Ker_H(xi2) -> Cok_H(xi1)."""
    if xi1.tgt != xi2.src:
        raise ValueError("endpoint mismatch")
    _, ker = hopf_kernel(xi2)
    _, cok = hopf_cokernel(xi1)
    return hopf_compose(cok, ker)


def composition_defect(xi2: HopfMorphism, xi1: HopfMorphism, k: Field) -> Scalar:
    """lambda with mu_{xi1} ∘ mu_{xi2} = lambda · mu_{xi2 ∘ xi1}."""
    _require_volume(k, xi1.src, xi1.tgt, xi2.tgt)
    return bracket(connecting_morphism(xi2, xi1), k)


# -------------------------------------------------------- materialization

@dataclass(frozen=True)
class StructureTensors:
    dim: int
    unit: KMatrix        # dim x 1
    counit: KMatrix      # 1 x dim
    mult: KMatrix        # dim x dim^2
    comult: KMatrix      # dim^2 x dim
    antipode: KMatrix    # dim x dim


_cache_lock = threading.Lock()


def _elements(G, limit=finab.ENUMERATION_LIMIT):
    return G.elements(limit)


@lru_cache(maxsize=256)
def _materialize(A: HopfObject, k: Field) -> StructureTensors:
    G = A.group
    els = _elements(G)
    n = len(els)
    idx = G.index
    add = lambda x, y: tuple((a + b) % d for a, b, d in zip(x, y, G.orders))
    neg = lambda x: tuple((-a) % d for a, d in zip(x, G.orders))
    zero = idx(G.zero())
    if A.flavor == GROUP:
        unit_ = KMatrix.from_entries(k, n, 1, [(zero, 0, 1)])
        counit_ = KMatrix.from_entries(k, 1, n, [(0, j, 1) for j in range(n)])
        mult = KMatrix.from_entries(k, n, n * n, [(idx(add(x, y)), i * n + j, 1)
                                                  for i, x in enumerate(els) for j, y in enumerate(els)])
        comult = KMatrix.from_entries(k, n * n, n, [(i * n + i, i, 1) for i in range(n)])
    else:
        unit_ = KMatrix.from_entries(k, n, 1, [(i, 0, 1) for i in range(n)])
        counit_ = KMatrix.from_entries(k, 1, n, [(0, zero, 1)])
        mult = KMatrix.from_entries(k, n, n * n, [(i, i * n + i, 1) for i in range(n)])
        comult = KMatrix.from_entries(k, n * n, n, [(i * n + j, idx(add(x, y)), 1)
                                                    for i, x in enumerate(els) for j, y in enumerate(els)])
    antipode = KMatrix.from_entries(k, n, n, [(idx(neg(x)), i, 1) for i, x in enumerate(els)])
    return StructureTensors(n, unit_, counit_, mult, comult, antipode)


def materialize(A: HopfObject, k: Field) -> StructureTensors:
    """Explicit structure tensors of A over k (|A| <= 4096)."""
    with _cache_lock:
        return _materialize(A, k)


def _fibers(xi: HopfMorphism, limit):
    """(G, H, image index of each element of G) where the carrier is G -> H."""
    rho = xi.carrier
    G, H = rho.src, rho.tgt
    img = [H.index(rho(x)) for x in _elements(G, limit)]
    return G, H, img


def materialize_hom(xi: HopfMorphism, k: Field, limit=finab.ENUMERATION_LIMIT) -> KMatrix:
    """Matrix of xi (dim tgt x dim src)."""
    G, H, img = _fibers(xi, limit)
    if xi.flavor == GROUP:
        return KMatrix.from_entries(k, H.order, G.order, [(h, g, 1) for g, h in enumerate(img)])
    # f ↦ f ∘ rho : delta_h ↦ sum of delta_g over the fiber of h
    return KMatrix.from_entries(k, G.order, H.order, [(g, h, 1) for g, h in enumerate(img)])


def integral_matrix(xi: HopfMorphism, k: Field, limit=finab.ENUMERATION_LIMIT) -> KMatrix:
    """The normalized generator integral mu_xi : tgt -> src (dim src x dim tgt).

    Group flavor: mu(h) = |Ker|^{-1} sum_{rho(g)=h} g.
    Function flavor: (mu f)(h) = |Ker|^{-1} sum_{rho(g)=h} f(g).
    """
    _require_volume(k, xi.src, xi.tgt)
    G, H, img = _fibers(xi, limit)
    c = (k.scalar(1) / (G.order // finab.image_order(xi.carrier))).value
    if xi.flavor == GROUP:
        return KMatrix.from_entries(k, G.order, H.order, [(g, h, c) for g, h in enumerate(img)])
    return KMatrix.from_entries(k, H.order, G.order, [(h, g, c) for g, h in enumerate(img)])


# ------------------------------------------------------ oracle utilities

def check_axioms(T: StructureTensors, k: Field):
    """Names of the Hopf axioms that fail for T (empty list means all hold)."""
    n = T.dim
    I = KMatrix.identity(k, n)
    one = KMatrix.identity(k, 1)
    swap = KMatrix.from_entries(k, n * n, n * n, [(j * n + i, i * n + j, 1)
                                                  for i in range(n) for j in range(n)])
    m, d, u, e, S = T.mult, T.comult, T.unit, T.counit, T.antipode
    bad = []
    checks = {
        "associativity": (m @ m.kron(I), m @ I.kron(m)),
        "coassociativity": (d.kron(I) @ d, I.kron(d) @ d),
        "left unit": (m @ u.kron(I), I),
        "right unit": (m @ I.kron(u), I),
        "left counit": (e.kron(I) @ d, I),
        "right counit": (I.kron(e) @ d, I),
        "bialgebra": (d @ m, m.kron(m) @ I.kron(swap).kron(I) @ d.kron(d)),
        "counit multiplicative": (e @ m, e.kron(e)),
        "unit comultiplicative": (d @ u, u.kron(u)),
        "counit of unit": (e @ u, one),
        "antipode left": (m @ S.kron(I) @ d, u @ e),
        "antipode right": (m @ I.kron(S) @ d, u @ e),
        "commutativity": (m @ swap, m),
        "cocommutativity": (swap @ d, d),
    }
    for name, (a, b) in checks.items():
        if a != b:
            bad.append(name)
    return bad


def is_hopf_map(TA: StructureTensors, TB: StructureTensors, M: KMatrix):
    """Does M : A -> B respect all structure maps?"""
    return (M @ TA.mult == TB.mult @ M.kron(M)
            and TB.comult @ M == M.kron(M) @ TA.comult
            and M @ TA.unit == TB.unit
            and TB.counit @ M == TA.counit
            and M @ TA.antipode == TB.antipode @ M)


def oracle_integral(T: StructureTensors, k: Field) -> KMatrix:
    """Normalized integral found by linear algebra: a·s = eps(a)s, eps(s) = 1."""
    n = T.dim
    rows, rhs = [], []
    dense_m = T.mult.to_dense()
    eps = T.counit.to_dense()[0]
    z = k.elem(0)
    for a in range(n):
        for r in range(n):
            row = [dense_m[r][a * n + s] - (eps[a] if r == s else z) for s in range(n)]
            rows.append(row)
            rhs.append(z)
    rows.append(list(eps))
    rhs.append(k.elem(1))
    x = solve_linear(k, rows, rhs)
    if x is None:
        raise NotFiniteVolume("no normalized integral")
    return KMatrix.from_entries(k, n, 1, [(i, 0, v) for i, v in enumerate(x) if v])


def oracle_cointegral(T: StructureTensors, k: Field) -> KMatrix:
    """Normalized cointegral: (id ⊗ l) Δ = u·l, l(1) = 1."""
    n = T.dim
    dense_d = T.comult.to_dense()
    unit_v = T.unit.to_dense()
    z = k.elem(0)
    rows, rhs = [], []
    # unknown l (length n); ((id⊗l)Δ(a))_r = sum_s Δ[r*n+s][a] l_s ; must equal unit_r l_a
    for a in range(n):
        for r in range(n):
            row = [dense_d[r * n + s][a] for s in range(n)]
            row[a] = row[a] - unit_v[r][0]
            rows.append(row)
            rhs.append(z)
    rows.append([unit_v[s][0] for s in range(n)])
    rhs.append(k.elem(1))
    x = solve_linear(k, rows, rhs)
    if x is None:
        raise NotFiniteVolume("no normalized cointegral")
    return KMatrix.from_entries(k, 1, n, [(0, i, v) for i, v in enumerate(x) if v])


def oracle_bracket(xi: HopfMorphism, k: Field) -> Scalar:
    """sigma^B ∘ xi ∘ sigma_A computed from materialized tensors."""
    sA = oracle_integral(materialize(xi.src, k), k)
    sB = oracle_cointegral(materialize(xi.tgt, k), k)
    v = sB @ materialize_hom(xi, k) @ sA
    return Scalar(k, v.entry(0, 0))


def tensor_identification(A: HopfObject, B: HopfObject, k: Field, t: HopfTensor | None = None) -> KMatrix:
    """Permutation matrix from the Kronecker basis of A ⊗ B to the basis of t.obj."""
    t = t or hopf_tensor(A, B)
    S = t.obj.group
    nb = B.dim
    entries = []
    for s in _elements(S):
        a = A.group.index(t.sum.proj0(s))
        b = B.group.index(t.sum.proj1(s))
        entries.append((S.index(s), a * nb + b, 1))
    return KMatrix.from_entries(k, S.order, A.dim * nb, entries)
