"""Finite abelian groups in invariant-factor form.

A group is stored as its invariant factors d_1 | d_2 | ... (all >= 2), and a
homomorphism as an integer matrix acting on coordinate vectors.  Kernels,
cokernels and images all come out of one routine, :class:`Subquotient`,
which presents a subquotient of Z^n / diag(w) canonically via Smith form.

>>> make_group([2, 3])
FinAbGroup((6,))
>>> f = GroupHom(make_group([4]), make_group([2]), [[1]])
>>> kernel(f)[0]
FinAbGroup((2,))
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Sequence

from .exact import IntMatrix, SmithData, solve_congruence

ENUMERATION_LIMIT = 4096

__all__ = [
    "FinAbGroup", "GroupElement", "GroupHom", "make_group", "parse_group",
    "compose", "kernel", "cokernel", "image", "direct_sum", "pushout",
    "pullback", "connecting", "is_exact_square", "Subquotient", "identity",
    "zero_hom", "trivial_group", "SizeGateExceeded", "DirectSum",
    "random_hom", "all_homs", "same_subgroup", "subgroup_contains", "hom_sum",
    "image_order", "canonical_presentation",
]


class SizeGateExceeded(ValueError):
    """Raised when a brute-force enumeration or materialization is too large."""


@dataclass(frozen=True)
class FinAbGroup:
    orders: tuple

    def __post_init__(self):
        o = tuple(int(d) for d in self.orders)
        object.__setattr__(self, "orders", o)
        if any(d < 2 for d in o):
            raise ValueError("invariant factors must be >= 2; use make_group")
        if any(b % a for a, b in zip(o, o[1:])):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        return prod(self.orders)

    def is_trivial(self):
        return not self.orders

    def elements(self, limit=ENUMERATION_LIMIT):
        """All coordinate vectors, lexicographically ordered."""
        if self.order > limit:
            raise SizeGateExceeded(f"|G| = {self.order} exceeds {limit}")
        return [tuple(x) for x in itertools.product(*(range(d) for d in self.orders))]

    def index(self, x):
        """Position of coordinate vector x in :meth:`elements`."""
        i = 0
        for c, d in zip(x, self.orders):
            i = i * d + c % d
        return i

    def reduce(self, x):
        return tuple(c % d for c, d in zip(x, self.orders))

    def zero(self):
        return (0,) * self.rank

    def __str__(self):
        return "+".join(f"Z/{d}" for d in self.orders) if self.orders else "0"

    def __repr__(self):
        return f"FinAbGroup({self.orders!r})"


def trivial_group():
    return FinAbGroup(())


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", self.group.reduce(self.coords))

    def __add__(self, other):
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coords))


class GroupHom:
    """Homomorphism ``src -> tgt`` given by a (tgt.rank x src.rank) matrix."""

    __slots__ = ("src", "tgt", "matrix", "_hash")

    def __init__(self, src: FinAbGroup, tgt: FinAbGroup, matrix, check=True):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(matrix, tgt.rank, src.rank)
        if matrix.shape != (tgt.rank, src.rank):
            raise ValueError(f"matrix shape {matrix.shape} does not fit {src} -> {tgt}")
        matrix = matrix.reduce_rows(tgt.orders)
        if check:
            for i, e in enumerate(tgt.orders):
                for j, d in enumerate(src.orders):
                    if matrix[i, j] * d % e:
                        raise ValueError(f"not a homomorphism: entry ({i},{j}) times {d} not 0 mod {e}")
        self.src, self.tgt, self.matrix = src, tgt, matrix
        self._hash = None

    def __call__(self, x):
        if isinstance(x, GroupElement):
            return GroupElement(self.tgt, tuple(self.matrix @ list(x.coords)))
        return self.tgt.reduce(self.matrix @ list(x))

    def __eq__(self, other):
        return (isinstance(other, GroupHom) and self.src == other.src
                and self.tgt == other.tgt and self.matrix == other.matrix)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.src, self.tgt, self.matrix))
        return self._hash

    def __add__(self, other):
        _same_ends(self, other)
        return GroupHom(self.src, self.tgt, self.matrix + other.matrix, check=False)

    def __neg__(self):
        return GroupHom(self.src, self.tgt, -self.matrix, check=False)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return self.matrix.is_zero()

    def kernel_order(self):
        return self.src.order // image_order(self)

    def is_mono(self):
        return image_order(self) == self.src.order

    def is_epi(self):
        return image_order(self) == self.tgt.order

    def to_json(self):
        return {"src": str(self.src), "tgt": str(self.tgt), "matrix": self.matrix.tolist()}

    def __repr__(self):
        return f"GroupHom({self.src} -> {self.tgt}, {self.matrix.tolist()})"


def _same_ends(f, g):
    if f.src != g.src or f.tgt != g.tgt:
        raise ValueError("homomorphisms have different endpoints")


def identity(G: FinAbGroup):
    return GroupHom(G, G, IntMatrix.identity(G.rank), check=False)


def zero_hom(A: FinAbGroup, B: FinAbGroup):
    return GroupHom(A, B, IntMatrix.zeros(B.rank, A.rank), check=False)


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """g after f."""
    if f.tgt != g.src:
        raise ValueError(f"cannot compose: {f.tgt} != {g.src}")
    return GroupHom(f.src, g.tgt, g.matrix @ f.matrix, check=False)


# --------------------------------------------------------- subquotients

class Subquotient:
    """The group <Z> / (<B> + w Z^n) inside the ambient lattice Z^n / diag(w).

    ``gens`` and ``rels`` are n-row integer matrices whose columns generate
    Z and B; B must lie in <Z> + w Z^n.  After construction ``group`` is the
    canonical form, ``reps`` holds ambient lifts of its generators and
    :meth:`coords` converts a vector of <Z> into canonical coordinates.
    """

    def __init__(self, w: Sequence[int], gens: IntMatrix, rels: IntMatrix | None = None):
        n = len(w)
        self.w = list(w)
        if rels is None:
            rels = IntMatrix.zeros(n, 0)
        a = gens.cols
        self.gens = gens
        self._solver = SmithData(gens.hstack(rels, IntMatrix.diag(self.w)) if n else IntMatrix.zeros(0, a))
        rel_vectors = [v[:a] for v in self._solver.kernel_basis()]
        R = IntMatrix.from_columns(rel_vectors, a)
        pres = SmithData(R)
        if pres.rank < a:
            raise ValueError("subquotient is infinite; ambient must be finite")
        kept = [i for i, d in enumerate(pres.diag) if d != 1]
        self.group = FinAbGroup(tuple(pres.diag[i] for i in kept))
        self._coord_map = pres.U.block(kept, list(range(a)))
        section = pres.Uinv.block(list(range(a)), kept)
        self.reps = (gens @ section).reduce_rows(self.w) if n else IntMatrix.zeros(0, len(kept))
        self._a = a

    def coords_of_gen_combo(self, c):
        """Canonical coordinates of the element sum_j c_j gens_j."""
        return self.group.reduce(self._coord_map @ list(c))

    def coords(self, z):
        """Canonical coordinates of an ambient vector z lying in <Z>."""
        y = self._solver.solve(list(z))
        if y is None:
            raise ValueError("vector does not lie in the subgroup")
        return self.coords_of_gen_combo(y[:self._a])

    def contains(self, z):
        return self._solver.solve(list(z)) is not None

    def rep_hom_matrix(self):
        return self.reps


def make_group(orders: Sequence[int]) -> FinAbGroup:
    """Canonical invariant-factor form of Z/o_1 + Z/o_2 + ..."""
    return canonical_presentation(orders)[0]


def canonical_presentation(orders):
    """(G, to_G, from_G) for the raw group Z^n / diag(orders).

    ``to_G`` is the matrix of the iso raw -> G, ``from_G`` the inverse.
    """
    orders = [int(o) for o in orders]
    if any(o < 1 for o in orders):
        raise ValueError("orders must be positive")
    n = len(orders)
    sq = Subquotient(orders, IntMatrix.identity(n))
    G = sq.group
    to_G = IntMatrix.from_columns([sq.coords_of_gen_combo(e) for e in IntMatrix.identity(n).columns()], G.rank)
    return G, to_G, sq.reps


def parse_group(text) -> FinAbGroup:
    """Parse ``"Z/2+Z/4"`` (also ``"0"`` or ``""`` for the trivial group)."""
    if isinstance(text, FinAbGroup):
        return text
    if isinstance(text, (list, tuple)):
        return make_group(text)
    t = str(text).replace(" ", "").replace("⊕", "+")
    if t in ("", "0", "1", "trivial"):
        return trivial_group()
    orders = []
    for part in t.split("+"):
        if not part.startswith("Z/") or not part[2:].isdigit():
            raise ValueError(f"bad group literal {text!r}")
        orders.append(int(part[2:]))
    return make_group(orders)


def image_order(f: GroupHom):
    return image(f)[0].order


# ------------------------------------------------------- constructions

def kernel(f: GroupHom):
    """(K, incl) with incl: K -> f.src mono and f∘incl = 0."""
    n, m = f.src.rank, f.tgt.rank
    big = f.matrix.hstack(IntMatrix.diag(f.tgt.orders)) if m else IntMatrix.zeros(0, n)
    gens = [v[:n] for v in SmithData(big).kernel_basis()]
    sq = Subquotient(f.src.orders, IntMatrix.from_columns(gens, n))
    return sq.group, GroupHom(sq.group, f.src, sq.reps, check=False)


def cokernel(f: GroupHom):
    """(Q, proj) with proj: f.tgt -> Q epi and proj∘f = 0."""
    m = f.tgt.rank
    sq = Subquotient(f.tgt.orders, IntMatrix.identity(m), f.matrix)
    Q = sq.group
    proj = IntMatrix.from_columns([sq.coords_of_gen_combo(e) for e in IntMatrix.identity(m).columns()], Q.rank)
    return Q, GroupHom(f.tgt, Q, proj, check=False)


def image(f: GroupHom):
    """(I, incl, corestrict) with incl∘corestrict = f."""
    n = f.src.rank
    sq = Subquotient(f.tgt.orders, f.matrix)
    I = sq.group
    core = IntMatrix.from_columns([sq.coords_of_gen_combo(e) for e in IntMatrix.identity(n).columns()], I.rank)
    return I, GroupHom(I, f.tgt, sq.reps, check=False), GroupHom(f.src, I, core, check=False)


@dataclass(frozen=True)
class DirectSum:
    group: FinAbGroup
    inj0: GroupHom
    inj1: GroupHom
    proj0: GroupHom
    proj1: GroupHom

    def __iter__(self):
        return iter((self.group, self.inj0, self.inj1, self.proj0, self.proj1))

    def pair(self, f0: GroupHom, f1: GroupHom) -> GroupHom:
        """The map X -> A+B with components f0, f1."""
        return compose(self.inj0, f0) + compose(self.inj1, f1)

    def copair(self, g0: GroupHom, g1: GroupHom) -> GroupHom:
        """The map A+B -> Y restricting to g0 and g1."""
        return compose(g0, self.proj0) + compose(g1, self.proj1)


def direct_sum(A: FinAbGroup, B: FinAbGroup) -> DirectSum:
    """Biproduct A + B with injections and projections."""
    S, to_S, from_S = canonical_presentation(A.orders + B.orders)
    na = A.rank
    cols = list(range(to_S.cols))
    inj0 = GroupHom(A, S, to_S.block(list(range(S.rank)), cols[:na]), check=False)
    inj1 = GroupHom(B, S, to_S.block(list(range(S.rank)), cols[na:]), check=False)
    proj0 = GroupHom(S, A, from_S.block(list(range(na)), list(range(S.rank))), check=False)
    proj1 = GroupHom(S, B, from_S.block(list(range(na, na + B.rank)), list(range(S.rank))), check=False)
    return DirectSum(S, inj0, inj1, proj0, proj1)


def hom_sum(f: GroupHom, g: GroupHom):
    """f + g : A + C -> B + D, returned with both direct-sum structures."""
    s = direct_sum(f.src, g.src)
    t = direct_sum(f.tgt, g.tgt)
    h = compose(t.inj0, compose(f, s.proj0)) + compose(t.inj1, compose(g, s.proj1))
    return h, s, t


def pushout(f: GroupHom, g: GroupHom):
    """(P, inB, inC) for B <-f- A -g-> C, as the cokernel of (f, -g)."""
    if f.src != g.src:
        raise ValueError("pushout needs a shared source")
    s = direct_sum(f.tgt, g.tgt)
    P, q = cokernel(s.pair(f, -g))
    return P, compose(q, s.inj0), compose(q, s.inj1)


def pullback(f: GroupHom, g: GroupHom):
    """(P, prB, prC) for B -f-> D <-g- C, as the kernel of (f, -g)."""
    if f.tgt != g.tgt:
        raise ValueError("pullback needs a shared target")
    s = direct_sum(f.src, g.src)
    P, i = kernel(s.copair(f, -g))
    return P, compose(s.proj0, i), compose(s.proj1, i)


def connecting(f: GroupHom, g: GroupHom) -> GroupHom:
    """Ker(g) -> Cok(f) for A -f-> B -g-> C: the projection after the inclusion."""
    if f.tgt != g.src:
        raise ValueError("connecting map needs f.tgt == g.src")
    _, i = kernel(g)
    _, p = cokernel(f)
    return compose(p, i)


def is_exact_square(f: GroupHom, g: GroupHom, f2: GroupHom, g2: GroupHom) -> bool:
    """Exactness of the commuting square with f: A->B, g: B->D, f2: A->C, g2: C->D.

    The square is exact when A -> B+C -> D, (f, -f2) followed by g + g2, is
    exact in the middle.  Raises ValueError if the square does not commute.
    """
    if f.src != f2.src or g.tgt != g2.tgt or f.tgt != g.src or f2.tgt != g2.src:
        raise ValueError("maps do not form a square")
    if compose(g, f) != compose(g2, f2):
        raise ValueError("square does not commute")
    s = direct_sum(f.tgt, f2.tgt)
    u = s.pair(f, -f2)
    v = s.copair(g, g2)
    return image_order(u) == kernel(v)[0].order


def subgroup_contains(generators: GroupHom, x) -> bool:
    """Is x in the image of ``generators``?"""
    return solve_congruence(generators.matrix, list(x), list(generators.tgt.orders)) is not None


def same_subgroup(a: GroupHom, b: GroupHom) -> bool:
    """Do two homs into the same group have the same image?"""
    if a.tgt != b.tgt:
        raise ValueError("subgroups of different groups")
    return (all(subgroup_contains(b, c) for c in a.matrix.columns())
            and all(subgroup_contains(a, c) for c in b.matrix.columns()))


def all_homs(A: FinAbGroup, B: FinAbGroup):
    """Enumerate Hom(A, B) (each generator goes to an element of matching order)."""
    choices = []
    for d in A.orders:
        choices.append([y for y in B.elements() if all(c * d % e == 0 for c, e in zip(y, B.orders))])
    for imgs in itertools.product(*choices):
        yield GroupHom(A, B, IntMatrix.from_columns(imgs, B.rank), check=False)


def random_hom(rng, A: FinAbGroup, B: FinAbGroup) -> GroupHom:
    """A uniformly random homomorphism A -> B."""
    cols = []
    for d in A.orders:
        col = []
        for e in B.orders:
            step = e // _gcd(d, e)
            col.append(step * rng.randrange(e // step))
        cols.append(col)
    return GroupHom(A, B, IntMatrix.from_columns(cols, B.rank), check=False)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
