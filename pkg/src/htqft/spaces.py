"""Chain-level models of pointed finite CW spaces and their Brown functors.

A pointed space is modeled by its reduced cellular chain complex (basepoint
cell dropped) and a pointed map by a chain map.  Homotopy equivalence is
replaced by quasi-isomorphism, which is all that ordinary (co)homology, and
hence every Brown functor built here, can see.

Conventions: the n-th boundary has shape (rank_{n-1}, rank_n); the mapping
cone is C_n = L_n + K_{n-1} with d(l, k) = (dl + f k, -dk); suspension
shifts degrees up by one and negates the differential.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import finab, hopf
from .exact import Field, IntMatrix, SmithData
from .finab import FinAbGroup, GroupHom, Subquotient
from .hopf import FUNCTION, GROUP, HopfMorphism, HopfObject, NotFiniteVolume

HOMOLOGY = "homology"
COHOMOLOGY = "cohomology"


def _mat(data, rows, cols):
    if isinstance(data, IntMatrix):
        m = data
    elif data is None or (rows == 0 or cols == 0):
        m = IntMatrix.zeros(rows, cols)
    else:
        m = IntMatrix(data)
    if m.shape != (rows, cols):
        raise ValueError(f"expected a {rows}x{cols} matrix, got {m.shape}")
    return m


def _blocks(row_sizes, col_sizes, parts):
    """Assemble an IntMatrix from blocks {(bi, bj): IntMatrix}."""
    R, C = sum(row_sizes), sum(col_sizes)
    out = [[0] * C for _ in range(R)]
    ro = [sum(row_sizes[:i]) for i in range(len(row_sizes))]
    co = [sum(col_sizes[:j]) for j in range(len(col_sizes))]
    for (bi, bj), M in parts.items():
        if M.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError("block shape mismatch")
        for i in range(M.rows):
            for j in range(M.cols):
                out[ro[bi] + i][co[bj] + j] = M[i, j]
    return IntMatrix(out, R, C)


class ChainComplex:
    """Finite chain complex of free abelian groups in degrees >= 0."""

    __slots__ = ("ranks", "boundaries", "_hash")

    def __init__(self, ranks, boundaries=None, check=True):
        if isinstance(ranks, dict):
            top = max((int(n) for n, r in ranks.items() if r), default=-1)
            ranks = [int(ranks.get(n, ranks.get(str(n), 0))) for n in range(top + 1)]
        ranks = list(ranks)
        while ranks and ranks[-1] == 0:
            ranks.pop()
        if any(r < 0 for r in ranks):
            raise ValueError("ranks must be nonnegative")
        boundaries = boundaries or {}
        if not isinstance(boundaries, dict):
            boundaries = {n + 1: b for n, b in enumerate(boundaries)}
        bd = []
        for n in range(1, len(ranks)):
            data = boundaries.get(n, boundaries.get(str(n)))
            bd.append(_mat(data, ranks[n - 1], ranks[n]))
        self.ranks = tuple(ranks)
        self.boundaries = tuple(bd)
        self._hash = None
        if check:
            for n in range(2, len(ranks)):
                if not (self.d(n - 1) @ self.d(n)).is_zero():
                    raise ValueError(f"d_{n-1} d_{n} != 0")

    @property
    def top(self):
        """Top degree with nonzero rank (-1 for the zero complex)."""
        return len(self.ranks) - 1

    dimension = top

    def rank(self, n):
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def d(self, n):
        """Boundary d_n : C_n -> C_{n-1}."""
        if 1 <= n < len(self.ranks):
            return self.boundaries[n - 1]
        return IntMatrix.zeros(self.rank(n - 1), self.rank(n))

    def is_zero(self):
        return not self.ranks

    def __eq__(self, other):
        return isinstance(other, ChainComplex) and self.ranks == other.ranks and self.boundaries == other.boundaries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ranks, self.boundaries))
        return self._hash

    def to_json(self):
        return {"ranks": {str(n): r for n, r in enumerate(self.ranks) if r},
                "boundaries": {str(n): self.d(n).tolist() for n in range(1, len(self.ranks))
                               if not self.d(n).is_zero()}}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj.get("ranks", {}), obj.get("boundaries", {}))

    def __repr__(self):
        return f"ChainComplex(ranks={list(self.ranks)})"


class ChainMap:
    """Degreewise integer matrices commuting with the boundaries."""

    __slots__ = ("src", "tgt", "components")

    def __init__(self, src: ChainComplex, tgt: ChainComplex, components=None, check=True):
        components = components or {}
        if not isinstance(components, dict):
            components = {n: c for n, c in enumerate(components)}
        top = max(src.top, tgt.top)
        comps = []
        for n in range(top + 1):
            data = components.get(n, components.get(str(n)))
            comps.append(_mat(data, tgt.rank(n), src.rank(n)))
        self.src, self.tgt, self.components = src, tgt, tuple(comps)
        if check:
            for n in range(1, top + 1):
                if tgt.d(n) @ self.comp(n) != self.comp(n - 1) @ src.d(n):
                    raise ValueError(f"not a chain map in degree {n}")

    def comp(self, n):
        if 0 <= n < len(self.components):
            return self.components[n]
        return IntMatrix.zeros(self.tgt.rank(n), self.src.rank(n))

    def __eq__(self, other):
        return (isinstance(other, ChainMap) and self.src == other.src and self.tgt == other.tgt
                and self.components == other.components)

    def __hash__(self):
        return hash((self.src, self.tgt, self.components))

    def __neg__(self):
        return ChainMap(self.src, self.tgt, [-c for c in self.components], check=False)

    def __add__(self, other):
        if self.src != other.src or self.tgt != other.tgt:
            raise ValueError("chain maps have different endpoints")
        return ChainMap(self.src, self.tgt, [a + b for a, b in zip(self.components, other.components)], check=False)

    def to_json(self):
        return {"components": {str(n): c.tolist() for n, c in enumerate(self.components) if not c.is_zero()}}

    @classmethod
    def from_json(cls, src, tgt, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(src, tgt, obj.get("components", {}))

    def __repr__(self):
        return f"ChainMap({self.src!r} -> {self.tgt!r})"


def identity_map(K):
    return ChainMap(K, K, [IntMatrix.identity(r) for r in K.ranks], check=False)


def zero_map(K, L):
    return ChainMap(K, L, {}, check=False)


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    """g after f."""
    if f.tgt != g.src:
        raise ValueError("chain maps are not composable")
    top = max(f.src.top, g.tgt.top, f.tgt.top)
    return ChainMap(f.src, g.tgt, [g.comp(n) @ f.comp(n) for n in range(top + 1)], check=False)


# ---------------------------------------------------------------- builtins

def point():
    """The one-point space: zero reduced complex."""
    return ChainComplex([])


def sphere(n: int):
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    return ChainComplex([0] * n + [1])


def circle():
    return sphere(1)


def torus():
    """Reduced model: meridian a and longitude b in degree 1, one 2-cell."""
    return ChainComplex([0, 2, 1])


def klein():
    """Reduced model with d_2 = (2, 0)^T, from the word a b a b^{-1}."""
    return ChainComplex([0, 2, 1], {2: [[2], [0]]})


def rp2():
    return ChainComplex([0, 1, 1], {2: [[2]]})


def moore(p: int, n: int):
    """M(Z/p, n): one n-cell and one (n+1)-cell attached by degree p."""
    if p < 1 or n < 1:
        raise ValueError("moore space needs p >= 1 and n >= 1")
    return ChainComplex([0] * n + [1, 1], {n + 1: [[p]]})


def circle_plus():
    """The circle with a disjoint basepoint."""
    return ChainComplex([1, 1])


def solid_torus():
    """Reduced model of the solid torus (homotopy equivalent to the circle)."""
    return ChainComplex([0, 1])


def plus(K: ChainComplex) -> ChainComplex:
    """Model of X⁺ for a connected pointed X with reduced model K (adds the basepoint back)."""
    return wedge(K, sphere(0)).complex


CLOSED_MANIFOLDS = {
    "circle": circle, "s1": circle, "torus": torus, "klein": klein, "rp2": rp2,
    "s2": lambda: sphere(2), "s3": lambda: sphere(3), "sphere2": lambda: sphere(2),
}


def manifold_plus(source) -> ChainComplex:
    """Reduced model of M⁺.

    ``source`` is a closed-manifold builtin name (``"torus"``), an unreduced
    ChainComplex, or a path to a JSON file holding an unreduced complex.
    """
    if isinstance(source, ChainComplex):
        return source
    s = str(source).lower()
    if s in CLOSED_MANIFOLDS:
        return plus(CLOSED_MANIFOLDS[s]())
    m = re.fullmatch(r"sphere\(?(\d+)\)?|s(\d+)", s)
    if m:
        return plus(sphere(int(m.group(1) or m.group(2))))
    return ChainComplex.from_json(Path(source).read_text())


_BUILTINS = {
    "point": point, "pt": point, "sphere": sphere, "torus": torus, "klein": klein,
    "rp2": rp2, "moore": moore, "circle_plus": circle_plus, "circle": circle,
    "solid_torus": solid_torus, "manifold_plus": manifold_plus, "s0": lambda: sphere(0),
}


def builtin(name: str, *params) -> ChainComplex:
    """Look up a builtin model; ``name`` may also carry parameters, as in ``"sphere(2)"``."""
    m = re.fullmatch(r"\s*([A-Za-z_0-9]+?)\s*(?:[(:]\s*([^)]*?)\s*\)?)?\s*", name)
    if not m:
        raise ValueError(f"bad space literal {name!r}")
    key, args = m.group(1).lower(), m.group(2)
    if key not in _BUILTINS:
        sm = re.fullmatch(r"(?:s|sphere)(\d+)", key)
        if sm:
            return sphere(int(sm.group(1)))
        raise ValueError(f"unknown builtin space {name!r}")
    if args:
        params = tuple(a.strip() for a in args.split(",")) + params
    if key != "manifold_plus":
        try:
            params = tuple(int(p) for p in params)
        except ValueError:
            raise ValueError(f"invalid parameters for {key}: {params}") from None
    try:
        return _BUILTINS[key](*params)
    except TypeError:
        raise ValueError(f"invalid parameters for {key}: {params}") from None


def load_space(source) -> ChainComplex:
    """Builtin name, JSON file path, or JSON object."""
    if isinstance(source, ChainComplex):
        return source
    if isinstance(source, dict):
        return ChainComplex.from_json(source)
    p = Path(str(source))
    if p.suffix == ".json" or p.exists():
        return ChainComplex.from_json(p.read_text())
    return builtin(str(source))


# ---------------------------------------------------------- constructions

@dataclass(frozen=True)
class Wedge:
    complex: ChainComplex
    inj0: ChainMap
    inj1: ChainMap
    proj0: ChainMap
    proj1: ChainMap


def wedge(K: ChainComplex, L: ChainComplex) -> Wedge:
    top = max(K.top, L.top)
    ranks = [K.rank(n) + L.rank(n) for n in range(top + 1)]
    bd = {n: _blocks([K.rank(n - 1), L.rank(n - 1)], [K.rank(n), L.rank(n)],
                     {(0, 0): K.d(n), (1, 1): L.d(n)}) for n in range(1, top + 1)}
    W = ChainComplex(ranks, bd, check=False)

    def comps(which, into):
        out = []
        for n in range(top + 1):
            a, b = K.rank(n), L.rank(n)
            I = IntMatrix.identity(a if which == 0 else b)
            if into:
                parts = {(which, 0): I}
                out.append(_blocks([a, b], [I.cols], parts))
            else:
                out.append(_blocks([I.rows], [a, b], {(0, which): I}))
        return out
    return Wedge(W, ChainMap(K, W, comps(0, True), check=False), ChainMap(L, W, comps(1, True), check=False),
                 ChainMap(W, K, comps(0, False), check=False), ChainMap(W, L, comps(1, False), check=False))


def copair_maps(f: ChainMap, g: ChainMap, w: Wedge | None = None) -> ChainMap:
    """The map K ∨ K' -> L restricting to f and g."""
    if f.tgt != g.tgt:
        raise ValueError("copair needs a shared target")
    w = w or wedge(f.src, g.src)
    return compose_maps(f, w.proj0) + compose_maps(g, w.proj1)


def wedge_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f ∨ g : K ∨ K' -> L ∨ L'."""
    s, t = wedge(f.src, g.src), wedge(f.tgt, g.tgt)
    return compose_maps(compose_maps(t.inj0, f), s.proj0) + compose_maps(compose_maps(t.inj1, g), s.proj1)


def fold_map(K: ChainComplex) -> ChainMap:
    """nabla : K ∨ K -> K."""
    i = identity_map(K)
    return copair_maps(i, i)


def _smash_index(K, L):
    """For each degree n, the offset of block (i, n-i) in (K ⊗ L)_n."""
    top = K.top + L.top if (K.ranks and L.ranks) else -1
    offsets, ranks = [], []
    for n in range(top + 1):
        off, pos = {}, 0
        for i in range(n + 1):
            off[i] = pos
            pos += K.rank(i) * L.rank(n - i)
        offsets.append(off)
        ranks.append(pos)
    return offsets, ranks


def smash(K: ChainComplex, L: ChainComplex) -> ChainComplex:
    """Tensor product of reduced complexes with the Koszul sign."""
    offsets, ranks = _smash_index(K, L)
    bd = {}
    for n in range(1, len(ranks)):
        M = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        for i in range(n + 1):
            j = n - i
            rl = L.rank(j)
            for a in range(K.rank(i)):
                for b in range(rl):
                    col = offsets[n][i] + a * rl + b
                    if i >= 1:
                        dK = K.d(i)
                        for a2 in range(K.rank(i - 1)):
                            c = dK[a2, a]
                            if c:
                                M[offsets[n - 1][i - 1] + a2 * rl + b][col] += c
                    if j >= 1:
                        dL = L.d(j)
                        rl2 = L.rank(j - 1)
                        sign = -1 if i % 2 else 1
                        for b2 in range(rl2):
                            c = dL[b2, b]
                            if c:
                                M[offsets[n - 1][i] + a * rl2 + b2][col] += sign * c
        bd[n] = IntMatrix(M, ranks[n - 1], ranks[n])
    return ChainComplex(ranks, bd)


def smash_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f ∧ g."""
    src, tgt = smash(f.src, g.src), smash(f.tgt, g.tgt)
    so, sr = _smash_index(f.src, g.src)
    to, tr = _smash_index(f.tgt, g.tgt)
    comps = {}
    for n in range(max(len(sr), len(tr))):
        M = [[0] * (sr[n] if n < len(sr) else 0) for _ in range(tr[n] if n < len(tr) else 0)]
        if n < len(sr) and n < len(tr):
            for i in range(n + 1):
                j = n - i
                fi, gj = f.comp(i), g.comp(j)
                ls, lt = g.src.rank(j), g.tgt.rank(j)
                for a in range(f.src.rank(i)):
                    for b in range(ls):
                        col = so[n][i] + a * ls + b
                        for a2 in range(f.tgt.rank(i)):
                            x = fi[a2, a]
                            if not x:
                                continue
                            for b2 in range(lt):
                                y = gj[b2, b]
                                if y:
                                    M[to[n][i] + a2 * lt + b2][col] += x * y
        comps[n] = IntMatrix(M, tr[n] if n < len(tr) else 0, sr[n] if n < len(sr) else 0)
    return ChainMap(src, tgt, comps, check=False)


def suspend(K: ChainComplex):
    """(ΣK, τ): degree shift with negated differential, and the flip τ = -1."""
    S = ChainComplex([0] + list(K.ranks) if K.ranks else [],
                     {n + 1: -K.d(n) for n in range(1, len(K.ranks))}, check=False)
    tau = ChainMap(S, S, [IntMatrix.identity(r).scaled(-1) for r in S.ranks], check=False)
    return S, tau


def suspend_map(f: ChainMap) -> ChainMap:
    S, _ = suspend(f.src)
    T, _ = suspend(f.tgt)
    top = max(S.top, T.top)
    return ChainMap(S, T, [f.comp(n - 1) for n in range(top + 1)], check=False)


def mapping_cone(f: ChainMap):
    """(C(f), incl : L -> C, collapse : C -> ΣK)."""
    K, L = f.src, f.tgt
    top = max(L.top, K.top + 1)
    ranks = [L.rank(n) + K.rank(n - 1) for n in range(top + 1)]
    bd = {}
    for n in range(1, top + 1):
        bd[n] = _blocks([L.rank(n - 1), K.rank(n - 2)], [L.rank(n), K.rank(n - 1)],
                        {(0, 0): L.d(n), (0, 1): f.comp(n - 1), (1, 1): -K.d(n - 1)})
    C = ChainComplex(ranks, bd, check=False)
    SK, _ = suspend(K)
    incl = ChainMap(L, C, [_blocks([L.rank(n), K.rank(n - 1)], [L.rank(n)], {(0, 0): IntMatrix.identity(L.rank(n))})
                           for n in range(top + 1)], check=False)
    coll = ChainMap(C, SK, [_blocks([K.rank(n - 1)], [L.rank(n), K.rank(n - 1)],
                                    {(0, 1): IntMatrix.identity(K.rank(n - 1))})
                            for n in range(top + 1)], check=False)
    return C, incl, coll


def homotopy_pushout(f: ChainMap, g: ChainMap):
    """(M, j0, j1) for L0 <-f- K -g-> L1, via the double mapping cylinder."""
    if f.src != g.src:
        raise ValueError("homotopy pushout needs a shared source")
    K, L0, L1 = f.src, f.tgt, g.tgt
    top = max(L0.top, L1.top, K.top + 1)
    sizes = lambda n: [L0.rank(n), L1.rank(n), K.rank(n - 1)]
    ranks = [sum(sizes(n)) for n in range(top + 1)]
    bd = {n: _blocks(sizes(n - 1), sizes(n), {(0, 0): L0.d(n), (1, 1): L1.d(n), (0, 2): f.comp(n - 1),
                                              (1, 2): -g.comp(n - 1), (2, 2): -K.d(n - 1)})
          for n in range(1, top + 1)}
    M = ChainComplex(ranks, bd, check=False)
    j0 = ChainMap(L0, M, [_blocks(sizes(n), [L0.rank(n)], {(0, 0): IntMatrix.identity(L0.rank(n))})
                          for n in range(top + 1)], check=False)
    j1 = ChainMap(L1, M, [_blocks(sizes(n), [L1.rank(n)], {(1, 0): IntMatrix.identity(L1.rank(n))})
                          for n in range(top + 1)], check=False)
    return M, j0, j1


# ------------------------------------------------------------ (co)homology

def _coefficient_tensor(D: IntMatrix, s: int) -> IntMatrix:
    """D ⊗ id_{Z^s}, indexing (cell, coefficient) as cell*s + t."""
    M = [[0] * (D.cols * s) for _ in range(D.rows * s)]
    for i in range(D.rows):
        for j in range(D.cols):
            c = D[i, j]
            if c:
                for t in range(s):
                    M[i * s + t][j * s + t] = c
    return IntMatrix(M, D.rows * s, D.cols * s)


class HomologyData:
    """H_q or H^q with coefficients: canonical group, representatives, coordinates."""

    def __init__(self, K: ChainComplex, G: FinAbGroup, q: int, variance: str):
        self.K, self.G, self.q, self.variance = K, G, q, variance
        s = G.rank
        self.width = K.rank(q) * s if q >= 0 else 0
        if self.width == 0:
            self.group = finab.trivial_group()
            self._sq = None
            self.reps = IntMatrix.zeros(0, 0)
            return
        if variance == HOMOLOGY:
            out, inc = K.d(q), K.d(q + 1)
        else:
            out, inc = K.d(q + 1).T(), K.d(q).T()
        w = list(G.orders) * K.rank(q)
        Dout = _coefficient_tensor(out, s)
        w_out = list(G.orders) * out.rows
        if Dout.rows:
            big = Dout.hstack(IntMatrix.diag(w_out))
            gens = [v[:self.width] for v in SmithData(big).kernel_basis()]
        else:
            gens = IntMatrix.identity(self.width).columns()
        B = _coefficient_tensor(inc, s)
        self._sq = Subquotient(w, IntMatrix.from_columns(gens, self.width), B)
        self.group = self._sq.group
        self.reps = self._sq.reps

    def coords(self, chain):
        if self._sq is None:
            return ()
        return self._sq.coords(chain)

    def representatives(self):
        """Each generator as a list of per-cell coefficient tuples."""
        s = self.G.rank
        out = []
        for col in self.reps.columns():
            out.append([tuple(col[i * s:(i + 1) * s]) for i in range(self.K.rank(self.q))])
        return out


@lru_cache(maxsize=8192)
def homology_data(K: ChainComplex, G: FinAbGroup, q: int, variance: str = HOMOLOGY) -> HomologyData:
    if variance not in (HOMOLOGY, COHOMOLOGY):
        raise ValueError("variance must be 'homology' or 'cohomology'")
    return HomologyData(K, G, q, variance)


def homology(K: ChainComplex, G: FinAbGroup, q: int):
    """(H_q(K; G), cycle representatives)."""
    h = homology_data(K, G, q, HOMOLOGY)
    return h.group, h.representatives()


def cohomology(K: ChainComplex, G: FinAbGroup, q: int):
    """(H^q(K; G), cocycle representatives)."""
    h = homology_data(K, G, q, COHOMOLOGY)
    return h.group, h.representatives()


@lru_cache(maxsize=8192)
def induced(f: ChainMap, G: FinAbGroup, q: int, variance: str = HOMOLOGY) -> GroupHom:
    """f_* : H_q(K) -> H_q(L), or f^* : H^q(L) -> H^q(K)."""
    s = G.rank
    if variance == HOMOLOGY:
        hs, ht = homology_data(f.src, G, q, HOMOLOGY), homology_data(f.tgt, G, q, HOMOLOGY)
        F = _coefficient_tensor(f.comp(q), s) if q >= 0 else None
    else:
        hs, ht = homology_data(f.tgt, G, q, COHOMOLOGY), homology_data(f.src, G, q, COHOMOLOGY)
        F = _coefficient_tensor(f.comp(q).T(), s) if q >= 0 else None
    cols = []
    for z in hs.reps.columns():
        cols.append(ht.coords(F @ z))
    return GroupHom(hs.group, ht.group, IntMatrix.from_columns(cols, ht.group.rank), check=False)


def suspension_iso(K: ChainComplex, G: FinAbGroup, q: int, variance: str = HOMOLOGY) -> GroupHom:
    """The identity-on-chains isomorphism H_q(K) -> H_{q+1}(ΣK) (same for cohomology)."""
    S, _ = suspend(K)
    a = homology_data(K, G, q, variance)
    b = homology_data(S, G, q + 1, variance)
    cols = [b.coords(z) for z in a.reps.columns()]
    return GroupHom(a.group, b.group, IntMatrix.from_columns(cols, b.group.rank), check=False)


def desuspension_iso(K: ChainComplex, G: FinAbGroup, q: int, variance: str = HOMOLOGY) -> GroupHom:
    """Inverse of :func:`suspension_iso`: H_q(ΣK) -> H_{q-1}(K)."""
    S, _ = suspend(K)
    a = homology_data(S, G, q, variance)
    b = homology_data(K, G, q - 1, variance)
    cols = [b.coords(z) for z in a.reps.columns()]
    return GroupHom(a.group, b.group, IntMatrix.from_columns(cols, b.group.rank), check=False)


def integral_homology(K: ChainComplex, n: int):
    """(free rank, torsion orders) of H_n(K; Z)."""
    if n < 0 or K.rank(n) == 0:
        return 0, []
    out = SmithData(K.d(n)).rank
    inc = SmithData(K.d(n + 1))
    torsion = [d for d in inc.diag if d != 1]
    return K.rank(n) - out - inc.rank, torsion


def is_acyclic(K: ChainComplex) -> bool:
    return all(integral_homology(K, n) == (0, []) for n in range(K.top + 1))


def is_quasi_iso(f: ChainMap) -> bool:
    return is_acyclic(mapping_cone(f)[0])


# ------------------------------------------------------------ Brown functors

@dataclass(frozen=True)
class BrownTheory:
    """Reduced ordinary (co)homology in one degree, valued in group or function algebras.

    The group flavor is K ↦ k[H_q(K; G)], the function flavor K ↦ k^{H^q(K; G)}.
    """

    flavor: str
    coeff: FinAbGroup
    degree: int
    field: Field
    dim_cap: int | None = None

    def __post_init__(self):
        if self.flavor not in (GROUP, FUNCTION):
            raise ValueError("flavor must be 'group' or 'function'")
        if self.field.divides_char(self.coeff.order):
            raise NotFiniteVolume(f"char {self.field.char} divides |G| = {self.coeff.order}")

    @property
    def variance(self):
        return HOMOLOGY if self.flavor == GROUP else COHOMOLOGY

    # trivial metadata for ordinary theories
    gamma = "Z"
    extension_bound = float("inf")

    def with_degree(self, q):
        return BrownTheory(self.flavor, self.coeff, q, self.field, self.dim_cap)

    def _check_cap(self, K):
        if self.dim_cap is not None and K.top > self.dim_cap:
            raise ValueError(f"complex of dimension {K.top} exceeds the cap {self.dim_cap}")

    def group(self, K: ChainComplex) -> FinAbGroup:
        self._check_cap(K)
        return homology_data(K, self.coeff, self.degree, self.variance).group

    def value(self, K: ChainComplex) -> HopfObject:
        return HopfObject(self.group(K), self.flavor)

    def induced(self, f: ChainMap) -> HopfMorphism:
        self._check_cap(f.src)
        self._check_cap(f.tgt)
        rho = induced(f, self.coeff, self.degree, self.variance)
        return HopfMorphism(self.value(f.src), self.value(f.tgt), rho)

    def describe(self):
        return f"{self.flavor} flavor, G = {self.coeff}, q = {self.degree}, k = {self.field}"


@dataclass(frozen=True)
class PrecomposedTheory:
    """E ∘ W for a chain-level functor W (smash with a fixed space, or suspension)."""

    base: object
    kind: str
    other: ChainComplex | None = None

    @property
    def field(self):
        return self.base.field

    @property
    def flavor(self):
        return self.base.flavor

    def transform(self, K):
        if self.kind == "smash":
            return smash(K, self.other)
        return suspend(K)[0]

    def transform_map(self, f):
        if self.kind == "smash":
            return smash_maps(f, identity_map(self.other))
        return suspend_map(f)

    def value(self, K):
        return self.base.value(self.transform(K))

    def induced(self, f):
        return self.base.induced(self.transform_map(f))

    def describe(self):
        return f"{self.base.describe()} precomposed with {self.kind}"


def smashed(T, X: ChainComplex) -> PrecomposedTheory:
    return PrecomposedTheory(T, "smash", X)


def suspended(T) -> PrecomposedTheory:
    return PrecomposedTheory(T, "suspend")


def brown_eval(T, K: ChainComplex) -> HopfObject:
    return T.value(K)


def brown_induced(T, f: ChainMap) -> HopfMorphism:
    return T.induced(f)


# ------------------------------------------------------------ cospans of spaces

@dataclass(frozen=True)
class SpaceCospan:
    K0: ChainComplex
    L: ChainComplex
    K1: ChainComplex
    f0: ChainMap
    f1: ChainMap

    def __post_init__(self):
        if self.f0.src != self.K0 or self.f1.src != self.K1 or self.f0.tgt != self.L or self.f1.tgt != self.L:
            raise ValueError("cospan legs do not match their endpoints")

    @classmethod
    def from_legs(cls, f0, f1):
        return cls(f0.src, f0.tgt, f1.src, f0, f1)

    def check_cap(self, d):
        if d is not None and (self.K0.top > d - 1 or self.K1.top > d - 1 or self.L.top > d):
            raise ValueError("cospan exceeds the dimension cap")


@dataclass(frozen=True)
class SpaceSpan:
    K0: ChainComplex
    C: ChainComplex
    K1: ChainComplex
    p0: ChainMap
    p1: ChainMap


def identity_cospan(K):
    i = identity_map(K)
    return SpaceCospan(K, K, K, i, i)


def compose_space_cospans(outer: SpaceCospan, inner: SpaceCospan) -> SpaceCospan:
    """outer ∘ inner by the homotopy pushout over the shared foot."""
    if inner.K1 != outer.K0:
        raise ValueError("cospans are not composable")
    M, j0, j1 = homotopy_pushout(inner.f1, outer.f0)
    return SpaceCospan.from_legs(compose_maps(j0, inner.f0), compose_maps(j1, outer.f1))


def tensor_space_cospans(a: SpaceCospan, b: SpaceCospan) -> SpaceCospan:
    return SpaceCospan.from_legs(wedge_maps(a.f0, b.f0), wedge_maps(a.f1, b.f1))


def dagger_space(c: SpaceCospan) -> SpaceCospan:
    return SpaceCospan(c.K1, c.L, c.K0, c.f1, c.f0)


def t_sigma(c: SpaceCospan) -> SpaceSpan:
    """ΣK0 <-τ p0- C(f0 ∨ f1) -p1-> ΣK1."""
    w = wedge(c.K0, c.K1)
    C, _, coll = mapping_cone(copair_maps(c.f0, c.f1, w))
    p0 = compose_maps(suspend_map(w.proj0), coll)
    p1 = compose_maps(suspend_map(w.proj1), coll)
    _, tau = suspend(c.K0)
    return SpaceSpan(p0.tgt, C, p1.tgt, compose_maps(tau, p0), p1)


# --------------------------------------------------------- exact squares

@dataclass(frozen=True)
class Triad:
    """A square A -> B, A -> C, B -> D, C -> D commuting up to a chain homotopy.

    ``homotopy`` holds h_n : A_{n-1} -> D_n with dh + hd = jB iB - jC iC;
    it defaults to zero (strictly commuting squares, e.g. subcomplex triads).
    """

    iB: ChainMap
    iC: ChainMap
    jB: ChainMap
    jC: ChainMap
    homotopy: tuple | None = None

    def h(self, n):
        A, D = self.iB.src, self.jB.tgt
        if self.homotopy is None or not (1 <= n <= len(self.homotopy)):
            return IntMatrix.zeros(D.rank(n), A.rank(n - 1))
        return _mat(self.homotopy[n - 1], D.rank(n), A.rank(n - 1))

    def check(self):
        A, D = self.iB.src, self.jB.tgt
        if self.iB.src != self.iC.src or self.jB.src != self.iB.tgt or self.jC.src != self.iC.tgt \
                or self.jB.tgt != self.jC.tgt:
            raise ValueError("triad maps do not fit into a square")
        lhs_maps = (compose_maps(self.jB, self.iB), compose_maps(self.jC, self.iC))
        for n in range(max(A.top, D.top) + 2):
            rhs = lhs_maps[0].comp(n) - lhs_maps[1].comp(n)
            lhs = D.d(n + 1) @ self.h(n + 1) + self.h(n) @ A.d(n)
            if lhs != rhs:
                raise ValueError("triad square does not commute up to the given homotopy")


def comparison_map(t: Triad) -> ChainMap:
    """The map from the homotopy pushout of (iB, iC) to D, (b, c, a) ↦ jB b + jC c + h a."""
    M, _, _ = homotopy_pushout(t.iB, t.iC)
    A, B, C, D = t.iB.src, t.iB.tgt, t.iC.tgt, t.jB.tgt
    top = max(M.top, D.top)
    comps = [_blocks([D.rank(n)], [B.rank(n), C.rank(n), A.rank(n - 1)],
                     {(0, 0): t.jB.comp(n), (0, 1): t.jC.comp(n), (0, 2): t.h(n)}) for n in range(top + 1)]
    return ChainMap(M, D, comps)


def exact_square_check(T: BrownTheory, t: Triad) -> bool:
    """Apply T to a triad and test exactness of the resulting square of groups.

    The triad must be a homotopy pushout (the comparison map is a
    quasi-isomorphism); genuine subcomplex triads always are.
    """
    t.check()
    if not is_quasi_iso(comparison_map(t)):
        raise ValueError("inputs do not form a triad (square is not a homotopy pushout)")
    G, q, var = T.coeff, T.degree, T.variance
    f, f2, g, g2 = (induced(m, G, q, var) for m in (t.iB, t.iC, t.jB, t.jC))
    if var == HOMOLOGY:
        return finab.is_exact_square(f, g, f2, g2)
    return finab.is_exact_square(g, f, g2, f2)


def trivial_triad() -> Triad:
    P = point()
    i = identity_map(P)
    return Triad(i, i, i, i)


def torus_triad() -> Triad:
    """The (unreduced) torus as two cylinders glued along two circles.

    Cells: vertices v1, v2; loops a1, a2; edges e, e' from v1 to v2;
    faces F1 (boundary a1 - a2) and F2 (boundary a2 - a1).
    """
    A = ChainComplex([2, 2])
    cyl = ChainComplex([2, 3, 1], {1: [[0, 0, -1], [0, 0, 1]], 2: [[1], [-1], [0]]})
    Bc = cyl
    Cc = ChainComplex([2, 3, 1], {1: [[0, 0, -1], [0, 0, 1]], 2: [[-1], [1], [0]]})
    D = ChainComplex([2, 4, 2], {1: [[0, 0, -1, -1], [0, 0, 1, 1]],
                                 2: [[1, -1], [-1, 1], [0, 0], [0, 0]]})
    inc_A = {0: IntMatrix.identity(2), 1: [[1, 0], [0, 1], [0, 0]]}
    iB = ChainMap(A, Bc, inc_A)
    iC = ChainMap(A, Cc, inc_A)
    jB = ChainMap(Bc, D, {0: IntMatrix.identity(2), 1: [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]], 2: [[1], [0]]})
    jC = ChainMap(Cc, D, {0: IntMatrix.identity(2), 1: [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]], 2: [[0], [1]]})
    return Triad(iB, iC, jB, jC)


def cone_triad(f: ChainMap) -> Triad:
    """K -f-> L, K -> ∗, L -> C(f), ∗ -> C(f), with the cone coordinate as homotopy."""
    K, L = f.src, f.tgt
    C, incl, _ = mapping_cone(f)
    P = point()
    h = tuple(_blocks([L.rank(n), K.rank(n - 1)], [K.rank(n - 1)], {(1, 0): IntMatrix.identity(K.rank(n - 1))})
              for n in range(1, C.top + 1))
    return Triad(f, zero_map(K, P), incl, zero_map(P, C), h)


# ------------------------------------------------------- random chain maps

@lru_cache(maxsize=1024)
def chain_map_basis(K: ChainComplex, L: ChainComplex):
    """Z-basis of the lattice of chain maps K -> L."""
    top = max(K.top, L.top)
    shapes = [(L.rank(n), K.rank(n)) for n in range(top + 1)]
    offs, pos = [], 0
    for r, c in shapes:
        offs.append(pos)
        pos += r * c
    if pos == 0:
        return []
    eqs = []
    for n in range(1, top + 1):
        # d^L_n f_n - f_{n-1} d^K_n = 0, entrywise
        dL, dK = L.d(n), K.d(n)
        for i in range(L.rank(n - 1)):
            for j in range(K.rank(n)):
                row = [0] * pos
                for a in range(L.rank(n)):
                    if dL[i, a]:
                        row[offs[n] + a * K.rank(n) + j] += dL[i, a]
                for b in range(K.rank(n - 1)):
                    if dK[b, j]:
                        row[offs[n - 1] + i * K.rank(n - 1) + b] -= dK[b, j]
                if any(row):
                    eqs.append(row)
    basis = SmithData(IntMatrix(eqs, len(eqs), pos)).kernel_basis() if eqs else IntMatrix.identity(pos).columns()
    out = []
    for v in basis:
        comps = []
        for n, (r, c) in enumerate(shapes):
            o = offs[n]
            comps.append(IntMatrix([[v[o + a * c + b] for b in range(c)] for a in range(r)], r, c))
        out.append(ChainMap(K, L, comps, check=False))
    return out


def random_chain_map(rng, K: ChainComplex, L: ChainComplex, spread=1) -> ChainMap:
    """A random integer combination of the chain-map lattice basis."""
    basis = chain_map_basis(K, L)
    f = zero_map(K, L)
    for b in basis:
        c = rng.randint(-spread, spread)
        if c:
            f = f + ChainMap(K, L, [m.scaled(c) for m in b.components], check=False)
    return f
