"""Seeded verification suites and their JSON reports.

Each suite returns a :class:`Report`.  A report aggregates checks by name:
a named check passes when every sample agrees, and keeps up to a few
failing samples as witnesses.  Reports never contain timings, so equal
(command, arguments, seed) produce byte-identical JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import cochains as co
from . import cospans as cs
from . import finab, hopf, pathint as pi, sampling as sa, spaces as sp
from .exact import Field, KMatrix, QQ
from .serialize import digest, render
from .hopf import FLAVORS, FUNCTION, GROUP, HopfObject

F5 = Field(5)
F2 = Field(2)
MAX_WITNESSES = 5

SUITES = ("oracle", "integrals", "inversion", "cocycle", "lifts", "dimred", "char2", "pairing")


@dataclass
class _Entry:
    samples: int = 0
    failures: list = field(default_factory=list)
    nfail: int = 0
    first: tuple = None


@dataclass
class Report:
    command: str
    seed: int | None
    params: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    _checks: dict = field(default_factory=dict)

    def check(self, name, lhs, rhs, witness=None):
        """Record one sample of check ``name`` (passes iff lhs == rhs)."""
        e = self._checks.setdefault(name, _Entry())
        e.samples += 1
        ok = lhs == rhs
        if e.first is None:
            e.first = (lhs, rhs)
        if not ok:
            e.nfail += 1
            if len(e.failures) < MAX_WITNESSES:
                e.failures.append({"lhs": render(lhs), "rhs": render(rhs), "witness": render(witness)})
        return ok

    def require(self, name, cond, witness=None):
        return self.check(name, bool(cond), True, witness)

    @property
    def ok(self):
        return all(e.nfail == 0 for e in self._checks.values())

    def checks(self):
        out = []
        for name in sorted(self._checks):
            e = self._checks[name]
            lhs, rhs = (e.failures[0]["lhs"], e.failures[0]["rhs"]) if e.failures else map(render, e.first)
            out.append({"name": name, "status": "pass" if e.nfail == 0 else "fail",
                        "lhs": lhs, "rhs": rhs, "samples": e.samples, "failures": e.nfail,
                        "witnesses": e.failures})
        return out

    def status_of(self, prefix):
        """True iff every check whose name starts with prefix passed (and at least one exists)."""
        hits = [e for n, e in self._checks.items() if n.startswith(prefix)]
        return bool(hits) and all(e.nfail == 0 for e in hits)

    def to_json(self):
        return {"command": self.command, "input_digest": digest({"command": self.command, **render(self.params)}),
                "seed": self.seed, "params": render(self.params), "results": render(self.results),
                "checks": self.checks(), "status": "pass" if self.ok else "fail"}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _theories(groups, qs, fields, flavors=FLAVORS):
    for G in groups:
        for q in qs:
            for k in fields:
                for fl in flavors:
                    yield sp.BrownTheory(fl, finab.make_group(G), q, k)


def _tag(T):
    return f"{T.flavor}/G={T.coeff}/q={T.degree}/k={T.field}"


# ------------------------------------------------------------ oracle

def _hom_family(groups, rng, cap):
    for A in groups:
        for B in groups:
            homs = list(finab.all_homs(A, B))
            if len(homs) > cap:
                homs = rng.sample(homs, cap)
            yield from homs


def _oracle_checks(rep, xi: hopf.HopfMorphism, xi2: hopf.HopfMorphism | None, k: Field, tag: str):
    TA, TB = hopf.materialize(xi.src, k), hopf.materialize(xi.tgt, k)
    M = hopf.materialize_hom(xi, k)
    mu = hopf.integral_matrix(xi, k)
    rep.require(f"oracle.hopf_map[{tag}]", hopf.is_hopf_map(TA, TB, M), xi)
    if xi.is_epi():
        rep.check(f"oracle.section_epi[{tag}]", M @ mu, KMatrix.identity(k, xi.tgt.dim), xi)
    if xi.is_mono():
        rep.check(f"oracle.retract_mono[{tag}]", mu @ M, KMatrix.identity(k, xi.src.dim), xi)
    rep.check(f"oracle.bracket[{tag}]", hopf.bracket(xi, k), hopf.oracle_bracket(xi, k), xi)
    K, ker = hopf.hopf_kernel(xi)
    C, cok = hopf.hopf_cokernel(xi)
    I, _, _ = hopf.hopf_image(xi)
    rep.check(f"oracle.kernel_kills[{tag}]", M @ hopf.materialize_hom(ker, k),
              hopf.materialize_hom(hopf.zero_morphism(K, xi.tgt), k), xi)
    rep.check(f"oracle.cokernel_kills[{tag}]", hopf.materialize_hom(cok, k) @ M,
              hopf.materialize_hom(hopf.zero_morphism(xi.src, C), k), xi)
    v = lambda A: hopf.inverse_volume(A, k)
    rep.check(f"oracle.volume_multiplicative[{tag}]", v(xi.src), v(K) * v(I), xi)
    rep.check(f"oracle.volume_multiplicative[{tag}]", v(xi.tgt), v(I) * v(C), xi)
    if xi2 is not None:
        lam = hopf.composition_defect(xi2, xi, k)
        lhs = mu @ hopf.integral_matrix(xi2, k)
        rhs = hopf.integral_matrix(hopf.hopf_compose(xi2, xi), k).scale(lam)
        rep.check(f"oracle.composition[{tag}]", lhs, rhs, (xi, xi2))


def suite_oracle(seed=0, n=200, max_order=8, fields=(QQ, F5), flavors=FLAVORS, family_cap=6):
    rep = Report("verify oracle", seed, {"n": n, "max_order": max_order, "fields": [str(k) for k in fields],
                                         "flavors": list(flavors), "family_cap": family_cap})
    rng = sa.make_rng(seed)
    groups = sa.groups_up_to(max_order)
    family = list(_hom_family(groups, rng, family_cap))
    randoms = []
    for _ in range(n):
        A, B = rng.choice(groups), rng.choice(groups)
        randoms.append(finab.random_hom(rng, A, B))
    pairs = []
    for rho in family + randoms:
        C = rng.choice(groups)
        pairs.append((rho, finab.random_hom(rng, rho.tgt, C)))
    for k in fields:
        for fl in flavors:
            tag = f"{fl}/{k}"
            for rho, rho2 in pairs:
                if any(k.divides_char(G.order) for G in (rho.src, rho.tgt, rho2.tgt)):
                    continue
                if fl == GROUP:
                    xi, xi2 = hopf.from_group_map(rho, GROUP), hopf.from_group_map(rho2, GROUP)
                else:
                    xi, xi2 = hopf.from_group_map(rho2, FUNCTION), hopf.from_group_map(rho, FUNCTION)
                _oracle_checks(rep, xi, xi2, k, tag)
    rep.results = {"family_homs": len(family), "random_homs": len(randoms), "groups": [str(G) for G in groups]}
    return rep


# ------------------------------------------------------------ integrals

PIVOTAL_FAMILY = [((2,), GROUP), ((3,), GROUP), ((4,), GROUP), ((2, 2), FUNCTION)]


def suite_integrals(seed=0, n=100, fields=(QQ, F5), flavors=FLAVORS):
    rep = Report("verify integrals", seed, {"n": n, "fields": [str(k) for k in fields], "flavors": list(flavors)})
    rng = sa.make_rng(seed)
    dagger_ratios = {}
    for k in fields:
        for fl in flavors:
            tag = f"{fl}/{k}"
            for _ in range(n):
                L = sa.random_hopf_cospan(rng, fl)
                base = cs.integrate_cospan(L, k).matrix
                extra = sa.random_group(rng, 4)
                rep.check(f"integrals.mono_extension[{tag}]", cs.integrate_cospan(cs.mono_extension(L, extra), k).matrix,
                          base, L)
                rep.check(f"integrals.twisted_mono_extension[{tag}]",
                          cs.integrate_cospan(cs.twisted_mono_extension(L, extra, rng), k).matrix, base, L)
                rep.require(f"integrals.reduce_equivalent[{tag}]", cs.equivalent(L, cs.reduce(L)), L)
                rep.check(f"integrals.reduce_same_integral[{tag}]", cs.integrate_cospan(cs.reduce(L), k).matrix,
                          base, L)
                V = sa.random_hopf_span(rng, fl)
                rep.check(f"integrals.span_transpose[{tag}]", cs.span_integral_matrix(V, k),
                          cs.integrate_cospan(cs.transpose(V), k).matrix, V)
                rep.require(f"integrals.transpose_square_exact[{tag}]", cs.transpose_square_is_exact(V), V)
                outer, inner = sa.composable_hopf_cospans(rng, fl)
                comp, d = cs.compose_cospans(outer, inner, k)
                rep.check(f"integrals.composition_contract[{tag}]",
                          cs.integrate_cospan(outer, k).matrix @ cs.integrate_cospan(inner, k).matrix,
                          cs.integrate_cospan(comp, k).matrix.scale(d), (outer, inner))
                # dagger: compare with the observed closed form
                ratio = cs.dagger_ratio(L, k)
                kers = [finab.kernel(leg.carrier)[0].order for leg in (L.leg0, L.leg1)]
                rep.check(f"integrals.dagger_ratio[{tag}]", ratio, k.scalar(Fraction(kers[1], kers[0])), L)
                vols = hopf.inverse_volume(L.foot0, k) / hopf.inverse_volume(L.foot1, k)
                key = "matches vol ratio" if ratio == vols else "differs from vol ratio"
                dagger_ratios[key] = dagger_ratios.get(key, 0) + 1
        # pivotal dimension and zigzag
        for orders, fl in PIVOTAL_FAMILY:
            A = HopfObject(finab.make_group(orders), fl)
            if not A.finite_volume(k):
                continue
            i, e = cs.coevaluation(A, k), cs.evaluation(A, k)
            n_ = A.dim
            I = KMatrix.identity(k, n_)
            rep.check(f"pivotal.dimension[{k}]", (e @ i).entry(0, 0), k.elem(n_), str(A))
            rep.check(f"pivotal.zigzag_left[{k}]", e.kron(I) @ I.kron(i), I, str(A))
            rep.check(f"pivotal.zigzag_right[{k}]", I.kron(e) @ i.kron(I), I, str(A))
    rep.results = {"dagger_ratio_vs_volume_ratio": dagger_ratios}
    return rep


# ------------------------------------------------------------ inversion

DEFAULT_GROUPS = ((2,), (3,), (2, 2))


def suite_inversion(seed=0, n=50, groups=DEFAULT_GROUPS, qs=(1, 2), fields=(QQ, F5), flavors=FLAVORS,
                    matrix_samples=3):
    rep = Report("verify inversion", seed, {"n": n, "groups": groups, "qs": qs, "fields": [str(k) for k in fields],
                                            "flavors": list(flavors), "matrix_samples": matrix_samples})
    nontrivial = 0
    for T in _theories(groups, qs, fields, flavors):
        tag = _tag(T)
        rng = sa.make_rng(seed)
        T1 = T.with_degree(T.degree + 1)
        ST1 = sp.suspended(T1)
        th = lambda c, T=T: pi.theta(T, c)
        for i in range(n):
            c2, c1 = sa.composable_pair(rng)
            wh, wc = pi.omega_hat(T, c2, c1), pi.omega_check(T, c2, c1)
            nontrivial += not wh.is_one()
            rep.check(f"inversion.formula1[{tag}]", wh * wc, pi.delta_theta(th, c2, c1))
            wh1, wc1 = pi.omega_hat(T1, c2, c1), pi.omega_check(T1, c2, c1)
            wsh, wsc = pi.omega_hat(ST1, c2, c1), pi.omega_check(ST1, c2, c1)
            rep.check(f"inversion.formula2[{tag}]", wh1 * wsh, pi.delta_theta(lambda c: pi.theta(T1, c), c2, c1))
            rep.check(f"inversion.formula3[{tag}]", wc1 * wsc, pi.delta_theta(lambda c: pi.theta(ST1, c), c2, c1))
            rep.check(f"degree_exchange.omega[{tag}]", wc1, wh)
            rep.check(f"degree_exchange.suspended_omega[{tag}]", wsh, wh)
            if i < matrix_samples:
                cc = i == 0
                pi.omega_hat(T, c2, c1, cross_check=cc)
                pi.omega_check(T, c2, c1, cross_check=cc)
                for c in (c1, c2):
                    S0 = hopf.materialize_hom(pi.suspension_hopf_iso(T, c.K0), T.field)
                    S1 = hopf.materialize_hom(pi.suspension_hopf_iso(T, c.K1), T.field)
                    rep.check(f"degree_exchange.pi_check_vs_pi_hat[{tag}]",
                              pi.pi_check(T1, c).matrix @ S0, S1 @ pi.pi_hat(T, c).matrix)
    rep.results = {"nontrivial_omega_hat": nontrivial}
    return rep


# ------------------------------------------------------------ cocycle laws

def omega_cochains(T):
    k = T.field
    return [co.Cochain(2, lambda a, b: pi.omega_hat(T, a, b), k, "omega_hat"),
            co.Cochain(2, lambda a, b: pi.omega_check(T, a, b), k, "omega_check")]


def suite_cocycle(seed=0, n=50, groups=DEFAULT_GROUPS, qs=(1, 2), fields=(QQ, F5), flavors=FLAVORS,
                  monoidal_samples=None):
    monoidal_samples = n if monoidal_samples is None else monoidal_samples
    rep = Report("verify cocycle", seed, {"n": n, "groups": groups, "qs": qs, "fields": [str(k) for k in fields],
                                          "flavors": list(flavors), "monoidal_samples": monoidal_samples})
    values = {}
    for T in _theories(groups, qs, fields, flavors):
        tag = _tag(T)
        rng = sa.make_rng(seed)
        triples = [sa.composable_triple(rng) for _ in range(n)]
        pairs = [(sa.composable_pair(rng), sa.composable_pair(rng)) for _ in range(monoidal_samples)]
        th = co.Cochain(1, lambda c, T=T: pi.theta(T, c), T.field, "theta")
        for w in omega_cochains(T) + [co.delta1(th)]:
            for name, r in (("cocycle", co.cocycle_check(w, triples)),
                            ("normalized", co.normalized_check(w, [t[0] for t in triples])),
                            ("monoidal", co.monoidal_check(w, pairs))):
                rep.check(f"cocycle.{name}.{w.name}[{tag}]", len(r.violations), 0,
                          r.violations[:1])
            for t in triples:
                v = str(w(t[0], t[1]))
                values[v] = values.get(v, 0) + 1
        rep.check(f"cocycle.theta_normalized[{tag}]", len(co.normalized_check(th, [t[0] for t in triples]).violations), 0)
    rep.results = {"omega_value_histogram": dict(sorted(values.items()))}
    return rep


# ------------------------------------------------------------ lifts

def suite_lifts(seed=0, n=30, groups=((2,), (3,)), qs=(1, 2), fields=(QQ, F5), flavors=FLAVORS):
    rep = Report("verify lifts", seed, {"n": n, "groups": groups, "qs": qs, "fields": [str(k) for k in fields],
                                        "flavors": list(flavors)})
    for T in _theories(groups, qs, fields, flavors):
        tag = _tag(T)
        q = T.degree
        rng = sa.make_rng(seed)
        for i in range(n):
            c2, c1 = sa.composable_pair(rng)
            rep.check(f"lifts.bounded_below[{tag}]", pi.omega_hat(T, c2, c1),
                      pi.delta_theta(lambda c: pi.theta_leq(T, q, c), c2, c1))
            c21 = sp.compose_space_cospans(c2, c1)
            Z = lambda c: pi.lift_ordinary_Z(T, q, c).matrix
            rep.check(f"lifts.ordinary_functorial[{tag}]", Z(c2) @ Z(c1), Z(c21))
            if i < max(1, n // 3):
                Z = lambda c: pi.lift_tensor_Z(T, c).matrix
                rep.check(f"lifts.tensor_functorial[{tag}]", Z(c2) @ Z(c1), Z(c21))
        K = sa.random_foot(rng)
        rep.check(f"lifts.identity[{tag}]", pi.lift_ordinary_Z(T, q, sp.identity_cospan(K)).matrix,
                  KMatrix.identity(T.field, T.value(K).dim))
    # Heegaard splitting of S³
    for k in fields:
        for fl in flavors:
            T = sp.BrownTheory(fl, finab.make_group([2]), 1, k)
            tag = _tag(T)
            for plus in (False, True):
                lam, lam2 = pi.heegaard_pieces(plus)
                rep.check(f"heegaard.omega_hat[{tag},plus={plus}]", pi.omega_hat(T, lam2, lam, cross_check=True),
                          k.scalar(Fraction(1, 2)))
                for lift in ("ordinary", "tensor"):
                    Z = (lambda c: pi.lift_ordinary_Z(T, 1, c).matrix) if lift == "ordinary" else \
                        (lambda c: pi.lift_tensor_Z(T, c).matrix)
                    rep.check(f"heegaard.{lift}_functorial[{tag},plus={plus}]", Z(lam2) @ Z(lam),
                              Z(sp.compose_space_cospans(lam2, lam)))
            if fl == FUNCTION:
                lam, lam2 = pi.heegaard_pieces(True)
                Zc = pi.lift_ordinary_Z(T, 1, sp.compose_space_cospans(lam2, lam)).matrix.entry(0, 0)
                rep.check(f"heegaard.closed_value[{tag}]", Zc, k.elem(Fraction(1, 2)))
    # mapping classes
    for k in fields:
        for fl in flavors:
            for G in groups:
                T = sp.BrownTheory(fl, finab.make_group(G), 1, k)
                for name, f in sa.mapping_class_examples():
                    c = sa.self_equivalence_cospan(f)
                    tag = f"{_tag(T)}/{name}"
                    rep.check(f"mapping_class.theta[{tag}]", pi.theta(T, c), k.one())
                    rep.check(f"mapping_class.theta_leq[{tag}]", pi.theta_leq(T, 1, c), k.one())
                    rep.check(f"mapping_class.Z_is_induced[{tag}]", pi.lift_ordinary_Z(T, 1, c).matrix,
                              hopf.materialize_hom(T.induced(f), k))
    rep.results.update(dw_report(fields=(QQ,)).results)
    return rep


# ------------------------------------------------------------ Dijkgraaf–Witten

DW_TABLE = [("circle", (2,)), ("torus", (2,)), ("klein", (2,)), ("klein", (3,)),
            ("rp2", (2,)), ("rp2", (3,)), ("s3", (2,))]


def dw_report(table=DW_TABLE, fields=(QQ,)):
    rep = Report("dw", None, {"table": table, "fields": [str(k) for k in fields]})
    vals = {}
    for k in fields:
        for m, G in table:
            G = finab.make_group(G)
            got = pi.dw_invariant(m, G, k)
            want = pi.dw_tabulated(m, G)
            rep.check(f"dw[{m}/{G}/{k}]", got, k.scalar(want))
            vals[f"{m}/{G}/{k}"] = str(got)
    rep.results = {"dw_values": vals}
    return rep


# ------------------------------------------------------------ dimension reduction

def suite_dimred(seed=0, n=30, groups=DEFAULT_GROUPS, qs=(1, 2), fields=(QQ, F5), flavors=FLAVORS):
    rep = Report("verify dimred", seed, {"n": n, "groups": groups, "qs": qs, "fields": [str(k) for k in fields],
                                         "flavors": list(flavors)})
    for T in _theories(groups, qs, fields, flavors):
        tag = _tag(T)
        W = sp.smashed(T, sp.circle_plus())
        for name, K in sa.corpus():
            rep.check(f"dimred.dimension[{tag}]", W.value(K).dim, T.value(K).dim * T.value(sp.suspend(K)[0]).dim, name)
        rng = sa.make_rng(seed)
        R = pi.dim_reduce(T)
        for i in range(n):
            c2, c1 = sa.composable_pair(rng)
            rep.check(f"dimred.omega_is_delta_theta[{tag}]", R.omega(c2, c1),
                      pi.delta_theta(lambda c: pi.theta(T, c), c2, c1))
            if i < max(1, n // 3):
                Z = lambda c: pi.lift_reduced_Z(T, c).matrix
                rep.check(f"dimred.lift_functorial[{tag}]", Z(c2) @ Z(c1), Z(sp.compose_space_cospans(c2, c1)))
        K = sa.random_foot(rng)
        rep.check(f"dimred.identity[{tag}]", R.omega(sp.identity_cospan(K), sp.identity_cospan(K)), T.field.one())
    return rep


# ------------------------------------------------------------ characteristic dichotomy

def suite_char2(seed=0, n=50, qs=(1, 2), flavors=FLAVORS, group=(3,), field=F2):
    rep = Report("verify char2", seed, {"n": n, "qs": qs, "flavors": list(flavors), "group": group,
                                        "field": str(field)})
    counts = {"nontrivial_over_field": 0, "nontrivial_over_Q": 0}
    for T in _theories([group], qs, (field,), flavors):
        tag = _tag(T)
        TQ = sp.BrownTheory(T.flavor, T.coeff, T.degree, QQ)
        rng = sa.make_rng(seed)
        for _ in range(n):
            c2, c1 = sa.composable_pair(rng)
            wh, wc = pi.omega_hat(T, c2, c1), pi.omega_check(T, c2, c1)
            rep.check(f"char2.omega_hat_trivial[{tag}]", wh, field.one())
            rep.check(f"char2.omega_check_trivial[{tag}]", wc, field.one())
            counts["nontrivial_over_field"] += (not wh.is_one()) + (not wc.is_one())
            counts["nontrivial_over_Q"] += not pi.omega_hat(TQ, c2, c1).is_one()
    if field.char == 2:
        rep.check("char2.Q_exhibits_nontrivial_omega", counts["nontrivial_over_Q"] > 0, True)
    rep.results = counts
    return rep


# ------------------------------------------------------------ pairing

PAIRING_SPACES = [("circle", pi.unreduced_circle), ("torus", pi.unreduced_torus)]


def suite_pairing(seed=0, groups=((2,), (3,)), fields=(QQ,)):
    rep = Report("verify pairing", seed, {"groups": groups, "fields": [str(k) for k in fields]})
    for k in fields:
        for G in groups:
            T = sp.BrownTheory(FUNCTION, finab.make_group(G), 1, k)
            for name, mk in PAIRING_SPACES:
                K = mk()
                tag = f"{name}/{T.coeff}/{k}"
                rep.check(f"pairing.lifted[{tag}]", pi.pairing(T, K).matrix, pi.expected_pairing(T, K).matrix)
                h1 = T.group(K).order
                c = k.elem(Fraction(1, h1))
                got = pi.pairing(T, K, lifted=False).matrix
                n_ = len(got)
                rep.check(f"pairing.unlifted[{tag}]", got,
                          [[c if i == j else k.elem(0) for j in range(n_)] for i in range(n_)])
            P = sp.point()
            rep.check(f"pairing.point[{T.coeff}/{k}]", pi.pairing(T, P).matrix, [[k.elem(1)]])
    return rep


RUNNERS = {
    "oracle": suite_oracle, "integrals": suite_integrals, "inversion": suite_inversion,
    "cocycle": suite_cocycle, "lifts": suite_lifts, "dimred": suite_dimred,
    "char2": suite_char2, "pairing": suite_pairing,
}


def run_suite(name, **kwargs) -> Report:
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](**kwargs)
