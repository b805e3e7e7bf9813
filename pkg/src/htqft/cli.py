"""Command-line interface: ``htqft <command> [options]``.

Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import finab, hopf, pathint as pi, sampling as sa, spaces as sp, verify
from .exact import QQ, parse_field
from .finab import SizeGateExceeded
from .hopf import NotFiniteVolume
from .serialize import load_cospan, load_pair, render
from .verify import Report

COMMANDS = ("homology", "cohomology", "brown", "pi-hat", "pi-check", "omega", "theta", "lift", "dw",
            "pairing", "verify", "corpus")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--space", help="builtin space (e.g. torus, sphere(2), moore(2,1)) or JSON file")
    p.add_argument("--file", help="JSON chain complex file (alias of --space)")
    p.add_argument("--coeff", "--group", dest="coeff", default=None, help="coefficient group, e.g. Z/2 or Z/2+Z/2")
    p.add_argument("--flavor", default=None, help="group | function")
    p.add_argument("--q", type=int, default=None, help="degree")
    p.add_argument("--field", default=None, help="Q or F<p>")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="sample count")
    p.add_argument("--dim-cap", type=int, default=None)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--manifold", default=None, help="closed manifold builtin or unreduced JSON file")
    p.add_argument("--cospan", default=None, help="cospan literal or JSON file")
    p.add_argument("--pair", default=None, help="composable pair: heegaard, heegaard-reduced, random, or JSON")
    p.add_argument("--kind", default="ordinary", choices=("ordinary", "tensor", "reduced"))
    p.add_argument("--json", action="store_true", help="emit the JSON report")


def build_parser():
    parser = argparse.ArgumentParser(prog="htqft", description="Exact path-integral HTQFT engine")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "verify":
            p.add_argument("suite", help=" | ".join(verify.SUITES))
        if name == "corpus":
            p.add_argument("--export", default=None, help="write each corpus space as JSON into this directory")
        _common(p)
    return parser


# ------------------------------------------------------------ helpers

def _space(a):
    source = a.file or a.space
    if source is None:
        raise ValueError("a space is required (--space or --file)")
    return sp.load_space(source)


def _group(a, default="Z/2"):
    return finab.parse_group(a.coeff if a.coeff is not None else default)


def _field(a):
    return parse_field(a.field) if a.field else QQ


def _flavor(a, default=hopf.FUNCTION):
    return hopf.parse_flavor(a.flavor) if a.flavor else default


def _q(a, default=1):
    return a.q if a.q is not None else default


def _theory(a):
    return sp.BrownTheory(_flavor(a), _group(a), _q(a), _field(a), a.dim_cap)


def _cospan(a):
    if a.cospan:
        return load_cospan(a.cospan)
    if a.space or a.file:
        return pi.closed_cospan(_space(a))
    raise ValueError("a cospan is required (--cospan, or --space for the closed cospan)")


def _input_payload(a):
    payload = {k: v for k, v in sorted(vars(a).items()) if k != "json"}
    for key in ("space", "file", "cospan", "pair", "manifold"):
        v = payload.get(key)
        if v and Path(str(v)).is_file():
            payload[key + "_content"] = Path(v).read_text()
    return payload


def _report(a, results, seed=None):
    rep = Report(a.command, seed, _input_payload(a))
    rep.results = results
    return rep


def _matrix_lines(M):
    return ["  [" + ", ".join(str(x) for x in row) + "]" for row in render(M)]


# ------------------------------------------------------------ commands

def cmd_homology(a, variance):
    K = _space(a)
    G, q = _group(a), _q(a)
    grp, reps = (sp.homology if variance == sp.HOMOLOGY else sp.cohomology)(K, G, q)
    rep = _report(a, {"group": str(grp), "order": grp.order, "representatives": reps})
    lines = [str(grp)] + [f"  generator {i}: {r}" for i, r in enumerate(reps)]
    return rep, lines


def cmd_brown(a):
    T = _theory(a)
    K = _space(a)
    A = T.value(K)
    rep = _report(a, {"group": str(A.group), "flavor": A.flavor, "dim": A.dim, "theory": T.describe()})
    return rep, [f"{A} (dim {A.dim})"]


def cmd_integral(a, which):
    T = _theory(a)
    c = _cospan(a)
    m = (pi.pi_hat if which == "pi-hat" else pi.pi_check)(T, c)
    M = m.matrix
    rep = _report(a, {"src": str(m.src), "tgt": str(m.tgt), "matrix": M, "theory": T.describe()})
    return rep, [f"{m.src} -> {m.tgt}"] + _matrix_lines(M)


def _pair(a):
    source = a.pair or "heegaard"
    seed = None
    if source == "random":
        seed = a.seed if a.seed is not None else 0
        return sa.composable_pair(sa.make_rng(seed)), seed
    return load_pair(source), seed


def cmd_omega(a):
    T = _theory(a)
    (c2, c1), seed = _pair(a)
    wh = pi.omega_hat(T, c2, c1, cross_check=True)
    wc = pi.omega_check(T, c2, c1, cross_check=True)
    dt = pi.delta_theta(lambda c: pi.theta(T, c), c2, c1)
    rep = _report(a, {"omega_hat": wh, "omega_check": wc, "delta_theta": dt}, seed)
    rep.check("inversion_formula", wh * wc, dt)
    return rep, [f"omega_hat   = {wh}", f"omega_check = {wc}", f"delta theta = {dt}"]


def cmd_theta(a):
    T = _theory(a)
    c = _cospan(a)
    t, tl = pi.theta(T, c), pi.theta_leq(T, T.degree, c)
    rep = _report(a, {"theta": t, "theta_leq": tl})
    return rep, [f"theta     = {t}", f"theta_<=q = {tl}"]


def cmd_lift(a):
    T = _theory(a)
    c = _cospan(a)
    if a.kind == "ordinary":
        Z = pi.lift_ordinary_Z(T, T.degree, c)
    elif a.kind == "tensor":
        Z = pi.lift_tensor_Z(T, c)
    else:
        Z = pi.lift_reduced_Z(T, c)
    rep = _report(a, {"kind": a.kind, "scale": Z.scale, "matrix": Z.matrix})
    return rep, [f"Z ({a.kind}), scale {Z.scale}"] + _matrix_lines(Z.matrix)


def cmd_dw(a):
    m = a.manifold or a.space or a.file
    if m is None:
        raise ValueError("--manifold is required")
    G, k, q = _group(a), _field(a), _q(a)
    got = pi.dw_invariant(m, G, k, q)
    want = pi.dw_tabulated(m, G) if q == 1 else None
    rep = _report(a, {"invariant": got, "tabulated": want})
    lines = [str(got)]
    if want is not None:
        rep.check("matches |Hom(pi1, G)|/|G|", got, k.scalar(want))
        lines.append(f"tabulated |Hom(pi1,G)|/|G| = {render(want)}")
    return rep, lines


def cmd_pairing(a):
    k = _field(a)
    T = sp.BrownTheory(hopf.FUNCTION, _group(a), _q(a), k)
    if a.manifold:
        K = sp.manifold_plus(a.manifold)
    else:
        K = _space(a)
    P = pi.pairing(T, K)
    rep = _report(a, {"basis": P.basis, "matrix": P.matrix})
    if T.degree == 1:
        rep.check("equals |H^0|^-1 sum f g", P.matrix, pi.expected_pairing(T, K).matrix)
    return rep, [f"basis {P.basis}"] + _matrix_lines(P.matrix)


def _suite_kwargs(a):
    kw = {}
    if a.seed is not None:
        kw["seed"] = a.seed
    if a.suite != "pairing" and a.n is not None:
        kw["n"] = a.n
    if a.field:
        k = parse_field(a.field)
        kw["field" if a.suite == "char2" else "fields"] = k if a.suite == "char2" else (k,)
    if a.coeff:
        G = finab.parse_group(a.coeff).orders
        if a.suite == "char2":
            kw["group"] = G
        elif a.suite not in ("oracle", "integrals"):
            kw["groups"] = (G,)
    if a.flavor and a.suite != "pairing":
        kw["flavors"] = (hopf.parse_flavor(a.flavor),)
    if a.q is not None and a.suite not in ("oracle", "integrals", "pairing"):
        kw["qs"] = (a.q,)
    if a.max_order is not None:
        if a.suite != "oracle":
            raise ValueError("--max-order applies to the oracle suite only")
        kw["max_order"] = a.max_order
    return kw


def cmd_verify(a):
    if a.suite not in verify.SUITES:
        raise ValueError(f"unknown suite {a.suite!r}; choose from {', '.join(verify.SUITES)}")
    rep = verify.run_suite(a.suite, **_suite_kwargs(a))
    rep.params = {"suite": a.suite, **rep.params}
    lines = []
    for c in rep.checks():
        lines.append(f"{c['status'].upper():4} {c['name']} ({c['samples']} samples)")
    for k, v in sorted(rep.results.items()):
        lines.append(f"{k}: {render(v)}")
    lines.append("ALL PASS" if rep.ok else "FAILURES PRESENT")
    return rep, lines


def cmd_corpus(a):
    entries = {}
    lines = []
    for name, K in sa.corpus():
        entries[name] = K.to_json()
        lines.append(f"{name:12} ranks {list(K.ranks)}")
        if a.export:
            out = Path(a.export)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{name.replace('(', '_').replace(')', '').replace(',', '_')}.json").write_text(
                json.dumps(K.to_json(), sort_keys=True, indent=2) + "\n")
    return _report(a, {"corpus": entries}), lines


def dispatch(a):
    c = a.command
    if c in ("homology", "cohomology"):
        return cmd_homology(a, sp.HOMOLOGY if c == "homology" else sp.COHOMOLOGY)
    if c == "brown":
        return cmd_brown(a)
    if c in ("pi-hat", "pi-check"):
        return cmd_integral(a, c)
    return {"omega": cmd_omega, "theta": cmd_theta, "lift": cmd_lift, "dw": cmd_dw,
            "pairing": cmd_pairing, "verify": cmd_verify, "corpus": cmd_corpus}[c](a)


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        rep, lines = dispatch(a)
    except pi.InconsistentDefect as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except (ValueError, NotFiniteVolume, SizeGateExceeded, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if a.json:
        print(rep.dumps())
    else:
        print("\n".join(lines))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
