"""JSON literals for spaces, maps, and cospans; exact rendering of results."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import finab, pathint as pi, sampling as sa, spaces as sp
from .exact import KMatrix, Scalar
from .spaces import ChainComplex, ChainMap, SpaceCospan


def render(x):
    """Exact JSON-friendly form: fractions as 'a/b', residues as ints, matrices as nested lists."""
    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, KMatrix):
        return [[render(v) for v in row] for row in x.to_dense()]
    if isinstance(x, finab.FinAbGroup):
        return str(x)
    if isinstance(x, ChainComplex):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [render(v) for v in x]
    if isinstance(x, dict):
        return {str(k): render(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()


def _read_json(source):
    if isinstance(source, (dict, list)):
        return source
    return json.loads(Path(source).read_text())


def cospan_to_json(c: SpaceCospan) -> dict:
    return {"K0": c.K0.to_json(), "L": c.L.to_json(), "K1": c.K1.to_json(),
            "f0": c.f0.to_json(), "f1": c.f1.to_json()}


def cospan_from_json(obj) -> SpaceCospan:
    K0, L, K1 = (sp.load_space(obj[key]) for key in ("K0", "L", "K1"))
    f0 = ChainMap.from_json(K0, L, obj.get("f0", {}))
    f1 = ChainMap.from_json(K1, L, obj.get("f1", {}))
    return SpaceCospan(K0, L, K1, f0, f1)


def _named_cospans():
    h_in, h_out = pi.heegaard_pieces(plus=True)
    r_in, r_out = pi.heegaard_pieces(plus=False)
    return {"heegaard-in": h_in, "heegaard-out": h_out,
            "heegaard-in-reduced": r_in, "heegaard-out-reduced": r_out}


def load_cospan(source) -> SpaceCospan:
    """Cospan literal: a named cospan, ``closed:<space>``, ``identity:<space>``,
    ``ev:<space>``, ``swap``, ``flip``, or a JSON file/object with keys K0, L, K1, f0, f1."""
    if isinstance(source, SpaceCospan):
        return source
    if isinstance(source, dict):
        return cospan_from_json(source)
    s = str(source)
    named = _named_cospans()
    if s in named:
        return named[s]
    head, _, arg = s.partition(":")
    if arg and head in ("closed", "identity", "ev"):
        K = sp.load_space(arg)
        return {"closed": pi.closed_cospan, "identity": sp.identity_cospan, "ev": pi.evaluation_cospan}[head](K)
    if s in ("flip", "swap"):
        f = dict(sa.mapping_class_examples())["s1_degree_minus_one" if s == "flip" else "s1vs1_swap"]
        return sa.self_equivalence_cospan(f)
    return cospan_from_json(_read_json(s))


def load_pair(source):
    """(outer, inner): ``heegaard``, ``heegaard-reduced``, or JSON {"outer": …, "inner": …}."""
    named = _named_cospans()
    if source == "heegaard":
        return named["heegaard-out"], named["heegaard-in"]
    if source == "heegaard-reduced":
        return named["heegaard-out-reduced"], named["heegaard-in-reduced"]
    obj = _read_json(source)
    return load_cospan(obj["outer"]), load_cospan(obj["inner"])
