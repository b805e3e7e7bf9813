"""Cochains on the cospan category of spaces, evaluated on samples.

A q-cochain is an evaluator on composable q-tuples (f1 outermost).  The
coboundary and the normalization/monoidality conditions are checked on
whatever tuples the caller supplies; nothing here quantifies over the whole
category.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .exact import Field, Scalar
from .spaces import SpaceCospan, compose_space_cospans, identity_cospan, tensor_space_cospans


class NotComposable(ValueError):
    pass


@dataclass(frozen=True)
class Cochain:
    arity: int
    evaluator: Callable[..., Scalar]
    field: Field
    name: str = "cochain"

    def __call__(self, *fs: SpaceCospan) -> Scalar:
        if len(fs) != self.arity:
            raise ValueError(f"{self.name} takes {self.arity} arguments")
        for outer, inner in zip(fs, fs[1:]):
            if inner.K1 != outer.K0:
                raise NotComposable("tuple is not composable")
        return self.evaluator(*fs)


def constant_cochain(arity: int, k: Field, value=1) -> Cochain:
    c = k.scalar(value)
    return Cochain(arity, lambda *fs: c, k, f"const({c})")


def delta1(theta: Cochain) -> Cochain:
    """(δθ)(f1, f2) = θ(f2)·θ(f1∘f2)⁻¹·θ(f1)."""
    if theta.arity != 1:
        raise ValueError("delta1 needs a 1-cochain")

    def ev(f1, f2):
        return theta(f2) * theta(compose_space_cospans(f1, f2)).inverse() * theta(f1)
    return Cochain(2, ev, theta.field, f"delta({theta.name})")


def delta2_residual(omega: Cochain, f1, f2, f3) -> Scalar:
    """ω(f2,f3)·ω(f1f2,f3)⁻¹·ω(f1,f2f3)·ω(f1,f2)⁻¹; equals 1 iff the cocycle law holds."""
    if omega.arity != 2:
        raise ValueError("delta2_residual needs a 2-cochain")
    if f3.K1 != f2.K0 or f2.K1 != f1.K0:
        raise NotComposable("triple is not composable")
    f12 = compose_space_cospans(f1, f2)
    f23 = compose_space_cospans(f2, f3)
    return omega(f2, f3) * omega(f12, f3).inverse() * omega(f1, f23) * omega(f1, f2).inverse()


@dataclass
class CheckReport:
    name: str
    samples: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations


def normalized_check(omega: Cochain, cospans) -> CheckReport:
    """ω(id) = 1, or ω(id, f) = ω(f, id) = 1, for each sampled cospan f."""
    if omega.arity not in (1, 2):
        raise ValueError("normalization is checked for arity 1 and 2")
    rep = CheckReport(f"normalized({omega.name})")
    one = omega.field.one()
    for f in cospans:
        if omega.arity == 1:
            trials = [(identity_cospan(f.K0),)]
        else:
            trials = [(identity_cospan(f.K1), f), (f, identity_cospan(f.K0))]
        for t in trials:
            v = omega(*t)
            rep.samples += 1
            if v != one:
                rep.violations.append({"witness": t, "value": v})
    return rep


def monoidal_check(omega: Cochain, pairs) -> CheckReport:
    """ω(f⊗g, ...) = ω(f, ...)·ω(g, ...) for tuples f, g of equal arity."""
    rep = CheckReport(f"monoidal({omega.name})")
    for fs, gs in pairs:
        tensored = [tensor_space_cospans(a, b) for a, b in zip(fs, gs)]
        lhs = omega(*tensored)
        rhs = omega(*fs) * omega(*gs)
        rep.samples += 1
        if lhs != rhs:
            rep.violations.append({"witness": (fs, gs), "lhs": lhs, "rhs": rhs})
    return rep


def cocycle_check(omega: Cochain, triples) -> CheckReport:
    rep = CheckReport(f"cocycle({omega.name})")
    one = omega.field.one()
    for t in triples:
        r = delta2_residual(omega, *t)
        rep.samples += 1
        if r != one:
            rep.violations.append({"witness": t, "value": r})
    return rep
