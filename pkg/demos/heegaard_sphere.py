"""Gluing two solid tori into the 3-sphere.

The projective path integral picks up a factor 1/2 when the halves are
composed; the lifted theory absorbs it and returns the Dijkgraaf-Witten
value of S^3 for G = Z/2.
"""
from htqft import pathint as pi, spaces as sp
from htqft.exact import QQ
from htqft.finab import make_group
from htqft.hopf import FUNCTION
from htqft.serialize import render

T = sp.BrownTheory(FUNCTION, make_group([2]), 1, QQ)
lam, lam2 = pi.heegaard_pieces(plus=True)

print("first half   *  -> T^2:", render(pi.pi_hat(T, lam).matrix))
print("second half T^2 ->  * :", render(pi.pi_hat(T, lam2).matrix))

glued = sp.compose_space_cospans(lam2, lam)
print("\nprojective defect omega_hat   =", pi.omega_hat(T, lam2, lam, cross_check=True))
print("projective defect omega_check =", pi.omega_check(T, lam2, lam, cross_check=True))
print("coboundary of theta           =", pi.delta_theta(lambda c: pi.theta(T, c), lam2, lam))

Z = lambda c: pi.lift_ordinary_Z(T, 1, c).matrix
print("\nlifted Z(second) Z(first) =", render(Z(lam2) @ Z(lam)))
print("lifted Z(glued)           =", render(Z(glued)))
print("Dijkgraaf-Witten of S^3   =", pi.dw_invariant("s3", T.coeff))
