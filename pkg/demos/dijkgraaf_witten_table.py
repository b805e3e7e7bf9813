"""Closed values of the lifted theory next to |Hom(pi_1 M, G)| / |G|."""
from htqft import pathint as pi
from htqft.finab import make_group

rows = [("circle", [2]), ("torus", [2]), ("torus", [3]), ("klein", [2]), ("klein", [3]),
        ("rp2", [2]), ("rp2", [3]), ("s2", [2]), ("s3", [2])]

print(f"{'M':8} {'G':6} {'Z(M)':>6} {'table':>6}")
for m, orders in rows:
    G = make_group(orders)
    z = pi.dw_invariant(m, G)
    print(f"{m:8} {str(G):6} {str(z):>6} {str(pi.dw_tabulated(m, G)):>6}")
