# Obstruction cocycles on random cospans of spaces.
#
# Over Q the defects omega_hat and omega_check are usually nontrivial, yet
# their product is always the coboundary of theta.  Over F_2 with odd
# coefficients every defect collapses to 1.
from collections import Counter

from htqft import pathint as pi, spaces as sp
from htqft.exact import Field, QQ
from htqft.finab import make_group
from htqft.hopf import FUNCTION, GROUP
from htqft.sampling import composable_pair, make_rng

rng = make_rng(7)
pairs = [composable_pair(rng) for _ in range(25)]

for k, G in ((QQ, [2]), (QQ, [3]), (Field(2), [3])):
    for fl in (GROUP, FUNCTION):
        T = sp.BrownTheory(fl, make_group(G), 1, k)
        seen, agree = Counter(), 0
        for c2, c1 in pairs:
            wh, wc = pi.omega_hat(T, c2, c1), pi.omega_check(T, c2, c1)
            seen[str(wh)] += 1
            agree += wh * wc == pi.delta_theta(lambda c: pi.theta(T, c), c2, c1)
        print(f"{T.describe():45}  omega_hat values {dict(seen)}  inversion holds {agree}/{len(pairs)}")

# degree exchange: the check defect one degree up is the hat defect
T = sp.BrownTheory(GROUP, make_group([2]), 1, QQ)
c2, c1 = next(p for p in pairs if not pi.omega_hat(T, *p).is_one())
print("\nomega_check at q=2:", pi.omega_check(T.with_degree(2), c2, c1),
      " omega_hat at q=1:", pi.omega_hat(T, c2, c1))
