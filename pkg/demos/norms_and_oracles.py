"""Isotropic and mixed quasi-norms of the test families against their oracles."""
import math

from mixsmooth.quasinorms import SpaceParams, norm
from mixsmooth.testfun import make_family

# dilated bump: the norm is 2^{jd/p} ||rho|L_p|| for every t and q
for j in range(1, 4):
    fam = make_family("ex6", j, 2)
    s = SpaceParams("mixed", "F", 1.0, 2, 2, 2)
    print(f"ex6 j={j}: norm {norm(fam.generate(), s):.6f}  oracle {fam.oracle(s).value:.6f}")

# modulated sums: exact l_q sums of 2^{jt}|a_j|, with d*t on the mixed scale
fam = make_family("ex5", 4, 2, coeffs=[1, 0.5, 0.25, 2])
for scale in ("isotropic", "mixed"):
    for family, q in (("F", 2), ("B", math.inf)):
        s = SpaceParams(scale, family, 0.5, 1.5, q, 2)
        print(f"ex5 {s.label():>16}: {norm(fam.generate(), s):.6f}  oracle {fam.oracle(s).value:.6f}")
