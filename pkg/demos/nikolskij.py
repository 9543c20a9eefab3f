"""Nikol'skij representation: reconstruction and the size of the upper bound."""
import numpy as np

from mixsmooth.embedlab import random_bandlimited
from mixsmooth.grid import Grid
from mixsmooth.quasinorms import SpaceParams, nikolskij_decompose, norm_mixed_F

grid = Grid.from_spacing(2, 64, 1 / 2)
rng = np.random.default_rng(1)
for t in (0, 1):
    worst = 0.0
    for _ in range(20):
        f = random_bandlimited(grid, rng)
        s = SpaceParams("mixed", "F", t, 2, 1, 2)
        dec = nikolskij_decompose(f, s)
        err = np.linalg.norm(dec.reconstruct().samples - f.samples) / np.linalg.norm(f.samples)
        worst = max(worst, dec.upper_norm / norm_mixed_F(f, s))
    bound = (2.0**-t + 1 + 2.0**t) ** 2
    print(f"t={t}: pieces {len(dec.pieces)}, residual {err:.1e}, "
          f"max upper/norm {worst:.3f}, (2^-t+1+2^t)^2 = {bound:.2f}")
