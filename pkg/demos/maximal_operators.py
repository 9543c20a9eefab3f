"""Discrete maximal operators and a Fefferman-Stein style corpus."""
import numpy as np

from mixsmooth.grid import Grid, GridFunction
from mixsmooth.maximal import MaxParams, dir_max, fefferman_stein_corpus, hl_max, peetre_max

g = Grid.make(1, 8, 1.0)
spike = np.zeros(8)
spike[0] = 1
f = GridFunction(g, spike)
print("cube maximal of a spike:   ", hl_max(f).samples.real)
print("directional maximal:       ", np.round(dir_max(f, 0).samples.real, 4))
print("Peetre maximal (a=1, s=2): ", np.round(peetre_max(f, 1, [2]).samples.real, 4))

grid = Grid.make(2, 32, 1.0)
for op in (MaxParams("cube"), MaxParams("directional", axis=1)):
    r = fefferman_stein_corpus(grid, 2, 1.5, size=10, seed=0, op=op)
    print(f"{op.kind:>11}: vector-valued ratios in [{r.min():.3f}, {r.max():.3f}]")
