"""Embedding verdicts between mixed and isotropic F-spaces."""
from mixsmooth import cli
from mixsmooth.embedlab import classify_F_into_SF, classify_SF_into_F, necessary_conditions
from mixsmooth.quasinorms import SpaceParams

for t, p, q in [(1, 2, 3), (0, 2, 3), (0, 2, 2), (-1, 0.5, 2)]:
    v = classify_SF_into_F(t, p, q, 2)
    print(f"S^{t}F vs F^{t}, p={p}, q={q}: forward {v.forward}, reverse {v.reverse}")
v = classify_F_into_SF(3, 0.5, float("inf"), 2)
print(f"F^6 vs S^3F, p=0.5, q=inf: forward {v.forward}, reverse {v.reverse}")

for c in necessary_conditions(SpaceParams("iso", "F", 1, 3, 2, 2), SpaceParams("mixed", "F", 1, 2, 1, 2)):
    print(f"  {c.name:>22}: {'ok' if c.satisfied else 'violated'} ({c.witness}; {c.detail})")

# the character map for the S^tF vs F^t comparison at q = 2
cli.main(["region", "--comparison", "SF-F", "--ascii"])
