"""Norm-ratio scans: growth of ||f_l|dst|| / ||f_l|src|| along a family."""
from mixsmooth.embedlab import ratio_scan
from mixsmooth.quasinorms import SpaceParams

cases = [
    ("ex1", SpaceParams("mixed", "F", 0, 2, 4, 2), SpaceParams("iso", "F", 0, 2, 4, 2), None),
    ("ex1", SpaceParams("mixed", "F", 0, 2, 2, 2), SpaceParams("iso", "F", 0, 2, 2, 2), None),
    ("ex5", SpaceParams("iso", "F", 2, 2, 2, 2), SpaceParams("mixed", "F", 1, 2, 2, 2), "delta"),
    ("ex2", SpaceParams("mixed", "F", 1, 2, 2, 2), SpaceParams("iso", "F", 1, 2, 2, 2), None),
]
for family, src, dst, coeffs in cases:
    r = ratio_scan(family, src, dst, [1, 2, 3, 4], coeffs=coeffs)
    predicted = "n/a" if r.predicted_slope is None else f"{r.predicted_slope:+.3f}"
    print(f"{family}: {src.label()} -> {dst.label()}  slope {r.slope:+.3f} "
          f"(predicted {predicted}), verdict {r.verdict}, grows {r.witnesses_failure}")
