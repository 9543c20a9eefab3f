"""The acceptance suite as plain functions.

Each ``criterion_*`` function runs one check and returns a
:class:`CriterionResult`. ``tests/test_acceptance.py`` and ``mixsmooth verify``
share these runners.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import dyadic_systems as dyadic
from .embedlab import (Status, classify_F_into_SF, classify_SF_into_F, fit_slope,
                       random_bandlimited, random_corpus_check, ratio_scan)
from .grid import Grid, GridFunction
from .maximal import dir_max, hl_max, peetre_max
from .quasinorms import SpaceParams, nikolskij_decompose, norm, norm_mixed_F
from .testfun import default_grid, make_family

__all__ = ["CriterionResult", "CRITERIA", "FAST", "run_suite", "CLASSIFIER_FIXTURES",
           "region_sweep"]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number:2d} {self.name}: measured={self.measured:.6g} "
                f"tolerance={self.tolerance:.6g} ({self.seconds:.1f}s) {self.detail}")


def _timed(number: int, name: str):
    def wrap(fn: Callable[[], tuple]):
        def run() -> CriterionResult:
            t0 = time.perf_counter()
            passed, measured, tol, detail = fn()
            return CriterionResult(number, name, bool(passed), float(measured), float(tol),
                                   detail, time.perf_counter() - t0)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _rel(a, b):
    return abs(a - b) / abs(b)


# --------------------------------------------------------------------------


@_timed(1, "partition of unity")
def criterion_1():
    """Telescoping sums of the 1D and tensor systems reproduce the dilated cutoff."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    xi = np.concatenate([rng.uniform(-4, 4, 2000),
                         np.sign(rng.standard_normal(8000)) * 2.0 ** rng.uniform(-3, 22, 8000)])
    err = 0.0
    partial = np.zeros_like(xi)
    for J in range(21):
        partial = partial + dyadic.phi(J, xi)
        err = max(err, float(np.max(np.abs(partial - dyadic.phi(0, xi / 2.0**J)))))
    for d in (2, 3):
        x = np.sign(rng.standard_normal((1000, d))) * 2.0 ** rng.uniform(-3, 22, (1000, d))
        # table[i][j] = phi_j(x_i); each tensor term is a product of table rows
        table = [np.stack([dyadic.phi(j, x[:, i]) for j in range(21)]) for i in range(d)]
        for k in ((0,) * d, (3, 1, 2)[:d], (20,) * d):
            err = max(err, float(np.max(np.abs(
                np.prod([table[i][k[i]] for i in range(d)], axis=0) - dyadic.phi_tensor(k, x)))))
        for J in (0, 3, 10, 20):
            terms = table[0][: J + 1]
            for i in range(1, d):
                terms = terms[..., None, :] * table[i][: J + 1]
            total = terms.reshape(-1, 1000).sum(axis=0)
            err = max(err, float(np.max(np.abs(total - dyadic.psi0(x / 2.0**J)))))
    elapsed = time.perf_counter() - t0
    return err <= 1e-12 and elapsed < 1.0, err, 1e-12, f"runtime {elapsed:.2f}s"


def _ex6_norms(p):
    out = {}
    for j in range(1, 6):
        fam = make_family("ex6", j, 2)
        f = fam.generate()
        for scale in ("isotropic", "mixed"):
            for t in (-1, 0, 1):
                for q in (1, 2, math.inf):
                    out[j, scale, t, q] = norm(f, SpaceParams(scale, "F", t, p, q, 2))
    return out


@_timed(2, "ex6 dilation")
def criterion_2():
    """``norm(h_{j+1}) / norm(h_j) = 2^{d/p}``, independent of t and q, on both scales."""
    worst_ratio = worst_inv = 0.0
    for p in (1, 2, 4):
        vals = _ex6_norms(p)
        for (j, scale, t, q), v in vals.items():
            worst_inv = max(worst_inv, _rel(v, vals[j, scale, 0, 2]))
            if j < 5:
                r = vals[j + 1, scale, t, q] / v
                worst_ratio = max(worst_ratio, _rel(r, 2.0 ** (2 / p)))
    worst = max(worst_ratio, worst_inv)
    return worst <= 0.01, worst, 0.01, f"ratio {worst_ratio:.2e}, t/q-invariance {worst_inv:.2e}"


@_timed(3, "ex5 ratio")
def criterion_3():
    """Mixed/isotropic ratio of the single-term modulated family is ``2^{(d-1)t l}``."""
    worst = slope_err = 0.0
    grid = default_grid("ex5", 6, 2)
    for t in (-1, 1):
        src = SpaceParams("isotropic", "F", t, 2, 2, 2)
        dst = SpaceParams("mixed", "F", t, 2, 2, 2)
        rep = ratio_scan("ex5", src, dst, range(2, 7), coeffs="delta", grid=grid)
        for row in rep.rows:
            worst = max(worst, _rel(row.ratio, 2.0 ** (t * row.scale)))
        slope_err = max(slope_err, abs(rep.slope - t))
    ok = worst <= 0.02 and slope_err <= 0.05
    return ok, worst, 0.02, f"max slope error {slope_err:.2e} (tol 0.05)"


@_timed(4, "ex4 equality")
def criterion_4():
    """Isotropic and mixed norms of the modulated family agree and match the closed form."""
    worst_eq = worst_or = 0.0
    grid = default_grid("ex4", 4, 2)
    for seed in range(5):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        fam = make_family("ex4", 4, 2, grid=grid, coeffs=a)
        f = fam.generate()
        for t, p, q in ((1, 2, 2), (-0.5, 3, 1.5), (0.5, 1.5, 4)):
            iso = SpaceParams("isotropic", "F", t, p, q, 2)
            mix = SpaceParams("mixed", "F", t, p, q, 2)
            ni, nm = norm(f, iso), norm(f, mix)
            worst_eq = max(worst_eq, _rel(ni, nm))
            oracle = fam.oracle(mix).value
            worst_or = max(worst_or, _rel(ni, oracle), _rel(nm, oracle))
    ok = worst_eq <= 1e-6 and worst_or <= 0.02
    return ok, worst_eq, 1e-6, f"oracle deviation {worst_or:.2e} (tol 0.02)"


def example1_scan(q: float, scales=range(3, 8)):
    """Mixed and isotropic ``t = 0, p = 2`` norms of the first family on one grid."""
    grid = default_grid("ex1", max(scales), 2)
    mix = SpaceParams("mixed", "F", 0, 2, q, 2)
    iso = SpaceParams("isotropic", "F", 0, 2, q, 2)
    rows = []
    for l in scales:
        f = make_family("ex1", l, 2, grid=grid).generate()
        rows.append((l, norm(f, mix), norm(f, iso)))
    return rows


@_timed(5, "ex1 sharpness")
def criterion_5():
    """Growth laws ``2^{l/2} l^{1/q}`` (mixed) and ``2^{l/2} l^{1/2}`` (isotropic); ratio slopes."""
    worst_mix = worst_iso = 0.0
    slopes = {}
    for q in (2, 4):
        rows = example1_scan(q)
        l0, m0, i0 = rows[0]
        c_mix = m0 / (2 ** (l0 / 2) * l0 ** (1 / q))
        c_iso = i0 / (2 ** (l0 / 2) * l0 ** 0.5)
        for l, m, i in rows:
            worst_mix = max(worst_mix, _rel(m, c_mix * 2 ** (l / 2) * l ** (1 / q)))
            worst_iso = max(worst_iso, _rel(i, c_iso * 2 ** (l / 2) * l ** 0.5))
        x = [math.log2(l) for l, _, _ in rows]
        slopes[q] = fit_slope(x, [math.log2(i / m) for _, m, i in rows])
    s4, e4, _ = slopes[4]
    s2 = slopes[2][0]
    ok = worst_mix <= 0.05 and worst_iso <= 0.08 and s4 > 0 and s4 > 3 * e4 and abs(s2) < 0.05
    detail = (f"iso dev {worst_iso:.2e} (tol 0.08); q=4 slope {s4:.3f} +- {e4:.1e}; "
              f"q=2 slope {s2:.1e}")
    return ok, worst_mix, 0.05, detail


def nikolskij_bound(t: float, d: int) -> float:
    """Triangle-inequality bound ``(2^-|t| + 1 + 2^|t|)^d`` for the fattened representation.

    Neighbouring indices carry weights that differ by ``2^(+-t)``, so the
    plain ``3^d`` bound is only guaranteed at ``t = 0``.
    """
    return (2.0 ** -abs(t) + 1 + 2.0 ** abs(t)) ** d


def nikolskij_corpus(size: int = 50, seed: int = 6):
    """``(t, q, residual, upper/norm)`` on a seeded random corpus, ``d = 2, p = 2``."""
    grid = Grid.from_spacing(2, 64, 1 / 2)
    rng = np.random.default_rng(seed)
    combos = [(t, q) for t in (0, 1) for q in (1, 2)]
    out = []
    for i in range(size):
        f = random_bandlimited(grid, rng)
        t, q = combos[i % 4]
        s = SpaceParams("mixed", "F", t, 2, q, 2)
        dec = nikolskij_decompose(f, s)
        rec = dec.reconstruct().samples
        res = np.linalg.norm(rec - f.samples) / np.linalg.norm(f.samples)
        out.append((t, q, float(res), dec.upper_norm / norm_mixed_F(f, s)))
    return out


@_timed(6, "Nikol'skij representation")
def criterion_6():
    """Reconstruction from the fattened pieces and the ``3^d`` bound on 50 random functions."""
    rows = nikolskij_corpus()
    worst_res = max(r[2] for r in rows)
    worst = {t: max(r[3] for r in rows if r[0] == t) for t in (0, 1)}
    ok = worst_res <= 1e-10 and max(worst.values()) <= 9
    detail = (f"max upper/norm {worst[0]:.3f} at t=0, {worst[1]:.3f} at t=1 (bound 9; "
              f"t-dependent bound {nikolskij_bound(1, 2):.2f} at t=1)")
    return ok, max(worst.values()), 9, detail + f"; residual {worst_res:.1e} (tol 1e-10)"


def random_tensor_factors(rng, grids):
    factors = []
    for g in grids:
        J = g.nyquist_level(0)
        w = np.abs(g.frequencies(0))
        amp = np.exp(2 * rng.standard_normal(J + 1))
        level = np.where(w > 1, np.ceil(np.log2(np.maximum(w, 1))), 0).astype(int)
        c = (rng.standard_normal(g.n[0]) + 1j * rng.standard_normal(g.n[0])) * amp[level]
        c[w > 2.0 ** (J - 1)] = 0
        factors.append(GridFunction.from_spectrum(g, c))
    return factors


@_timed(7, "cross-norm")
def criterion_7():
    """Mixed F-norm of a tensor product equals the product of the 1D norms."""
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10):
        n = (64, 32)
        period = (rng.uniform(8, 40), rng.uniform(8, 40))
        grids = [Grid((n[i],), (period[i],)) for i in range(2)]
        f1, f2 = random_tensor_factors(rng, grids)
        grid = Grid(n, period)
        f = GridFunction.from_spectrum(grid, np.multiply.outer(f1.spectrum, f2.spectrum))
        t, p, q = rng.uniform(-1, 2), rng.uniform(0.5, 4), rng.uniform(0.5, 4)
        lhs = norm_mixed_F(f, SpaceParams("mixed", "F", t, p, q, 2))
        s1 = SpaceParams("mixed", "F", t, p, q, 1)
        rhs = norm_mixed_F(f1, s1) * norm_mixed_F(f2, s1)
        worst = max(worst, _rel(lhs, rhs))
    return worst <= 1e-8, worst, 1e-8, ""


Y, N, O = Status.YES, Status.NO, Status.OPEN

#: (comparison, t, p, q, d, expected forward, expected reverse)
CLASSIFIER_FIXTURES = [
    ("SF-F", 1, 2, 3, 2, Y, O),
    ("SF-F", 0, 2, 3, 2, N, Y),
    ("SF-F", -1, 0.5, 2, 2, N, N),
    ("SF-F", 0, 2, 2, 2, Y, Y),
    ("SF-F", 0, 2, 1, 3, Y, N),
    ("SF-F", 0, 0.5, 1, 2, Y, O),
    ("SF-F", 0, 1, 2, 2, O, O),
    ("SF-F", -1, 2, 2, 2, N, Y),
    ("SF-F", 0.5, 0.5, 0.25, 4, Y, O),
    ("F-SF", 0.5, 2, 2, 2, Y, O),
    ("F-SF", 1, 0.5, 2, 2, N, N),
    ("F-SF", -1, 2, 2, 2, N, Y),
    ("F-SF", 0, 2, 4, 2, Y, N),
    ("F-SF", 0, 2, 1.5, 3, N, Y),
    ("F-SF", 3, 0.5, math.inf, 2, Y, O),
    ("F-SF", 0.5, 0.5, 2, 2, N, N),
]


def _classify(comparison, t, p, q, d):
    return (classify_SF_into_F if comparison == "SF-F" else classify_F_into_SF)(t, p, q, d)


def region_sweep(comparison: str, q: float = 2.0, d: int = 2):
    """Verdicts on the lattice ``1/p = k/20`` (k = 1..40), 40 values of t in [-2, 2]."""
    ts = np.linspace(-2, 2, 40)
    out = []
    for k in range(1, 41):
        inv_p = k / 20
        for t in ts:
            out.append((inv_p, float(t), _classify(comparison, float(t), 1 / inv_p, q, d)))
    return out


def expected_region(comparison: str, inv_p: float, t: float):
    """Expected (forward, reverse) from the labeled regions, None on critical lines."""
    if t == 0 or inv_p == 1:
        return None
    if comparison == "SF-F":
        if t > 0:
            return (Y, None)
        return (N, Y) if inv_p < 1 else (N, N)
    if t < 0:
        return (None, Y)
    if inv_p < 1 or t > inv_p - 1:
        return (Y, None)
    if t == inv_p - 1:
        return None
    return (N, N)


def region_contradictions(comparison: str, q: float = 2.0) -> list:
    bad = []
    for inv_p, t, v in region_sweep(comparison, q):
        expected = expected_region(comparison, inv_p, t)
        if expected is None:
            continue
        for want, got in zip(expected, (v.forward.status, v.reverse.status)):
            if want is not None and want != got:
                bad.append((inv_p, t, v))
    return bad


@_timed(8, "classifier")
def criterion_8():
    """Hand-derived verdict fixtures plus the two region sweeps."""
    wrong = 0
    for comparison, t, p, q, d, fwd, rev in CLASSIFIER_FIXTURES:
        v = _classify(comparison, t, p, q, d)
        if v.forward.status != fwd or v.reverse.status != rev:
            wrong += 1
    contra = len(region_contradictions("SF-F")) + len(region_contradictions("F-SF"))
    return wrong == 0 and contra == 0, wrong + contra, 0, \
        f"{wrong} fixture mismatches, {contra} region contradictions"


@_timed(9, "random corpus")
def criterion_9():
    """Corpus maxima of ``F/S`` ratios are finite and seed-stable within 10%."""
    worst = 0.0
    maxima = []
    pairs = [(SpaceParams("mixed", "F", 1, 2, 2, 2), SpaceParams("isotropic", "F", 1, 2, 2, 2)),
             (SpaceParams("isotropic", "F", 2, 2, 2, 2), SpaceParams("mixed", "F", 1, 2, 2, 2))]
    finite = True
    for src, dst in pairs:
        a, b = (random_corpus_check(src, dst, 100, seed) for seed in (0, 1))
        finite &= a.finite and b.finite
        maxima.append((a.max_ratio, b.max_ratio))
        worst = max(worst, _rel(a.max_ratio, b.max_ratio))
    detail = "; ".join(f"max {x:.4f} / {y:.4f}" for x, y in maxima)
    return finite and worst <= 0.1, worst, 0.1, detail


@_timed(10, "maximal operators")
def criterion_10():
    """Lower bound and sublinearity on random inputs, brute-force spikes in 1D."""
    rng = np.random.default_rng(10)
    grid = Grid.make(2, (16, 8), (4.0, 2.0))
    ops = [hl_max, lambda f: dir_max(f, 0), lambda f: dir_max(f, 1),
           lambda f: peetre_max(f, 1.5, (2.0, 4.0))]
    violation = 0.0
    for _ in range(20):
        f = GridFunction(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))
        g = GridFunction(grid, rng.standard_normal(grid.shape))
        for op in ops:
            mf, mg, mfg = (op(h).samples.real for h in (f, g, f + g))
            violation = max(violation, float(np.max(np.abs(f.samples) - mf)),
                            float(np.max(mfg - mf - mg)))
    spikes_ok = True
    g1 = Grid.make(1, 8, 8.0)
    for pos in range(8):
        e = np.zeros(8)
        e[pos] = 1.0
        f = GridFunction(g1, e)
        dist = np.abs((np.arange(8) - pos + 4) % 8 - 4)
        spikes_ok &= np.array_equal(hl_max(f).samples.real, brute_force_hl_1d(e))
        spikes_ok &= np.array_equal(peetre_max(f, 1, [2]).samples.real, 1 / (1 + 2 * dist))
    ok = violation <= 1e-12 and spikes_ok
    return ok, violation, 1e-12, f"spike oracles {'exact' if spikes_ok else 'MISMATCH'}"


def brute_force_hl_1d(a: np.ndarray) -> np.ndarray:
    """Max over all periodic windows of length ``2^m`` containing each index."""
    n = a.size
    out = np.zeros(n)
    s = 1
    while s <= n:
        for x in range(n):
            for start in range(x - s + 1, x + 1):
                idx = np.arange(start, start + s) % n
                out[x] = max(out[x], np.abs(a[idx]).sum() / s)
        s *= 2
    return out


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]
FAST = [criterion_1, criterion_2, criterion_4, criterion_6, criterion_7, criterion_8,
        criterion_10]


def run_suite(suite: str = "full") -> list:
    chosen = CRITERIA if suite == "full" else FAST
    return [c() for c in chosen]
