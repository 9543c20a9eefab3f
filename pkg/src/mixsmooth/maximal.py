"""Discrete maximal operators on periodic grids.

* :func:`hl_max` -- Hardy-Littlewood maximal function over cell-aligned
  cubes with dyadic side lengths,
* :func:`dir_max` -- centered interval averages along one axis,
* :func:`peetre_max` -- shift-penalized supremum
  ``sup_z |g(x - z)| / prod_i (1 + |s_i z_i|^a)``.

All windows wrap around periodically. Outputs are real and nonnegative.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.ndimage import maximum_filter1d

from .grid import Grid, GridFunction, lp_norm_samples

__all__ = [
    "MaxParams",
    "hl_max",
    "dir_max",
    "peetre_max",
    "vector_valued_ratio",
    "fefferman_stein_corpus",
]


def _real(grid: Grid, values: np.ndarray) -> GridFunction:
    return GridFunction(grid, values.astype(complex))


def _forward_window_mean(a: np.ndarray, s: int, axis: int) -> np.ndarray:
    """Mean of ``a[i], ..., a[i+s-1]`` (periodic) along ``axis``."""
    n = a.shape[axis]
    ext = np.concatenate([a, np.take(a, np.arange(s), axis=axis)], axis=axis)
    cs = np.cumsum(ext, axis=axis)
    zero = np.zeros_like(np.take(cs, [0], axis=axis))
    cs = np.concatenate([zero, cs], axis=axis)
    hi = np.take(cs, np.arange(s, s + n), axis=axis)
    lo = np.take(cs, np.arange(n), axis=axis)
    return (hi - lo) / s


def _max_over_starts(a: np.ndarray, s: int, axis: int) -> np.ndarray:
    """``max(a[x-s+1], ..., a[x])`` (periodic) along ``axis``."""
    if s == 1:
        return a
    centered = maximum_filter1d(a, size=s, axis=axis, mode="wrap")
    # centered[i] covers a[i - s//2 .. i - s//2 + s - 1]
    return np.roll(centered, s - 1 - s // 2, axis=axis)


def hl_max(f: GridFunction) -> GridFunction:
    """Hardy-Littlewood maximal function over cubes of side ``h * 2^m`` containing each point.

    Cubes are unions of cells, side ``2^m`` cells on every axis with
    ``m = 0 .. log2(min n)``; every position containing the point is tried.
    """
    a = np.abs(f.samples)
    grid = f.grid
    out = a.copy()
    side = 2
    while side <= min(grid.n):
        avg = a
        for axis in range(grid.d):
            avg = _forward_window_mean(avg, side, axis)
        for axis in range(grid.d):
            avg = _max_over_starts(avg, side, axis)
        np.maximum(out, avg, out=out)
        side *= 2
    return _real(grid, out)


def _check_axis(grid: Grid, axis: int):
    if not isinstance(axis, (int, np.integer)) or not 0 <= axis < grid.d:
        raise ValueError(f"axis must be an integer in [0, {grid.d - 1}], got {axis!r}")


def dir_max(f: GridFunction, axis: int) -> GridFunction:
    """Directional maximal function: sup over ``r`` of the mean over ``2r + 1`` cells along ``axis``.

    ``axis`` is zero-based; ``r`` runs up to ``(n - 1) // 2`` so windows
    never overlap themselves.
    """
    _check_axis(f.grid, axis)
    a = np.abs(f.samples)
    n = a.shape[axis]
    out = a.copy()
    total = a.copy()
    for r in range(1, (n - 1) // 2 + 1):
        total = total + np.roll(a, r, axis=axis) + np.roll(a, -r, axis=axis)
        np.maximum(out, total / (2 * r + 1), out=out)
    return _real(f.grid, out)


def peetre_max(g: GridFunction, a: float, scales: Sequence[float]) -> GridFunction:
    """Peetre maximal function ``sup_z |g(x - z)| / prod_i (1 + |scales_i z_i|^a)``.

    ``z`` ranges over lattice shifts in the symmetric fundamental domain, in
    physical units. The weight is a product, so the supremum is taken one
    axis at a time.
    """
    if not a > 0:
        raise ValueError(f"decay exponent must be positive, got {a}")
    grid = g.grid
    scales = np.broadcast_to(np.asarray(scales, dtype=float), (grid.d,))
    if np.any(scales <= 0):
        raise ValueError("scales must be positive")
    out = np.abs(g.samples)
    for axis in range(grid.d):
        shifts = np.fft.fftfreq(grid.n[axis], d=1.0 / grid.n[axis]).astype(int)
        z = grid.centered_coordinates(axis)
        weight = 1.0 + np.abs(scales[axis] * z) ** a
        cur = out
        out = cur.copy()
        for m, w in zip(shifts, weight):
            if m:
                np.maximum(out, np.roll(cur, m, axis=axis) / w, out=out)
    return _real(grid, out)


@dataclass(frozen=True)
class MaxParams:
    """Selects one maximal operator: ``cube``, ``directional`` (with ``axis``) or ``peetre``."""

    kind: str
    axis: Optional[int] = None
    a: Optional[float] = None
    scales: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("cube", "directional", "peetre"):
            raise ValueError(f"unknown maximal operator {self.kind!r}")
        if self.kind == "directional" and self.axis is None:
            raise ValueError("directional maximal operator needs an axis")
        if self.kind == "peetre":
            if self.a is None or not self.a > 0:
                raise ValueError("Peetre maximal operator needs a > 0")
            if self.scales is None:
                raise ValueError("Peetre maximal operator needs scales")

    def apply(self, f: GridFunction) -> GridFunction:
        if self.kind == "cube":
            return hl_max(f)
        if self.kind == "directional":
            return dir_max(f, self.axis)
        return peetre_max(f, self.a, self.scales)


def _lp_lq(values: Sequence[np.ndarray], p: float, q: float, cell_volume: float) -> float:
    stack = np.abs(np.stack(values))
    inner = stack.max(axis=0) if np.isinf(q) else np.sum(stack**q, axis=0) ** (1.0 / q)
    return lp_norm_samples(inner, cell_volume, p)


def vector_valued_ratio(fs: Sequence[GridFunction], p: float, q: float,
                        op: MaxParams | None = None) -> float:
    """``||(M f_k)|L_p(l_q)|| / ||(f_k)|L_p(l_q)||`` for one sequence."""
    op = op if op is not None else MaxParams("cube")
    vol = fs[0].grid.cell_volume
    num = _lp_lq([op.apply(f).samples.real for f in fs], p, q, vol)
    den = _lp_lq([f.samples for f in fs], p, q, vol)
    return num / den


def fefferman_stein_corpus(grid: Grid, p: float, q: float, size: int = 20, terms: int = 8,
                           seed: int = 0, op: MaxParams | None = None) -> np.ndarray:
    """Vector-valued ratios over a seeded corpus of sparse random sequences."""
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(size):
        seq = []
        for _ in range(terms):
            density = rng.uniform(0.01, 0.3)
            mask = rng.random(grid.shape) < density
            seq.append(GridFunction(grid, rng.standard_normal(grid.shape) * mask))
        ratios.append(vector_valued_ratio(seq, p, q, op))
    return np.asarray(ratios)
