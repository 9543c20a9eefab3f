"""Extremal test-function families with closed-form norm oracles.

Each generator builds the lattice spectrum directly, so frequency supports
hold exactly on the grid. All bumps use the same ``exp(-1/s)`` profile as the
dyadic cutoff.

======  =========================================================  ==================
family  spectrum                                                   scale index
======  =========================================================  ==================
ex1     theta_l(w_1)...theta_l(w_{d-1}) * sum_j a_j eta(w_d - 7/8 2^j)   l
ex2     g(2^-l w_1) g(w_2) ... g(w_d)                               l
ex3     g(2^-l w_1) ... g(2^-l w_d)                                 l
ex4     sum_j a_j g_hat(w - 7/8 2^j e_1)                            l
ex5     sum_j a_j g_hat(w - 7/8 2^j (1, ..., 1))                    l
ex6     rho_hat(2^j w)  (h_j(x) = rho(2^-j x))                      j
======  =========================================================  ==================
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .dyadic_systems import make_cutoff_1d, smooth_step
from .grid import Grid, GridFunction, NyquistError, lp_norm
from .quasinorms import SpaceParams

__all__ = [
    "FAMILIES",
    "Oracle",
    "TestFamily",
    "bump",
    "example1",
    "example2",
    "example3",
    "example4",
    "example5",
    "example6",
    "default_grid",
    "make_family",
    "rho_lp_norm",
    "spectral_support_ok",
]

FAMILIES = ("ex1", "ex2", "ex3", "ex4", "ex5", "ex6")

ETA_SUPPORT = (1 / 32, 7 / 32)      # eta (ex1) and each factor of g (ex4/5)
THETA_SUPPORT = (1.6, 1.9)          # inside {phi_1 = 1} = [3/2, 2]
ANNULUS_SUPPORT = (0.75, 1.0)       # g of ex2/ex3, in |w|
RHO_WIDTH = 30.0                    # Gaussian factor exp(-RHO_WIDTH |w|^2) of rho_hat


def bump(x, lo: float, hi: float):
    """Smooth bump, 1 at the midpoint of ``[lo, hi]`` and 0 outside ``(lo, hi)``."""
    x = np.asarray(x, dtype=float)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    return smooth_step(1.0 - np.abs(x - mid) / half)


def _modulation(j: int) -> float:
    return 7 / 8 * 2.0**j


def _theta(w, l: int):
    # theta_l(w) = theta_1(2^{1-l} w)
    return bump(w / 2.0 ** (l - 1), *THETA_SUPPORT)


def _annulus(w, l: int):
    return bump(np.abs(w) / 2.0**l, *ANNULUS_SUPPORT)


def _rho_hat(*w):
    r2 = sum(wi**2 for wi in w)
    r = np.sqrt(r2)
    return np.exp(-RHO_WIDTH * r2) * make_cutoff_1d()(1.5 * r)


def _coeffs(l: int, a) -> np.ndarray:
    if a is None:
        return np.ones(l)
    a = np.asarray(a, dtype=complex)
    if a.shape != (l,):
        raise ValueError(f"expected {l} coefficients, got {a.shape}")
    return a


def _check_grid(grid: Grid, d: int):
    if grid.d != d:
        raise ValueError(f"grid has dimension {grid.d}, family requested d={d}")


def _lattice(grid: Grid, fourier) -> GridFunction:
    return GridFunction.from_continuous_spectrum(grid, fourier)


def example1(l: int, a, d: int, grid: Grid) -> GridFunction:
    """Modulated bumps along the last axis times ``theta_l`` on the others.

    Every band of the last axis carries one modulated copy of ``eta``; the
    whole spectrum sits where ``psi_l = 1``.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    _check_grid(grid, d)
    a = _coeffs(l, a)
    grid.check_frequency(_modulation(l) + ETA_SUPPORT[1], axis=d - 1)
    for i in range(d - 1):
        grid.check_frequency(2.0 ** (l - 1) * THETA_SUPPORT[1], axis=i)

    def fourier(*w):
        out = sum(a[j - 1] * bump(w[-1] - _modulation(j), *ETA_SUPPORT) for j in range(1, l + 1))
        for i in range(d - 1):
            out = out * _theta(w[i], l)
        return out

    return _lattice(grid, fourier)


def example2(l: int, d: int, grid: Grid) -> GridFunction:
    """``F^-1[g(2^-l w_1) g(w_2) ... g(w_d)]`` with ``g`` supported in ``3/4 <= |w| <= 1``."""
    if l < 0:
        raise ValueError("l must be >= 0")
    _check_grid(grid, d)
    grid.check_frequency(2.0**l, axis=0)
    for i in range(1, d):
        grid.check_frequency(1.0, axis=i)

    def fourier(*w):
        out = _annulus(w[0], l)
        for wi in w[1:]:
            out = out * _annulus(wi, 0)
        return out

    return _lattice(grid, fourier)


def example3(l: int, d: int, grid: Grid) -> GridFunction:
    """``F^-1[g(2^-l w_1) ... g(2^-l w_d)]``."""
    if l < 0:
        raise ValueError("l must be >= 0")
    _check_grid(grid, d)
    grid.check_frequency(2.0**l)

    def fourier(*w):
        out = 1.0
        for wi in w:
            out = out * _annulus(wi, l)
        return out

    return _lattice(grid, fourier)


def _g_hat(*w):
    out = 1.0
    for wi in w:
        out = out * bump(wi, *ETA_SUPPORT)
    return out


def _modulated_sum(l: int, a, d: int, grid: Grid, axes: Sequence[int]) -> GridFunction:
    a = _coeffs(l, a)
    for i in axes:
        grid.check_frequency(_modulation(l) + ETA_SUPPORT[1], axis=i)
    for i in range(d):
        if i not in axes:
            grid.check_frequency(ETA_SUPPORT[1], axis=i)
    for i in axes:
        step = grid.dw[i]
        if any(abs(_modulation(j) / step - round(_modulation(j) / step)) > 1e-9
               for j in range(1, l + 1)):
            raise ValueError(f"modulation frequencies are not on the lattice of axis {i}")

    def fourier(*w):
        total = 0.0
        for j in range(1, l + 1):
            shifted = [wi - _modulation(j) if i in axes else wi for i, wi in enumerate(w)]
            total = total + a[j - 1] * _g_hat(*shifted)
        return total

    return _lattice(grid, fourier)


def example4(l: int, a, d: int, grid: Grid) -> GridFunction:
    """``sum_j a_j exp(i 7/8 2^j x_1) g(x)``."""
    if l < 1:
        raise ValueError("l must be >= 1")
    _check_grid(grid, d)
    return _modulated_sum(l, a, d, grid, axes=(0,))


def example5(l: int, a, d: int, grid: Grid) -> GridFunction:
    """``sum_j a_j exp(i 7/8 2^j (x_1 + ... + x_d)) g(x)``."""
    if l < 1:
        raise ValueError("l must be >= 1")
    _check_grid(grid, d)
    return _modulated_sum(l, a, d, grid, axes=tuple(range(d)))


def example6(j: int, d: int, grid: Grid) -> GridFunction:
    """``h_j(x) = rho(2^-j x)`` with ``rho_hat`` supported in the unit ball."""
    if j < 0:
        raise ValueError("j must be >= 0")
    _check_grid(grid, d)
    radius = 2.0**-j
    for i in range(d):
        if radius > grid.max_frequency(i) + 1e-12:
            raise NyquistError(f"h_{j} has spectral radius {radius:g}, beyond axis {i}")
    scale = 2.0 ** (j * d)
    return _lattice(grid, lambda *w: scale * _rho_hat(*(2.0**j * wi for wi in w)))


def g_function(d: int, grid: Grid) -> GridFunction:
    """The common envelope ``g`` of ex4/ex5 on ``grid``."""
    return _lattice(grid, _g_hat)


@lru_cache(maxsize=None)
def rho_lp_norm(p: float, d: int) -> float:
    """``||rho | L_p||`` on a reference grid that resolves ``rho`` itself."""
    n = {1: 1024, 2: 128, 3: 64}.get(d)
    if n is None:
        raise ValueError("reference grid available for d <= 3")
    grid = Grid.from_spacing(d, n, 1 / 16)
    return lp_norm(example6(0, d, grid), p)


# --------------------------------------------------------------------------
# oracles


@dataclass(frozen=True)
class Oracle:
    """Predicted norm of a family member.

    ``kind`` is ``"exact"`` (``value`` is the norm), ``"asymptotic"`` (``value``
    is the norm up to a constant that does not depend on the scale index) or
    ``"none"``.
    """

    kind: str
    value: Optional[float] = None
    note: str = ""

    @property
    def available(self) -> bool:
        return self.kind != "none"


def _lq(values, q: float) -> float:
    values = np.abs(np.asarray(values))
    if np.isinf(q):
        return float(values.max())
    return float(np.sum(values**q) ** (1.0 / q))


@dataclass(frozen=True)
class TestFamily:
    """One member of a family: name, scale index, coefficients, dimension and grid."""

    __test__ = False  # not a pytest class

    name: str
    scale: int
    d: int
    grid: Grid
    coeffs: Optional[tuple] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}; expected one of {FAMILIES}")
        if self.coeffs is not None:
            object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def a(self) -> np.ndarray:
        return _coeffs(self.scale, self.coeffs) if self.name in ("ex1", "ex4", "ex5") else None

    def generate(self) -> GridFunction:
        if "f" not in self._cache:
            l, d, grid = self.scale, self.d, self.grid
            self._cache["f"] = {
                "ex1": lambda: example1(l, self.coeffs, d, grid),
                "ex2": lambda: example2(l, d, grid),
                "ex3": lambda: example3(l, d, grid),
                "ex4": lambda: example4(l, self.coeffs, d, grid),
                "ex5": lambda: example5(l, self.coeffs, d, grid),
                "ex6": lambda: example6(l, d, grid),
            }[self.name]()
        return self._cache["f"]

    def oracle(self, space: SpaceParams) -> Oracle:
        if space.d != self.d:
            raise ValueError("space and family dimensions differ")
        return getattr(self, f"_oracle_{self.name}")(space)

    def _oracle_ex1(self, s: SpaceParams) -> Oracle:
        if s.t != 0:
            return Oracle("none", note="formulas are stated for t = 0")
        l, d = self.scale, self.d
        growth = 2.0 ** (l * (1 - 1 / s.p) * (d - 1))
        if s.scale == "mixed":
            return Oracle("asymptotic", growth * _lq(self.a, s.q),
                          "C_1 2^{l(1-1/p)(d-1)} (sum |a_j|^q)^{1/q}")
        if not 1 < s.p < np.inf:
            return Oracle("none", note="isotropic formula needs 1 < p < inf")
        return Oracle("asymptotic", growth * _lq(self.a, 2.0),
                      "~ 2^{l(1-1/p)(d-1)} (sum |a_j|^2)^{1/2}")

    def _oracle_ex2(self, s: SpaceParams) -> Oracle:
        return Oracle("asymptotic", 2.0 ** (self.scale * (s.t + 1 - 1 / s.p)),
                      "C 2^{l(t+1-1/p)}, same C for both scales")

    def _oracle_ex3(self, s: SpaceParams) -> Oracle:
        l, d = self.scale, self.d
        if s.scale == "mixed":
            return Oracle("asymptotic", 2.0 ** (d * l * (s.t + 1 - 1 / s.p)),
                          "C_3 2^{dl(t+1-1/p)}")
        return Oracle("asymptotic", 2.0 ** (d * l * (s.t / d + 1 - 1 / s.p)),
                      "C_3 2^{dl(t/d+1-1/p)}")

    def _g_norm(self, p: float) -> float:
        key = ("g", p)
        if key not in self._cache:
            self._cache[key] = lp_norm(g_function(self.d, self.grid), p)
        return self._cache[key]

    def _oracle_ex4(self, s: SpaceParams) -> Oracle:
        j = np.arange(1, self.scale + 1)
        return Oracle("exact", self._g_norm(s.p) * _lq(2.0 ** (j * s.t) * np.abs(self.a), s.q),
                      "||g|L_p|| (sum 2^{jtq} |a_j|^q)^{1/q}")

    def _oracle_ex5(self, s: SpaceParams) -> Oracle:
        j = np.arange(1, self.scale + 1)
        weight = self.d * s.t if s.scale == "mixed" else s.t
        return Oracle("exact", self._g_norm(s.p) * _lq(2.0 ** (j * weight) * np.abs(self.a), s.q),
                      "||g|L_p|| (sum 2^{jtq} |a_j|^q)^{1/q}, d*t for the mixed scale")

    def _oracle_ex6(self, s: SpaceParams) -> Oracle:
        if np.isinf(s.p):
            return Oracle("none", note="p = inf not covered")
        return Oracle("exact", 2.0 ** (self.scale * self.d / s.p) * rho_lp_norm(s.p, self.d),
                      "2^{jd/p} ||rho|L_p||")

    def scale_variable(self) -> float:
        """Abscissa used when fitting log2 norm ratios across a scan."""
        return math.log2(self.scale) if self.name == "ex1" else float(self.scale)


def _pow2_at_least(x: float, minimum: int = 16) -> int:
    n = minimum
    while n < x:
        n *= 2
    return n


def default_grid(name: str, scale: int, d: int) -> Grid:
    """A grid on which family ``name`` at ``scale`` is well resolved."""
    if name == "ex1":
        dw = 1 / 8 if d <= 2 else 1 / 2
        need = [2.0 ** (scale - 1) * THETA_SUPPORT[1]] * (d - 1)
        need.append(_modulation(scale) + ETA_SUPPORT[1])
        n = [_pow2_at_least(2 * (w / dw + 2)) for w in need]
        return Grid.from_spacing(d, n, dw)
    if name in ("ex2", "ex3"):
        dw = 1 / 32 if d <= 2 else 1 / 8
        top = 2.0**scale
        need = [top] + [top if name == "ex3" else 1.0] * (d - 1)
        n = [_pow2_at_least(2 * (w / dw + 2)) for w in need]
        return Grid.from_spacing(d, n, dw)
    if name in ("ex4", "ex5"):
        dw = 1 / 16
        top = _modulation(max(scale, 1)) + ETA_SUPPORT[1]
        need = [top] + [top if name == "ex5" else ETA_SUPPORT[1]] * (d - 1)
        n = [_pow2_at_least(2 * (w / dw + 2)) for w in need]
        return Grid.from_spacing(d, n, dw)
    if name == "ex6":
        n = {1: 4096, 2: 512, 3: 128}.get(d, 64)
        return Grid.from_spacing(d, n, 2.0 ** (1 - scale) / n)
    raise ValueError(f"unknown family {name!r}")


def make_family(name: str, scale: int, d: int, grid: Grid | None = None, coeffs=None) -> TestFamily:
    if grid is None:
        grid = default_grid(name, scale, d)
    return TestFamily(name, scale, d, grid, None if coeffs is None else tuple(coeffs))


def spectral_support_ok(family: TestFamily, atol: float = 0.0) -> bool:
    """Exact lattice check that the spectrum vanishes outside the prescribed region."""
    f = family.generate()
    grid, l, d = family.grid, family.scale, family.d
    w = grid.frequency_mesh()
    inside = _support_region(family.name, l, d, w)
    outside = np.abs(f.spectrum)[~np.broadcast_to(inside, grid.shape)]
    return bool(outside.size == 0 or outside.max() <= atol)


def _support_region(name, l, d, w):
    def within(x, lo, hi):
        return (x > lo) & (x < hi)

    if name == "ex1":
        region = np.zeros(1, dtype=bool)
        for j in range(1, l + 1):
            region = region | within(w[-1] - _modulation(j), *ETA_SUPPORT)
        for i in range(d - 1):
            region = region & within(w[i] / 2.0 ** (l - 1), *THETA_SUPPORT)
        return region
    if name in ("ex2", "ex3"):
        region = np.ones(1, dtype=bool)
        for i in range(d):
            scale = 2.0**l if (i == 0 or name == "ex3") else 1.0
            region = region & within(np.abs(w[i]) / scale, *ANNULUS_SUPPORT)
        return region
    if name in ("ex4", "ex5"):
        region = np.zeros(1, dtype=bool)
        for j in range(1, l + 1):
            part = np.ones(1, dtype=bool)
            for i in range(d):
                shift = _modulation(j) if (i == 0 or name == "ex5") else 0.0
                part = part & within(w[i] - shift, *ETA_SUPPORT)
            region = region | part
        return region
    if name == "ex6":
        return sum(wi**2 for wi in w) < 2.0 ** (-2 * l)
    raise ValueError(name)
