"""Periodic grids, grid functions and their discrete Fourier calculus.

A :class:`Grid` models ``R^d`` by a large torus with side lengths ``period``
sampled at ``n`` points per axis. Frequencies are angular, i.e. axis ``i``
carries the lattice ``2*pi*m / period[i]`` for ``m = -n/2, ..., n/2 - 1``,
so ``exp(1j * w * x)`` has frequency ``w``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Grid",
    "GridFunction",
    "NyquistError",
    "dft",
    "idft",
    "apply_multiplier",
    "lp_norm",
]


class NyquistError(ValueError):
    """A requested frequency content does not fit on the grid lattice."""


def _as_tuple(value, d, name):
    if np.ndim(value) == 0:
        return (value,) * d
    value = tuple(value)
    if len(value) != d:
        raise ValueError(f"{name} needs {d} entries, got {len(value)}")
    return value


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid.

    Parameters
    ----------
    n : tuple of int
        Samples per axis, each a power of two.
    period : tuple of float
        Torus side length per axis.
    """

    n: tuple
    period: tuple

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        period = tuple(float(v) for v in self.period)
        if len(n) != len(period) or not n:
            raise ValueError("n and period must have the same positive length")
        for v in n:
            if v < 2 or v & (v - 1):
                raise ValueError(f"samples per axis must be a power of two >= 2, got {v}")
        if any(not np.isfinite(L) or L <= 0 for L in period):
            raise ValueError("periods must be positive and finite")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "period", period)

    @classmethod
    def make(cls, d: int, n, period=2 * np.pi) -> "Grid":
        return cls(_as_tuple(n, d, "n"), _as_tuple(period, d, "period"))

    @classmethod
    def from_spacing(cls, d: int, n, dw) -> "Grid":
        """Grid whose frequency lattice has step ``dw`` (period ``2*pi/dw``)."""
        dw = _as_tuple(dw, d, "dw")
        return cls(_as_tuple(n, d, "n"), tuple(2 * np.pi / w for w in dw))

    @property
    def d(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> tuple:
        return self.n

    @property
    def spacing(self) -> tuple:
        return tuple(L / n for L, n in zip(self.period, self.n))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def volume(self) -> float:
        return float(np.prod(self.period))

    @property
    def dw(self) -> tuple:
        return tuple(2 * np.pi / L for L in self.period)

    def frequencies(self, axis: int) -> np.ndarray:
        """Angular frequencies of one axis in FFT order."""
        n, L = self.n[axis], self.period[axis]
        return 2 * np.pi * np.fft.fftfreq(n, d=L / n)

    def max_frequency(self, axis: int) -> float:
        return np.pi * self.n[axis] / self.period[axis]

    def coordinates(self, axis: int) -> np.ndarray:
        """Sample positions ``x = m * h``, ``m = 0..n-1`` (periodic)."""
        return np.arange(self.n[axis]) * self.spacing[axis]

    def centered_coordinates(self, axis: int) -> np.ndarray:
        """Sample positions reduced to the symmetric fundamental domain."""
        n = self.n[axis]
        m = np.fft.fftfreq(n, d=1.0 / n)
        return m * self.spacing[axis]

    def frequency_mesh(self) -> list:
        """Broadcastable per-axis frequency arrays."""
        return [self.frequencies(i).reshape([-1 if a == i else 1 for a in range(self.d)])
                for i in range(self.d)]

    def nyquist_level(self, axis: int) -> int:
        """Smallest ``J`` with ``phi_0(2**-J w) = 1`` on the whole axis lattice.

        All dyadic bands above ``J`` vanish identically on this axis.
        """
        wmax = self.max_frequency(axis)
        return max(0, int(np.ceil(np.log2(wmax)))) if wmax > 1 else 0

    @property
    def nyquist_levels(self) -> tuple:
        return tuple(self.nyquist_level(i) for i in range(self.d))

    def check_frequency(self, w: float, axis: int | None = None):
        """Raise :class:`NyquistError` unless ``|w|`` lies strictly inside the lattice range."""
        axes = range(self.d) if axis is None else [axis]
        for i in axes:
            limit = self.max_frequency(i) - self.dw[i]
            if abs(w) > limit + 1e-12:
                raise NyquistError(
                    f"frequency {w:g} exceeds the lattice range {limit:g} on axis {i}")


class GridFunction:
    """Complex samples of a periodic function on a :class:`Grid`.

    Samples are stored row-major with axis order ``x_1, ..., x_d``. When built
    from a spectrum the exact lattice spectrum is kept, so frequency supports
    can be tested for exact zeros.
    """

    def __init__(self, grid: Grid, samples, spectrum=None):
        samples = np.asarray(samples, dtype=complex)
        if samples.shape != grid.shape:
            raise ValueError(f"samples have shape {samples.shape}, grid expects {grid.shape}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        samples.setflags(write=False)
        self.grid = grid
        self.samples = samples
        if spectrum is not None:
            spectrum = np.asarray(spectrum, dtype=complex)
            spectrum.setflags(write=False)
        self._spectrum = spectrum

    @classmethod
    def from_spectrum(cls, grid: Grid, coefficients) -> "GridFunction":
        """Build from FFT-ordered coefficients ``c`` with ``f(x) = sum c_w exp(i w x)``."""
        coefficients = np.asarray(coefficients, dtype=complex)
        samples = np.fft.ifftn(coefficients) * coefficients.size
        return cls(grid, samples, spectrum=coefficients)

    @classmethod
    def from_continuous_spectrum(cls, grid: Grid, fourier: Callable) -> "GridFunction":
        """Sample ``f(x) = (2pi)^-d int fourier(w) exp(i w x) dw`` by a lattice sum.

        ``fourier`` receives the broadcastable per-axis frequency arrays.
        """
        values = np.broadcast_to(fourier(*grid.frequency_mesh()), grid.shape)
        return cls.from_spectrum(grid, values / grid.volume)

    @property
    def spectrum(self) -> np.ndarray:
        """Coefficients ``c_w`` with ``f(x) = sum_w c_w exp(i w x)`` in FFT order."""
        if self._spectrum is None:
            spec = np.fft.fftn(self.samples) / self.samples.size
            spec.setflags(write=False)
            self._spectrum = spec
        return self._spectrum

    def __mul__(self, c):
        spec = None if self._spectrum is None else self._spectrum * c
        return GridFunction(self.grid, self.samples * c, spectrum=spec)

    __rmul__ = __mul__

    def __add__(self, other: "GridFunction"):
        if other.grid != self.grid:
            raise ValueError("grid mismatch")
        spec = None
        if self._spectrum is not None and other._spectrum is not None:
            spec = self._spectrum + other._spectrum
        return GridFunction(self.grid, self.samples + other.samples, spectrum=spec)

    def __repr__(self):
        return f"GridFunction(n={self.grid.n}, period={self.grid.period})"


def dft(f: GridFunction) -> np.ndarray:
    """Unitary discrete Fourier transform of the samples (FFT order)."""
    return np.fft.fftn(f.samples, norm="ortho")


def idft(coefficients, grid: Grid) -> GridFunction:
    """Inverse of :func:`dft`."""
    return GridFunction(grid, np.fft.ifftn(coefficients, norm="ortho"))


def multiplier_on_lattice(grid: Grid, m) -> np.ndarray:
    """Evaluate ``m`` on the frequency lattice.

    ``m`` may be an array of the grid shape or a callable receiving the
    broadcastable per-axis frequency arrays.
    """
    if callable(m):
        values = m(*grid.frequency_mesh())
    else:
        values = m
    return np.broadcast_to(np.asarray(values), grid.shape)


def apply_multiplier(f: GridFunction, m) -> GridFunction:
    """Return ``F^-1[m F f]`` with ``m`` evaluated on the frequency lattice."""
    values = multiplier_on_lattice(f.grid, m)
    return GridFunction.from_spectrum(f.grid, values * f.spectrum)


def lp_norm_samples(values, cell_volume: float, p: float) -> float:
    """Riemann-sum ``L_p`` (quasi-)norm of sampled values."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    a = np.abs(values)
    if np.isinf(p):
        return float(a.max())
    if p == 2:
        return float(np.sqrt(cell_volume * np.vdot(a, a).real))
    return float((cell_volume * np.sum(a**p)) ** (1.0 / p))


def lp_norm(f: GridFunction, p: float) -> float:
    """``(h^d sum |f|^p)^(1/p)``, or ``max |f|`` when ``p`` is infinite."""
    return lp_norm_samples(f.samples, f.grid.cell_volume, p)
