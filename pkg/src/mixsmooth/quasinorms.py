"""Isotropic and dominating-mixed Besov / Lizorkin-Triebel quasi-norms.

A grid function is treated as exactly band-limited: dyadic levels run up to
the Nyquist level of each axis and nothing beyond is added. Band pieces are
produced one at a time and folded into a running ``l_q`` accumulator, so
memory stays at a few copies of the grid.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .dyadic_systems import DyadicSystem1D, make_cutoff_1d
from .grid import Grid, GridFunction, lp_norm_samples

__all__ = [
    "SpaceParams",
    "InvalidSpaceParams",
    "isotropic_bands",
    "mixed_bands",
    "norm",
    "norm_isotropic_F",
    "norm_isotropic_B",
    "norm_mixed_F",
    "norm_mixed_B",
    "NikolskijDecomposition",
    "nikolskij_decompose",
]

_SCALES = {"isotropic": "isotropic", "iso": "isotropic", "mixed": "mixed", "S": "mixed"}


class InvalidSpaceParams(ValueError):
    pass


@dataclass(frozen=True)
class SpaceParams:
    """Identifies one quasi-norm: ``F^t_{p,q}``, ``B^t_{p,q}``, ``S^t_{p,q}F`` or ``S^t_{p,q}B``."""

    scale: str
    family: str
    t: float
    p: float
    q: float
    d: int

    def __post_init__(self):
        scale = _SCALES.get(self.scale)
        if scale is None:
            raise InvalidSpaceParams(f"scale must be 'isotropic' or 'mixed', got {self.scale!r}")
        object.__setattr__(self, "scale", scale)
        family = str(self.family).upper()
        if family not in ("F", "B"):
            raise InvalidSpaceParams(f"family must be 'F' or 'B', got {self.family!r}")
        object.__setattr__(self, "family", family)
        for name in ("t", "p", "q"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not np.isfinite(self.t):
            raise InvalidSpaceParams("smoothness t must be finite")
        if not self.p > 0:
            raise InvalidSpaceParams(f"p must be positive, got {self.p}")
        if not self.q > 0:
            raise InvalidSpaceParams(f"q must be positive, got {self.q}")
        if family == "F" and np.isinf(self.p):
            raise InvalidSpaceParams("F-family requires p < inf")
        if int(self.d) != self.d or self.d < 1:
            raise InvalidSpaceParams(f"dimension must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))

    def label(self) -> str:
        sub = f"{_fmt(self.p)},{_fmt(self.q)}"
        if self.scale == "mixed":
            return f"S^{_fmt(self.t)}_{{{sub}}}{self.family}"
        return f"{self.family}^{_fmt(self.t)}_{{{sub}}}"


def _fmt(x: float) -> str:
    return "inf" if np.isinf(x) else f"{x:g}"


# --------------------------------------------------------------------------
# band pieces


def _axis_cutoffs(grid: Grid, axis: int, levels: int, cutoff):
    """``phi_0(2**-j w)`` on one axis for ``j = 0..levels``."""
    w = grid.frequencies(axis)
    return [cutoff(w / 2.0**j) for j in range(levels + 1)]


def _axis_bands(grid: Grid, axis: int, levels: int, system: DyadicSystem1D):
    w = grid.frequencies(axis)
    return [system(j, w) for j in range(levels + 1)]


def _bcast(v: np.ndarray, axis: int, d: int) -> np.ndarray:
    return v.reshape([-1 if a == axis else 1 for a in range(d)])


def _support_ranges(grid: Grid, spectrum: np.ndarray):
    """Per-axis (min, max) of ``|w_i|`` over the nonzero spectrum, or None if zero."""
    mask = spectrum != 0
    if not mask.any():
        return None
    ranges = []
    for i in range(grid.d):
        other = tuple(a for a in range(grid.d) if a != i)
        marginal = mask.any(axis=other) if other else mask
        w = np.abs(grid.frequencies(i)[marginal])
        ranges.append((w.min(), w.max()))
    return ranges


def _band_may_touch(j: int, lo: float, hi: float) -> bool:
    """Whether ``phi_j`` (or ``psi_j`` in sup-norm) can be nonzero on ``[lo, hi]``."""
    if j == 0:
        return lo < 1.5
    return hi > 2.0 ** (j - 1) and lo < 3 * 2.0 ** (j - 1)


def _to_samples(coefficients: np.ndarray) -> np.ndarray:
    return np.fft.ifftn(coefficients) * coefficients.size


def isotropic_bands(f: GridFunction, system: str = "psi", cutoff=None) -> Iterator[tuple]:
    """Yield ``(j, F^-1[psi_j F f])`` for the nonzero bands up to the Nyquist level.

    ``system="psi"`` uses the cube system ``psi_j``; ``system="phi"`` uses the
    radial system built from ``phi_0(|w|_2)``.
    """
    grid = f.grid
    cutoff = cutoff if cutoff is not None else make_cutoff_1d()
    spectrum = f.spectrum
    ranges = _support_ranges(grid, spectrum)
    if ranges is None:
        return
    J = max(grid.nyquist_levels)
    if system == "phi":
        # Euclidean radius reaches sqrt(d) * wmax
        J = int(np.ceil(np.log2(max(1.0, np.sqrt(sum(grid.max_frequency(i) ** 2
                                                        for i in range(grid.d)))))))
        radius = np.sqrt(sum(w**2 for w in grid.frequency_mesh()))
        lo, hi = 0.0, np.sqrt(sum(r[1] ** 2 for r in ranges))
        prev = None
        for j in range(J + 1):
            cur = cutoff(radius / 2.0**j)
            if _band_may_touch(j, lo, hi):
                coeff = spectrum * (cur if prev is None else cur - prev)
                if coeff.any():
                    yield j, _to_samples(coeff)
            prev = cur
        return
    if system != "psi":
        raise ValueError(f"unknown isotropic system {system!r}")
    lo = max(r[0] for r in ranges)
    hi = max(r[1] for r in ranges)
    d = grid.d
    factors = [_axis_cutoffs(grid, i, J, cutoff) for i in range(d)]
    for j in range(J + 1):
        if not _band_may_touch(j, lo, hi):
            continue
        cur = np.ones(grid.shape)
        for i in range(d):
            cur = cur * _bcast(factors[i][j], i, d)
        if j > 0:
            prev = np.ones(grid.shape)
            for i in range(d):
                prev = prev * _bcast(factors[i][j - 1], i, d)
            cur = cur - prev
        coeff = spectrum * cur
        if coeff.any():
            yield j, _to_samples(coeff)


def mixed_indices(grid: Grid):
    """Multi-indices of the box ``k_i <= J_i`` in lexicographic order."""
    return itertools.product(*(range(J + 1) for J in grid.nyquist_levels))


def mixed_bands(f: GridFunction, cutoff=None, fattened: bool = False) -> Iterator[tuple]:
    """Yield ``(k, F^-1[phi_k F f])`` for the nonzero tensor bands, lexicographic in ``k``.

    With ``fattened=True`` the multiplier is ``phi~_k``, restricted to the
    indices where ``phi_k F f`` itself is nonzero.
    """
    grid = f.grid
    system = DyadicSystem1D(cutoff)
    spectrum = f.spectrum
    ranges = _support_ranges(grid, spectrum)
    if ranges is None:
        return
    d = grid.d
    levels = grid.nyquist_levels
    bands = [_axis_bands(grid, i, levels[i] + 1, system) for i in range(d)]
    for k in mixed_indices(grid):
        if not all(_band_may_touch(k[i], *ranges[i]) for i in range(d)):
            continue
        coeff = spectrum
        for i in range(d):
            coeff = coeff * _bcast(bands[i][k[i]], i, d)
        if not coeff.any():
            continue
        if fattened:
            coeff = spectrum
            for i in range(d):
                fat = bands[i][k[i]] + bands[i][k[i] + 1]
                if k[i] > 0:
                    fat = fat + bands[i][k[i] - 1]
                coeff = coeff * _bcast(fat, i, d)
        yield k, _to_samples(coeff)


# --------------------------------------------------------------------------
# norms


def _check(f: GridFunction, s: SpaceParams, scale: str, family: str):
    if not isinstance(s, SpaceParams):
        raise InvalidSpaceParams("expected SpaceParams")
    if s.scale != scale or s.family != family:
        raise InvalidSpaceParams(f"{s.label()} is not a {scale} {family}-space")
    if s.d != f.grid.d:
        raise InvalidSpaceParams(f"space dimension {s.d} does not match grid dimension {f.grid.d}")


def _F_reduce(bands, weight, s: SpaceParams, grid: Grid) -> float:
    acc = np.zeros(grid.shape)
    q = s.q
    for idx, band in bands:
        a = weight(idx) * np.abs(band)
        if np.isinf(q):
            np.maximum(acc, a, out=acc)
        else:
            acc += a**q
    if not np.isinf(q):
        acc = acc ** (1.0 / q)
    return lp_norm_samples(acc, grid.cell_volume, s.p)


def _B_reduce(bands, weight, s: SpaceParams, grid: Grid) -> float:
    terms = [weight(idx) * lp_norm_samples(band, grid.cell_volume, s.p) for idx, band in bands]
    if not terms:
        return 0.0
    terms = np.asarray(terms)
    if np.isinf(s.q):
        return float(terms.max())
    return float(np.sum(terms**s.q) ** (1.0 / s.q))


def norm_isotropic_F(f: GridFunction, s: SpaceParams, system: str = "psi") -> float:
    """``|| (sum_j 2^{jtq} |F^-1[psi_j F f]|^q)^{1/q} | L_p ||``."""
    _check(f, s, "isotropic", "F")
    return _F_reduce(isotropic_bands(f, system), lambda j: 2.0 ** (j * s.t), s, f.grid)


def norm_isotropic_B(f: GridFunction, s: SpaceParams, system: str = "psi") -> float:
    """``(sum_j 2^{jtq} ||F^-1[psi_j F f] | L_p||^q)^{1/q}``."""
    _check(f, s, "isotropic", "B")
    return _B_reduce(isotropic_bands(f, system), lambda j: 2.0 ** (j * s.t), s, f.grid)


def norm_mixed_F(f: GridFunction, s: SpaceParams) -> float:
    """``|| (sum_k 2^{|k|_1 tq} |F^-1[phi_k F f]|^q)^{1/q} | L_p ||``."""
    _check(f, s, "mixed", "F")
    return _F_reduce(mixed_bands(f), lambda k: 2.0 ** (sum(k) * s.t), s, f.grid)


def norm_mixed_B(f: GridFunction, s: SpaceParams) -> float:
    _check(f, s, "mixed", "B")
    return _B_reduce(mixed_bands(f), lambda k: 2.0 ** (sum(k) * s.t), s, f.grid)


_DISPATCH = {
    ("isotropic", "F"): norm_isotropic_F,
    ("isotropic", "B"): norm_isotropic_B,
    ("mixed", "F"): norm_mixed_F,
    ("mixed", "B"): norm_mixed_B,
}


def norm(f: GridFunction, s: SpaceParams) -> float:
    """Quasi-norm of ``f`` in the space described by ``s``."""
    return _DISPATCH[s.scale, s.family](f, s)


# --------------------------------------------------------------------------
# Nikol'skij representation


@dataclass
class NikolskijDecomposition:
    """Pieces ``f_k = F^-1[phi~_k F f]`` of an admissible representation.

    Indices whose band ``phi_k F f`` vanishes carry the zero piece, which keeps
    the representation admissible.
    """

    grid: Grid
    params: SpaceParams
    pieces: dict = field(repr=False)
    upper_norm: float = 0.0

    def reconstruct(self) -> GridFunction:
        """``sum_k F^-1[phi_k F f_k]`` computed from the piece samples."""
        system = DyadicSystem1D()
        d = self.grid.d
        total = np.zeros(self.grid.shape, dtype=complex)
        for k, samples in self.pieces.items():
            coeff = np.fft.fftn(samples) / samples.size
            for i in range(d):
                coeff = coeff * _bcast(system(k[i], self.grid.frequencies(i)), i, d)
            total += coeff
        return GridFunction.from_spectrum(self.grid, total)


def nikolskij_decompose(f: GridFunction, s: SpaceParams) -> NikolskijDecomposition:
    """Representation ``f = sum_k F^-1[phi_k F f_k]`` with ``f_k = F^-1[phi~_k F f]``.

    ``upper_norm`` is ``|| 2^{t|k|_1} f_k | L_p(l_q) ||``, an upper bound for the
    infimum over admissible representations.
    """
    _check(f, s, "mixed", "F")
    pieces = dict(mixed_bands(f, fattened=True))
    upper = _F_reduce(pieces.items(), lambda k: 2.0 ** (sum(k) * s.t), s, f.grid)
    return NikolskijDecomposition(f.grid, s, pieces, upper)
