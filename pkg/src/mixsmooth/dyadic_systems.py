"""Smooth dyadic decompositions of unity.

All systems are generated by one even, non-negative cutoff ``phi_0`` with
``phi_0 = 1`` on ``[-1, 1]`` and ``phi_0 = 0`` outside ``(-3/2, 3/2)``:

* the 1D system ``phi_j(xi) = phi_0(2**-j xi) - phi_0(2**(1-j) xi)``,
* the isotropic cube system ``psi_j`` built from ``psi_0(x) = prod_i phi_0(x_i)``,
* the tensor system ``phi_k(x) = prod_i phi_{k_i}(x_i)`` for multi-indices ``k``,
* the fattened system ``phi_j~ = phi_{j-1} + phi_j + phi_{j+1}``.

Everything here is a pure function of frequency and is evaluated lazily; no
tables are stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

__all__ = [
    "SmoothCutoff1D",
    "make_cutoff_1d",
    "DyadicSystem1D",
    "IsotropicCubeSystem",
    "MixedSystem",
    "phi",
    "psi",
    "psi0",
    "phi_tensor",
    "phi_fattened",
    "outer",
]


def _flat_exp(s):
    """exp(-1/s) for s > 0, zero otherwise."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def smooth_step(s):
    """C-infinity step: 0 for s <= 0, 1 for s >= 1, strictly increasing between."""
    a = _flat_exp(s)
    b = _flat_exp(1.0 - np.asarray(s, dtype=float))
    return a / (a + b)


@dataclass(frozen=True)
class SmoothCutoff1D:
    """Even cutoff equal to 1 on the plateau and 0 beyond the support radius.

    The transition on ``[plateau_radius, support_radius]`` is the classical
    ``exp(-1/s)`` smooth step, so it is strictly decreasing there.
    """

    plateau_radius: float = 1.0
    support_radius: float = 1.5

    def __call__(self, xi):
        r = np.abs(np.asarray(xi, dtype=float))
        width = self.support_radius - self.plateau_radius
        return smooth_step((self.support_radius - r) / width)


def make_cutoff_1d() -> SmoothCutoff1D:
    return SmoothCutoff1D()


_DEFAULT_CUTOFF = make_cutoff_1d()


def outer(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Tensor product of 1D arrays, axis order preserved."""
    return reduce(np.multiply.outer, vectors)


class DyadicSystem1D:
    """The 1D dyadic system ``{phi_j}`` generated by a cutoff."""

    def __init__(self, generator: SmoothCutoff1D | None = None):
        self.generator = generator if generator is not None else _DEFAULT_CUTOFF

    def __call__(self, j: int, xi):
        if j < 0:
            return np.zeros_like(np.asarray(xi, dtype=float))
        xi = np.asarray(xi, dtype=float)
        if j == 0:
            return self.generator(xi)
        return self.generator(xi / 2.0**j) - self.generator(xi / 2.0 ** (j - 1))

    def fattened(self, j: int, xi):
        """``phi_{j-1} + phi_j + phi_{j+1}`` with ``phi_{-1} = 0``; equals 1 on supp phi_j."""
        return self(j - 1, xi) + self(j, xi) + self(j + 1, xi)

    def partial_sum(self, J: int, xi):
        return sum(self(j, xi) for j in range(J + 1))


class IsotropicCubeSystem:
    """Cube-adapted isotropic system ``psi_j`` in dimension ``d``.

    Points are arrays whose last axis has length ``d``.
    """

    def __init__(self, d: int, generator: SmoothCutoff1D | None = None):
        self.d = d
        self.generator = generator if generator is not None else _DEFAULT_CUTOFF

    def psi0(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.d:
            raise ValueError(f"expected points of dimension {self.d}, got {x.shape[-1]}")
        return np.prod(self.generator(x), axis=-1)

    def __call__(self, j: int, x):
        x = np.asarray(x, dtype=float)
        if j == 0:
            return self.psi0(x)
        return self.psi0(x / 2.0**j) - self.psi0(x / 2.0 ** (j - 1))


class MixedSystem:
    """Tensor-product system ``phi_k(x) = prod_i phi_{k_i}(x_i)``."""

    def __init__(self, d: int, generator: SmoothCutoff1D | None = None):
        self.d = d
        self.system = DyadicSystem1D(generator)

    def __call__(self, k: Sequence[int], x):
        x = np.asarray(x, dtype=float)
        if len(k) != self.d or x.shape[-1] != self.d:
            raise ValueError(f"multi-index and points must have dimension {self.d}")
        out = np.ones(x.shape[:-1])
        for i, ki in enumerate(k):
            out = out * self.system(ki, x[..., i])
        return out

    def fattened(self, k: Sequence[int], x):
        x = np.asarray(x, dtype=float)
        out = np.ones(x.shape[:-1])
        for i, ki in enumerate(k):
            out = out * self.system.fattened(ki, x[..., i])
        return out


_PHI = DyadicSystem1D()


def phi(j: int, xi):
    """``phi_j(xi)`` of the default system."""
    return _PHI(j, xi)


def phi_fattened(j: int, xi):
    return _PHI.fattened(j, xi)


def psi0(x):
    x = np.asarray(x, dtype=float)
    return np.prod(_DEFAULT_CUTOFF(x), axis=-1)


def psi(j: int, x):
    """``psi_j(x)`` for points ``x`` with the dimension on the last axis."""
    return IsotropicCubeSystem(np.shape(x)[-1])(j, x)


def phi_tensor(k: Sequence[int], x):
    return MixedSystem(len(k))(k, x)
