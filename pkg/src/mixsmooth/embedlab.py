"""Embedding verdicts between ``S^t_{p,q}F`` and ``F^t_{p,q}`` / ``F^{td}_{p,q}``.

The two classifiers encode the known sufficient conditions, characterizations
and incomparability results as tri-state verdicts (``Yes`` / ``No`` /
``Open``). Each ``Yes`` or ``No`` carries a result tag from :data:`RESULTS`.
The numerical side compares norms of extremal families (ratio scans) and of
random band-limited corpora.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .grid import Grid, GridFunction, NyquistError
from .quasinorms import SpaceParams, norm
from .testfun import default_grid, make_family

__all__ = [
    "Status",
    "Claim",
    "EmbeddingVerdict",
    "RESULTS",
    "classify_SF_into_F",
    "classify_F_into_SF",
    "Condition",
    "necessary_conditions",
    "ScanRow",
    "ScanReport",
    "ratio_scan",
    "CorpusReport",
    "random_bandlimited",
    "random_corpus_check",
    "verdict_for_pair",
]


class Status(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    OPEN = "Open"


#: Result tags and the statements they stand for (``d >= 2`` throughout).
RESULTS = {
    "SF-F-sufficient": "S^t_{p,q}F -> F^t_{p,q} if t > 0; or t = 0, 1 < p < inf, q <= 2; "
                       "or t = 0, p <= 1, q < 2",
    "SF-F-iff": "for 1 < p < inf, 1 <= q <= inf: S^t_{p,q}F -> F^t_{p,q} iff t > 0 or "
                "(t = 0 and q <= 2)",
    "SF-F-q-necessity": "S^0_{p,q}F -> F^0_{p,q} implies q <= 2",
    "F-SF-negative-t": "F^t_{p,q} -> S^t_{p,q}F for t < 0, 1 < p < inf, 1 <= q <= inf",
    "SF-F-incomparable": "S^t_{p,q}F and F^t_{p,q} are not comparable for t < 0, 0 < p < 1",
    "Ftd-SF-sufficient": "F^{td}_{p,q} -> S^t_{p,q}F if t > (1/min(p,q) - 1)_+, q < inf; "
                         "or t = 0, 1 < p < inf, q >= 2",
    "Ftd-SF-q-infinity": "F^{td}_{p,inf} -> S^t_{p,inf}F if p > 1, t > 0 or p <= 1, t > 1/p",
    "Ftd-SF-iff": "for 1 < p < inf, 1 <= q <= inf: F^{td}_{p,q} -> S^t_{p,q}F iff t > 0 or "
                  "(t = 0 and q >= 2)",
    "Ftd-SF-incomparable": "S^t_{p,q}F and F^{td}_{p,q} are not comparable for 0 < p < 1, "
                           "0 < t <= 1/p - 1",
    "SF-Ftd-negative-t": "S^t_{p,q}F -> F^{td}_{p,q} for t < 0",
}


@dataclass(frozen=True)
class Claim:
    status: Status
    tag: Optional[str] = None

    def __str__(self):
        return self.status.value if self.tag is None else f"{self.status.value} [{self.tag}]"


OPEN = Claim(Status.OPEN)


def _yes(tag):
    return Claim(Status.YES, tag)


def _no(tag):
    return Claim(Status.NO, tag)


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Status of ``forward`` and ``reverse`` embeddings of one comparison.

    For :func:`classify_SF_into_F` forward is ``S^t F -> F^t``; for
    :func:`classify_F_into_SF` forward is ``F^{td} -> S^t F``.
    """

    comparison: str
    t: float
    p: float
    q: float
    d: int
    forward: Claim
    reverse: Claim

    @property
    def notes(self) -> list:
        return [f"{c.tag}: {RESULTS[c.tag]}" for c in (self.forward, self.reverse) if c.tag]

    def as_dict(self) -> dict:
        return {
            "comparison": self.comparison,
            "t": self.t, "p": self.p, "q": self.q, "d": self.d,
            "forward": self.forward.status.value, "forward_tag": self.forward.tag,
            "reverse": self.reverse.status.value, "reverse_tag": self.reverse.tag,
        }


def _validate(t, p, q, d):
    if int(d) != d or d < 2:
        raise ValueError(f"embedding comparison requires d >= 2, got d={d}")
    if not (0 < p < math.inf):
        raise ValueError(f"need 0 < p < inf, got p={p}")
    if not q > 0:
        raise ValueError(f"need 0 < q <= inf, got q={q}")
    if not math.isfinite(t):
        raise ValueError("t must be finite")


def _sf_into_f_forward(t, p, q) -> Claim:
    if t > 0:
        return _yes("SF-F-sufficient")
    if t == 0:
        if 1 < p and q <= 2:
            return _yes("SF-F-sufficient")
        if p <= 1 and q < 2:
            return _yes("SF-F-sufficient")
        if q > 2:
            return _no("SF-F-q-necessity")
        return OPEN
    if 1 < p and q >= 1:
        return _no("SF-F-iff")
    if p < 1:
        return _no("SF-F-incomparable")
    return OPEN


def _f_into_sf_forward(t, p, q) -> Claim:
    threshold = max(1 / min(p, q) - 1, 0.0)
    if q < math.inf and t > threshold:
        return _yes("Ftd-SF-sufficient")
    if t == 0 and 1 < p and q >= 2:
        return _yes("Ftd-SF-sufficient")
    if q == math.inf and ((p > 1 and t > 0) or (p <= 1 and t > 1 / p)):
        return _yes("Ftd-SF-q-infinity")
    if 1 < p and q >= 1 and not (t > 0 or (t == 0 and q >= 2)):
        return _no("Ftd-SF-iff")
    if p < 1 and 0 < t <= 1 / p - 1:
        return _no("Ftd-SF-incomparable")
    return OPEN


def classify_SF_into_F(t: float, p: float, q: float, d: int) -> EmbeddingVerdict:
    """Verdict for ``S^t_{p,q}F -> F^t_{p,q}`` (forward) and ``F^t_{p,q} -> S^t_{p,q}F`` (reverse).

    At ``t = 0`` both sides coincide with the ``F^{td}`` comparison, so the
    reverse verdict is read from :func:`classify_F_into_SF`.
    """
    _validate(t, p, q, d)
    forward = _sf_into_f_forward(t, p, q)
    if t < 0 and 1 < p and q >= 1:
        reverse = _yes("F-SF-negative-t")
    elif t < 0 and p < 1:
        reverse = _no("SF-F-incomparable")
    elif t == 0:
        reverse = _f_into_sf_forward(t, p, q)
    else:
        reverse = OPEN
    return EmbeddingVerdict("S^tF vs F^t", float(t), float(p), float(q), int(d), forward, reverse)


def classify_F_into_SF(t: float, p: float, q: float, d: int) -> EmbeddingVerdict:
    """Verdict for ``F^{td}_{p,q} -> S^t_{p,q}F`` (forward) and ``S^t_{p,q}F -> F^{td}_{p,q}`` (reverse)."""
    _validate(t, p, q, d)
    forward = _f_into_sf_forward(t, p, q)
    if t < 0:
        reverse = _yes("SF-Ftd-negative-t")
    elif p < 1 and 0 < t <= 1 / p - 1:
        reverse = _no("Ftd-SF-incomparable")
    elif t == 0:
        reverse = _sf_into_f_forward(t, p, q)
    else:
        reverse = OPEN
    return EmbeddingVerdict("S^tF vs F^{td}", float(t), float(p), float(q), int(d), forward, reverse)


def verdict_for_pair(src: SpaceParams, dst: SpaceParams) -> Optional[Claim]:
    """Classifier claim for ``src -> dst`` if the pair is one of the classified comparisons."""
    if src.family != "F" or dst.family != "F" or src.d != dst.d or src.d < 2:
        return None
    if (src.p, src.q) != (dst.p, dst.q):
        return None
    d = src.d
    if src.scale == "mixed" and dst.scale == "isotropic":
        if src.t == dst.t:
            return classify_SF_into_F(src.t, src.p, src.q, d).forward
        if dst.t == d * src.t:
            return classify_F_into_SF(src.t, src.p, src.q, d).reverse
    if src.scale == "isotropic" and dst.scale == "mixed":
        if src.t == dst.t:
            return classify_SF_into_F(src.t, src.p, src.q, d).reverse
        if src.t == d * dst.t:
            return classify_F_into_SF(dst.t, dst.p, dst.q, d).forward
    return None


# --------------------------------------------------------------------------
# necessary conditions


@dataclass(frozen=True)
class Condition:
    name: str
    satisfied: bool
    witness: str
    detail: str


def necessary_conditions(src: SpaceParams, dst: SpaceParams, direction: str | None = None) -> list:
    """Necessary conditions for ``src -> dst`` between a mixed and an isotropic F-space.

    ``direction`` is ``"mixed->iso"`` or ``"iso->mixed"``; it is inferred from
    the scales when omitted. Each condition names the family that witnesses
    its necessity.
    """
    inferred = f"{'mixed' if src.scale == 'mixed' else 'iso'}->{'mixed' if dst.scale == 'mixed' else 'iso'}"
    if direction is None:
        direction = inferred
    if direction not in ("mixed->iso", "iso->mixed") or direction != inferred:
        raise ValueError(f"direction {direction!r} does not match spaces {src.label()} -> {dst.label()}")
    if src.d != dst.d:
        raise ValueError("dimension mismatch")
    d = src.d
    out = [Condition("p-ordering", src.p <= dst.p, "ex6",
                     f"p_src = {src.p:g} <= p_dst = {dst.p:g}")]
    if direction == "mixed->iso":
        lhs, rhs = dst.t - 1 / dst.p, src.t - 1 / src.p
        out.append(Condition("differential-dimension", lhs <= rhs + 1e-12, "ex2",
                             f"t - 1/p = {lhs:g} <= t_0 - 1/p_0 = {rhs:g}"))
        if src.p == dst.p and src.t == dst.t:
            out.append(Condition("q-ordering", src.q <= dst.q, "ex4",
                                 f"q_0 = {src.q:g} <= q = {dst.q:g} (a_j = 2^(-jt))"))
    else:
        lhs, rhs = src.t - d / src.p, d * dst.t - d / dst.p
        out.append(Condition("differential-dimension", lhs >= rhs - 1e-12, "ex3",
                             f"t_0 - d/p_0 = {lhs:g} >= d t - d/p = {rhs:g}"))
        if src.p == dst.p and src.t == d * dst.t:
            out.append(Condition("q-ordering", src.q <= dst.q, "ex5",
                                 f"q_0 = {src.q:g} <= q = {dst.q:g} (a_j = 2^(-jt))"))
    return out


# --------------------------------------------------------------------------
# ratio scans


@dataclass(frozen=True)
class ScanRow:
    scale: int
    x: float
    src_norm: float
    dst_norm: float
    ratio: float
    predicted_ratio: Optional[float]


@dataclass
class ScanReport:
    family: str
    src: SpaceParams
    dst: SpaceParams
    d: int
    grid: Grid
    coeffs: str
    rows: list
    slope: float
    slope_stderr: float
    residual: float
    predicted_slope: Optional[float]
    verdict: Optional[Claim]
    consistent: Optional[bool]
    witnesses_failure: bool

    @property
    def scales(self) -> list:
        return [r.scale for r in self.rows]

    @property
    def ratios(self) -> np.ndarray:
        return np.array([r.ratio for r in self.rows])

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "src": self.src.label(),
            "dst": self.dst.label(),
            "d": self.d,
            "grid": {"n": list(self.grid.n), "period": list(self.grid.period)},
            "coeffs": self.coeffs,
            "rows": [r.__dict__ for r in self.rows],
            "slope": self.slope,
            "slope_stderr": self.slope_stderr,
            "residual": self.residual,
            "predicted_slope": self.predicted_slope,
            "verdict": None if self.verdict is None else str(self.verdict),
            "consistent": self.consistent,
            "witnesses_failure": self.witnesses_failure,
        }


def fit_slope(x, y) -> tuple:
    """Least-squares slope, its standard error and the residual norm of ``y ~ a + b x``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 3:
        raise ValueError("slope fit needs at least 3 points")
    A = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    dof = x.size - 2
    sigma2 = float(resid @ resid) / dof if dof > 0 else 0.0
    cov = sigma2 * np.linalg.inv(A.T @ A)
    return float(coef[1]), float(np.sqrt(max(cov[1, 1], 0.0))), float(np.linalg.norm(resid))


def _coeff_rule(rule, dst: SpaceParams) -> Callable:
    if callable(rule):
        return rule
    if rule in (None, "ones"):
        return lambda l: np.ones(l)
    if rule == "delta":
        return lambda l: np.eye(l)[-1]
    if rule == "decay":
        return lambda l: 2.0 ** (-np.arange(1, l + 1) * dst.t)
    raise ValueError(f"unknown coefficient rule {rule!r}")


GROWTH_TOL = 0.05


def ratio_scan(family: str, src: SpaceParams, dst: SpaceParams, scales: Sequence[int],
               coeffs=None, grid: Grid | None = None, max_points: int = 2**24) -> ScanReport:
    """Norm ratios ``||f_l | dst|| / ||f_l | src||`` across a family.

    The slope of ``log2`` ratio against the family's scale variable is
    compared with the slope predicted by the oracles and with the classifier
    verdict for ``src -> dst``. Grids larger than ``max_points`` raise
    :class:`NyquistError` before anything is allocated.
    """
    if src.d != dst.d:
        raise ValueError("dimension mismatch")
    scales = sorted(int(s) for s in scales)
    if len(scales) < 3:
        raise ValueError("slope fit needs at least 3 points")
    d = src.d
    if grid is None:
        grid = default_grid(family, max(scales), d)
    if float(np.prod(grid.n, dtype=float)) > max_points:
        raise NyquistError(f"{family} at scale {max(scales)} needs a grid of {list(grid.n)} points, "
                           f"more than the {max_points} point budget")
    rule = _coeff_rule(coeffs, dst)
    rows = []
    for l in scales:
        a = rule(l) if family in ("ex1", "ex4", "ex5") else None
        fam = make_family(family, l, d, grid=grid, coeffs=a)
        f = fam.generate()
        ns, nd = norm(f, src), norm(f, dst)
        if not (ns > 0 and nd > 0):
            raise ValueError(f"degenerate norms at scale {l}")
        os_, od = fam.oracle(src), fam.oracle(dst)
        pred = od.value / os_.value if (os_.available and od.available) else None
        rows.append(ScanRow(l, fam.scale_variable(), ns, nd, nd / ns, pred))
    x = [r.x for r in rows]
    slope, stderr, resid = fit_slope(x, np.log2([r.ratio for r in rows]))
    predicted = None
    if all(r.predicted_ratio is not None for r in rows):
        predicted = fit_slope(x, np.log2([r.predicted_ratio for r in rows]))[0]
    verdict = verdict_for_pair(src, dst)
    grows = slope > GROWTH_TOL and slope > 3 * stderr
    if verdict is None or verdict.status == Status.OPEN:
        consistent = None
    elif verdict.status == Status.YES:
        consistent = not grows
    else:
        consistent = True
    name = coeffs if isinstance(coeffs, str) or coeffs is None else "custom"
    return ScanReport(family, src, dst, d, grid, name or "ones", rows, slope, stderr, resid,
                      predicted, verdict, consistent, grows)


# --------------------------------------------------------------------------
# random corpora


def random_bandlimited(grid: Grid, rng: np.random.Generator, spread: float = 2.0) -> GridFunction:
    """Random function with spectrum in the dyadic levels ``1 .. J-1``.

    Every dyadic rectangle ``prod_i {2^(k_i-1) < |w_i| <= 2^k_i}`` gets an
    independent log-normal amplitude (log-spread ``spread``), so both
    axis-concentrated and diagonal spectra occur. Coefficients inside a
    rectangle are complex Gaussian.
    """
    J = max(grid.nyquist_levels)
    if J < 2:
        raise NyquistError("grid too coarse for levels 1 .. J-1")
    top = 2.0 ** (J - 1)
    mesh = [np.abs(w) for w in grid.frequency_mesh()]
    keep = np.ones(grid.shape, dtype=bool)
    for w in mesh:
        keep = keep & (w <= top)
    sup = np.zeros(grid.shape)
    for w in mesh:
        sup = np.maximum(sup, w)
    keep = keep & (sup > 1)
    index = np.zeros(grid.shape, dtype=int)
    for w in mesh:
        k = np.where(w > 1, np.ceil(np.log2(np.maximum(w, 1))), 0).astype(int)
        index = index * (J + 1) + k
    amplitude = np.exp(spread * rng.standard_normal((J + 1) ** grid.d))
    coeff = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    weight = np.where(keep, amplitude[index], 0.0)
    return GridFunction.from_spectrum(grid, coeff * weight / np.sqrt(keep.sum()))


@dataclass
class CorpusReport:
    src: SpaceParams
    dst: SpaceParams
    size: int
    seed: int
    ratios: np.ndarray
    verdict: Optional[Claim]

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.ratios))

    @property
    def median_ratio(self) -> float:
        return float(np.median(self.ratios))

    @property
    def finite(self) -> bool:
        return bool(np.all(np.isfinite(self.ratios)))

    def as_dict(self) -> dict:
        return {
            "src": self.src.label(), "dst": self.dst.label(), "size": self.size,
            "seed": self.seed, "max_ratio": self.max_ratio, "median_ratio": self.median_ratio,
            "finite": self.finite, "verdict": None if self.verdict is None else str(self.verdict),
            "ratios": [float(r) for r in self.ratios],
        }


def corpus_grid(d: int) -> Grid:
    n = {2: 128, 3: 32}.get(d, 16)
    return Grid.from_spacing(d, n, 1 / 2)


def random_corpus_check(src: SpaceParams, dst: SpaceParams, size: int, seed: int,
                        grid: Grid | None = None) -> CorpusReport:
    """``dst / src`` norm ratios over a seeded random band-limited corpus.

    Only meaningful where the classifier says ``src -> dst`` holds; other
    pairs are rejected. The largest ratio is an empirical embedding constant.
    """
    claim = verdict_for_pair(src, dst)
    if claim is None or claim.status != Status.YES:
        raise ValueError(f"{src.label()} -> {dst.label()} is not a classified embedding")
    grid = grid if grid is not None else corpus_grid(src.d)
    rng = np.random.default_rng(seed)
    ratios = []
    while len(ratios) < size:
        f = random_bandlimited(grid, rng)
        ns = norm(f, src)
        if ns == 0:
            continue
        ratios.append(norm(f, dst) / ns)
    return CorpusReport(src, dst, size, seed, np.asarray(ratios), claim)
