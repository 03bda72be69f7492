"""Discrete spectra and their energy moments.

A response function is represented here as a finite list of eigenfrequencies
``omega_k`` with nonnegative weights ``w_k``; all structure functions in this
package are weighted sums of delta peaks. Two analytic weight profiles are
provided for benchmarks: a skewed Gaussian peak and a power-law threshold
tail. Both are discretized on a midpoint grid and normalized to unit total
weight by :func:`make_model`.

Energy moments mu_n = sum_k w_k omega_k^n and absolute central moments
mu~_n = sum_k w_k |omega_k - mean|^n drive the period planners in
:mod:`fouriergit.planner`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf

_WEIGHT_FLOOR = 1e-300  # weights below this underflow to 0 in the models


@dataclass(frozen=True)
class PeakParams:
    """Skewed Gaussian profile: location xi, width beta, skewness alpha."""

    xi: float = -0.95
    beta: float = 0.05
    alpha: float = 5.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class TailParams:
    """Threshold tail lam*rho / (|omega - omega_thr|^gamma + rho) above
    omega_thr, zero below."""

    omega_thr: float = -0.95
    lam: float = 1.0
    rho: float = 0.002
    gamma: float = 1.0

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


def eval_peak(omega, params: PeakParams = PeakParams()):
    """Skewed Gaussian weight profile.

    Parameters
    ----------
    omega : float or array_like
        Frequency (units of energy).
    params : PeakParams

    Returns
    -------
    float or ndarray, same shape as omega.
    """
    omega = np.asarray(omega, dtype=np.float64)
    z = (omega - params.xi) / params.beta
    pref = 1.0 / (params.beta * math.sqrt(2.0 * math.pi))
    val = pref * np.exp(-0.5 * z * z) * (1.0 + erf(params.alpha * z / math.sqrt(2.0)))
    return val if val.ndim else float(val)


def eval_tail(omega, params: TailParams = TailParams()):
    """Power-law threshold tail, vanishing below omega_thr."""
    omega = np.asarray(omega, dtype=np.float64)
    d = np.abs(omega - params.omega_thr)
    val = np.where(
        omega >= params.omega_thr,
        params.lam * params.rho / (d**params.gamma + params.rho),
        0.0,
    )
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class DiscreteSpectrum:
    """Weighted point spectrum on [-norm_scale, norm_scale].

    eigenfrequencies must be strictly increasing, weights nonnegative.
    Arrays are copied and frozen read-only. Weights below 1e-300 are
    clamped to exactly zero.
    """

    eigenfrequencies: np.ndarray
    weights: np.ndarray
    norm_scale: float = 1.0

    def __post_init__(self):
        om = np.array(self.eigenfrequencies, dtype=np.float64)
        w = np.array(self.weights, dtype=np.float64)
        if om.ndim != 1 or w.ndim != 1:
            raise ValueError("eigenfrequencies and weights must be 1-d")
        if om.shape != w.shape:
            raise ValueError(
                f"length mismatch: {om.shape[0]} eigenfrequencies, "
                f"{w.shape[0]} weights"
            )
        if om.size == 0:
            raise ValueError("spectrum must contain at least one eigenfrequency")
        if not (np.isfinite(om).all() and np.isfinite(w).all()):
            raise ValueError("eigenfrequencies and weights must be finite")
        if not self.norm_scale > 0:
            raise ValueError(f"norm_scale must be positive, got {self.norm_scale}")
        if om.size > 1 and not (np.diff(om) > 0).all():
            raise ValueError("eigenfrequencies must be strictly increasing")
        if (w < 0).any():
            raise ValueError("weights must be nonnegative")
        if (np.abs(om) > self.norm_scale).any():
            raise ValueError(
                f"all |eigenfrequencies| must be <= norm_scale={self.norm_scale}"
            )
        w[w < _WEIGHT_FLOOR] = 0.0
        om.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "eigenfrequencies", om)
        object.__setattr__(self, "weights", w)

    @property
    def n_eigen(self) -> int:
        return self.eigenfrequencies.size

    @property
    def mu0(self) -> float:
        """Total weight."""
        return float(self.weights.sum())


@dataclass(frozen=True)
class MomentSummary:
    """Normalized mean/width plus raw absolute central moments.

    mu0 is the total weight, mu1 the weighted mean energy, sigma the
    weighted standard deviation. central maps order n to the raw sum
    sum_k w_k |omega_k - mu1|^n, so central[2] equals sigma**2 when
    mu0 = 1.
    """

    mu0: float
    mu1: float
    sigma: float
    central: dict = field(default_factory=dict)


def energy_moment(spectrum: DiscreteSpectrum, n: int) -> float:
    """Raw energy moment sum_k w_k omega_k^n.

    n = 0 gives the total weight, n = 1 the unnormalized mean.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"moment order must be a nonnegative integer, got {n}")
    if n == 0:
        return spectrum.mu0
    return float(np.dot(spectrum.weights, spectrum.eigenfrequencies ** int(n)))


def central_moment(spectrum: DiscreteSpectrum, n: int) -> float:
    """Raw absolute central moment sum_k w_k |omega_k - mean|^n, n >= 1."""
    if n < 1 or n != int(n):
        raise ValueError(f"central moment order must be an integer >= 1, got {n}")
    mu0 = spectrum.mu0
    if mu0 <= 0:
        raise ValueError("central moments need positive total weight")
    mean = energy_moment(spectrum, 1) / mu0
    d = np.abs(spectrum.eigenfrequencies - mean)
    return float(np.dot(spectrum.weights, d ** int(n)))


def summarize(spectrum: DiscreteSpectrum, orders=(2,)) -> MomentSummary:
    """Mean, width and the requested absolute central moments."""
    mu0 = spectrum.mu0
    if mu0 <= 0:
        raise ValueError("summary needs positive total weight")
    mean = energy_moment(spectrum, 1) / mu0
    var = central_moment(spectrum, 2) / mu0
    sigma = math.sqrt(max(var, 0.0))
    central = {int(n): central_moment(spectrum, int(n)) for n in orders}
    return MomentSummary(mu0=mu0, mu1=mean, sigma=sigma, central=central)


def midpoint_grid(n_eigen: int, norm_scale: float = 1.0) -> np.ndarray:
    """n_eigen midpoints of a uniform partition of [-norm_scale, norm_scale]."""
    if n_eigen < 1:
        raise ValueError(f"n_eigen must be >= 1, got {n_eigen}")
    step = 2.0 * norm_scale / n_eigen
    return -norm_scale + (np.arange(n_eigen) + 0.5) * step


def make_model(
    kind: str,
    n_eigen: int = 512,
    placement: str = "uniform",
    peak: PeakParams = PeakParams(),
    tail: TailParams = TailParams(),
    norm_scale: float = 1.0,
) -> DiscreteSpectrum:
    """Benchmark spectrum of the given family, normalized to mu0 = 1.

    Parameters
    ----------
    kind : {'A', 'B'}
        'A' is the skewed Gaussian peak alone, 'B' the peak plus the
        power-law threshold tail (case-insensitive).
    n_eigen : int
        Number of eigenfrequencies.
    placement : {'uniform'}
        Eigenfrequency placement rule. 'uniform' puts omega_k at the
        midpoints of n_eigen equal bins spanning [-norm_scale, norm_scale].
    peak, tail : profile parameters for the respective family.
    norm_scale : float
        Half-width of the eigenfrequency interval (the spectral norm bound).

    Returns
    -------
    DiscreteSpectrum with weights summing to 1.
    """
    if placement != "uniform":
        raise ValueError(f"unknown placement rule {placement!r}")
    key = str(kind).strip().upper()
    grid = midpoint_grid(n_eigen, norm_scale)
    if key == "A":
        w = np.asarray(eval_peak(grid, peak), dtype=np.float64)
    elif key == "B":
        w = np.asarray(eval_peak(grid, peak), dtype=np.float64) + np.asarray(
            eval_tail(grid, tail), dtype=np.float64
        )
    else:
        raise ValueError(f"unknown model kind {kind!r}; expected 'A' or 'B'")
    w = w.copy()
    w[w < _WEIGHT_FLOOR] = 0.0
    total = w.sum()
    if not (np.isfinite(total) and total > 0):
        raise ValueError(
            f"model {key} weights sum to {total}; profile parameters leave "
            "no weight on the eigenfrequency grid"
        )
    return DiscreteSpectrum(grid, w / total, norm_scale=norm_scale)
