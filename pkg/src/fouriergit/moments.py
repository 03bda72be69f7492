"""Fourier-phase moments of a discrete spectrum: exact and shot-sampled.

The moment of order n at time step dt is

    m_n = sum_k w_k exp(-i n dt omega_k),

with m_0 equal to the total weight and m_{-n} = conj(m_n). A hardware run
estimates Re m_n and Im m_n separately from two-outcome measurements whose
success probability is (1 + x)/2 for the true part value x; the sampler
here reproduces that Bernoulli statistics exactly with a counter-based
seeding scheme, so every (order, part) pair has its own reproducible
stream regardless of how many moments are requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import phase_moment_sums
from .spectrum import DiscreteSpectrum

_PROVENANCES = ("exact", "sampled")


@dataclass(frozen=True)
class FourierMomentSet:
    """Moments m_0 .. m_{n_max} at a fixed time step.

    values[n] holds m_n; negative orders follow by conjugation through
    :meth:`moment`. provenance is 'exact' or 'sampled'; sampled sets carry
    the per-part shot count and the seed they were drawn from. mu0 is the
    total spectral weight (m_0 for exact sets, the exactly known value for
    sampled ones).
    """

    dt: float
    values: np.ndarray
    provenance: str
    mu0: float
    shots_per_part: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        vals = np.array(self.values, dtype=np.complex128)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        if self.provenance not in _PROVENANCES:
            raise ValueError(
                f"provenance must be one of {_PROVENANCES}, got {self.provenance!r}"
            )
        if not self.mu0 > 0:
            raise ValueError(f"mu0 must be positive, got {self.mu0}")
        if self.provenance == "sampled":
            if self.shots_per_part is None or self.seed is None:
                raise ValueError("sampled moments need shots_per_part and seed")
            if self.shots_per_part < 1:
                raise ValueError(
                    f"shots_per_part must be >= 1, got {self.shots_per_part}"
                )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n_max(self) -> int:
        return self.values.size - 1

    def moment(self, n: int) -> complex:
        """m_n for any integer order, using m_{-n} = conj(m_n)."""
        if abs(n) > self.n_max:
            raise ValueError(f"order {n} outside the stored range 0..{self.n_max}")
        return complex(self.values[n]) if n >= 0 else complex(np.conj(self.values[-n]))


def exact_moments(
    spectrum: DiscreteSpectrum, dt: float, n_max: int
) -> FourierMomentSet:
    """Exact phase moments m_0 .. m_{n_max} of a discrete spectrum."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    vals = phase_moment_sums(
        spectrum.eigenfrequencies, spectrum.weights, float(dt), int(n_max)
    )
    return FourierMomentSet(
        dt=float(dt), values=vals, provenance="exact", mu0=spectrum.mu0
    )


def _part_stream(seed: int, n: int, part: int) -> np.random.Generator:
    # One independent, reproducible stream per (order, part) pair.
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(n, part))
    )


def sampled_moments(
    spectrum: DiscreteSpectrum,
    dt: float,
    n_max: int,
    shots_per_part: int,
    seed: int,
    clamp: bool = False,
) -> FourierMomentSet:
    """Shot-noise estimates of the phase moments of a normalized spectrum.

    For each order n >= 1, Re m_n and Im m_n are estimated from
    shots_per_part two-outcome measurements with success probability
    (1 + x)/2, where x is the exact part value; the estimate is
    2 * successes / shots - 1, which is unbiased. m_0 is stored exactly
    (the normalization is assumed known). The generator for order n, part
    p is seeded from (seed, spawn_key=(n, p)), so estimates for a given
    order do not depend on n_max and a longer run extends a shorter one.

    clamp=True clips each part to [-1, 1] and then rescales any estimate
    with |m_n| > mu0 back to that modulus; the default leaves raw
    (unbiased) estimates untouched.

    Requires mu0 = 1: the two-outcome encoding bounds each part by the
    total weight, and the success-probability map assumes unit scale.
    """
    if shots_per_part < 1:
        raise ValueError(f"shots_per_part must be >= 1, got {shots_per_part}")
    if seed < 0 or seed != int(seed):
        raise ValueError(f"seed must be a nonnegative integer, got {seed}")
    exact = exact_moments(spectrum, dt, n_max)
    mu0 = spectrum.mu0
    if abs(mu0 - 1.0) > 1e-9:
        raise ValueError(
            f"sampled_moments requires a normalized spectrum (mu0 = 1), "
            f"got mu0 = {mu0}"
        )
    vals = np.empty(n_max + 1, dtype=np.complex128)
    vals[0] = mu0
    shots = int(shots_per_part)
    for n in range(1, n_max + 1):
        est = [0.0, 0.0]
        for part, x in ((0, exact.values[n].real), (1, exact.values[n].imag)):
            if abs(x) > 1.0 + 1e-12:
                raise ValueError(
                    f"|moment part| = {abs(x)} exceeds 1; spectrum is not "
                    "normalized"
                )
            p = min(max(0.5 * (1.0 + x), 0.0), 1.0)
            k = _part_stream(int(seed), n, part).binomial(shots, p)
            est[part] = 2.0 * k / shots - 1.0
        if clamp:
            est = [min(max(e, -1.0), 1.0) for e in est]
        m = complex(est[0], est[1])
        if clamp and abs(m) > mu0:
            m *= mu0 / abs(m)
        vals[n] = m
    return FourierMomentSet(
        dt=float(dt),
        values=vals,
        provenance="sampled",
        mu0=mu0,
        shots_per_part=shots,
        seed=int(seed),
    )


@dataclass(frozen=True)
class MomentErrorSummary:
    """Per-order and aggregate deviations between two moment sets.

    abs_err[n] = |m_n^a - m_n^b|. weighted_aggregate, when a kernel width
    was supplied, is the reconstruction-relevant quadrature combination

        (1/P) sqrt(sum_{n>=1} 2 (env_n |dm_n|)^2 + (env_0 |dm_0|)^2),

    env_n = exp(-(dt lam n)^2 / 2). By Fourier orthogonality this equals
    the root-mean-square over one period of the pointwise shift the
    deviations cause in the reconstructed transform (1/energy units);
    zeroth moments of valid sets are real, so dm_0 contributes exactly.
    """

    orders: np.ndarray
    abs_err: np.ndarray
    max_abs_err: float
    rms: float
    weighted_aggregate: float | None = None


def moment_error_summary(
    a: FourierMomentSet, b: FourierMomentSet, lam: float | None = None
) -> MomentErrorSummary:
    """Compare two moment sets sharing the same dt (e.g. exact vs sampled)."""
    if abs(a.dt - b.dt) > 1e-12 * max(a.dt, b.dt):
        raise ValueError(f"dt mismatch: {a.dt} vs {b.dt}")
    n_common = min(a.n_max, b.n_max)
    da = a.values[: n_common + 1] - b.values[: n_common + 1]
    abs_err = np.abs(da)
    aggregate = None
    if lam is not None:
        if not lam > 0:
            raise ValueError(f"lam must be positive, got {lam}")
        n = np.arange(n_common + 1)
        env = np.exp(-0.5 * (a.dt * lam) ** 2 * n * n)
        weights = np.where(n == 0, 1.0, 2.0)
        period = 2.0 * math.pi / a.dt
        aggregate = float(
            math.sqrt(float(np.sum(weights * (env * abs_err) ** 2))) / period
        )
    return MomentErrorSummary(
        orders=np.arange(n_common + 1),
        abs_err=abs_err,
        max_abs_err=float(abs_err.max()),
        rms=float(np.sqrt(np.mean(abs_err**2))),
        weighted_aggregate=aggregate,
    )
