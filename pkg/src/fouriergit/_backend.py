"""Numerical hot loops with optional numba acceleration.

Every heavy kernel in this package (phase-moment sums, Gaussian and periodic
transform evaluation on frequency grids, truncated Fourier reconstruction) is
implemented twice: once in pure numpy and once as a numba ``@njit`` function.
The active implementation is chosen at import time from the environment
variable ``FOURIERGIT_BACKEND``:

``auto``   use numba when importable, numpy otherwise (default)
``numba``  require numba, raise if it cannot be imported
``numpy``  force the pure-numpy path

The numpy variants are always importable under their ``*_numpy`` names so the
two paths can be compared directly (see ``benchmarks/bench_backends.py`` and
``tests/test_backend.py``). numba kernels are compiled without fastmath so
both backends agree to roundoff.
"""

from __future__ import annotations

import math
import os

import numpy as np

_ENV_VAR = "FOURIERGIT_BACKEND"
_CHUNK = 256  # grid rows per numpy broadcast block; bounds temp memory

_requested = os.environ.get(_ENV_VAR, "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"{_ENV_VAR} must be one of 'auto', 'numba', 'numpy'; got {_requested!r}"
    )

if _requested == "numpy":
    _HAVE_NUMBA = False
else:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise RuntimeError(
                f"{_ENV_VAR}=numba but numba is not importable"
            ) from None
        _HAVE_NUMBA = False


def _as_f64(x):
    return np.ascontiguousarray(np.asarray(x, dtype=np.float64))


# ---------------------------------------------------------------------------
# phase moment sums: m_n = sum_k w_k exp(-i n dt w_k), n = 0..n_max


def phase_moment_sums_numpy(omegas, weights, dt, n_max):
    """Fourier phase moments of a weighted point spectrum.

    Each order is evaluated from a fresh complex exponential, so m_n does not
    accumulate phase roundoff and is independent of n_max.
    """
    omegas = _as_f64(omegas)
    weights = _as_f64(weights)
    out = np.empty(n_max + 1, dtype=np.complex128)
    out[0] = weights.sum()
    for n in range(1, n_max + 1):
        out[n] = np.exp((-1j * dt * n) * omegas) @ weights
    return out


def _phase_moment_sums_loop(omegas, weights, dt, n_max):
    out = np.zeros(n_max + 1, dtype=np.complex128)
    for k in range(omegas.shape[0]):
        w = weights[k]
        out[0] += w
        zr = math.cos(dt * omegas[k])
        zi = -math.sin(dt * omegas[k])
        pr = w
        pi = 0.0
        for n in range(1, n_max + 1):
            pr, pi = pr * zr - pi * zi, pr * zi + pi * zr
            out[n] += pr + 1j * pi
    return out


# ---------------------------------------------------------------------------
# Gaussian transform on a grid: Phi(nu) = sum_k w_k G(nu - w_k)


def gaussian_transform_numpy(nus, omegas, weights, lam):
    """Plain Gaussian-kernel transform of a point spectrum on a nu grid."""
    nus = _as_f64(nus)
    omegas = _as_f64(omegas)
    weights = _as_f64(weights)
    c = -0.5 / (lam * lam)
    out = np.empty(nus.shape[0])
    for i in range(0, nus.shape[0], _CHUNK):
        d = nus[i : i + _CHUNK, None] - omegas[None, :]
        out[i : i + _CHUNK] = np.exp(c * d * d) @ weights
    return out / (math.sqrt(2.0 * math.pi) * lam)


def _gaussian_transform_loop(nus, omegas, weights, lam):
    c = -0.5 / (lam * lam)
    pref = 1.0 / (math.sqrt(2.0 * math.pi) * lam)
    out = np.empty(nus.shape[0])
    for i in range(nus.shape[0]):
        acc = 0.0
        for k in range(omegas.shape[0]):
            d = nus[i] - omegas[k]
            acc += weights[k] * math.exp(c * d * d)
        out[i] = acc * pref
    return out


# ---------------------------------------------------------------------------
# Periodically extended transform: replicas summed around the nearest image


def periodic_transform_numpy(nus, omegas, weights, lam, period, wrap_count):
    """Periodic Gaussian transform; wrap_count images on each side of the
    nearest replica."""
    nus = _as_f64(nus)
    omegas = _as_f64(omegas)
    weights = _as_f64(weights)
    c = -0.5 / (lam * lam)
    out = np.empty(nus.shape[0])
    for i in range(0, nus.shape[0], _CHUNK):
        d = nus[i : i + _CHUNK, None] - omegas[None, :]
        r = d - period * np.round(d / period)
        acc = np.zeros_like(r)
        for j in range(-wrap_count, wrap_count + 1):
            x = r - j * period
            acc += np.exp(c * x * x)
        out[i : i + _CHUNK] = acc @ weights
    return out / (math.sqrt(2.0 * math.pi) * lam)


def _periodic_transform_loop(nus, omegas, weights, lam, period, wrap_count):
    c = -0.5 / (lam * lam)
    pref = 1.0 / (math.sqrt(2.0 * math.pi) * lam)
    out = np.empty(nus.shape[0])
    for i in range(nus.shape[0]):
        acc = 0.0
        for k in range(omegas.shape[0]):
            d = nus[i] - omegas[k]
            r = d - period * round(d / period)
            s = 0.0
            for j in range(-wrap_count, wrap_count + 1):
                x = r - j * period
                s += math.exp(c * x * x)
            acc += weights[k] * s
        out[i] = acc * pref
    return out


# ---------------------------------------------------------------------------
# Truncated Fourier reconstruction:
# Phi(nu) = (m_0.re + 2 sum_{n=1}^{N} Re[exp(+i n dt nu) env_n m_n]) / P


def reconstruct_numpy(nus, moment_values, dt, lam, period, n_terms):
    """Evaluate the conjugate-symmetric truncated Fourier series on a grid."""
    nus = _as_f64(nus)
    m = np.ascontiguousarray(moment_values[: n_terms + 1], dtype=np.complex128)
    n = np.arange(1, n_terms + 1)
    gm = np.exp(-0.5 * (dt * lam) ** 2 * n * n) * m[1:]
    out = np.empty(nus.shape[0])
    for i in range(0, nus.shape[0], _CHUNK):
        ph = np.exp(1j * dt * nus[i : i + _CHUNK, None] * n[None, :])
        out[i : i + _CHUNK] = m[0].real + 2.0 * (ph @ gm).real
    return out / period


def _reconstruct_loop(nus, moment_values, dt, lam, period, n_terms):
    out = np.empty(nus.shape[0])
    env = np.empty(n_terms + 1)
    for n in range(n_terms + 1):
        env[n] = math.exp(-0.5 * (dt * lam * n) ** 2)
    for i in range(nus.shape[0]):
        zr = math.cos(dt * nus[i])
        zi = math.sin(dt * nus[i])
        pr = 1.0
        pi = 0.0
        acc = moment_values[0].real
        for n in range(1, n_terms + 1):
            pr, pi = pr * zr - pi * zi, pr * zi + pi * zr
            g = env[n]
            acc += 2.0 * g * (pr * moment_values[n].real - pi * moment_values[n].imag)
        out[i] = acc / period
    return out


if _HAVE_NUMBA:
    phase_moment_sums_numba = njit(cache=True, nogil=True)(_phase_moment_sums_loop)
    gaussian_transform_numba = njit(cache=True, nogil=True)(_gaussian_transform_loop)
    periodic_transform_numba = njit(cache=True, nogil=True)(_periodic_transform_loop)
    reconstruct_numba = njit(cache=True, nogil=True)(_reconstruct_loop)

    def _wrap_phase(omegas, weights, dt, n_max):
        return phase_moment_sums_numba(_as_f64(omegas), _as_f64(weights), dt, n_max)

    def _wrap_gauss(nus, omegas, weights, lam):
        return gaussian_transform_numba(
            _as_f64(nus), _as_f64(omegas), _as_f64(weights), lam
        )

    def _wrap_periodic(nus, omegas, weights, lam, period, wrap_count):
        return periodic_transform_numba(
            _as_f64(nus), _as_f64(omegas), _as_f64(weights), lam, period, wrap_count
        )

    def _wrap_reconstruct(nus, moment_values, dt, lam, period, n_terms):
        return reconstruct_numba(
            _as_f64(nus),
            np.ascontiguousarray(moment_values, dtype=np.complex128),
            dt,
            lam,
            period,
            n_terms,
        )

    ACTIVE_BACKEND = "numba"
    phase_moment_sums = _wrap_phase
    gaussian_transform = _wrap_gauss
    periodic_transform = _wrap_periodic
    reconstruct_series = _wrap_reconstruct
else:
    ACTIVE_BACKEND = "numpy"
    phase_moment_sums = phase_moment_sums_numpy
    gaussian_transform = gaussian_transform_numpy
    periodic_transform = periodic_transform_numpy
    reconstruct_series = reconstruct_numpy


def active_backend():
    """Name of the implementation in use: 'numba' or 'numpy'."""
    return ACTIVE_BACKEND
