"""Smoothed transforms of discrete spectra and their reconstruction.

exact_transform convolves a spectrum with the plain or periodically
extended Gaussian kernel on a frequency grid. reconstruct resums a
truncated Fourier series from phase moments; with exact moments and enough
harmonics it converges to the periodic transform, whose distance to the
plain transform is the period (aliasing) error. error_report measures both
gaps against a plan's budget.

Transform values carry units 1/energy; multiplying by a window scale (for
example the eigenfrequency spacing) makes them dimensionless, see
rescale_to_dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import gaussian_transform, periodic_transform, reconstruct_series
from .kernel import KernelSpec, PeriodicKernelParams
from .moments import FourierMomentSet, exact_moments, sampled_moments
from .planner import ErrorBudget, ExtensionPlan, FrequencyWindow
from .spectrum import DiscreteSpectrum

_KINDS = ("exact_gaussian", "exact_periodic", "reconstructed", "sampled_reconstructed")


@dataclass(frozen=True)
class TransformCurve:
    """A transform evaluated on a frequency grid.

    kind records how the values were produced. scale_note is the
    cumulative dimensionless rescaling factor applied so far (None for raw
    1/energy values). Exact kinds must be nonnegative.
    """

    grid: np.ndarray
    values: np.ndarray
    kind: str
    scale_note: float | None = None

    def __post_init__(self):
        g = np.array(self.grid, dtype=np.float64)
        v = np.array(self.values, dtype=np.float64)
        if g.ndim != 1 or v.ndim != 1 or g.shape != v.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.kind.startswith("exact") and (v < -1e-15 * max(1.0, v.max(initial=0.0))).any():
            raise ValueError(f"{self.kind} values must be nonnegative")
        g.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)


def exact_transform(
    spectrum: DiscreteSpectrum,
    lam: float,
    grid,
    periodic: PeriodicKernelParams | None = None,
) -> TransformCurve:
    """Gaussian transform of a spectrum on a grid, optionally periodized.

    Parameters
    ----------
    spectrum : DiscreteSpectrum
    lam : float
        Kernel width (energy units).
    grid : array_like
        Evaluation frequencies.
    periodic : PeriodicKernelParams, optional
        When given, every eigenfrequency contributes through all its
        period-P images (kind 'exact_periodic'); otherwise the plain
        kernel is used (kind 'exact_gaussian').
    """
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam}")
    grid = np.ascontiguousarray(grid, dtype=np.float64)
    if periodic is None:
        vals = gaussian_transform(
            grid, spectrum.eigenfrequencies, spectrum.weights, float(lam)
        )
        return TransformCurve(grid, vals, "exact_gaussian")
    vals = periodic_transform(
        grid,
        spectrum.eigenfrequencies,
        spectrum.weights,
        float(lam),
        periodic.period,
        periodic.wrap_count,
    )
    return TransformCurve(grid, vals, "exact_periodic")


def reconstruct(
    moments: FourierMomentSet,
    kernel: KernelSpec,
    periodic: PeriodicKernelParams,
    n_terms: int,
    grid,
    full_series: bool = False,
) -> TransformCurve:
    """Resum the truncated Fourier series of the periodic transform.

    Phi_N(nu) = (1/P) [m_0 + 2 sum_{n=1}^{N} Re(exp(+i n dt nu)
                 exp(-(dt lam n)^2/2) m_n)].

    full_series=True evaluates the equivalent two-sided complex sum over
    n = -N..N instead (for cross-checking the conjugate-symmetric fast
    path) and verifies the imaginary residue is negligible.

    The moment set must carry at least n_terms orders and match the
    extension's time step.
    """
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    if n_terms > moments.n_max:
        raise ValueError(
            f"n_terms={n_terms} exceeds the stored moment range "
            f"0..{moments.n_max}"
        )
    if abs(moments.dt - periodic.dt) > 1e-12 * periodic.dt:
        raise ValueError(
            f"moment time step {moments.dt} does not match the extension "
            f"time step {periodic.dt}"
        )
    grid = np.ascontiguousarray(grid, dtype=np.float64)
    kind = "reconstructed" if moments.provenance == "exact" else "sampled_reconstructed"
    if not full_series:
        vals = reconstruct_series(
            grid,
            moments.values,
            periodic.dt,
            kernel.lam,
            periodic.period,
            int(n_terms),
        )
        return TransformCurve(grid, vals, kind)
    n = np.arange(-n_terms, n_terms + 1)
    m = np.array([moments.moment(int(k)) for k in n])
    env = np.exp(-0.5 * (periodic.dt * kernel.lam) ** 2 * n * n)
    phase = np.exp(1j * periodic.dt * np.asarray(grid)[:, None] * n[None, :])
    cvals = (phase * (env * m)[None, :]).sum(axis=1) / periodic.period
    resid = float(np.abs(cvals.imag).max())
    scale = float(np.abs(cvals.real).max())
    if resid > 1e-10 * max(scale, 1e-300):
        raise ValueError(
            f"two-sided series has imaginary residue {resid} (scale {scale}); "
            "moment set violates conjugate symmetry"
        )
    return TransformCurve(grid, cvals.real, kind)


def rescale_to_dimensionless(curve: TransformCurve, d_omega: float) -> TransformCurve:
    """Multiply a curve by a frequency scale (e.g. level spacing).

    Applying d_omega and then 1/d_omega returns the original values; the
    cumulative factor is tracked in scale_note.
    """
    if not d_omega > 0:
        raise ValueError(f"d_omega must be positive, got {d_omega}")
    note = d_omega if curve.scale_note is None else curve.scale_note * d_omega
    return TransformCurve(curve.grid, curve.values * d_omega, curve.kind, note)


@dataclass(frozen=True)
class ErrorReport:
    """Measured reconstruction errors for one plan, all dimensionless
    (multiplied by the budget's omega_scale).

    eps_p_measured: max |periodic - plain| over the window.
    eps_n_measured: max |reconstructed - periodic|.
    eps_total_measured: max |reconstructed - plain|.
    """

    eps_p_measured: float
    eps_n_measured: float
    eps_total_measured: float
    eps_p_target: float
    eps_n_target: float
    n_grid: int
    within_period_budget: bool
    within_truncation_budget: bool


def error_report(
    spectrum: DiscreteSpectrum,
    plan: ExtensionPlan,
    kernel: KernelSpec,
    window: FrequencyWindow,
    budget: ErrorBudget,
    n_grid: int = 1024,
    moments: FourierMomentSet | None = None,
) -> ErrorReport:
    """Measure a plan's period and truncation errors on a window grid.

    Uses exact moments unless a (possibly sampled) moment set is passed,
    in which case eps_n_measured includes its statistical error too.
    """
    if n_grid < 2:
        raise ValueError(f"n_grid must be >= 2, got {n_grid}")
    grid = np.linspace(window.nu_min, window.nu_max, n_grid)
    periodic = PeriodicKernelParams.from_period(plan.period, kernel)
    plain = exact_transform(spectrum, kernel.lam, grid)
    wrapped = exact_transform(spectrum, kernel.lam, grid, periodic=periodic)
    if moments is None:
        moments = exact_moments(spectrum, periodic.dt, plan.n_terms)
    rec = reconstruct(moments, kernel, periodic, plan.n_terms, grid)
    omega = budget.omega_scale
    eps_p = omega * float(np.abs(wrapped.values - plain.values).max())
    eps_n = omega * float(np.abs(rec.values - wrapped.values).max())
    eps_tot = omega * float(np.abs(rec.values - plain.values).max())
    return ErrorReport(
        eps_p_measured=eps_p,
        eps_n_measured=eps_n,
        eps_total_measured=eps_tot,
        eps_p_target=budget.eps_p,
        eps_n_target=budget.eps_n,
        n_grid=n_grid,
        within_period_budget=eps_p <= budget.eps_p,
        within_truncation_budget=eps_n <= budget.eps_n,
    )


def sampled_reconstruction(
    spectrum: DiscreteSpectrum,
    plan: ExtensionPlan,
    kernel: KernelSpec,
    grid,
    seed: int,
    shots_per_part: int | None = None,
    clamp: bool = False,
) -> TransformCurve:
    """One shot-noise reconstruction of a plan (convenience pipeline)."""
    periodic = PeriodicKernelParams.from_period(plan.period, kernel)
    shots = plan.shots_per_moment if shots_per_part is None else shots_per_part
    if shots is None:
        raise ValueError("plan carries no shot counts; pass shots_per_part")
    m = sampled_moments(
        spectrum, periodic.dt, plan.n_terms, int(shots), seed, clamp=clamp
    )
    return reconstruct(m, kernel, periodic, plan.n_terms, grid)
