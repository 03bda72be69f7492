"""Error-budget planning for periodically extended Gaussian transforms.

Reconstructing a smoothed spectrum from Fourier-phase moments has three
error sources, budgeted separately (all in dimensionless units, i.e. after
multiplying the transform by the window scale Omega):

* eps_p, from the finite extension period (aliasing of spectral weight and
  kernel replicas into the evaluation window),
* eps_n, from truncating the Fourier series at a finite harmonic count,
* eps_s, from estimating each moment with finitely many shots.

The planners here pick the period (equivalently chi = period / norm_scale),
the harmonic count, and the shot counts so each target is met. The general
planner uses only the spectral norm bound. When the spectrum's mean and
variance (or a higher absolute central moment) are known, the period can be
anchored to the spread of the spectrum instead of the full norm interval,
which shrinks every downstream cost; these are the "variance" and "central"
planners.

Formulas flagged with validity conditions raise FormulaValidityError when
used outside them rather than returning silently wrong numbers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from scipy.special import erfc

from .kernel import KernelSpec
from .spectrum import MomentSummary

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_WINDOW_TERM_MODES = ("max", "min", "upper", "lower", "span")


class FormulaValidityError(ValueError):
    """A planning formula was evaluated outside its validity range."""


class NoSavingWarning(UserWarning):
    """A moment-anchored period came out no smaller than the general one."""


def _sqrt_log(arg: float) -> float:
    """sqrt(log(arg)) with the log floored at zero for arg <= 1."""
    return math.sqrt(math.log(arg)) if arg > 1.0 else 0.0


@dataclass(frozen=True)
class ErrorBudget:
    """Dimensionless error targets for one reconstruction.

    eps_p, eps_n, eps_s bound the period, truncation, and statistical
    errors of Omega * Phi, where Omega = omega_scale is the reference
    window width used to make transform errors dimensionless.
    confidence_delta is the allowed failure probability of the shot
    estimate.
    """

    eps_p: float
    eps_n: float
    eps_s: float
    omega_scale: float
    confidence_delta: float = 0.05

    def __post_init__(self):
        for name in ("eps_p", "eps_n", "eps_s", "omega_scale"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 < self.confidence_delta < 1.0:
            raise ValueError(
                f"confidence_delta must be in (0, 1), got {self.confidence_delta}"
            )

    @classmethod
    def equal_split(
        cls, eps_total: float, omega_scale: float, confidence_delta: float = 0.05
    ) -> "ErrorBudget":
        """Split a total error target equally across the three sources."""
        if not eps_total > 0:
            raise ValueError(f"eps_total must be positive, got {eps_total}")
        part = eps_total / 3.0
        return cls(part, part, part, omega_scale, confidence_delta)


@dataclass(frozen=True)
class FrequencyWindow:
    """Closed frequency interval [nu_min, nu_max] where the transform is
    reconstructed."""

    nu_min: float
    nu_max: float

    def __post_init__(self):
        if not self.nu_min <= self.nu_max:
            raise ValueError(
                f"nu_min={self.nu_min} must not exceed nu_max={self.nu_max}"
            )

    @property
    def span(self) -> float:
        return self.nu_max - self.nu_min


@dataclass(frozen=True)
class PeriodChoice:
    """Planned extension period before harmonic/shot counts are attached.

    details carries the intermediate quantities of the chosen formula
    (spread, alpha_spread = alpha * spread, eta_spread = eta * alpha *
    spread, window term, ...) so downstream bounds can be evaluated.
    """

    period: float
    chi: float
    method: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period}")


@dataclass(frozen=True)
class ExtensionPlan:
    """Complete plan: period, harmonic count and shot counts.

    shots_per_moment counts shots for each real or imaginary part of one
    moment (2 * n_terms parts in total); total_shots is the ceiling of the
    planned total before that per-part split. inputs_echo records every
    input and intermediate so plans serialize reproducibly.
    """

    period: float
    chi: float
    n_terms: int
    shots_per_moment: int | None
    total_shots: int | None
    method: str
    inputs_echo: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period}")
        if self.n_terms < 1:
            raise ValueError(f"n_terms must be >= 1, got {self.n_terms}")
        if self.shots_per_moment is not None and self.shots_per_moment < 1:
            raise ValueError("shots_per_moment must be >= 1 when set")

    @property
    def dt(self) -> float:
        """Conjugate time step 2 pi / period."""
        return 2.0 * math.pi / self.period

    def to_dict(self) -> dict:
        d = {
            "method": self.method,
            "period": self.period,
            "chi": self.chi,
            "n_terms": self.n_terms,
            "shots_per_moment": self.shots_per_moment,
            "total_shots": self.total_shots,
        }
        for k in sorted(self.inputs_echo):
            d[k] = self.inputs_echo[k]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExtensionPlan":
        d = dict(d)
        return cls(
            period=d.pop("period"),
            chi=d.pop("chi"),
            n_terms=d.pop("n_terms"),
            shots_per_moment=d.pop("shots_per_moment"),
            total_shots=d.pop("total_shots"),
            method=d.pop("method"),
            inputs_echo=d,
        )


def _window_term(omega_lo: float, omega_hi: float, mode: str) -> float:
    """Window contribution to the period from the distances of the window
    edges to the anchor point (the mean for moment-anchored planners)."""
    if mode == "max":
        return max(omega_lo, omega_hi)
    if mode == "min":
        return min(omega_lo, omega_hi)
    if mode == "upper":
        return omega_hi
    if mode == "lower":
        return omega_lo
    if mode == "span":
        return omega_lo + omega_hi
    raise ValueError(
        f"window_term must be one of {_WINDOW_TERM_MODES}, got {mode!r}"
    )


def chi_general(
    kernel: KernelSpec,
    budget: ErrorBudget,
    mu0: float = 1.0,
    mode: str = "main",
    window: FrequencyWindow | None = None,
) -> PeriodChoice:
    """Extension period from the spectral norm bound alone.

    Parameters
    ----------
    kernel : KernelSpec
    budget : ErrorBudget
    mu0 : float
        Total spectral weight.
    mode : {'main', 'nyquist', 'full'}
        'main' uses chi = 2 + (sqrt(2) lam / H) sqrt(log(2 Omega /
        (eps_p lam))), falling back to chi = 2 when the log argument is
        <= 1. 'nyquist' returns the bare no-aliasing period chi = 2.
        'full' evaluates the sharper window-aware expression
        P = (1 + eta) H + max(|nu_min|, nu_max) and requires a window.
    window : FrequencyWindow, only used (and required) by mode='full'.
    """
    if mode not in ("main", "nyquist", "full"):
        raise ValueError(f"unknown chi_general mode {mode!r}")
    if not mu0 > 0:
        raise ValueError(f"mu0 must be positive, got {mu0}")
    h = kernel.norm_scale
    lam = kernel.lam
    omega = budget.omega_scale
    if mode == "nyquist":
        return PeriodChoice(2.0 * h, 2.0, "general", {"mode": "nyquist"})
    if mode == "main":
        corr = (math.sqrt(2.0) * lam / h) * _sqrt_log(
            2.0 * omega / (budget.eps_p * lam)
        )
        chi = 2.0 + corr
        return PeriodChoice(chi * h, chi, "general", {"mode": "main"})
    if window is None:
        raise ValueError("chi_general mode='full' requires a window")
    arg = (
        math.sqrt(2.0 / math.pi)
        * (mu0 / budget.eps_p)
        * (omega / lam)
        * (1.0 + math.sqrt(math.pi / 2.0) * lam / h)
    )
    eta = (math.sqrt(2.0) * lam / h) * _sqrt_log(arg)
    wterm = max(abs(window.nu_min), window.nu_max)
    period = (1.0 + eta) * h + wterm
    return PeriodChoice(
        period,
        period / h,
        "general",
        {"mode": "full", "eta": eta, "eta_spread": eta * h, "window_term": wterm},
    )


def _eta_spread(kernel: KernelSpec, budget: ErrorBudget, mu0: float) -> float:
    """eta * alpha * spread for the moment-anchored planners; bounds the
    kernel-replica aliasing at the window edge."""
    lam = kernel.lam
    arg = (
        math.sqrt(8.0 / math.pi)
        * (mu0 / budget.eps_p)
        * (budget.omega_scale / lam)
        * (1.0 + math.sqrt(math.pi / 2.0))
    )
    return math.sqrt(2.0) * lam * _sqrt_log(arg)


def _edge_distances(mu1: float, window: FrequencyWindow) -> tuple[float, float]:
    omega_lo = mu1 - window.nu_min
    omega_hi = window.nu_max - mu1
    if omega_lo < 0 or omega_hi < 0:
        raise ValueError(
            f"window [{window.nu_min}, {window.nu_max}] must contain the "
            f"mean energy {mu1}"
        )
    return omega_lo, omega_hi


def _warn_if_no_saving(period: float, kernel, budget, mu0, method: str):
    general = chi_general(kernel, budget, mu0=mu0, mode="main")
    if period > general.period:
        warnings.warn(
            f"{method} period {period:.6g} exceeds the general bound "
            f"{general.period:.6g}; the moment information brings no saving here",
            NoSavingWarning,
            stacklevel=3,
        )


def chi_with_variance(
    kernel: KernelSpec,
    budget: ErrorBudget,
    moments: MomentSummary,
    window: FrequencyWindow,
    window_term: str = "max",
    simplified: bool = False,
) -> PeriodChoice:
    """Extension period anchored to the spectrum's mean and width.

    The period covers an interval of alpha standard deviations around the
    mean plus the window term, with alpha and the safety factor eta chosen
    so the weight aliased into the window stays below eps_p:

        alpha * sigma = sqrt(2) lam * max[sqrt(log(3.6 mu0 Omega /
                         (eps_p lam))), (sigma^(2/3) Omega^(1/3) / lam) *
                         0.9 / eps_p^(1/3)]
        P = (1 + eta) alpha sigma + window_term.

    With simplified=True the short form P = 2.7 (Omega sigma^2 /
    eps_p)^(1/3) + span is used instead; it is only valid while
    lam <= 2 sigma and raises FormulaValidityError otherwise.

    window_term picks how the window enters: 'max' (default, safe for the
    whole window), 'min', 'upper', 'lower', or 'span'. Warns with
    NoSavingWarning when the result exceeds the general-bound period.
    """
    if not moments.sigma > 0:
        raise ValueError(
            "chi_with_variance needs sigma > 0; use chi_general for "
            "point-like spectra"
        )
    mu0 = moments.mu0
    if not mu0 > 0:
        raise ValueError(f"mu0 must be positive, got {mu0}")
    lam = kernel.lam
    h = kernel.norm_scale
    omega = budget.omega_scale
    sigma = moments.sigma
    omega_lo, omega_hi = _edge_distances(moments.mu1, window)
    wterm = _window_term(omega_lo, omega_hi, window_term)

    if simplified:
        if lam > 2.0 * sigma:
            raise FormulaValidityError(
                f"simplified variance period needs lam <= 2 sigma "
                f"(lam={lam}, sigma={sigma}); use simplified=False"
            )
        period = (
            2.7 * (omega * sigma * sigma / budget.eps_p) ** (1.0 / 3.0)
            + window.span
        )
        details = {
            "simplified": True,
            "spread": sigma,
            "mu0": mu0,
            "mu1": moments.mu1,
            "window_term_mode": "span",
            "window_term": window.span,
            "central_order": 2,
            "central_value": mu0 * sigma * sigma,
        }
        _warn_if_no_saving(period, kernel, budget, mu0, "variance")
        return PeriodChoice(period, period / h, "variance", details)

    b_gauss = _sqrt_log(3.6 * mu0 * omega / (budget.eps_p * lam))
    b_cheb = (
        sigma ** (2.0 / 3.0) * omega ** (1.0 / 3.0) / lam
    ) * 0.9 / budget.eps_p ** (1.0 / 3.0)
    alpha_spread = math.sqrt(2.0) * lam * max(b_gauss, b_cheb)
    eta_spread = _eta_spread(kernel, budget, mu0)
    period = alpha_spread + eta_spread + wterm
    details = {
        "simplified": False,
        "spread": sigma,
        "alpha_spread": alpha_spread,
        "eta_spread": eta_spread,
        "alpha": alpha_spread / sigma,
        "eta": eta_spread / alpha_spread if alpha_spread > 0 else math.inf,
        "mu0": mu0,
        "mu1": moments.mu1,
        "window_term_mode": window_term,
        "window_term": wterm,
        "central_order": 2,
        "central_value": mu0 * sigma * sigma,
    }
    _warn_if_no_saving(period, kernel, budget, mu0, "variance")
    return PeriodChoice(period, period / h, "variance", details)


def chi_with_central_moment(
    order: int,
    central_value: float,
    kernel: KernelSpec,
    budget: ErrorBudget,
    mu1: float,
    window: FrequencyWindow,
    mu0: float = 1.0,
    window_term: str = "max",
    simplified: bool = False,
) -> PeriodChoice:
    """Extension period anchored to an absolute central moment of order n.

    central_value is the raw weighted sum mu~_n = sum_k w_k |omega_k -
    mu1|^n (for order 2 this equals mu0 * sigma^2). The period covers
    alpha spreads around the mean, with spread = mu~_n^(1/n):

        alpha * spread = max[sqrt(2) lam sqrt(log(4 mu0 Omega /
                          (eps_p lam))), sqrt(2) * 0.9 * (mu~_n Omega /
                          eps_p)^(1/(n+1))]
        P = (1 + eta) alpha spread + window_term.

    The product form above stays finite for central_value = 0. order = 2
    delegates to chi_with_variance so both entry points agree exactly.
    With simplified=True the short form P = 2.7 (Omega mu~_n /
    eps_p)^(1/(n+1)) + span is used; it requires mu~_n^(1/n) >= lam and
    order <= 15 and raises FormulaValidityError outside that range.
    """
    if order != int(order) or order < 2:
        raise ValueError(f"order must be an integer >= 2, got {order}")
    order = int(order)
    if central_value < 0:
        raise ValueError(f"central_value must be >= 0, got {central_value}")
    if not mu0 > 0:
        raise ValueError(f"mu0 must be positive, got {mu0}")
    if order == 2:
        moments = MomentSummary(
            mu0=mu0,
            mu1=mu1,
            sigma=math.sqrt(central_value / mu0),
            central={2: central_value},
        )
        return chi_with_variance(
            kernel, budget, moments, window, window_term=window_term,
            simplified=simplified,
        )

    lam = kernel.lam
    h = kernel.norm_scale
    omega = budget.omega_scale
    spread = central_value ** (1.0 / order) if central_value > 0 else 0.0
    omega_lo, omega_hi = _edge_distances(mu1, window)
    wterm = _window_term(omega_lo, omega_hi, window_term)

    if simplified:
        if order > 15:
            raise FormulaValidityError(
                f"simplified central-moment period is only calibrated for "
                f"order <= 15, got {order}"
            )
        if spread < lam:
            raise FormulaValidityError(
                f"simplified central-moment period needs mu~^(1/n) >= lam "
                f"(spread={spread}, lam={lam}); use simplified=False"
            )
        period = (
            2.7 * (omega * central_value / budget.eps_p) ** (1.0 / (order + 1))
            + window.span
        )
        details = {
            "simplified": True,
            "spread": spread,
            "mu0": mu0,
            "mu1": mu1,
            "window_term_mode": "span",
            "window_term": window.span,
            "central_order": order,
            "central_value": central_value,
        }
        method = f"central{order}"
        _warn_if_no_saving(period, kernel, budget, mu0, method)
        return PeriodChoice(period, period / h, method, details)

    b_gauss = math.sqrt(2.0) * lam * _sqrt_log(
        4.0 * mu0 * omega / (budget.eps_p * lam)
    )
    b_cheb = (
        math.sqrt(2.0)
        * 0.9
        * (central_value * omega / budget.eps_p) ** (1.0 / (order + 1))
    )
    alpha_spread = max(b_gauss, b_cheb)
    eta_spread = _eta_spread(kernel, budget, mu0)
    period = alpha_spread + eta_spread + wterm
    details = {
        "simplified": False,
        "spread": spread,
        "alpha_spread": alpha_spread,
        "eta_spread": eta_spread,
        "alpha": alpha_spread / spread if spread > 0 else math.inf,
        "eta": eta_spread / alpha_spread if alpha_spread > 0 else math.inf,
        "mu0": mu0,
        "mu1": mu1,
        "window_term_mode": window_term,
        "window_term": wterm,
        "central_order": order,
        "central_value": central_value,
    }
    method = f"central{order}"
    _warn_if_no_saving(period, kernel, budget, mu0, method)
    return PeriodChoice(period, period / h, method, details)


def n_terms(
    chi: float,
    kernel: KernelSpec,
    budget: ErrorBudget,
    mu0: float = 1.0,
    mode: str = "main",
) -> int:
    """Harmonic count keeping the series-truncation error below eps_n.

    mode='main' (default) uses

        N = ceil((chi H / (sqrt(2 pi) lam)) sqrt(log(0.4 Omega /
             (eps_n lam))))

    and mode='appendix' the slightly tighter

        N = ceil((chi H / (sqrt(2) pi lam)) sqrt(log(mu0 Omega /
             (sqrt(2 pi) lam eps_n)))).

    Raises FormulaValidityError when the log argument is <= 1 (the budget
    is loose enough that the bound formula degenerates).
    """
    if mode not in ("main", "appendix"):
        raise ValueError(f"unknown n_terms mode {mode!r}")
    if not chi > 0:
        raise ValueError(f"chi must be positive, got {chi}")
    if not mu0 > 0:
        raise ValueError(f"mu0 must be positive, got {mu0}")
    lam = kernel.lam
    h = kernel.norm_scale
    omega = budget.omega_scale
    if mode == "main":
        arg = 0.4 * omega / (budget.eps_n * lam)
        pref = chi * h / (_SQRT_2PI * lam)
    else:
        arg = mu0 * omega / (_SQRT_2PI * lam * budget.eps_n)
        pref = chi * h / (math.sqrt(2.0) * math.pi * lam)
    if arg <= 1.0:
        raise FormulaValidityError(
            f"truncation budget eps_n={budget.eps_n} is too loose for the "
            f"{mode} harmonic-count formula (log argument {arg} <= 1)"
        )
    return int(math.ceil(pref * math.sqrt(math.log(arg))))


def truncation_bound(
    n_terms: int, period: float, lam: float, mu0: float = 1.0
) -> float:
    """Upper bound (1/energy units) on the series tail beyond n_terms:
    (mu0 / (sqrt(2 pi) lam)) erfc(sqrt(2) pi lam n_terms / period)."""
    if n_terms < 0:
        raise ValueError(f"n_terms must be >= 0, got {n_terms}")
    if not (period > 0 and lam > 0 and mu0 > 0):
        raise ValueError("period, lam and mu0 must be positive")
    x = math.sqrt(2.0) * math.pi * lam * n_terms / period
    return mu0 / (_SQRT_2PI * lam) * float(erfc(x))


def _shots_raw(
    n_terms: int,
    chi: float,
    lam: float,
    norm_scale: float,
    budget: ErrorBudget,
    mu0: float,
    mode: str,
) -> float:
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    if not chi > 0:
        raise ValueError(f"chi must be positive, got {chi}")
    if not mu0 > 0:
        raise ValueError(f"mu0 must be positive, got {mu0}")
    omega = budget.omega_scale
    eps = budget.eps_s
    log_conf = math.log(2.0 / budget.confidence_delta)
    if mode == "conservative":
        return n_terms * omega**2 * mu0**2 / (lam**2 * eps**2) * log_conf
    if mode == "uncorrelated":
        return (
            n_terms * omega**2 * mu0**2 / (chi * norm_scale * lam * eps**2) * log_conf
        )
    if mode == "chebyshev":
        return 2.0 * n_terms * omega**2 / (lam**2 * eps**2) * log_conf
    raise ValueError(f"unknown shots mode {mode!r}")


def shots_value(
    n_terms: int,
    chi: float,
    kernel: KernelSpec,
    budget: ErrorBudget,
    mu0: float = 1.0,
    mode: str = "conservative",
) -> float:
    """Planned total shot count (before rounding) across all 2 N moment
    parts so the statistical error stays below eps_s with probability
    1 - confidence_delta.

    mode='conservative' bounds every moment's variance by its worst case;
    'uncorrelated' assumes independent per-moment errors accumulate in
    quadrature; 'chebyshev' replaces the Hoeffding tail with a Chebyshev
    one (no exponential concentration, different delta scaling).
    """
    return _shots_raw(
        n_terms, chi, kernel.lam, kernel.norm_scale, budget, mu0, mode
    )


def shots(
    plan: ExtensionPlan,
    budget: ErrorBudget,
    mu0: float = 1.0,
    mode: str = "conservative",
) -> int:
    """Integer total shot count for a plan (ceiling of shots_value)."""
    lam = plan.inputs_echo.get("lam")
    h = plan.inputs_echo.get("norm_scale")
    if lam is None or h is None:
        raise ValueError("plan echo lacks lam/norm_scale; build it with make_plan")
    return int(
        math.ceil(_shots_raw(plan.n_terms, plan.chi, lam, h, budget, mu0, mode))
    )


def tail_leakage_bound(plan_or_choice, budget: ErrorBudget | None = None) -> float:
    """Dimensionless a-priori bound on the weight-aliasing part of the
    period error for moment-anchored plans:

        Omega * mu~_n / (period * (alpha * spread)^n),

    the mass outside alpha spreads of the mean (generalized Chebyshev)
    spread over one period. Raises for general-method or simplified plans,
    which do not carry an alpha.
    """
    if isinstance(plan_or_choice, ExtensionPlan):
        info = plan_or_choice.inputs_echo
        period = plan_or_choice.period
        omega = info.get("omega_scale")
    else:
        info = plan_or_choice.details
        period = plan_or_choice.period
        if budget is None:
            raise ValueError("tail_leakage_bound needs a budget for a PeriodChoice")
        omega = budget.omega_scale
    if info.get("alpha_spread") is None:
        raise ValueError(
            "tail leakage bound requires a non-simplified moment-anchored plan"
        )
    n = info["central_order"]
    return omega * info["central_value"] / (period * info["alpha_spread"] ** n)


def make_plan(
    method: str,
    kernel: KernelSpec,
    budget: ErrorBudget,
    window: FrequencyWindow | None = None,
    moments: MomentSummary | None = None,
    central_order: int | None = None,
    central_value: float | None = None,
    mu1: float | None = None,
    mu0: float | None = None,
    chi_mode: str = "main",
    n_mode: str = "main",
    shots_mode: str = "conservative",
    window_term: str = "max",
    simplified: bool = False,
) -> ExtensionPlan:
    """Build a complete extension plan for one reconstruction.

    method is 'general', 'variance' or 'central'. 'variance' requires
    moments (a MomentSummary) and a window; 'central' requires
    central_order, central_value, mu1 (or moments to take them from) and a
    window. The window, when given, must lie within [-norm_scale,
    norm_scale].
    """
    if window is not None:
        h = kernel.norm_scale
        if window.nu_min < -h or window.nu_max > h:
            raise ValueError(
                f"window [{window.nu_min}, {window.nu_max}] exceeds the "
                f"spectral range [-{h}, {h}]"
            )
    if method == "general":
        eff_mu0 = mu0 if mu0 is not None else (moments.mu0 if moments else 1.0)
        choice = chi_general(kernel, budget, mu0=eff_mu0, mode=chi_mode, window=window)
    elif method == "variance":
        if moments is None or window is None:
            raise ValueError("variance planning requires moments and a window")
        eff_mu0 = moments.mu0
        choice = chi_with_variance(
            kernel, budget, moments, window,
            window_term=window_term, simplified=simplified,
        )
    elif method == "central":
        if window is None:
            raise ValueError("central-moment planning requires a window")
        if moments is not None:
            if central_order is None:
                raise ValueError("central planning requires central_order")
            if central_value is None:
                central_value = moments.central.get(int(central_order))
                if central_value is None:
                    raise ValueError(
                        f"moments carry no central moment of order {central_order}"
                    )
            mu1 = moments.mu1 if mu1 is None else mu1
            eff_mu0 = moments.mu0 if mu0 is None else mu0
        else:
            eff_mu0 = mu0 if mu0 is not None else 1.0
        if central_order is None or central_value is None or mu1 is None:
            raise ValueError(
                "central planning requires central_order, central_value and mu1"
            )
        choice = chi_with_central_moment(
            int(central_order), central_value, kernel, budget, mu1, window,
            mu0=eff_mu0, window_term=window_term, simplified=simplified,
        )
    else:
        raise ValueError(f"unknown planning method {method!r}")

    n = n_terms(choice.chi, kernel, budget, mu0=eff_mu0, mode=n_mode)
    total_value = shots_value(n, choice.chi, kernel, budget, eff_mu0, shots_mode)
    total = int(math.ceil(total_value))
    per_part = int(math.ceil(total_value / (2.0 * n)))

    echo = {
        "delta": kernel.delta,
        "sigma_leak": kernel.sigma_leak,
        "lam": kernel.lam,
        "norm_scale": kernel.norm_scale,
        "eps_p": budget.eps_p,
        "eps_n": budget.eps_n,
        "eps_s": budget.eps_s,
        "omega_scale": budget.omega_scale,
        "confidence_delta": budget.confidence_delta,
        "mu0": eff_mu0,
        "n_mode": n_mode,
        "shots_mode": shots_mode,
    }
    if method == "general":
        echo["chi_mode"] = chi_mode
    if window is not None:
        echo["nu_min"] = window.nu_min
        echo["nu_max"] = window.nu_max
    echo.update(choice.details)
    return ExtensionPlan(
        period=choice.period,
        chi=choice.chi,
        n_terms=n,
        shots_per_moment=per_part,
        total_shots=total,
        method=choice.method,
        inputs_echo=echo,
    )
