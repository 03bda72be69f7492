import math

import mpmath as mp
import numpy as np
import pytest

from fouriergit import (
    ErrorBudget,
    ExtensionPlan,
    FormulaValidityError,
    FrequencyWindow,
    KernelSpec,
    MomentSummary,
    NoSavingWarning,
    chi_general,
    chi_with_central_moment,
    chi_with_variance,
    make_plan,
    n_terms,
    shots,
    shots_value,
    summarize,
    tail_leakage_bound,
    truncation_bound,
)

from conftest import OMEGA_MODEL


class TestBudgetAndWindow:
    def test_budget_validation(self):
        with pytest.raises(ValueError):
            ErrorBudget(0.0, 0.01, 0.05, 0.01)
        with pytest.raises(ValueError):
            ErrorBudget(0.01, -1.0, 0.05, 0.01)
        with pytest.raises(ValueError):
            ErrorBudget(0.01, 0.01, 0.05, 0.01, confidence_delta=1.0)

    def test_equal_split(self):
        b = ErrorBudget.equal_split(0.03, 0.01)
        assert b.eps_p == b.eps_n == b.eps_s == pytest.approx(0.01)
        assert b.omega_scale == 0.01

    def test_window(self):
        w = FrequencyWindow(-1.0, -0.8)
        assert w.span == pytest.approx(0.2)
        assert FrequencyWindow(0.5, 0.5).span == 0.0
        with pytest.raises(ValueError):
            FrequencyWindow(0.5, 0.4)


class TestChiGeneral:
    def test_reference_value(self, kernel001, budget001):
        choice = chi_general(kernel001, budget001)
        assert choice.chi == pytest.approx(2.0203661379485744, rel=1e-14)
        assert choice.period == pytest.approx(2.0203661379485744, rel=1e-14)
        assert choice.method == "general"

    def test_against_high_precision(self, kernel001, budget001):
        with mp.workdps(50):
            lam = mp.mpf(0.02) / mp.sqrt(2 * mp.log(100))
            om = mp.mpf(2) / 512
            want = 2 + mp.sqrt(2) * lam * mp.sqrt(mp.log(2 * om / (mp.mpf("0.01") * lam)))
            assert chi_general(kernel001, budget001).chi == pytest.approx(
                float(want), rel=1e-14
            )

    def test_floor_at_two(self, kernel001):
        # once the aliasing budget is loose enough the log correction
        # vanishes and the bare twofold extension remains
        loose = ErrorBudget(1.5, 0.01, 0.05, OMEGA_MODEL)
        assert chi_general(kernel001, loose).chi == 2.0

    def test_nyquist_mode(self, kernel001, budget001):
        choice = chi_general(kernel001, budget001, mode="nyquist")
        assert choice.chi == 2.0
        assert choice.period == 2.0

    def test_full_mode_is_sharper_here(self, kernel001, budget001, window_model):
        full = chi_general(kernel001, budget001, mode="full", window=window_model)
        main = chi_general(kernel001, budget001, mode="main")
        assert full.period == pytest.approx(2.0183214641860063, rel=1e-13)
        assert full.period < main.period

    def test_full_mode_requires_window(self, kernel001, budget001):
        with pytest.raises(ValueError):
            chi_general(kernel001, budget001, mode="full")

    def test_scales_with_norm(self, budget001):
        big = KernelSpec.from_resolution(1.0, 0.01, 7987.5)
        nb = ErrorBudget(0.01, 0.01, 0.05, 1.0)
        main = chi_general(big, nb, mode="main")
        assert main.period == pytest.approx(15976.179654151792, rel=1e-13)
        assert chi_general(big, nb, mode="nyquist").period == 15975.0

    def test_validation(self, kernel001, budget001):
        with pytest.raises(ValueError):
            chi_general(kernel001, budget001, mode="bogus")
        with pytest.raises(ValueError):
            chi_general(kernel001, budget001, mu0=0.0)


class TestChiWithVariance:
    def test_model_a_reference(self, kernel001, budget001, stats_a, window_model):
        choice = chi_with_variance(kernel001, budget001, stats_a, window_model)
        assert choice.period == pytest.approx(0.2245524730455948, rel=1e-13)
        general = chi_general(kernel001, budget001)
        assert choice.period / general.period == pytest.approx(0.1111, abs=3e-3)
        assert choice.method == "variance"

    def test_model_b_reference(self, kernel001, budget001, stats_b, window_model):
        choice = chi_with_variance(kernel001, budget001, stats_b, window_model)
        assert choice.period == pytest.approx(0.2817499593207571, rel=1e-13)
        general = chi_general(kernel001, budget001)
        assert choice.period / general.period == pytest.approx(0.1395, abs=5e-3)

    def test_details_decompose_period(
        self, kernel001, budget001, stats_a, window_model
    ):
        choice = chi_with_variance(kernel001, budget001, stats_a, window_model)
        d = choice.details
        assert d["alpha_spread"] + d["eta_spread"] + d["window_term"] == pytest.approx(
            choice.period, rel=1e-14
        )
        assert d["alpha_spread"] == pytest.approx(0.09209115918366362, rel=1e-13)
        assert d["eta_spread"] == pytest.approx(0.021580823328423506, rel=1e-13)
        assert d["window_term"] == pytest.approx(
            window_model.nu_max - stats_a.mu1, rel=1e-13
        )

    def test_window_term_modes(self, kernel001, budget001, stats_a, window_model):
        periods = {
            mode: chi_with_variance(
                kernel001, budget001, stats_a, window_model, window_term=mode
            ).period
            for mode in ("max", "min", "upper", "lower", "span")
        }
        assert periods["min"] <= periods["max"] <= periods["span"]
        assert periods["upper"] == pytest.approx(
            periods["max"]
        )  # mean sits nearer the lower edge here
        assert periods["span"] - periods["max"] == pytest.approx(
            min(
                stats_a.mu1 - window_model.nu_min,
                window_model.nu_max - stats_a.mu1,
            ),
            rel=1e-12,
        )

    def test_quasielastic_reference(self):
        kernel = KernelSpec.from_resolution(1.0, 0.01, 400.0)
        budget = ErrorBudget(0.01, 0.01, 0.05, 1.0)
        window = FrequencyWindow(0.0, 400.0)
        moments = MomentSummary(
            mu0=1.0, mu1=400.0**2 / (2.0 * 939.0), sigma=250.0,
            central={2: 250.0**2},
        )
        lo = chi_with_variance(kernel, budget, moments, window, window_term="min")
        hi = chi_with_variance(kernel, budget, moments, window, window_term="max")
        assert lo.period == pytest.approx(320.8798099436653, rel=1e-13)
        assert n_terms(lo.chi, kernel, budget) == 852
        assert n_terms(hi.chi, kernel, budget) == 1461

    def test_resonance_reference(self):
        kernel = KernelSpec.from_resolution(1.0, 0.01, 100.0)
        budget = ErrorBudget(0.01, 0.01, 0.05, 1.0)
        window = FrequencyWindow(0.0, 100.0)
        moments = MomentSummary(mu0=1.0, mu1=20.0, sigma=22.0, central={2: 484.0})
        choice = chi_with_variance(kernel, budget, moments, window)
        assert choice.period == pytest.approx(127.6169360276151, rel=1e-13)
        assert n_terms(choice.chi, kernel, budget) == 339

    def test_rejects_pointlike_spectrum(self, kernel001, budget001, window_model):
        degenerate = MomentSummary(mu0=1.0, mu1=-0.9, sigma=0.0, central={2: 0.0})
        with pytest.raises(ValueError):
            chi_with_variance(kernel001, budget001, degenerate, window_model)

    def test_mean_must_be_inside_window(self, kernel001, budget001, stats_a):
        with pytest.raises(ValueError):
            chi_with_variance(
                kernel001, budget001, stats_a, FrequencyWindow(0.0, 0.5)
            )

    def test_warns_when_no_saving(self, kernel001):
        budget = ErrorBudget(0.001, 0.01, 0.05, OMEGA_MODEL)
        wide = MomentSummary(mu0=1.0, mu1=0.0, sigma=0.99, central={2: 0.9801})
        with pytest.warns(NoSavingWarning):
            choice = chi_with_variance(
                kernel001, budget, wide, FrequencyWindow(-1.0, 1.0)
            )
        assert choice.period > chi_general(kernel001, budget).period

    def test_narrow_spectrum_does_not_warn(
        self, kernel001, budget001, stats_a, window_model, recwarn
    ):
        chi_with_variance(kernel001, budget001, stats_a, window_model)
        assert not [w for w in recwarn if w.category is NoSavingWarning]

    def test_simplified_form(self, kernel001, budget001, stats_a, window_model):
        choice = chi_with_variance(
            kernel001, budget001, stats_a, window_model, simplified=True
        )
        want = (
            2.7
            * (OMEGA_MODEL * stats_a.sigma**2 / budget001.eps_p) ** (1.0 / 3.0)
            + window_model.span
        )
        assert choice.period == pytest.approx(want, rel=1e-14)
        assert choice.details["simplified"] is True

    def test_simplified_needs_wide_enough_spectrum(
        self, kernel001, budget001, window_model
    ):
        narrow = MomentSummary(
            mu0=1.0, mu1=-0.9, sigma=0.003, central={2: 9e-6}
        )
        with pytest.raises(FormulaValidityError):
            chi_with_variance(
                kernel001, budget001, narrow, window_model, simplified=True
            )


class TestChiWithCentralMoment:
    def test_order_two_delegates_to_variance(
        self, kernel001, budget001, stats_a, window_model
    ):
        via_var = chi_with_variance(kernel001, budget001, stats_a, window_model)
        via_cm = chi_with_central_moment(
            2,
            stats_a.mu0 * stats_a.sigma**2,
            kernel001,
            budget001,
            stats_a.mu1,
            window_model,
            mu0=stats_a.mu0,
        )
        assert via_cm.period == via_var.period
        assert via_cm.method == "variance"

    def test_order_four_model_a(
        self, kernel001, budget001, model_a, stats_a, window_model
    ):
        from fouriergit import central_moment

        value = central_moment(model_a, 4)
        choice = chi_with_central_moment(
            4, value, kernel001, budget001, stats_a.mu1, window_model
        )
        assert choice.period == pytest.approx(0.21787426997860904, rel=1e-13)
        assert choice.method == "central4"
        assert n_terms(choice.chi, kernel001, budget001) == 24

    def test_zero_central_value_stays_finite(
        self, kernel001, budget001, window_model
    ):
        choice = chi_with_central_moment(
            4, 0.0, kernel001, budget001, -0.9, window_model
        )
        assert math.isfinite(choice.period)
        assert choice.period > 0
        assert choice.details["spread"] == 0.0
        assert tail_leakage_bound(choice, budget001) == 0.0

    def test_higher_moment_on_peaked_spectrum_shrinks_period(
        self, kernel001, budget001, model_a, stats_a, window_model
    ):
        from fouriergit import central_moment

        p2 = chi_with_variance(
            kernel001, budget001, stats_a, window_model
        ).period
        p4 = chi_with_central_moment(
            4, central_moment(model_a, 4), kernel001, budget001,
            stats_a.mu1, window_model,
        ).period
        assert p4 < p2

    def test_simplified_validity(self, kernel001, budget001, window_model):
        with pytest.raises(FormulaValidityError):
            chi_with_central_moment(
                16, 1e-4, kernel001, budget001, -0.9, window_model,
                simplified=True,
            )
        with pytest.raises(FormulaValidityError):
            chi_with_central_moment(
                4, 1e-12, kernel001, budget001, -0.9, window_model,
                simplified=True,
            )

    def test_validation(self, kernel001, budget001, window_model):
        with pytest.raises(ValueError):
            chi_with_central_moment(
                1, 0.1, kernel001, budget001, -0.9, window_model
            )
        with pytest.raises(ValueError):
            chi_with_central_moment(
                3, -0.1, kernel001, budget001, -0.9, window_model
            )


class TestNTerms:
    def test_reference_values(self, kernel001, budget001):
        chi = chi_general(kernel001, budget001).chi
        assert n_terms(chi, kernel001, budget001) == 218
        assert n_terms(chi, kernel001, budget001, mode="appendix") == 123

    def test_against_high_precision(self, kernel001, budget001):
        with mp.workdps(50):
            lam = mp.mpf(0.02) / mp.sqrt(2 * mp.log(100))
            om = mp.mpf(2) / 512
            chi = mp.mpf(repr(chi_general(kernel001, budget001).chi))
            want = mp.ceil(
                chi / (mp.sqrt(2 * mp.pi) * lam)
                * mp.sqrt(mp.log(mp.mpf("0.4") * om / (mp.mpf("0.01") * lam)))
            )
            assert n_terms(float(chi), kernel001, budget001) == int(want)

    def test_norm_bound_reference(self):
        big = KernelSpec.from_resolution(1.0, 0.01, 7987.5)
        budget = ErrorBudget(0.01, 0.01, 0.05, 1.0)
        nyq = chi_general(big, budget, mode="nyquist")
        assert n_terms(nyq.chi, big, budget) == 42371
        main = chi_general(big, budget, mode="main")
        assert n_terms(main.chi, big, budget) == 42374

    def test_linear_in_chi(self, kernel001, budget001):
        n1 = n_terms(1.0, kernel001, budget001)
        n3 = n_terms(3.0, kernel001, budget001)
        assert n3 == pytest.approx(3 * n1, abs=2)

    def test_loose_budget_raises(self, kernel001):
        loose = ErrorBudget(0.01, 0.5, 0.05, OMEGA_MODEL)
        with pytest.raises(FormulaValidityError):
            n_terms(2.0, kernel001, loose)

    def test_validation(self, kernel001, budget001):
        with pytest.raises(ValueError):
            n_terms(2.0, kernel001, budget001, mode="bogus")
        with pytest.raises(ValueError):
            n_terms(0.0, kernel001, budget001)


class TestTruncationBound:
    def test_reference_value(self, kernel001):
        assert truncation_bound(218, 2.0203661379485744, kernel001.lam) == \
            pytest.approx(0.00047830096713833597, rel=1e-12)

    def test_against_high_precision(self, kernel001):
        with mp.workdps(50):
            lam = mp.mpf(0.02) / mp.sqrt(2 * mp.log(100))
            p = mp.mpf("2.02")
            want = float(
                1 / (mp.sqrt(2 * mp.pi) * lam)
                * mp.erfc(mp.sqrt(2) * mp.pi * lam * 100 / p)
            )
            assert truncation_bound(100, 2.02, kernel001.lam) == pytest.approx(
                want, rel=1e-11
            )

    def test_zero_terms_gives_full_mass(self, kernel001):
        lam = kernel001.lam
        assert truncation_bound(0, 2.0, lam) == pytest.approx(
            1.0 / (math.sqrt(2 * math.pi) * lam), rel=1e-14
        )

    def test_monotone_decreasing(self, kernel001):
        vals = [truncation_bound(n, 2.0, kernel001.lam) for n in (0, 50, 100, 200)]
        assert vals == sorted(vals, reverse=True)

    def test_scales_with_mu0(self, kernel001):
        one = truncation_bound(100, 2.0, kernel001.lam, mu0=1.0)
        three = truncation_bound(100, 2.0, kernel001.lam, mu0=3.0)
        assert three == pytest.approx(3 * one, rel=1e-14)

    def test_planned_n_meets_eps_n(self, kernel001, budget001):
        # the harmonic count returned by the planner drives the bound
        # below the dimensionless truncation budget
        choice = chi_general(kernel001, budget001)
        n = n_terms(choice.chi, kernel001, budget001)
        bound = truncation_bound(n, choice.period, kernel001.lam)
        assert bound * budget001.omega_scale <= budget001.eps_n
        # one fewer decade of harmonics would not obviously do: the bound
        # at N/2 is far looser
        loose = truncation_bound(n // 2, choice.period, kernel001.lam)
        assert loose > bound


class TestShots:
    def test_reference_values(self, kernel001, budget001):
        plan = make_plan("general", kernel001, budget001)
        cons = shots_value(plan.n_terms, plan.chi, kernel001, budget001)
        assert cons == pytest.approx(113017.76289764755, rel=1e-12)
        assert shots(plan, budget001) == 113018
        assert plan.total_shots == 113018
        assert plan.shots_per_moment == 260

    def test_mode_ratios_exact(self, kernel001, budget001):
        plan = make_plan("general", kernel001, budget001)
        cons = shots_value(plan.n_terms, plan.chi, kernel001, budget001)
        cheb = shots_value(
            plan.n_terms, plan.chi, kernel001, budget001, mode="chebyshev"
        )
        unc = shots_value(
            plan.n_terms, plan.chi, kernel001, budget001, mode="uncorrelated"
        )
        assert cheb / cons == pytest.approx(2.0, rel=1e-12)
        assert unc / cons == pytest.approx(
            kernel001.lam / plan.chi, rel=1e-12
        )
        assert unc < cons

    def test_quadratic_in_targets(self, kernel001, budget001):
        plan = make_plan("general", kernel001, budget001)
        half = ErrorBudget(0.01, 0.01, 0.025, OMEGA_MODEL)
        s1 = shots_value(plan.n_terms, plan.chi, kernel001, budget001)
        s2 = shots_value(plan.n_terms, plan.chi, kernel001, half)
        assert s2 == pytest.approx(4 * s1, rel=1e-12)

    def test_confidence_enters_logarithmically(self, kernel001, budget001):
        plan = make_plan("general", kernel001, budget001)
        tight = ErrorBudget(0.01, 0.01, 0.05, OMEGA_MODEL, confidence_delta=0.005)
        s1 = shots_value(plan.n_terms, plan.chi, kernel001, budget001)
        s2 = shots_value(plan.n_terms, plan.chi, kernel001, tight)
        assert s2 / s1 == pytest.approx(
            math.log(2 / 0.005) / math.log(2 / 0.05), rel=1e-12
        )

    def test_validation(self, kernel001, budget001):
        with pytest.raises(ValueError):
            shots_value(0, 2.0, kernel001, budget001)
        with pytest.raises(ValueError):
            shots_value(10, 2.0, kernel001, budget001, mode="bogus")


class TestTailLeakageBound:
    def test_variance_plan_reference(
        self, kernel001, budget001, stats_a, window_model
    ):
        plan = make_plan(
            "variance", kernel001, budget001, window=window_model, moments=stats_a
        )
        assert tail_leakage_bound(plan) == pytest.approx(
            0.0019889669900439748, rel=1e-12
        )

    def test_period_choice_needs_budget(
        self, kernel001, budget001, stats_a, window_model
    ):
        choice = chi_with_variance(kernel001, budget001, stats_a, window_model)
        assert tail_leakage_bound(choice, budget001) == pytest.approx(
            0.0019889669900439748, rel=1e-12
        )
        with pytest.raises(ValueError):
            tail_leakage_bound(choice)

    def test_rejected_for_general_and_simplified(
        self, kernel001, budget001, stats_a, window_model
    ):
        with pytest.raises(ValueError):
            tail_leakage_bound(make_plan("general", kernel001, budget001))
        simp = make_plan(
            "variance", kernel001, budget001, window=window_model,
            moments=stats_a, simplified=True,
        )
        with pytest.raises(ValueError):
            tail_leakage_bound(simp)

    def test_below_budget_for_reference_models(
        self, kernel001, budget001, stats_a, stats_b, window_model
    ):
        for stats in (stats_a, stats_b):
            plan = make_plan(
                "variance", kernel001, budget001, window=window_model,
                moments=stats,
            )
            assert tail_leakage_bound(plan) <= budget001.eps_p


class TestMakePlan:
    def test_general_plan_fields(self, kernel001, budget001):
        plan = make_plan("general", kernel001, budget001)
        assert plan.method == "general"
        assert plan.n_terms == 218
        assert plan.chi == pytest.approx(2.0203661379485744, rel=1e-14)
        assert plan.dt == pytest.approx(2 * math.pi / plan.period, rel=1e-15)

    def test_round_trips(self, kernel001, budget001, stats_a, window_model):
        plans = [
            make_plan("general", kernel001, budget001),
            make_plan("general", kernel001, budget001, window=window_model,
                      chi_mode="full"),
            make_plan("variance", kernel001, budget001, window=window_model,
                      moments=stats_a),
            make_plan("variance", kernel001, budget001, window=window_model,
                      moments=stats_a, simplified=True),
        ]
        for plan in plans:
            assert ExtensionPlan.from_dict(plan.to_dict()) == plan

    def test_central_plan_via_moments(
        self, kernel001, budget001, model_a, window_model
    ):
        stats4 = summarize(model_a, orders=(2, 3, 4))
        plan = make_plan(
            "central", kernel001, budget001, window=window_model,
            moments=stats4, central_order=4,
        )
        assert plan.method == "central4"
        assert plan.n_terms == 24
        assert ExtensionPlan.from_dict(plan.to_dict()) == plan

    def test_variance_beats_general_for_narrow_models(
        self, kernel001, budget001, stats_a, stats_b, window_model
    ):
        general = make_plan("general", kernel001, budget001)
        for stats in (stats_a, stats_b):
            plan = make_plan(
                "variance", kernel001, budget001, window=window_model,
                moments=stats,
            )
            assert plan.period < general.period
            assert plan.n_terms < general.n_terms
            assert plan.total_shots < general.total_shots

    def test_window_containment_enforced(self, kernel001, budget001):
        with pytest.raises(ValueError):
            make_plan(
                "general", kernel001, budget001,
                window=FrequencyWindow(-1.5, 0.0),
            )

    def test_missing_inputs_rejected(self, kernel001, budget001, window_model):
        with pytest.raises(ValueError):
            make_plan("variance", kernel001, budget001, window=window_model)
        with pytest.raises(ValueError):
            make_plan("central", kernel001, budget001, window=window_model)
        with pytest.raises(ValueError):
            make_plan("bogus", kernel001, budget001)

    def test_central_missing_order_in_summary(
        self, kernel001, budget001, model_a, window_model
    ):
        stats = summarize(model_a, orders=(2,))
        with pytest.raises(ValueError):
            make_plan(
                "central", kernel001, budget001, window=window_model,
                moments=stats, central_order=6,
            )

    def test_per_part_times_parts_covers_total(
        self, kernel001, budget001, stats_a, window_model
    ):
        for plan in (
            make_plan("general", kernel001, budget001),
            make_plan("variance", kernel001, budget001, window=window_model,
                      moments=stats_a),
        ):
            assert plan.shots_per_moment * 2 * plan.n_terms >= plan.total_shots
