from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import quad

from seqmech.core import DomainError, IncompatibleCostError, LatencyCostModel
from seqmech.latency import (
    build_strategy,
    expected_latency_gap,
    expected_profit,
    sample_delay,
)

GAP_OVER_SQRT_C = 12.0 / math.sqrt(2.0) - 20.0 / math.sqrt(6.0)  # 0.3203155...


def test_support_closed_form() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    assert strategy.delta_lo == pytest.approx(math.sqrt(0.02), abs=1e-12)
    assert strategy.delta_hi == pytest.approx(math.sqrt(0.06), abs=1e-12)
    assert strategy.delta_lo == pytest.approx(0.1414214, abs=5e-8)
    assert strategy.delta_hi == pytest.approx(0.2449490, abs=5e-8)


def test_cdf_examples_and_endpoints() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    assert strategy.cdf(0.2) == pytest.approx(0.75, abs=1e-12)
    assert strategy.cdf(strategy.delta_lo) == pytest.approx(0.0, abs=1e-9)
    assert strategy.cdf(strategy.delta_hi) == pytest.approx(1.0, abs=1e-9)
    assert strategy.cdf(0.05) == 0.0
    assert strategy.cdf(0.9) == 1.0


def test_cdf_monotone() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    ds = np.linspace(0.01, 1.0, 500)
    sig = strategy.cdf(ds)
    assert np.all(np.diff(sig) >= -1e-15)


def test_sample_delay_examples() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    assert sample_delay(strategy, 0.0) == pytest.approx(strategy.delta_lo, abs=1e-12)
    assert sample_delay(strategy, 1.0) == pytest.approx(strategy.delta_hi, abs=1e-12)
    assert sample_delay(strategy, 0.75) == pytest.approx(0.2, abs=1e-9)


def test_sample_delay_inverts_cdf() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.004))
    us = np.linspace(0.0, 1.0, 101)
    ds = strategy.quantile(us)
    assert np.allclose(strategy.cdf(ds), us, atol=1e-9)


def test_profit_indifferent_on_support() -> None:
    for c in (0.001, 0.01, 0.05):
        strategy = build_strategy(LatencyCostModel.inverse_delay(c))
        grid = np.linspace(strategy.delta_lo, strategy.delta_hi, 50)
        profits = np.array([expected_profit(d, strategy) for d in grid])
        assert profits.max() - profits.min() <= 1e-6


def test_profit_endpoints_agree() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    p_lo = expected_profit(strategy.delta_lo, strategy)
    p_hi = expected_profit(strategy.delta_hi, strategy)
    assert p_lo == pytest.approx(p_hi, abs=1e-8)


def test_profit_frozen_values() -> None:
    # quadrature oracle values frozen for the c = 0.01 inverse family:
    # on-support profit 1/6 - sqrt(2c/3); at the window end the reachable-race
    # integral is empty, so profit is -C(1) = -c
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    on_support = 1.0 / 6.0 - math.sqrt(2.0 * 0.01 / 3.0)
    assert expected_profit(strategy.delta_hi, strategy) == pytest.approx(on_support, abs=1e-9)
    assert expected_profit(strategy.delta_hi, strategy) == pytest.approx(0.085017009, abs=1e-9)
    assert expected_profit(1.0, strategy) == pytest.approx(-0.01, abs=1e-12)


def test_no_profitable_deviation_outside_support() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    lo, hi = strategy.support
    on_support = expected_profit(0.5 * (lo + hi), strategy)
    outside = np.concatenate([
        np.linspace(lo / 20.0, lo, 15, endpoint=False),
        np.linspace(hi, 1.0, 16)[1:],
    ])
    for d in outside:
        assert expected_profit(float(d), strategy) <= on_support + 1e-6


def test_gap_scaling_law() -> None:
    ratios = []
    for c in (1e-4, 1e-3, 1e-2):
        strategy = build_strategy(LatencyCostModel.inverse_delay(c))
        ratios.append(expected_latency_gap(strategy) / math.sqrt(c))
    assert max(ratios) - min(ratios) <= 1e-6
    for r in ratios:
        assert r == pytest.approx(0.32031, abs=5e-5)


def test_gap_examples() -> None:
    gap = expected_latency_gap(build_strategy(LatencyCostModel.inverse_delay(0.01)))
    assert gap == pytest.approx(0.0320310, abs=5e-6)
    gap_small = expected_latency_gap(build_strategy(LatencyCostModel.inverse_delay(1e-4)))
    assert gap_small == pytest.approx(0.0032031, abs=5e-7)


def test_gap_matches_antiderivative() -> None:
    # symbolic oracle: the integrand 24c/d^2 - 72c^2/d^4 has antiderivative
    # -24c/d + 24c^2/d^3
    for c in (0.001, 0.01):
        strategy = build_strategy(LatencyCostModel.inverse_delay(c))
        lo, hi = strategy.support
        anti = lambda d: -24.0 * c / d + 24.0 * c**2 / d**3
        assert expected_latency_gap(strategy) == pytest.approx(anti(hi) - anti(lo), abs=1e-9)
        assert anti(hi) - anti(lo) == pytest.approx(GAP_OVER_SQRT_C * math.sqrt(c), abs=1e-12)


def test_incompatible_cost_rejected() -> None:
    with pytest.raises(IncompatibleCostError):
        build_strategy(LatencyCostModel.inverse_delay(0.2))  # delta_hi = sqrt(1.2) > 1
    # custom model too flat: C' never reaches -1/2
    grid = np.linspace(0.05, 1.0, 200)
    flat = LatencyCostModel.custom(grid, 0.2 - 0.1 * grid + 0.0 * grid**2)
    with pytest.raises(IncompatibleCostError):
        build_strategy(flat)


def test_profit_domain() -> None:
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    with pytest.raises(DomainError):
        expected_profit(0.0, strategy)
    with pytest.raises(DomainError):
        expected_profit(1.2, strategy)


def zero_terminal_cost_model() -> LatencyCostModel:
    """Tabulated family with C(1) = 0 and C' = -1/6 on the upper range.

    C'(d) = -1/6 - gamma (hi - d)^3 below the knee, constant -1/6 above;
    gamma is set so C'(0.15) = -1/2. For this shape the equilibrium profit
    is exactly zero (the reachable-race integrand equals -C' everywhere
    above the support).
    """
    knee, lo = 0.4, 0.15
    gamma = (0.5 - 1.0 / 6.0) / (knee - lo) ** 3

    def cost(d):
        base = (1.0 - d) / 6.0
        bump = np.where(d < knee, gamma * (knee - d) ** 4 / 4.0, 0.0)
        return base + bump

    grid = np.linspace(0.05, 1.0, 3000)
    return LatencyCostModel.custom(grid, cost(grid))


def test_zero_profit_for_terminal_zero_cost() -> None:
    model = zero_terminal_cost_model()
    assert model.value(1.0) == pytest.approx(0.0, abs=1e-12)
    strategy = build_strategy(model)
    assert strategy.delta_lo == pytest.approx(0.15, abs=1e-5)
    assert strategy.delta_hi == pytest.approx(0.4, abs=1e-3)
    for d in np.linspace(strategy.delta_lo, strategy.delta_hi, 9):
        assert expected_profit(float(d), strategy) == pytest.approx(0.0, abs=1e-6)


def test_custom_strategy_round_trips_sampling() -> None:
    strategy = build_strategy(zero_terminal_cost_model())
    us = np.linspace(0.01, 0.99, 25)
    ds = strategy.quantile(us)
    assert np.allclose(strategy.cdf(ds), us, atol=1e-8)


def test_gap_quadrature_agrees_with_direct_expectation() -> None:
    # independent oracle: E|d2 - d1| via the double integral
    # 2 * int F (1 - F) over the support, F the equilibrium CDF
    strategy = build_strategy(LatencyCostModel.inverse_delay(0.01))
    lo, hi = strategy.support
    val, _ = quad(lambda d: 2.0 * strategy.cdf(d) * (1.0 - strategy.cdf(d)), lo, hi,
                  epsabs=1e-12, epsrel=1e-11, limit=200)
    assert expected_latency_gap(strategy) == pytest.approx(val, abs=1e-9)
