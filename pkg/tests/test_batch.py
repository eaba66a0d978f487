from __future__ import annotations

import numpy as np
import pytest

from seqmech.batch import (
    VARIANTS,
    bid_strategy,
    equilibrium_bid,
    expected_utility,
    interim_payoff,
)
from seqmech.core import ContractViolationError, ExcludedFromBatchError, InclusionCurve

RNG = np.random.default_rng(77)
LINEAR = InclusionCurve.linear()


def test_equilibrium_bid_examples() -> None:
    assert equilibrium_bid("winner_pay", 0.5, 1.0) == pytest.approx(0.25, abs=1e-12)
    assert equilibrium_bid("winner_pay", 0.5, 0.5) == pytest.approx(1.0 / 12.0, abs=1e-9)
    assert equilibrium_bid("all_pay", 0.5, 0.5) == pytest.approx(0.0625, abs=1e-12)
    assert equilibrium_bid("winner_pay_joint", 0.5, 1.0) == pytest.approx(0.25, abs=1e-12)


def test_winner_pay_excluded_at_zero_inclusion() -> None:
    with pytest.raises(ExcludedFromBatchError):
        equilibrium_bid("winner_pay", 0.5, 0.0)


def test_joint_variant_endpoints_reduce_to_standard_bid() -> None:
    # shading term vanishes at both T = 0 and T = 1
    for v in (0.2, 0.5, 0.9):
        assert equilibrium_bid("winner_pay_joint", v, 0.0) == pytest.approx(v / 2, abs=1e-12)
        assert equilibrium_bid("winner_pay_joint", v, 1.0) == pytest.approx(v / 2, abs=1e-12)


def test_all_pay_bid_at_zero_inclusion_is_zero() -> None:
    assert equilibrium_bid("all_pay", 0.7, 0.0) == 0.0


def test_bid_bounds_and_zero_value() -> None:
    for variant in VARIANTS:
        for _ in range(500):
            v, t = RNG.random(), RNG.random()
            if variant == "winner_pay" and t == 0.0:
                continue
            bid = equilibrium_bid(variant, v, t)
            assert 0.0 <= bid <= v / 2 + 1e-15
        assert equilibrium_bid(variant, 0.0, 0.5) == 0.0


def test_bid_shading_strict_below_half_value() -> None:
    for _ in range(2000):
        v = RNG.uniform(0.01, 1.0)
        t = RNG.uniform(0.01, 0.99)
        assert equilibrium_bid("winner_pay", v, t) < v / 2


def test_bid_monotone_in_value_and_inclusion() -> None:
    for variant in VARIANTS:
        vs = np.sort(RNG.uniform(0.01, 1.0, (500, 2)), axis=1)
        for v1, v2 in vs[vs[:, 0] < vs[:, 1]]:
            assert equilibrium_bid(variant, v1, 0.6) < equilibrium_bid(variant, v2, 0.6)
    ts = np.sort(RNG.uniform(0.01, 1.0, (500, 2)), axis=1)
    for t1, t2 in ts[ts[:, 0] < ts[:, 1]]:
        assert equilibrium_bid("winner_pay", 0.5, t1) < equilibrium_bid("winner_pay", 0.5, t2)


def test_interim_payoff_examples() -> None:
    assert interim_payoff(0.0, LINEAR) == pytest.approx(1.0 / 6.0, abs=1e-9)
    assert interim_payoff(1.0, LINEAR) == pytest.approx(0.5, abs=1e-12)
    assert interim_payoff(0.5, LINEAR) == pytest.approx(1.0 / 3.0, abs=1e-9)


def test_interim_payoff_bounds() -> None:
    for tau in RNG.random(2000):
        payoff = interim_payoff(tau, LINEAR)
        assert 1.0 / 6.0 - 1e-12 <= payoff <= 0.5
    assert interim_payoff(0.0, LINEAR) == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_expected_utility_examples() -> None:
    strat_full = bid_strategy("winner_pay", 1.0)
    u = expected_utility("winner_pay", 0.5, strat_full(0.5), 1.0, 1.0, strat_full)
    assert u == pytest.approx(0.125, abs=1e-12)

    strat_half = bid_strategy("winner_pay", 0.5)
    u0 = expected_utility("winner_pay", 0.5, 0.0, 0.5, 0.5, strat_half)
    assert u0 == pytest.approx(0.25, abs=1e-12)  # wins only on rival exclusion


def test_expected_utility_above_and_below_range() -> None:
    strat = bid_strategy("winner_pay", 0.8)
    top = strat.top
    u_above = expected_utility("winner_pay", 0.9, top + 0.01, 0.8, 0.8, strat)
    assert u_above == pytest.approx(0.9 - top - 0.01, abs=1e-12)  # wins outright
    u_zero = expected_utility("winner_pay", 0.9, 0.0, 0.8, 0.8, strat)
    assert u_zero == pytest.approx(0.9 * 0.2, abs=1e-12)  # only the exclusion mass


def test_expected_utility_rejects_non_monotone_opponent() -> None:
    with pytest.raises(ContractViolationError):
        expected_utility("winner_pay", 0.5, 0.1, 0.5, 0.5, lambda v: -v)


def test_plain_callable_opponent_matches_strategy() -> None:
    strat = bid_strategy("winner_pay", 0.5)
    for bid in (0.05, 0.1, 0.15):
        u_exact = expected_utility("winner_pay", 0.6, bid, 0.5, 0.5, strat)
        u_bisect = expected_utility("winner_pay", 0.6, bid, 0.5, 0.5, strat.fn)
        assert u_bisect == pytest.approx(u_exact, abs=1e-10)


@pytest.mark.parametrize("variant", VARIANTS)
def test_equilibrium_is_grid_best_response(variant: str) -> None:
    # quick (v, T) sample of the epsilon-equilibrium property; the full
    # documented grid runs in the audit and acceptance suites
    bid_grid = np.linspace(0.0, 1.0, 1000)
    for t in (0.25, 0.5, 0.75, 1.0):
        opponent = bid_strategy(variant, t)
        for v in (0.1, 0.5, 0.9):
            b_eq = equilibrium_bid(variant, v, t)
            u_eq = expected_utility(variant, v, b_eq, t, t, opponent)
            best = max(expected_utility(variant, v, b, t, t, opponent) for b in bid_grid)
            assert best - u_eq <= 1e-9
