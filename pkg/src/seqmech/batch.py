"""Closed-form bidding equilibria for the two-bidder batch auction.

Valuations are i.i.d. uniform on [0, 1]. Inclusion in the current batch is
summarized by the probability T; the rival's chance of missing the batch
shifts the first-price logic through the odds (1 - T)/T. Three pricing /
information variants are evaluated:

- ``winner_pay``:       winner pays own bid; own inclusion certain, rival's
                        uncertain. Bid v^2 / (2 (v + (1-T)/T)).
- ``winner_pay_joint``: winner pays own bid; both inclusions uncertain.
                        Bid v^2 / (2 (v + T(1-T) / (T^2 + (1-T)^2))).
- ``all_pay``:          every bid is paid; own inclusion certain. Bid T v^2 / 2.

``expected_utility`` is the exact analytic evaluator used by the
best-response audit: no sampling anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    ContractViolationError,
    DomainError,
    ExcludedFromBatchError,
    InclusionCurve,
    inclusion_probability,
    validate_unit,
)

VARIANTS = ("winner_pay", "winner_pay_joint", "all_pay")


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise DomainError(f"unknown batch variant {variant!r}; expected one of {VARIANTS}")
    return variant


def shading_term(variant: str, t: float) -> float:
    """Additive shading constant in the winner-pay bid denominators.

    Zero means the standard first-price bid v/2. ``all_pay`` has no such
    constant (its shading is the multiplicative factor T).
    """
    _check_variant(variant)
    t = validate_unit(t, "T")
    if variant == "winner_pay":
        if t == 0.0:
            raise ExcludedFromBatchError(
                "bidder excluded from current batch: inclusion probability is 0"
            )
        return (1.0 - t) / t
    if variant == "winner_pay_joint":
        return t * (1.0 - t) / (t * t + (1.0 - t) ** 2)
    raise DomainError("all_pay variant has no additive shading term")


def equilibrium_bid(variant: str, v: float, t: float) -> float:
    """Symmetric equilibrium bid at valuation v and inclusion probability T.

    Raises ExcludedFromBatchError for the winner_pay variant at T = 0, where
    the bid formula is undefined and the bid cannot matter for the current
    batch.
    """
    _check_variant(variant)
    v = validate_unit(v, "v")
    t = validate_unit(t, "T")
    if variant == "all_pay":
        return 0.5 * v * v * t
    if variant == "winner_pay_joint":
        if t in (0.0, 1.0):
            return 0.5 * v  # shading term vanishes at both endpoints
        kappa = shading_term(variant, t)
    else:
        kappa = shading_term(variant, t)  # raises at T = 0
        if kappa == 0.0:
            return 0.5 * v
    if v == 0.0:
        return 0.0
    return v * v / (2.0 * (v + kappa))


def interim_payoff(tau: float, curve: InclusionCurve) -> float:
    """Expected equilibrium payoff of a bidder whose race arrives at time tau.

    Equals 1/2 - T(tau)/3: decreasing in the rival's inclusion probability,
    with the standard first-price payoff 1/6 at T = 1 and 1/2 at T = 0.
    """
    t = inclusion_probability(curve, tau)
    return 0.5 - t / 3.0


@dataclass(frozen=True)
class BidStrategy:
    """A monotone bid function with its exact inverse, for analytic utilities."""

    fn: Callable[[float], float]
    inverse: Callable[[float], float]
    top: float  # bid at valuation 1, the upper end of the bid range

    def __call__(self, v: float) -> float:
        return self.fn(v)


def bid_strategy(variant: str, t: float) -> BidStrategy:
    """Equilibrium bid function for one variant at fixed T, with closed-form inverse."""
    _check_variant(variant)
    t = validate_unit(t, "T")

    if variant == "all_pay":
        if t == 0.0:
            return BidStrategy(fn=lambda v: 0.0, inverse=lambda b: 1.0, top=0.0)

        def fn_ap(v: float) -> float:
            return 0.5 * v * v * t

        def inv_ap(b: float) -> float:
            return math.sqrt(2.0 * b / t)

        return BidStrategy(fn=fn_ap, inverse=inv_ap, top=0.5 * t)

    kappa = shading_term(variant, t)

    def fn(v: float) -> float:
        return equilibrium_bid(variant, v, t)

    def inv(b: float) -> float:
        # invert b = v^2 / (2 (v + kappa)): positive root of v^2 - 2 b v - 2 b kappa
        return b + math.sqrt(b * b + 2.0 * b * kappa)

    return BidStrategy(fn=fn, inverse=inv, top=1.0 / (2.0 * (1.0 + kappa)))


def _as_strategy(opponent) -> BidStrategy:
    """Wrap a raw callable into a BidStrategy, validating monotonicity."""
    if isinstance(opponent, BidStrategy):
        return opponent
    vs = np.linspace(0.0, 1.0, 257)
    bids = np.array([opponent(v) for v in vs])
    if np.any(np.diff(bids) < -1e-12):
        raise ContractViolationError("opponent strategy must be monotone increasing")

    def inv(b: float) -> float:
        lo, hi = 0.0, 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if opponent(mid) <= b:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    return BidStrategy(fn=opponent, inverse=inv, top=float(bids[-1]))


def win_probability(bid: float, opponent) -> float:
    """Pr[bid >= opponent(V)] for V uniform on [0, 1], opponent monotone."""
    strat = _as_strategy(opponent)
    if bid <= 0.0:
        return 0.0  # ties with the rival's zero-value bid have measure zero
    if bid >= strat.top:
        return 1.0
    return float(min(1.0, max(0.0, strat.inverse(bid))))


def expected_utility(
    variant: str,
    v: float,
    bid: float,
    t_own: float,
    t_opp: float,
    opponent_strategy,
) -> float:
    """Exact expected utility of bidding ``bid`` at valuation v.

    ``t_own``/``t_opp`` are the two bidders' inclusion probabilities; the
    symmetric equilibrium uses t_own == t_opp, but the evaluator accepts
    asymmetric values so the audit can probe deviations. The opponent's
    strategy must be monotone increasing (BidStrategy or plain callable).
    """
    _check_variant(variant)
    v = validate_unit(v, "v")
    t_own = validate_unit(t_own, "T_own")
    t_opp = validate_unit(t_opp, "T_opp")
    if bid < 0.0:
        raise DomainError("bid must be non-negative")

    p_win = win_probability(bid, opponent_strategy)
    if variant == "winner_pay":
        return (v - bid) * (t_opp * p_win + (1.0 - t_opp))
    if variant == "winner_pay_joint":
        both = t_own * t_opp + (1.0 - t_own) * (1.0 - t_opp)
        solo = t_own * (1.0 - t_opp)
        return (v - bid) * (both * p_win + solo)
    # all_pay: bid is paid unconditionally
    return v * (t_opp * p_win + (1.0 - t_opp)) - bid
