"""Ex-ante latency investment game for the batch auction.

Before values and arrival times realize, each bidder buys a message delay
at cost C(delta). In the symmetric mixed equilibrium the delay CDF is

    sigma(delta) = 3/2 + 3 C'(delta)

supported where C'(delta_lo) = -1/2 and C'(delta_hi) = -1/6; outside the
support sigma is clamped to 0 / 1. The bidder profit functional and the
expected latency gap E|delta_2 - delta_1| are evaluated by adaptive
quadrature split at the support endpoints (the integrands kink there).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .core import DomainError, IncompatibleCostError, LatencyCostModel

_QUAD_KW = dict(epsabs=1e-11, epsrel=1e-10, limit=200)
_ERROR_BUDGET = 1e-9  # quadrature contract for closed-form cost families
# tabulated models: the interpolant's clamp micro-kinks make quad's error
# estimate conservative; a nano-scale guarantee there would be false
# precision on top of interpolation error, so the budget is relaxed
_ERROR_BUDGET_TABULATED = 5e-8


def _quad(fn, a: float, b: float, budget: float = _ERROR_BUDGET) -> tuple[float, float]:
    """quad with the module tolerances; roundoff chatter below the budget is
    silenced, the returned error estimate is enforced instead."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(fn, a, b, **_QUAD_KW)
    if err > budget:
        raise ArithmeticError(
            f"quadrature error estimate {err:.3e} exceeds the {budget} contract"
        )
    return val, err


def _budget_for(cost: LatencyCostModel) -> float:
    return _ERROR_BUDGET if cost.family == "inverse" else _ERROR_BUDGET_TABULATED


@dataclass(frozen=True)
class LatencyStrategy:
    """Symmetric mixed investment strategy: delay CDF sigma over its support."""

    cost: LatencyCostModel
    support: tuple[float, float]

    @property
    def delta_lo(self) -> float:
        return self.support[0]

    @property
    def delta_hi(self) -> float:
        return self.support[1]

    def cdf(self, delta):
        """sigma(delta), clamped to 0 below the support and 1 above it."""
        delta = np.asarray(delta, dtype=float)
        scalar = delta.ndim == 0
        delta = np.atleast_1d(delta)
        out = np.empty_like(delta)
        below = delta <= self.delta_lo
        above = delta >= self.delta_hi
        mid = ~(below | above)
        out[below] = 0.0
        out[above] = 1.0
        if np.any(mid):
            out[mid] = np.clip(1.5 + 3.0 * self.cost.deriv(delta[mid]), 0.0, 1.0)
        return float(out[0]) if scalar else out

    def quantile(self, u):
        """Inverse CDF; closed form for the inverse-delay family, bisection otherwise."""
        u = np.asarray(u, dtype=float)
        if np.any(u < 0.0) or np.any(u > 1.0):
            raise DomainError("quantile argument must lie in [0, 1]")
        scalar = u.ndim == 0
        u = np.atleast_1d(u)
        if self.cost.family == "inverse":
            out = np.sqrt(3.0 * self.cost.c / (1.5 - u))
            out = np.clip(out, self.delta_lo, self.delta_hi)
        else:
            lo = np.full_like(u, self.delta_lo)
            hi = np.full_like(u, self.delta_hi)
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                go_right = self.cdf(mid) <= u
                lo = np.where(go_right, mid, lo)
                hi = np.where(go_right, hi, mid)
            out = 0.5 * (lo + hi)
            out[u == 0.0] = self.delta_lo
            out[u == 1.0] = self.delta_hi
        return float(out[0]) if scalar else out


def _leftmost(predicate, lo: float, hi: float, iters: int = 200) -> float:
    """Leftmost x in [lo, hi] with predicate(x) True; predicate is monotone."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def build_strategy(cost: LatencyCostModel) -> LatencyStrategy:
    """Construct the equilibrium investment strategy for a cost model.

    The support endpoints solve C' = -1/2 and C' = -1/6 (closed forms
    sqrt(2c), sqrt(6c) for the inverse family). If either root is missing
    in (0, 1], or the upper endpoint exceeds the batch window, the cost
    function admits no interior equilibrium.
    """
    if cost.family == "inverse":
        lo = math.sqrt(2.0 * cost.c)
        hi = math.sqrt(6.0 * cost.c)
        if hi > 1.0:
            raise IncompatibleCostError(
                "cost function incompatible with interior equilibrium: "
                f"upper support endpoint {hi:.6g} exceeds the batch window"
            )
        return LatencyStrategy(cost=cost, support=(lo, hi))

    eps = 1e-12
    dom_lo, dom_hi = cost.domain
    lo_bound = max(eps, dom_lo)
    hi_bound = min(1.0, dom_hi)
    if hi_bound <= lo_bound:
        raise IncompatibleCostError("cost model domain does not intersect (0, 1]")
    # sigma is non-decreasing; locate the boundary where it leaves 0 / reaches 1.
    d1_lo = cost.deriv(lo_bound)
    d1_hi = cost.deriv(hi_bound)
    # slack of ~1e-12 keeps rounding on flat C' stretches from masking a root
    if d1_lo > -0.5 or d1_hi < -0.5 - 1e-12:
        raise IncompatibleCostError(
            "cost function incompatible with interior equilibrium: C' = -1/2 has no root in (0, 1]"
        )
    if d1_hi < -1.0 / 6.0 - 1e-9:
        raise IncompatibleCostError(
            "cost function incompatible with interior equilibrium: C' = -1/6 has no root in (0, 1]"
        )
    delta_lo = _leftmost(lambda d: cost.deriv(d) >= -0.5 - 1e-12, lo_bound, hi_bound)
    delta_hi = _leftmost(lambda d: cost.deriv(d) >= -1.0 / 6.0 - 1e-12, lo_bound, hi_bound)
    return LatencyStrategy(cost=cost, support=(delta_lo, delta_hi))


def sample_delay(strategy: LatencyStrategy, u: float):
    """Inverse-CDF sample of the equilibrium delay from a uniform draw."""
    return strategy.quantile(u)


def expected_profit(delta_own: float, strategy_opp: LatencyStrategy) -> float:
    """Ex-ante profit of committing to delay delta_own against the mixed strategy.

    Integrates the interim auction payoff over races the bidder can reach
    (the integrand is 1/2 - sigma/3) and subtracts the investment cost. The
    quadrature is split at the opponent support endpoints where sigma kinks.
    """
    delta_own = float(delta_own)
    if not 0.0 < delta_own <= 1.0:
        raise DomainError("delta_own must lie in (0, 1]")
    cost = strategy_opp.cost.value(delta_own)
    if delta_own == 1.0:
        return -cost
    lo, hi = strategy_opp.support
    breaks = [b for b in (lo, hi) if delta_own < b < 1.0]
    pieces = [delta_own, *breaks, 1.0]
    total = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        val, _ = _quad(lambda d: 0.5 - strategy_opp.cdf(d) / 3.0, a, b,
                       budget=_budget_for(strategy_opp.cost))
        total += val
    return total - cost


def expected_latency_gap(strategy: LatencyStrategy) -> float:
    """E|delta_2 - delta_1| under independent draws from the equilibrium CDF.

    Uses the density form 6 delta C''(delta) (2 + 6 C'(delta)) integrated
    over the support.
    """
    lo, hi = strategy.support
    cost = strategy.cost

    def integrand(d):
        return 6.0 * d * cost.deriv2(d) * (2.0 + 6.0 * cost.deriv(d))

    val, _ = _quad(integrand, lo, hi, budget=_budget_for(cost))
    return val
