"""Time-boost mechanism: fee/boost mappings, score rule, signaling equilibria.

Transactions are ordered by score = boost - timestamp; a fee F buys boost
pi = g F / (F + c). Equilibrium signaling is derived under the linear fee
approximation F ~ (c/g) pi for a known latency gap delta between a fast
bidder (head start delta) and a slow bidder. Under the all-pay rule the
game is an all-pay contest with a head start:

    pi_fast(v) = g v^2 / (2c) - delta/2,  pi_slow(v) = g v^2 / (2c) + delta/2

for v above the participation threshold u = sqrt(c delta / g), else 0.
The first-price analog uses g v / (2c) +- delta/2 above u = (c/g) delta.

``expected_utility_boost`` is the exact analytic evaluator used by the
best-response audit. Exact ties against the non-participating atom are
resolved by a fair coin, which is why the slow bidder's threshold point is
reported rather than certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import BoostParams, DomainError, validate_unit

PRICINGS = ("all_pay", "first_price")
ROLES = ("fast", "slow")


def fee_to_boost(fee: float, params: BoostParams) -> float:
    """Boost bought by a non-negative fee: g F / (F + c), saturating below g."""
    fee = float(fee)
    if fee < 0.0:
        raise DomainError("fee must be non-negative")
    return params.g * fee / (fee + params.c)


def boost_to_fee(pi: float, params: BoostParams, mode: str = "exact") -> float:
    """Fee for a target boost: exact inverse c pi / (g - pi), or linear c pi / g."""
    pi = float(pi)
    if pi < 0.0:
        raise DomainError("boost must be non-negative")
    if mode == "linear":
        return params.c * pi / params.g
    if mode == "exact":
        if pi >= params.g:
            raise DomainError(f"boost saturates below g = {params.g}; cannot invert pi = {pi}")
        return params.c * pi / (params.g - pi)
    raise DomainError(f"unknown fee mode {mode!r}; expected 'exact' or 'linear'")


def score(pi: float, t: float) -> float:
    """Ordering score of a transaction with boost pi and timestamp t."""
    return pi - t


def participation_threshold(params: BoostParams, delta: float, pricing: str) -> float:
    """Lowest valuation that submits a positive boost, for either pricing rule."""
    if pricing not in PRICINGS:
        raise DomainError(f"unknown pricing {pricing!r}; expected one of {PRICINGS}")
    if delta < 0.0:
        raise DomainError("delta must be non-negative")
    ratio = params.c * delta / params.g
    return math.sqrt(ratio) if pricing == "all_pay" else ratio


@dataclass(frozen=True)
class BoostStrategy:
    """One bidder's equilibrium signaling strategy at a known latency gap.

    The fast bidder enjoys a head start delta in the score comparison; the
    slow bidder compensates it boost-for-boost above the participation
    threshold. With threshold u > 1 (possible only when delta exceeds the
    window under all_pay) the strategy is identically zero.
    """

    params: BoostParams
    delta: float
    role: str
    pricing: str = "all_pay"

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise DomainError(f"unknown role {self.role!r}; expected one of {ROLES}")
        if self.pricing not in PRICINGS:
            raise DomainError(f"unknown pricing {self.pricing!r}; expected one of {PRICINGS}")
        if self.delta < 0.0:
            raise DomainError("delta must be non-negative")

    @property
    def threshold(self) -> float:
        return participation_threshold(self.params, self.delta, self.pricing)

    @property
    def shift(self) -> float:
        """Signed head-start compensation: -delta/2 for fast, +delta/2 for slow."""
        return -0.5 * self.delta if self.role == "fast" else 0.5 * self.delta

    def __call__(self, v: float) -> float:
        return equilibrium_boost(self, v)

    def inverse(self, pi: float) -> float:
        """Valuation bidding pi, for pi in the strategy's positive range."""
        g, c = self.params.g, self.params.c
        base = pi - self.shift
        if self.pricing == "all_pay":
            return math.sqrt(max(0.0, 2.0 * c * base / g))
        return 2.0 * c * base / g

    @property
    def top(self) -> float:
        """Boost at valuation 1 (upper end of the positive range)."""
        if self.threshold > 1.0:
            return 0.0
        return equilibrium_boost(self, 1.0)


def equilibrium_boost(strategy: BoostStrategy, v: float) -> float:
    """Equilibrium boost at valuation v: zero below threshold, closed form above."""
    v = validate_unit(v, "v")
    if v < strategy.threshold:
        return 0.0
    g, c = strategy.params.g, strategy.params.c
    if strategy.pricing == "all_pay":
        return g * v * v / (2.0 * c) + strategy.shift
    return g * v / (2.0 * c) + strategy.shift


def strategy_pair(
    params: BoostParams, delta: float, pricing: str = "all_pay"
) -> tuple[BoostStrategy, BoostStrategy]:
    """(fast, slow) equilibrium strategies at one latency gap."""
    return (
        BoostStrategy(params=params, delta=delta, role="fast", pricing=pricing),
        BoostStrategy(params=params, delta=delta, role="slow", pricing=pricing),
    )


def _win_probability(pi: float, delta: float, role: str, opponent: BoostStrategy) -> float:
    """Pr[own score beats opponent's] for V_opp uniform, fair coin on exact ties.

    The fast bidder's score carries the head start: fast wins iff
    pi_fast + delta >= pi_slow, ties split by a fair coin. The opponent's
    strategy has an atom of non-participants at zero boost of mass
    min(threshold, 1).
    """
    atom = min(opponent.threshold, 1.0)
    margin = pi + delta if role == "fast" else pi - delta
    if margin < 0.0:
        return 0.0  # loses even against the zero-boost atom
    if margin == 0.0:
        # ties the whole atom (and the opponent's threshold bid, measure zero)
        return 0.5 * atom
    if opponent.top <= 0.0 or margin >= opponent.top:
        return 1.0
    return max(atom, min(1.0, opponent.inverse(margin)))


def expected_utility_boost(
    strategy_profile: tuple[BoostStrategy, BoostStrategy],
    role: str,
    v: float,
    pi: float,
) -> float:
    """Exact expected utility of signaling pi at valuation v against the profile.

    All-pay charges the linear fee (c/g) pi unconditionally; first-price
    charges it only on winning. No sampling: the win probability comes from
    the opponent's closed-form inverse and the zero-boost atom.
    """
    fast, slow = strategy_profile
    if fast.role != "fast" or slow.role != "slow":
        raise DomainError("strategy_profile must be (fast, slow)")
    if (fast.params, fast.delta, fast.pricing) != (slow.params, slow.delta, slow.pricing):
        raise DomainError("strategy_profile members must share params, delta and pricing")
    if role not in ROLES:
        raise DomainError(f"unknown role {role!r}")
    v = validate_unit(v, "v")
    if pi < 0.0:
        raise DomainError("boost must be non-negative")

    own, opp = (fast, slow) if role == "fast" else (slow, fast)
    p_win = _win_probability(pi, own.delta, role, opp)
    fee = own.params.marginal_cost * pi
    if own.pricing == "all_pay":
        return v * p_win - fee
    return p_win * (v - fee)
