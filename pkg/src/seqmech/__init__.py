"""seqmech: equilibrium analysis of batch-auction and time-boost sequencing.

A library and CLI that evaluates the closed-form bidding and latency
investment equilibria of two transaction-sequencing mechanisms, certifies
each equilibrium with an independent best-response audit, and cross-checks
every closed form against deterministic Monte Carlo simulation.
"""

__version__ = "0.1.0"

from .audit import AuditResult, run_all_audits
from .batch import (
    VARIANTS,
    BidStrategy,
    bid_strategy,
    equilibrium_bid,
    expected_utility,
    interim_payoff,
)
from .boost import (
    BoostStrategy,
    boost_to_fee,
    equilibrium_boost,
    expected_utility_boost,
    fee_to_boost,
    participation_threshold,
    score,
    strategy_pair,
)
from .comparison import (
    ComparisonReport,
    boost_payment_split,
    compare,
    expected_revenue,
    expected_welfare,
    misallocation_probability,
)
from .core import (
    BoostParams,
    ContractViolationError,
    DomainError,
    ExcludedFromBatchError,
    InclusionCurve,
    IncompatibleCostError,
    LatencyCostModel,
    cost_eval,
    inclusion_probability,
)
from .latency import (
    LatencyStrategy,
    build_strategy,
    expected_latency_gap,
    expected_profit,
    sample_delay,
)
from .mc import (
    EstimateResult,
    MetricSpec,
    RoundOutcome,
    estimate,
    round_draws,
    simulate_batch_round,
    simulate_boost_round,
    simulate_investment_round,
)

__all__ = [
    "AuditResult",
    "BidStrategy",
    "BoostParams",
    "BoostStrategy",
    "ComparisonReport",
    "ContractViolationError",
    "DomainError",
    "EstimateResult",
    "ExcludedFromBatchError",
    "InclusionCurve",
    "IncompatibleCostError",
    "LatencyCostModel",
    "LatencyStrategy",
    "MetricSpec",
    "RoundOutcome",
    "VARIANTS",
    "bid_strategy",
    "boost_payment_split",
    "boost_to_fee",
    "build_strategy",
    "compare",
    "cost_eval",
    "equilibrium_bid",
    "equilibrium_boost",
    "estimate",
    "expected_latency_gap",
    "expected_profit",
    "expected_revenue",
    "expected_utility",
    "expected_utility_boost",
    "expected_welfare",
    "fee_to_boost",
    "inclusion_probability",
    "interim_payoff",
    "misallocation_probability",
    "participation_threshold",
    "round_draws",
    "run_all_audits",
    "sample_delay",
    "score",
    "simulate_batch_round",
    "simulate_boost_round",
    "simulate_investment_round",
    "strategy_pair",
]
