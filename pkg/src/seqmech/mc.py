"""Deterministic Monte Carlo simulation of sequencing races.

RNG contract: draws come from a counter-based Philox stream keyed by the
seed, consuming exactly one 128-bit counter block (four doubles) per round.
Round i therefore always sees the same draws for a given seed, no matter
how the rounds are chunked across workers, and estimates are bit-identical
for identical (metric, n, seed) at any worker count.

Per-round draw order (fixed): v_fast, v_slow, tau, tie_coin. Investment
rounds consume the first two slots as the bidders' uniform quantiles and
ignore the rest. The tie coin resolves exact winner ties (fast wins iff
coin < 1/2); tie events are counted and surfaced in reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boost import boost_to_fee, strategy_pair
from .core import BoostParams, DomainError, LatencyCostModel, validate_unit
from .latency import LatencyStrategy, build_strategy

DRAW_ORDER = ("v_fast", "v_slow", "tau", "tie_coin")
DRAWS_PER_ROUND = len(DRAW_ORDER)


def round_draws(seed: int, start: int, stop: int) -> np.ndarray:
    """Uniform draws for rounds [start, stop): shape (stop-start, 4).

    Pure function of (seed, round index): the Philox counter is advanced by
    one block per round, so any chunking reproduces the single-stream draws.
    """
    if start < 0 or stop < start:
        raise DomainError("invalid round range")
    bitgen = np.random.Philox(key=int(seed))
    bitgen.advance(start)
    return np.random.Generator(bitgen).random((stop - start, DRAWS_PER_ROUND))


def _chunked_draws(seed: int, n: int, workers: int) -> np.ndarray:
    """Assemble the n-round draw matrix from per-worker contiguous chunks."""
    workers = max(1, int(workers))
    bounds = np.linspace(0, n, workers + 1, dtype=int)
    parts = [round_draws(seed, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
    return np.concatenate(parts) if len(parts) > 1 else parts[0]


# ---------------------------------------------------------------------------
# Vectorized round tables
# ---------------------------------------------------------------------------

def batch_table(delta: float, draws: np.ndarray) -> dict[str, np.ndarray]:
    """Batch-auction outcomes for a draw matrix, full-information model.

    Races arriving after 1 - delta are reached only by the fast bidder, who
    wins at a zero bid; otherwise both bidders share a batch and play the
    standard first-price auction (bids v/2, higher valuation wins).
    """
    delta = validate_unit(delta, "delta")
    v_fast, v_slow, tau, coin = draws.T
    slow_in = tau <= 1.0 - delta
    tie = slow_in & (v_fast == v_slow)
    fast_wins = np.where(slow_in, (v_fast > v_slow) | (tie & (coin < 0.5)), True)
    welfare = np.where(fast_wins, v_fast, v_slow)
    winning_bid = np.where(slow_in, np.maximum(v_fast, v_slow) / 2.0, 0.0)
    payment_fast = np.where(fast_wins, winning_bid, 0.0)
    payment_slow = np.where(~fast_wins, winning_bid, 0.0)
    return {
        "fast_wins": fast_wins,
        "included_fast": np.ones_like(slow_in),
        "included_slow": slow_in,
        "welfare": welfare,
        "revenue": payment_fast + payment_slow,
        "payment_fast": payment_fast,
        "payment_slow": payment_slow,
        "misallocation": (fast_wins & (v_slow > v_fast)) | (~fast_wins & (v_fast > v_slow)),
        "tie": tie,
    }


def boost_table(
    delta: float,
    params: BoostParams,
    draws: np.ndarray,
    pricing: str = "all_pay",
    fee_mode: str = "linear",
) -> dict[str, np.ndarray]:
    """Time-boost outcomes for a draw matrix under the signaling equilibrium.

    Both bidders play their role's equilibrium strategy; the winner is
    decided by the score comparison pi_fast + delta vs pi_slow. With
    ``fee_mode="exact"`` the same boosts are charged through the exact fee
    curve to quantify the linear approximation (not an equilibrium there).
    """
    delta = validate_unit(delta, "delta")
    fast, slow = strategy_pair(params, delta, pricing)
    if fee_mode == "exact" and slow.top >= params.g:
        raise DomainError(
            "exact fee undefined: equilibrium boost reaches the max boost g"
        )
    v_fast, v_slow, _tau, coin = draws.T
    g, c = params.g, params.c
    u = fast.threshold
    if pricing == "all_pay":
        base_fast, base_slow = g * v_fast**2 / (2.0 * c), g * v_slow**2 / (2.0 * c)
    else:
        base_fast, base_slow = g * v_fast / (2.0 * c), g * v_slow / (2.0 * c)
    pi_fast = np.where(v_fast >= u, base_fast - delta / 2.0, 0.0)
    pi_slow = np.where(v_slow >= u, base_slow + delta / 2.0, 0.0)

    score_fast = pi_fast + delta
    tie = score_fast == pi_slow
    fast_wins = (score_fast > pi_slow) | (tie & (coin < 0.5))

    if fee_mode == "linear":
        fee_fast, fee_slow = c * pi_fast / g, c * pi_slow / g
    else:
        fee_fast, fee_slow = c * pi_fast / (g - pi_fast), c * pi_slow / (g - pi_slow)
    if pricing == "all_pay":
        payment_fast, payment_slow = fee_fast, fee_slow
    else:
        payment_fast = np.where(fast_wins, fee_fast, 0.0)
        payment_slow = np.where(~fast_wins, fee_slow, 0.0)

    return {
        "fast_wins": fast_wins,
        "included_fast": np.ones_like(fast_wins),
        "included_slow": np.ones_like(fast_wins),
        "welfare": np.where(fast_wins, v_fast, v_slow),
        "revenue": payment_fast + payment_slow,
        "payment_fast": payment_fast,
        "payment_slow": payment_slow,
        "misallocation": (fast_wins & (v_slow > v_fast)) | (~fast_wins & (v_fast > v_slow)),
        "tie": tie,
    }


def investment_table(strategy: LatencyStrategy, draws: np.ndarray) -> dict[str, np.ndarray]:
    """Sampled delay pairs and gaps from the investment equilibrium CDF."""
    d1 = strategy.quantile(draws[:, 0])
    d2 = strategy.quantile(draws[:, 1])
    return {"delta_fast": d1, "delta_slow": d2, "gap": np.abs(d2 - d1)}


# ---------------------------------------------------------------------------
# Single-round views
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RoundOutcome:
    """One simulated race: winner, surplus, payments and inclusion flags."""

    winner: str  # "fast" | "slow"
    welfare: float
    revenue: float
    payment_fast: float
    payment_slow: float
    included_fast: bool
    included_slow: bool
    v_fast: float
    v_slow: float
    tau: float


def _outcome_from_table(table: dict[str, np.ndarray], draws: np.ndarray) -> RoundOutcome:
    return RoundOutcome(
        winner="fast" if bool(table["fast_wins"][0]) else "slow",
        welfare=float(table["welfare"][0]),
        revenue=float(table["revenue"][0]),
        payment_fast=float(table["payment_fast"][0]),
        payment_slow=float(table["payment_slow"][0]),
        included_fast=bool(table["included_fast"][0]),
        included_slow=bool(table["included_slow"][0]),
        v_fast=float(draws[0, 0]),
        v_slow=float(draws[0, 1]),
        tau=float(draws[0, 2]),
    )


def simulate_batch_round(delta: float, rng_draw) -> RoundOutcome:
    """One batch race from an explicit draw tuple (v_fast, v_slow, tau, tie_coin)."""
    draws = np.asarray(rng_draw, dtype=float).reshape(1, DRAWS_PER_ROUND)
    return _outcome_from_table(batch_table(delta, draws), draws)


def simulate_boost_round(
    delta: float,
    params: BoostParams,
    rng_draw,
    pricing: str = "all_pay",
    fee_mode: str = "linear",
) -> RoundOutcome:
    """One time-boost race from an explicit draw tuple."""
    draws = np.asarray(rng_draw, dtype=float).reshape(1, DRAWS_PER_ROUND)
    return _outcome_from_table(boost_table(delta, params, draws, pricing, fee_mode), draws)


def simulate_investment_round(cost: LatencyCostModel | LatencyStrategy, rng_draw):
    """One investment round: (delay_fast, delay_slow, gap) from a draw tuple."""
    strategy = cost if isinstance(cost, LatencyStrategy) else build_strategy(cost)
    draws = np.asarray(rng_draw, dtype=float).reshape(1, DRAWS_PER_ROUND)
    t = investment_table(strategy, draws)
    return float(t["delta_fast"][0]), float(t["delta_slow"][0]), float(t["gap"][0])


# ---------------------------------------------------------------------------
# Estimation
# ---------------------------------------------------------------------------

BATCH_METRICS = ("revenue", "welfare", "misallocation")
BOOST_METRICS = ("revenue", "welfare", "misallocation", "payment_fast", "payment_slow")
INVESTMENT_METRICS = ("gap",)


@dataclass(frozen=True)
class MetricSpec:
    """What to estimate: a mechanism, a metric name and the mechanism parameters."""

    mechanism: str  # "batch" | "boost" | "investment"
    metric: str
    delta: float = 0.0
    g: float = 1.0
    c: float = 1.0
    pricing: str = "all_pay"
    fee_mode: str = "linear"
    cost_c: float = 0.01

    def __post_init__(self) -> None:
        allowed = {
            "batch": BATCH_METRICS,
            "boost": BOOST_METRICS,
            "investment": INVESTMENT_METRICS,
        }
        if self.mechanism not in allowed:
            raise DomainError(f"unknown mechanism {self.mechanism!r}")
        if self.metric not in allowed[self.mechanism]:
            raise DomainError(
                f"metric {self.metric!r} not available for {self.mechanism}; "
                f"expected one of {allowed[self.mechanism]}"
            )

    @property
    def label(self) -> str:
        return f"{self.mechanism}_{self.metric}"


@dataclass(frozen=True)
class EstimateResult:
    """A Monte Carlo estimate with its standard error and provenance."""

    metric: str
    mean: float
    stderr: float
    n: int
    seed: int


def _metric_values(spec: MetricSpec, draws: np.ndarray) -> np.ndarray:
    if spec.mechanism == "batch":
        table = batch_table(spec.delta, draws)
    elif spec.mechanism == "boost":
        params = BoostParams(g=spec.g, c=spec.c)
        table = boost_table(spec.delta, params, draws, spec.pricing, spec.fee_mode)
    else:
        strategy = build_strategy(LatencyCostModel.inverse_delay(spec.cost_c))
        table = investment_table(strategy, draws)
    values = table[spec.metric]
    return values.astype(float) if values.dtype != float else values


def _summarize(label: str, values: np.ndarray, n: int, seed: int) -> EstimateResult:
    values = values.astype(float) if values.dtype != float else values
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return EstimateResult(metric=label, mean=mean, stderr=stderr, n=n, seed=int(seed))


def estimate(spec: MetricSpec, n: int, seed: int, workers: int = 1) -> EstimateResult:
    """Mean and standard error of a metric over n independent rounds.

    Output is bit-identical for identical (spec, n, seed) regardless of
    ``workers``: chunking only affects how the draw matrix is generated,
    never its contents, and the reduction runs over the assembled array.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    draws = _chunked_draws(seed, n, workers)
    values = _metric_values(spec, draws)
    return _summarize(spec.label, values, n, seed)


def batch_estimates(
    delta: float, n: int, seed: int, workers: int = 1
) -> tuple[dict[str, EstimateResult], int]:
    """All batch metrics from one shared draw stream, plus the tie count."""
    draws = _chunked_draws(seed, n, workers)
    table = batch_table(delta, draws)
    out = {f"batch_{m}": _summarize(f"batch_{m}", table[m], n, seed) for m in BATCH_METRICS}
    return out, int(np.count_nonzero(table["tie"]))


def boost_estimates(
    delta: float,
    params: BoostParams,
    n: int,
    seed: int,
    pricing: str = "all_pay",
    fee_mode: str = "linear",
    workers: int = 1,
) -> tuple[dict[str, EstimateResult], int]:
    """All boost metrics from one shared draw stream, plus the tie count."""
    draws = _chunked_draws(seed, n, workers)
    table = boost_table(delta, params, draws, pricing, fee_mode)
    out = {f"boost_{m}": _summarize(f"boost_{m}", table[m], n, seed) for m in BOOST_METRICS}
    return out, int(np.count_nonzero(table["tie"]))


def investment_estimates(
    cost: LatencyCostModel | LatencyStrategy, n: int, seed: int, workers: int = 1
) -> dict[str, EstimateResult]:
    """Investment-round metrics (the sampled latency gap)."""
    strategy = cost if isinstance(cost, LatencyStrategy) else build_strategy(cost)
    draws = _chunked_draws(seed, n, workers)
    table = investment_table(strategy, draws)
    return {"investment_gap": _summarize("investment_gap", table["gap"], n, seed)}


def tie_count(spec: MetricSpec, n: int, seed: int, workers: int = 1) -> int:
    """Number of exact winner ties among n rounds (investment rounds have none)."""
    if spec.mechanism == "investment":
        return 0
    draws = _chunked_draws(seed, n, workers)
    if spec.mechanism == "batch":
        table = batch_table(spec.delta, draws)
    else:
        table = boost_table(
            spec.delta, BoostParams(g=spec.g, c=spec.c), draws, spec.pricing, spec.fee_mode
        )
    return int(np.count_nonzero(table["tie"]))
