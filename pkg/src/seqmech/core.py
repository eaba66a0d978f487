"""Shared domain types: inclusion curves, latency cost models, boost parameters.

All reals are plain doubles. Valuations and batch times live on the unit
interval; delays are non-negative and, in mechanism contexts, at most one
batch window. Every object here is immutable after construction and every
operation is a pure function, so instances can be shared freely across
workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator


class DomainError(ValueError):
    """An argument fell outside an operation's domain."""


class ExcludedFromBatchError(DomainError):
    """Bidder cannot land in the current batch (inclusion probability 0).

    The winner-pay equilibrium bid is undefined at T = 0: the shading odds
    (1 - T)/T diverge and the bid is irrelevant to the current batch anyway.
    """


class ContractViolationError(ValueError):
    """A callable argument violated its stated contract (e.g. monotonicity)."""


class IncompatibleCostError(ValueError):
    """Cost function does not admit an interior investment equilibrium."""


def validate_unit(x: float, name: str) -> float:
    """Validate a scalar in [0, 1] (valuations, batch times, delays)."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {x}")
    return x


# ---------------------------------------------------------------------------
# Inclusion curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InclusionCurve:
    """Probability T(tau) that a bid sent at time tau lands in the current batch.

    1 - T is a CDF on the unit interval, so T(0) = 1, T(1) = 0 and T is
    non-increasing. Three kinds are supported:

    - ``linear``:        T(tau) = 1 - tau
    - ``deterministic``: step curve, T = 1 for tau <= 1 - delta else 0
      (full-information comparison model; requires 0 < delta <= 1)
    - ``piecewise``:     linear interpolation through ordered (tau, T) knots
    """

    kind: str
    delta: float | None = None
    knots: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == "linear":
            return
        if self.kind == "deterministic":
            if self.delta is None or not 0.0 < self.delta <= 1.0:
                raise DomainError(
                    "deterministic curve requires delta in (0, 1] so that T(1) = 0"
                )
            return
        if self.kind == "piecewise":
            knots = self.knots
            if not knots or len(knots) < 2:
                raise DomainError("piecewise curve needs at least two knots")
            taus = np.array([k[0] for k in knots], dtype=float)
            ts = np.array([k[1] for k in knots], dtype=float)
            if taus[0] != 0.0 or taus[-1] != 1.0:
                raise DomainError("piecewise knots must span tau = 0 .. 1")
            if ts[0] != 1.0 or ts[-1] != 0.0:
                raise DomainError("piecewise curve must have T(0) = 1 and T(1) = 0")
            if np.any(np.diff(taus) <= 0):
                raise DomainError("piecewise knot times must be strictly increasing")
            if np.any(np.diff(ts) > 0):
                raise DomainError("piecewise curve must be non-increasing")
            object.__setattr__(self, "knots", tuple((float(a), float(b)) for a, b in knots))
            return
        raise DomainError(f"unknown inclusion curve kind {self.kind!r}")

    @classmethod
    def linear(cls) -> "InclusionCurve":
        return cls(kind="linear")

    @classmethod
    def deterministic(cls, delta: float) -> "InclusionCurve":
        return cls(kind="deterministic", delta=float(delta))

    @classmethod
    def piecewise(cls, knots) -> "InclusionCurve":
        return cls(kind="piecewise", knots=tuple(tuple(k) for k in knots))

    def __call__(self, tau: float) -> float:
        return inclusion_probability(self, tau)

    def to_dict(self) -> dict:
        if self.kind == "linear":
            return {"kind": "linear"}
        if self.kind == "deterministic":
            return {"kind": "deterministic", "delta": self.delta}
        return {"kind": "piecewise", "knots": [list(k) for k in self.knots]}


def inclusion_probability(curve: InclusionCurve, tau: float) -> float:
    """Evaluate T(tau) for a curve; tau outside [0, 1] is a domain error."""
    tau = validate_unit(tau, "tau")
    if curve.kind == "linear":
        return 1.0 - tau
    if curve.kind == "deterministic":
        return 1.0 if tau <= 1.0 - curve.delta else 0.0
    taus = [k[0] for k in curve.knots]
    ts = [k[1] for k in curve.knots]
    return float(np.interp(tau, taus, ts))


# ---------------------------------------------------------------------------
# Latency cost models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatencyCostModel:
    """Cost C(delta) of achieving message delay delta.

    The model class is strictly decreasing and convex on its domain. Two
    families:

    - ``inverse``: C(delta) = c / delta with exact closed-form derivatives.
    - ``custom``:  tabulated (delta, C) pairs, evaluated with a monotone
      cubic (PCHIP) interpolant; derivatives come from the interpolant.
      The table is validated at load time (strictly decreasing values,
      non-decreasing slopes). The interpolant's second derivative is clamped
      at zero: a shape-preserving cubic can undershoot slightly where the
      true curvature vanishes.
    """

    family: str
    c: float | None = None
    grid: tuple[float, ...] | None = None
    values: tuple[float, ...] | None = None
    _interp: PchipInterpolator | None = field(default=None, repr=False, compare=False)
    _d1: PchipInterpolator | None = field(default=None, repr=False, compare=False)
    _d2: PchipInterpolator | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.family == "inverse":
            if self.c is None or self.c <= 0.0:
                raise DomainError("inverse-delay cost requires c > 0")
            return
        if self.family != "custom":
            raise DomainError(f"unknown cost family {self.family!r}")
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.size < 4 or values.shape != grid.shape:
            raise DomainError("custom cost requires matching 1-d grid/values with >= 4 points")
        if grid[0] <= 0.0:
            raise DomainError("custom cost grid must be strictly positive")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("custom cost grid must be strictly increasing")
        if np.any(np.diff(values) >= 0):
            raise DomainError("custom cost values must be strictly decreasing")
        slopes = np.diff(values) / np.diff(grid)
        if np.any(np.diff(slopes) < -1e-12 * np.max(np.abs(slopes))):
            raise DomainError("custom cost table is not convex (slopes must be non-decreasing)")
        interp = PchipInterpolator(grid, values)
        object.__setattr__(self, "grid", tuple(grid))
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "_interp", interp)
        object.__setattr__(self, "_d1", interp.derivative(1))
        object.__setattr__(self, "_d2", interp.derivative(2))

    @classmethod
    def inverse_delay(cls, c: float) -> "LatencyCostModel":
        return cls(family="inverse", c=float(c))

    @classmethod
    def custom(cls, grid, values) -> "LatencyCostModel":
        return cls(family="custom", grid=tuple(grid), values=tuple(values))

    @property
    def domain(self) -> tuple[float, float]:
        if self.family == "inverse":
            return (0.0, float("inf"))
        return (self.grid[0], self.grid[-1])

    def _check_domain(self, delta) -> np.ndarray:
        delta = np.asarray(delta, dtype=float)
        if np.any(delta <= 0.0):
            raise DomainError("delay must be > 0 (cost diverges at 0)")
        lo, hi = self.domain
        if np.any(delta < lo) or np.any(delta > hi):
            raise DomainError(
                f"delay outside tabulated domain [{lo}, {hi}]"
            )
        return delta

    def value(self, delta):
        delta = self._check_domain(delta)
        if self.family == "inverse":
            out = self.c / delta
        else:
            out = self._interp(delta)
        return float(out) if np.ndim(delta) == 0 else np.asarray(out)

    def deriv(self, delta):
        delta = self._check_domain(delta)
        if self.family == "inverse":
            out = -self.c / delta**2
        else:
            out = self._d1(delta)
        return float(out) if np.ndim(delta) == 0 else np.asarray(out)

    def deriv2(self, delta):
        delta = self._check_domain(delta)
        if self.family == "inverse":
            out = 2.0 * self.c / delta**3
        else:
            out = np.maximum(self._d2(delta), 0.0)
        return float(out) if np.ndim(delta) == 0 else np.asarray(out)

    def to_dict(self) -> dict:
        if self.family == "inverse":
            return {"family": "inverse", "c": self.c}
        return {"family": "custom", "grid": list(self.grid), "values": list(self.values)}


def cost_eval(model: LatencyCostModel, delta: float, order: int = 0) -> float:
    """Evaluate C, C' or C'' (order 0, 1, 2) at a delay; delta <= 0 is rejected."""
    if order == 0:
        return model.value(delta)
    if order == 1:
        return model.deriv(delta)
    if order == 2:
        return model.deriv2(delta)
    raise DomainError(f"order must be 0, 1 or 2, got {order}")


# ---------------------------------------------------------------------------
# Time-boost parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoostParams:
    """Time-boost mechanism parameters: max boost g and fee scale c, with g >= c."""

    g: float
    c: float

    def __post_init__(self) -> None:
        if not self.g > 0.0:
            raise DomainError("boost params: require g > 0")
        if not self.c > 0.0:
            raise DomainError("boost params: require c > 0")
        if self.g < self.c:
            raise DomainError("boost params: require g >= c")

    @property
    def marginal_cost(self) -> float:
        """Marginal fee per unit boost under the linear approximation, c/g."""
        return self.c / self.g
