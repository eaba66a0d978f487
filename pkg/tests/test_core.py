from __future__ import annotations

import numpy as np
import pytest

from seqmech.core import (
    BoostParams,
    DomainError,
    InclusionCurve,
    LatencyCostModel,
    cost_eval,
    inclusion_probability,
)

RNG = np.random.default_rng(20240811)


def all_curves():
    return [
        InclusionCurve.linear(),
        InclusionCurve.deterministic(0.2),
        InclusionCurve.deterministic(1.0),
        InclusionCurve.piecewise([[0.0, 1.0], [0.3, 0.9], [0.7, 0.2], [1.0, 0.0]]),
    ]


def test_inclusion_curve_boundaries_exact() -> None:
    for curve in all_curves():
        assert inclusion_probability(curve, 0.0) == 1.0
        assert inclusion_probability(curve, 1.0) == 0.0


def test_inclusion_curve_monotone_random_pairs() -> None:
    taus = np.sort(RNG.random((2000, 2)), axis=1)
    for curve in all_curves():
        for t1, t2 in taus:
            assert inclusion_probability(curve, t1) >= inclusion_probability(curve, t2)


def test_inclusion_examples() -> None:
    lin = InclusionCurve.linear()
    assert inclusion_probability(lin, 0.0) == 1.0
    assert inclusion_probability(lin, 0.25) == pytest.approx(0.75, abs=1e-12)
    det = InclusionCurve.deterministic(0.2)
    assert inclusion_probability(det, 0.85) == 0.0
    assert inclusion_probability(det, 0.8) == 1.0


def test_inclusion_domain_error() -> None:
    lin = InclusionCurve.linear()
    with pytest.raises(DomainError):
        inclusion_probability(lin, -0.1)
    with pytest.raises(DomainError):
        inclusion_probability(lin, 1.1)


def test_curve_rejects_bad_shapes() -> None:
    with pytest.raises(DomainError):
        InclusionCurve.deterministic(0.0)  # T(1) would be 1
    with pytest.raises(DomainError):
        InclusionCurve.piecewise([[0.0, 1.0], [1.0, 0.1]])  # T(1) != 0
    with pytest.raises(DomainError):
        InclusionCurve.piecewise([[0.0, 1.0], [0.5, 0.2], [0.4, 0.1], [1.0, 0.0]])
    with pytest.raises(DomainError):
        InclusionCurve.piecewise([[0.0, 1.0], [0.5, 0.3], [0.6, 0.4], [1.0, 0.0]])


def test_inverse_cost_closed_forms() -> None:
    model = LatencyCostModel.inverse_delay(0.01)
    assert cost_eval(model, 0.2, 0) == pytest.approx(0.05, abs=1e-15)
    assert cost_eval(model, 0.2, 1) == pytest.approx(-0.25, abs=1e-15)
    assert cost_eval(model, 0.2, 2) == pytest.approx(2.5, abs=1e-14)


def test_cost_domain_errors() -> None:
    model = LatencyCostModel.inverse_delay(0.01)
    with pytest.raises(DomainError):
        cost_eval(model, 0.0, 0)
    with pytest.raises(DomainError):
        cost_eval(model, -0.5, 1)
    with pytest.raises(DomainError):
        cost_eval(model, 0.2, 3)


def custom_from_inverse(c: float = 0.01, lo: float = 0.02, n: int = 1500) -> LatencyCostModel:
    grid = np.linspace(lo, 1.0, n)
    return LatencyCostModel.custom(grid, c / grid)


def test_cost_monotone_convex_random_pairs() -> None:
    models = [LatencyCostModel.inverse_delay(0.01), custom_from_inverse()]
    pairs = np.sort(RNG.uniform(0.02, 1.0, (1000, 2)), axis=1)
    pairs = pairs[pairs[:, 0] < pairs[:, 1]]
    for model in models:
        c1, c2 = model.value(pairs[:, 0]), model.value(pairs[:, 1])
        assert np.all(c1 > c2)
        d1, d2 = model.deriv(pairs[:, 0]), model.deriv(pairs[:, 1])
        assert np.all(d2 - d1 >= -1e-12)  # convexity: C' non-decreasing
        assert np.all(model.deriv2(RNG.uniform(0.02, 1.0, 1000)) >= 0.0)


def test_inverse_finite_difference_consistency() -> None:
    model = LatencyCostModel.inverse_delay(0.01)
    h = 1e-5
    for d in np.arange(0.05, 0.951, 0.05):
        fd1 = (model.value(d + h) - model.value(d - h)) / (2 * h)
        assert fd1 == pytest.approx(model.deriv(d), rel=1e-6)
        fd2 = (model.value(d + h) - 2 * model.value(d) + model.value(d - h)) / h**2
        assert fd2 == pytest.approx(model.deriv2(d), rel=1e-6)


def test_custom_finite_difference_consistency_midcell() -> None:
    # the interpolant is a single cubic inside each cell, so central
    # differences must reproduce its own derivatives there
    model = custom_from_inverse()
    grid = np.asarray(model.grid)
    mids = (grid[:-1] + grid[1:]) / 2
    mids = mids[(mids >= 0.05) & (mids <= 0.6)]
    h = 1e-5
    fd1 = (model.value(mids + h) - model.value(mids - h)) / (2 * h)
    assert np.allclose(fd1, model.deriv(mids), rtol=1e-6)
    fd2 = (model.value(mids + h) - 2 * model.value(mids) + model.value(mids - h)) / h**2
    assert np.allclose(fd2, model.deriv2(mids), rtol=1e-6)


def test_custom_matches_inverse_family() -> None:
    c = 0.01
    model = custom_from_inverse(c)
    ds = np.linspace(0.05, 0.95, 97)
    assert np.allclose(model.value(ds), c / ds, rtol=1e-9)
    assert np.allclose(model.deriv(ds), -c / ds**2, rtol=1e-5)


def test_custom_rejects_bad_tables() -> None:
    grid = np.linspace(0.1, 1.0, 50)
    with pytest.raises(DomainError):
        LatencyCostModel.custom(grid, np.linspace(0.0, 1.0, 50))  # increasing
    with pytest.raises(DomainError):
        LatencyCostModel.custom(grid, np.sqrt(1.5 - grid))  # concave decreasing
    with pytest.raises(DomainError):
        LatencyCostModel.custom([-0.1, 0.2, 0.5, 1.0], [3.0, 2.0, 1.0, 0.5])
    with pytest.raises(DomainError):
        LatencyCostModel.custom([0.1, 0.2], [2.0, 1.0])  # too short


def test_custom_rejects_out_of_domain_eval() -> None:
    model = custom_from_inverse(lo=0.05)
    with pytest.raises(DomainError):
        model.value(0.01)
    with pytest.raises(DomainError):
        model.value(1.5)


def test_boost_params_validation() -> None:
    BoostParams(g=1.0, c=1.0)
    BoostParams(g=10.0, c=1.0)
    with pytest.raises(DomainError, match="g >= c"):
        BoostParams(g=1.0, c=2.0)
    with pytest.raises(DomainError):
        BoostParams(g=0.0, c=0.0)
    with pytest.raises(DomainError):
        BoostParams(g=1.0, c=-1.0)
