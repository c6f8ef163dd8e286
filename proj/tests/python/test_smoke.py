import math

import pytest

import ginibias as gb


def test_population_gini():
    assert gb.gini_exact(gb.Model.geometric(0.5)) == pytest.approx(2 / 3, abs=1e-15)
    assert gb.gini_exact(gb.Model.poisson(1.0)) == pytest.approx(0.5237776118026087, abs=1e-14)
    assert gb.gini_exact(gb.Model.gamma(1.0, 7.0)) == pytest.approx(0.5, abs=1e-15)
    m = gb.Model.poisson(2.0)
    assert gb.gini_series(m) == pytest.approx(gb.gini_exact(m), abs=1e-9)


def test_model_surface():
    m = gb.Model.gamma(2.0, 3.0)
    assert m.family == gb.Family.gamma
    assert gb.mean(m) == pytest.approx(2 / 3)
    assert gb.laplace(m, 1.5) == pytest.approx((3 / 4.5) ** 2)
    assert gb.cdf(gb.Model.poisson(1.0), 0.0) == pytest.approx(math.exp(-1))
    assert gb.tilt(gb.Model.poisson(3.0), 0.0) == gb.Model.poisson(3.0)
    assert "lambda" in repr(gb.Model.poisson(1.0))


def test_estimator():
    assert gb.estimate_gini([1, 2, 3, 4]) == pytest.approx(1 / 3, abs=1e-15)
    assert gb.estimate_gini([0, 0, 0]) == 0.0
    x = gb.sample(gb.Model.gamma(0.7, 1.0), 50, 3)
    assert len(x) == 50
    assert gb.estimate_gini(x) == pytest.approx(gb.estimate_gini_naive(x), abs=1e-12)
    assert x == gb.sample(gb.Model.gamma(0.7, 1.0), 50, 3)


def test_expectation_and_bias():
    assert gb.poisson_expected_ghat(1.0, 2) == pytest.approx(0.54872870817033095, abs=1e-12)
    assert gb.geometric_expected_ghat(0.5, 2) == pytest.approx(0.5686632680417569, abs=1e-14)
    assert gb.expected_ghat_generic(gb.Model.gamma(2.0, 1.0), 5) == pytest.approx(0.375, abs=1e-8)
    assert gb.brute_force_expected_ghat(gb.Model.poisson(0.5), 2, 20) == pytest.approx(
        gb.expected_ghat(gb.Model.poisson(0.5), 2), abs=1e-9)
    r = gb.bias(gb.Model.geometric(0.5), 2)
    assert r["bias"] == r["expectation"] - r["gini"]
    assert r["lower_bound"] <= r["bias"] <= r["upper_bound"]
    assert r["method"] == "geometric_closed"


def test_corrected_estimate():
    assert gb.corrected_estimate([0, 2], gb.Family.poisson) == pytest.approx(
        1 - 0.024951096367722247, abs=1e-12)
    with pytest.raises(ValueError):
        gb.corrected_estimate([0, 0], gb.Family.poisson)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        gb.Model.poisson(-1.0)
    with pytest.raises(ValueError):
        gb.Model.geometric(1.0)
    with pytest.raises(ValueError):
        gb.estimate_gini([1.0])
    with pytest.raises(ValueError):
        gb.estimate_gini([1.0, -2.0])


def test_run_mc_is_deterministic():
    args = (gb.Family.poisson, [0.5, 2.0], [5, 25], 200, 42)
    a = gb.run_mc(*args, threads=1)
    b = gb.run_mc(*args, threads=3)
    assert a == b
    assert len(a) == 4
    cell = a[0]
    assert cell["param"] == 0.5 and cell["n"] == 5
    assert set(cell["uncorrected"]) == {"mean", "relbias", "rmse", "mc_se"}
    assert cell["degenerate_count"] <= 200
