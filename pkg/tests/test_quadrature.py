import math

import numpy as np
import pytest

from pickroute.quadrature import (
    DEFAULT_SETTINGS,
    IntegrationError,
    QuadratureSettings,
    gap_kernel,
    integrate_1d,
    integrate_2d,
)


def gauss_legendre_gap_kernel(x: float, n: int = 200) -> float:
    """Independent evaluation with the substitution y = 1 - exp(-t)."""
    lo = -math.log1p(-x)
    hi = 60.0
    nodes, weights = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
    vals = t * t * np.exp(-t) / (1.0 - np.exp(-t)) ** 2
    return float(0.5 * (hi - lo) * np.dot(weights, vals))


def test_integrate_1d_polynomial():
    value, err = integrate_1d(lambda x: x * x, 0.0, 1.0)
    assert value == pytest.approx(1 / 3, abs=1e-12)
    assert err < 1e-10


def test_integrate_1d_log_square_singularity():
    value, _ = integrate_1d(lambda x: math.log1p(-x) ** 2, 0.0, 1.0)
    assert value == pytest.approx(2.0, rel=1e-9)


def test_integrate_1d_x_log():
    value, _ = integrate_1d(lambda x: -math.log1p(-x) * x, 0.0, 1.0)
    assert value == pytest.approx(0.75, rel=1e-10)


def test_integrate_1d_rejects_reversed_interval():
    with pytest.raises(ValueError):
        integrate_1d(lambda x: x, 1.0, 0.0)


def test_integrate_1d_failure_carries_partial_value():
    settings = QuadratureSettings(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=1)
    with pytest.raises(IntegrationError) as info:
        integrate_1d(lambda x: math.log1p(-x) ** 2, 0.0, 1.0, settings)
    assert math.isfinite(info.value.partial_value)


def test_integrate_2d_examples():
    assert integrate_2d(lambda x, y: 1.0)[0] == pytest.approx(1.0, abs=1e-10)
    assert integrate_2d(lambda x, y: x * y)[0] == pytest.approx(0.25, abs=1e-10)
    value, _ = integrate_2d(lambda x, y: math.log1p(-x) * math.log1p(-y))
    assert value == pytest.approx(1.0, rel=1e-8)


def test_tolerance_halving_within_error_estimate():
    f = lambda x: math.log1p(-x) ** 2 * x
    v1, e1 = integrate_1d(f, 0.0, 1.0, QuadratureSettings(1e-8, 1e-7, 2000))
    v2, _ = integrate_1d(f, 0.0, 1.0, QuadratureSettings(5e-9, 5e-8, 2000))
    assert abs(v1 - v2) <= max(e1, 1e-12)


def test_gap_kernel_endpoints_and_domain():
    assert gap_kernel(1.0) == 0.0
    with pytest.raises(ValueError):
        gap_kernel(0.0)
    with pytest.raises(ValueError):
        gap_kernel(-0.5)


def test_gap_kernel_against_independent_quadrature():
    for x in (1e-4, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99):
        assert gap_kernel(x) == pytest.approx(gauss_legendre_gap_kernel(x), rel=1e-9)
    assert gap_kernel(0.5) == pytest.approx(2.605840094684627, rel=1e-12)


def test_gap_kernel_monotone_decreasing():
    xs = np.linspace(1e-3, 1.0, 100)
    vals = [gap_kernel(x) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_gap_kernel_bounded_near_zero():
    # finite limit pi^2/3 at 0+: nearby evaluations agree within 10%
    assert gap_kernel(1e-4) == pytest.approx(gap_kernel(1e-6), rel=0.1)
    assert gap_kernel(1e-6) == pytest.approx(math.pi ** 2 / 3, rel=1e-4)


def test_gap_kernel_weighted_integral():
    # E[D^2] for a single uniform point: int_0^1 x^2 g(x) dx = 7/12
    value, _ = integrate_1d(lambda x: x * x * gap_kernel(x) if x > 0 else 0.0, 0.0, 1.0)
    assert value == pytest.approx(7 / 12, rel=1e-9)


def test_settings_validation():
    with pytest.raises(ValueError):
        QuadratureSettings(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSettings(max_subdivisions=0)
    assert DEFAULT_SETTINGS.abs_tol == 1e-10
