"""Adaptive integration helpers used by the moment formulas.

Thin wrappers around scipy's QUADPACK routines returning ``(value, err_est)``
pairs, plus the closed-form tail kernel of the largest-gap second moment.
Integrands with logarithmic endpoint singularities (``log(1-x)``,
``log^2(1-x)``) are within QUADPACK's extrapolation reach, so no special
substitutions are required on the caller side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate
from scipy.special import spence

__all__ = ["QuadratureSettings", "IntegrationError", "integrate_1d", "integrate_2d", "gap_kernel"]

_PI2_3 = math.pi ** 2 / 3


@dataclass(frozen=True)
class QuadratureSettings:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_SETTINGS = QuadratureSettings()


class IntegrationError(RuntimeError):
    """Raised when the quadrature did not converge; carries the partial result."""

    def __init__(self, message: str, partial_value: float, err_est: float):
        super().__init__(message)
        self.partial_value = partial_value
        self.err_est = err_est


def integrate_1d(f, a: float, b: float, settings: QuadratureSettings = DEFAULT_SETTINGS):
    """Adaptive integral of ``f`` over [a, b]; integrable endpoint singularities allowed."""
    if a > b:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0, 0.0
    res = integrate.quad(
        f, a, b,
        epsabs=settings.abs_tol,
        epsrel=settings.rel_tol,
        limit=settings.max_subdivisions,
        full_output=1,
    )
    value, err = res[0], res[1]
    if len(res) > 3:
        raise IntegrationError(f"integration failed: {res[3]}", value, err)
    return value, err


def integrate_2d(f, settings: QuadratureSettings = DEFAULT_SETTINGS):
    """Iterated adaptive integral of ``f(x, y)`` over the unit square."""
    inner = QuadratureSettings(
        abs_tol=settings.abs_tol * 0.1,
        rel_tol=settings.rel_tol * 0.1,
        max_subdivisions=settings.max_subdivisions,
    )
    inner_err = 0.0

    def outer(x):
        nonlocal inner_err
        value, err = integrate_1d(lambda y: f(x, y), 0.0, 1.0, inner)
        inner_err = max(inner_err, err)
        return value

    value, err = integrate_1d(outer, 0.0, 1.0, settings)
    return value, err + inner_err


def gap_kernel(x: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """g(x) = integral over [x, 1] of log^2(1-y) / y^2 dy, for x in (0, 1].

    Evaluated in closed form via the dilogarithm:
        g(x) = pi^2/3 + (1-x) * log^2(1-x) / x - 2 * Li2(x),
    with Li2(x) = spence(1-x).  g(1) = 0 and g decreases to pi^2/3 at 0+.
    ``settings`` is accepted for interface uniformity; the closed form is exact.
    """
    if x <= 0:
        raise ValueError(f"gap kernel requires x > 0, got {x!r}")
    if x >= 1.0:
        return 0.0
    return _PI2_3 + (1.0 - x) * math.log1p(-x) ** 2 / x - 2.0 * spence(1.0 - x)
