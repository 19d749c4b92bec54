"""Evaluation of V(z) = gamma + integral d(sigma)/(t - z) and analytic checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError
from .measure import (
    DEFAULT_TOL,
    Resolvent,
    SpectralMeasure,
    integrate_weighted,
    moments,
)

__all__ = [
    "StieltjesLikeFunction",
    "CheckReport",
    "eval_V",
    "check_herglotz",
    "check_stieltjes",
    "asymptotics",
    "log_polar_grid",
]


@dataclass(frozen=True)
class StieltjesLikeFunction:
    """A spectral measure plus a real free term of arbitrary sign."""

    sigma: SpectralMeasure
    gamma: float


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    min_value: float
    argmin: complex
    tolerance: float


def log_polar_grid(n_radius: int = 7, n_angle: int = 7,
                   r_min: float = 1e-3, r_max: float = 1e3) -> list:
    """Default evaluation grid: log-spaced radii, angles strictly inside (0, pi)."""
    radii = np.logspace(math.log10(r_min), math.log10(r_max), n_radius)
    angles = np.linspace(math.pi / (n_angle + 1),
                         math.pi * n_angle / (n_angle + 1), n_angle)
    return [complex(r * math.cos(t), r * math.sin(t)) for r in radii for t in angles]


def eval_V(f: StieltjesLikeFunction, z: complex, tol: float = DEFAULT_TOL) -> complex:
    """Evaluate V at a point off [0, +inf)."""
    value, _ = integrate_weighted(f.sigma, Resolvent(complex(z)), tol)
    return f.gamma + complex(value)


def check_herglotz(f: StieltjesLikeFunction, grid: Optional[Sequence[complex]] = None,
                   tol: float = 1e-10) -> CheckReport:
    """Sampled positivity check: min Im V over a grid in the upper half-plane."""
    if grid is None:
        grid = log_polar_grid()
    worst = math.inf
    argmin = complex(0, 1)
    for z in grid:
        z = complex(z)
        if z.imag <= 0:
            raise ValidationError(f"grid point {z} not in the upper half-plane")
        v = eval_V(f, z).imag
        if v < worst:
            worst, argmin = v, z
    return CheckReport(passed=(worst >= -tol), min_value=worst,
                       argmin=argmin, tolerance=tol)


def check_stieltjes(f: StieltjesLikeFunction, grid: Optional[Sequence[complex]] = None,
                    tol: float = 1e-10) -> CheckReport:
    """Sampled check of Im[z V(z)] / Im z >= 0 over a grid in the upper half-plane."""
    if grid is None:
        grid = log_polar_grid()
    worst = math.inf
    argmin = complex(0, 1)
    for z in grid:
        z = complex(z)
        if z.imag <= 0:
            raise ValidationError(f"grid point {z} not in the upper half-plane")
        q = (z * eval_V(f, z)).imag / z.imag
        if q < worst:
            worst, argmin = q, z
    return CheckReport(passed=(worst >= -tol), min_value=worst,
                       argmin=argmin, tolerance=tol)


def asymptotics(f: StieltjesLikeFunction):
    """(V(-inf), V(0-)) = (gamma, gamma + b); the second may be +inf."""
    if f.sigma.is_empty():
        return f.gamma, f.gamma
    mom = moments(f.sigma)
    v0 = math.inf if math.isinf(mom.b) else f.gamma + mom.b
    return f.gamma, v0
