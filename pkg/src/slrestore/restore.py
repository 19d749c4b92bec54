"""Inverse-problem core: accretivity, sectoriality, and the (h, mu) formulas.

Everything here is exact algebra in the inputs (b, gamma, theta, m, xi).
The two parameter regimes are the finite 1/t moment (b < inf) and the
divergent one (b = inf, where theta is forced to -m and the circle data come
from xi).  Infinite values of b and mu are represented by ``math.inf``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DegenerateImaginaryPart,
    MissingXi,
    OutOfRange,
    ThetaMismatch,
    ValidationError,
)
from .measure import ClassTag

__all__ = [
    "Accretivity",
    "Sectoriality",
    "Circle",
    "Hyperbola",
    "SweepRow",
    "RestoredSystem",
    "accretivity",
    "gamma_admissible",
    "sectoriality_angle",
    "max_sectoriality",
    "restore_h",
    "restore_mu",
    "h_locus",
    "mu_locus",
    "quasi_kernel_eta",
    "sweep",
    "restore_system",
]


@dataclass(frozen=True)
class Accretivity:
    accretive: bool
    strict: bool


@dataclass(frozen=True)
class Sectoriality:
    kind: str  # "sectorial" | "extremal" | "non_accretive"
    alpha: Optional[float] = None  # radians, present iff sectorial


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    excluded: complex  # limit point gamma -> +-inf, not attained


@dataclass(frozen=True)
class Hyperbola:
    """mu(gamma) = offset + numerator / gamma."""

    offset: float
    numerator: float
    zero_crossing: Optional[float] = None  # gamma with mu = 0, when it exists

    def at(self, gamma: float) -> float:
        if gamma == 0.0:
            return math.inf
        return self.offset + self.numerator / gamma


@dataclass(frozen=True)
class SweepRow:
    gamma: float
    h: complex
    mu: float
    sectoriality: Sectoriality
    accretive: bool
    strict: bool
    circle_residual: float
    eta_residual: float


@dataclass(frozen=True)
class RestoredSystem:
    """Restored boundary parameter h, extension parameter mu, and flags."""

    h: complex
    mu: float  # math.inf allowed
    gamma: float
    accretive: bool
    strict: bool
    sectorial: bool
    extremal: bool
    alpha: Optional[float]
    class_tag: Optional[ClassTag] = None

    def __post_init__(self):
        if self.h.imag <= 0:
            raise ValidationError(f"restored h={self.h} must have Im h > 0")


def _quadratic(b: float, gamma: float) -> float:
    return gamma * gamma + gamma * b + 1.0


def accretivity(b: float, gamma: float) -> Accretivity:
    """Accretivity of the restored operator from b and the free term."""
    if b <= 0:
        raise OutOfRange(f"b={b} must be positive (possibly inf)")
    if math.isinf(b):
        return Accretivity(accretive=(gamma >= 0.0), strict=(gamma > 0.0))
    q = _quadratic(b, gamma)
    return Accretivity(accretive=(q >= 0.0), strict=(q > 0.0))


def gamma_admissible(b: float):
    """Closed gamma rays on which the restored operator is accretive.

    Returns a list of (lo, hi) closed intervals (math.inf endpoints open by
    nature).  For finite b < 2 the whole line qualifies; for b >= 2 the two
    rays meet the boundary roots of gamma^2 + gamma*b + 1 = 0.
    """
    if b <= 0:
        raise OutOfRange(f"b={b} must be positive (possibly inf)")
    if math.isinf(b):
        return [(0.0, math.inf)]
    if b < 2.0:
        return [(-math.inf, math.inf)]
    d = math.sqrt(b * b - 4.0)
    g1 = (-b - d) / 2.0
    g2 = (-b + d) / 2.0
    return [(-math.inf, g1), (g2, math.inf)]


def sectoriality_angle(b: float, gamma: float) -> Sectoriality:
    """Sectoriality angle alpha, or the extremal / non-accretive verdict."""
    if b <= 0:
        raise OutOfRange(f"b={b} must be positive (possibly inf)")
    if math.isinf(b):
        if gamma > 0.0:
            return Sectoriality("sectorial", math.atan(1.0 / gamma))
        if gamma == 0.0:
            return Sectoriality("extremal")
        return Sectoriality("non_accretive")
    q = _quadratic(b, gamma)
    if q > 0.0:
        return Sectoriality("sectorial", math.atan(b / q))
    if q == 0.0:
        return Sectoriality("extremal")
    return Sectoriality("non_accretive")


def max_sectoriality(b: float):
    """(gamma*, alpha*) maximizing the angle over gamma; only for 0 < b < 2."""
    if not (0.0 < b < 2.0):
        raise OutOfRange(f"largest-angle formula needs 0 < b < 2, got b={b}")
    return -b / 2.0, math.atan(b / (1.0 - b * b / 4.0))


def _check_infinite_case(theta: float, m: float, xi: Optional[float]) -> float:
    if xi is None:
        raise MissingXi("b = inf restoration requires xi = i2/c")
    if xi <= 0.0:
        raise DegenerateImaginaryPart(f"xi={xi} <= 0 would give Im h <= 0")
    if abs(theta + m) > 1e-8 * (1.0 + abs(m)):
        raise ThetaMismatch(
            f"b = inf forces theta = -m, got theta={theta}, m={m}"
        )
    return xi


def restore_h(b: float, gamma: float, theta: float, m: float,
              xi: Optional[float] = None) -> complex:
    """Restored boundary parameter h = x + iy."""
    if b <= 0:
        raise OutOfRange(f"b={b} must be positive (possibly inf)")
    s = 1.0 + gamma * gamma
    if math.isinf(b):
        xi = _check_infinite_case(theta, m, xi)
        return complex(-m + gamma * xi / s, xi / s)
    c = (theta + m) * b
    if c <= 0.0:
        raise DegenerateImaginaryPart(
            f"(theta + m) * b = {c} <= 0 would give Im h <= 0"
        )
    return complex(theta + gamma * c / s, c / s)


def restore_mu(h: complex, gamma: float) -> float:
    """Extension parameter mu = Re h + Im h / gamma; infinite when gamma = 0."""
    if h.imag <= 0:
        raise ValidationError(f"h={h} must have Im h > 0")
    if gamma == 0.0:
        return math.inf
    return h.real + h.imag / gamma


def h_locus(b: float, theta: float, m: float,
            xi: Optional[float] = None) -> Circle:
    """Circle swept by h as gamma runs over the real line."""
    if b <= 0:
        raise OutOfRange(f"b={b} must be positive (possibly inf)")
    if math.isinf(b):
        xi = _check_infinite_case(theta, m, xi)
        return Circle(center=complex(-m, xi / 2.0), radius=xi / 2.0,
                      excluded=complex(-m, 0.0))
    c = (theta + m) * b
    if c <= 0.0:
        raise DegenerateImaginaryPart(
            f"(theta + m) * b = {c} <= 0: circle degenerates"
        )
    return Circle(center=complex(theta, c / 2.0), radius=c / 2.0,
                  excluded=complex(theta, 0.0))


def mu_locus(b: float, theta: float, m: float,
             xi: Optional[float] = None) -> Hyperbola:
    """Hyperbola swept by mu as gamma varies."""
    if b <= 0:
        raise OutOfRange(f"b={b} must be positive (possibly inf)")
    if math.isinf(b):
        xi = _check_infinite_case(theta, m, xi)
        offset, numerator = -m, xi
    else:
        c = (theta + m) * b
        if c <= 0.0:
            raise DegenerateImaginaryPart(
                f"(theta + m) * b = {c} <= 0: locus degenerates"
            )
        offset, numerator = theta, c
    zero = -numerator / offset if offset != 0.0 else None
    return Hyperbola(offset=offset, numerator=numerator, zero_crossing=zero)


def quasi_kernel_eta(h: complex, mu: float) -> Optional[float]:
    """Boundary parameter of the quasi-kernel: (mu Re h - |h|^2)/(mu - Re h).

    Returns None in the near-degenerate regime |mu - Re h| ~ 0 where the
    quotient amplifies noise; the mu = inf limit is Re h.
    """
    x = h.real
    if math.isinf(mu):
        return x
    if abs(mu - x) < 1e-8 * (1.0 + abs(mu)):
        return None
    return (mu * x - (h.real * h.real + h.imag * h.imag)) / (mu - x)


def sweep(b: float, theta: float, m: float, xi: Optional[float],
          gammas: Sequence[float]) -> list:
    """Restoration swept over a gamma sample, with identity residuals per row.

    Rows are ordered by gamma regardless of input order.
    """
    if len(gammas) == 0:
        return []
    circle = h_locus(b, theta, m, xi)
    rows = []
    for gamma in sorted(float(g) for g in gammas):
        h = restore_h(b, gamma, theta, m, xi)
        mu = restore_mu(h, gamma)
        acc = accretivity(b, gamma)
        sect = sectoriality_angle(b, gamma)
        circ_res = abs((h.real - circle.center.real) ** 2
                       + (h.imag - circle.center.imag) ** 2
                       - circle.radius ** 2)
        expected_theta = -m if math.isinf(b) else theta
        eta = quasi_kernel_eta(h, mu)
        eta_res = math.nan if eta is None else abs(eta - expected_theta)
        rows.append(SweepRow(gamma=gamma, h=h, mu=mu, sectoriality=sect,
                             accretive=acc.accretive, strict=acc.strict,
                             circle_residual=circ_res, eta_residual=eta_res))
    return rows


def restore_system(b: float, gamma: float, theta: float, m: float,
                   xi: Optional[float] = None,
                   class_tag: Optional[ClassTag] = None) -> RestoredSystem:
    """Full restoration: h, mu, accretivity/sectoriality flags, class tag."""
    h = restore_h(b, gamma, theta, m, xi)
    mu = restore_mu(h, gamma)
    acc = accretivity(b, gamma)
    sect = sectoriality_angle(b, gamma)
    return RestoredSystem(
        h=h,
        mu=mu,
        gamma=gamma,
        accretive=acc.accretive,
        strict=acc.strict,
        sectorial=(sect.kind == "sectorial"),
        extremal=(sect.kind == "extremal"),
        alpha=sect.alpha,
        class_tag=class_tag,
    )
