"""Forward model: transfer function, impedance, Cayley maps, verification.

The realizing system is represented purely by the scalars (h, mu) and the
Weyl function m_inf; every numerical claim about the operator model factors
through these.  ``mu = math.inf`` selects the limit forms of the transfer
function and impedance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import CayleyPole, PoleOfV, PoleOfW, SideConditionViolated, ValidationError
from .measure import ClassTag
from .restore import quasi_kernel_eta
from .stieltjes import StieltjesLikeFunction, eval_V
from .weyl import WeylEvaluator, weyl_m

__all__ = [
    "SystemParams",
    "VhReport",
    "SampleResidual",
    "VerifyReport",
    "weyl_m_fn",
    "transfer_W",
    "impedance_V",
    "cayley_V_from_W",
    "cayley_W_from_V",
    "vh_functional",
    "verify_realization",
]

#: Default diagnostic evaluation point for the transfer function.
DIAGNOSTIC_POINT = -1.0

_POLE_EPS = 1e-13


def weyl_m_fn(ev: WeylEvaluator) -> Callable[[complex], complex]:
    """Wrap a WeylEvaluator as a plain lambda -> m_inf(lambda) callable."""
    return lambda lam: weyl_m(ev, lam)


@dataclass(frozen=True)
class SystemParams:
    """Scalar content of the realizing system: h, mu and the Weyl function."""

    h: complex
    mu: float  # math.inf allowed
    m_fn: Callable[[complex], complex]
    theta_expected: Optional[float] = None

    def __post_init__(self):
        if self.h.imag <= 0:
            raise ValidationError(f"h={self.h} must have Im h > 0")
        if not math.isinf(self.mu) and self.theta_expected is not None:
            eta = quasi_kernel_eta(self.h, self.mu)
            if eta is not None and abs(eta - self.theta_expected) > 1e-8 * (1 + abs(eta)):
                raise ValidationError(
                    f"quasi-kernel parameter {eta} disagrees with expected "
                    f"theta={self.theta_expected}"
                )


def transfer_W(p: SystemParams, lam: complex) -> complex:
    """Transfer function (mu-h)/(mu-conj h) * (m+conj h)/(m+h); first factor
    degenerates to 1 for mu = inf."""
    m = complex(p.m_fn(lam))
    den = m + p.h
    if abs(den) <= _POLE_EPS * (1.0 + abs(m) + abs(p.h)):
        raise PoleOfW(f"m_inf(lambda) + h vanishes at lambda={lam}")
    second = (m + p.h.conjugate()) / den
    if math.isinf(p.mu):
        return second
    return (p.mu - p.h) / (p.mu - p.h.conjugate()) * second


def impedance_V(p: SystemParams, lam: complex) -> complex:
    """Impedance (m+mu) Im h / ((mu-Re h) m + mu Re h - |h|^2); the mu = inf
    limit is Im h / (m + Re h)."""
    m = complex(p.m_fn(lam))
    x, y = p.h.real, p.h.imag
    if math.isinf(p.mu):
        den = m + x
        if abs(den) <= _POLE_EPS * (1.0 + abs(m) + abs(x)):
            raise PoleOfV(f"impedance pole at lambda={lam}")
        return y / den
    den = (p.mu - x) * m + p.mu * x - (x * x + y * y)
    scale = (1.0 + abs(m)) * (1.0 + abs(p.mu) + abs(p.h) ** 2)
    if abs(den) <= _POLE_EPS * scale:
        raise PoleOfV(f"impedance pole at lambda={lam}")
    return (m + p.mu) * y / den


def cayley_V_from_W(w: complex) -> complex:
    """Moebius map V = i (W - 1) / (W + 1)."""
    if abs(w + 1.0) <= _POLE_EPS * (1.0 + abs(w)):
        raise CayleyPole(f"W={w} is at the Cayley pole -1")
    return 1j * (w - 1.0) / (w + 1.0)


def cayley_W_from_V(v: complex) -> complex:
    """Inverse Moebius map W = (1 - iV) / (1 + iV)."""
    if abs(1.0 + 1j * v) <= _POLE_EPS * (1.0 + abs(v)):
        raise CayleyPole(f"V={v} is at the Cayley pole i")
    return (1.0 - 1j * v) / (1.0 + 1j * v)


@dataclass(frozen=True)
class VhReport:
    """Closed-form accretivity functional values with optional numeric cross-check."""

    v_zero: Optional[float]  # None when 1 + a*b = 0 (pole)
    v_minus_inf: Optional[float]  # None when 1 + a*gamma = 0 (pole)
    accretivity_value: Optional[float]  # 1 + v_zero * v_minus_inf
    cot_alpha: float
    numeric_v_zero: Optional[complex] = None
    numeric_v_minus_inf: Optional[complex] = None


def _vh_numeric(h: complex, m_fn, z: complex) -> complex:
    m_z = complex(m_fn(z))
    m_ref = complex(m_fn(DIAGNOSTIC_POINT))
    ratio = ((m_z + h.conjugate()) / (m_z + h)) * ((m_ref + h) / (m_ref + h.conjugate()))
    return -1j * (1.0 - ratio) / (1.0 + ratio)


def vh_functional(a: float, b: float, gamma: float,
                  h: Optional[complex] = None,
                  m_fn: Optional[Callable[[complex], complex]] = None,
                  eps: float = 1e-6, big: float = 1e8) -> VhReport:
    """Accretivity functional of the restored operator.

    Closed forms: V_h(0) = (a-b)/(1+ab), V_h(-inf) = (a-gamma)/(1+a*gamma),
    cot(alpha) = (1+b*gamma)/(b-gamma); b = inf uses the corresponding
    limits.  When h and a Weyl callable are supplied the transfer-function
    form is also evaluated at z = -eps and z = -big as a cross-check.
    """
    if math.isinf(b):
        v_zero: Optional[float] = -1.0 / a
        cot_alpha = gamma
    else:
        if b - gamma <= 0.0:
            raise SideConditionViolated(f"need b - gamma > 0, got b={b}, gamma={gamma}")
        den0 = 1.0 + a * b
        v_zero = None if den0 == 0.0 else (a - b) / den0
        cot_alpha = (1.0 + b * gamma) / (b - gamma)
    den_inf = 1.0 + a * gamma
    v_minus_inf = None if den_inf == 0.0 else (a - gamma) / den_inf
    accr = None
    if v_zero is not None and v_minus_inf is not None:
        accr = 1.0 + v_zero * v_minus_inf
    num0 = numinf = None
    if h is not None and m_fn is not None:
        num0 = _vh_numeric(h, m_fn, complex(-eps, 0.0))
        numinf = _vh_numeric(h, m_fn, complex(-big, 0.0))
    return VhReport(v_zero=v_zero, v_minus_inf=v_minus_inf,
                    accretivity_value=accr, cot_alpha=cot_alpha,
                    numeric_v_zero=num0, numeric_v_minus_inf=numinf)


@dataclass(frozen=True)
class SampleResidual:
    z: complex
    v_in: complex
    v_model: complex

    @property
    def residual(self) -> float:
        return abs(self.v_model - self.v_in)


@dataclass(frozen=True)
class VerifyReport:
    max_residual: float
    eta_residual: Optional[float]
    samples: tuple
    passed: bool
    tolerance: float
    class_tag: Optional[ClassTag] = None

    def to_json(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "eta_residual": self.eta_residual,
            "samples": [
                {"z_re": s.z.real, "z_im": s.z.imag,
                 "V_in": [s.v_in.real, s.v_in.imag],
                 "V_model": [s.v_model.real, s.v_model.imag]}
                for s in self.samples
            ],
            "pass": self.passed,
        }


def verify_realization(f: StieltjesLikeFunction, p: SystemParams,
                       sample_z: Sequence[complex], tol: float = 1e-6,
                       class_tag: Optional[ClassTag] = None) -> VerifyReport:
    """Max |V_model - V_input| over the samples, plus the quasi-kernel residual."""
    samples = []
    worst = 0.0
    for z in sample_z:
        z = complex(z)
        v_in = eval_V(f, z)
        v_model = impedance_V(p, z)
        samples.append(SampleResidual(z=z, v_in=v_in, v_model=v_model))
        worst = max(worst, abs(v_model - v_in))
    eta_res = None
    if p.theta_expected is not None:
        eta = quasi_kernel_eta(p.h, p.mu)
        if eta is not None:
            eta_res = abs(eta - p.theta_expected)
    passed = worst <= tol and (eta_res is None or eta_res <= tol)
    return VerifyReport(max_residual=worst, eta_residual=eta_res,
                        samples=tuple(samples), passed=passed, tolerance=tol,
                        class_tag=class_tag)
