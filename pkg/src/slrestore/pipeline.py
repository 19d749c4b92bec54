"""End-to-end glue: measure + boundary data -> restored system -> verification."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ValidationError
from .measure import ClassTag, Moments, SpectralMeasure, classify, moments
from .restore import RestoredSystem, restore_system
from .stieltjes import StieltjesLikeFunction, log_polar_grid
from .system import SystemParams, VerifyReport, verify_realization, weyl_m_fn
from .weyl import (
    HalfLinePotential,
    OperatorData,
    WeylEvaluator,
    boundary_trace_constant,
    weyl_m_at_minus_zero,
)

__all__ = ["PipelineResult", "resolve_operator_data", "run_restore", "run_verify"]


@dataclass(frozen=True)
class PipelineResult:
    restored: RestoredSystem
    moments: Moments
    operator: OperatorData
    class_tag: ClassTag


def resolve_operator_data(mom: Moments,
                          operator: Optional[OperatorData] = None,
                          potential: Optional[HalfLinePotential] = None,
                          evaluator: Optional[WeylEvaluator] = None) -> OperatorData:
    """Fill in (theta, m, c, xi) from explicit data and/or a potential.

    For b = inf, theta is forced to -m and xi = i2/c; c comes from the
    explicit data or, for q = 0, from the closed form.  For finite b, theta
    must be supplied explicitly (it is not derivable from the potential).
    """
    b_infinite = math.isinf(mom.b)
    if operator is None and potential is None:
        raise ValidationError("operator data or a potential is required")
    m = operator.m if operator is not None else None
    theta = operator.theta if operator is not None else None
    c = operator.c if operator is not None else None
    xi = operator.xi if operator is not None else None
    if m is None:
        ev = evaluator or WeylEvaluator(potential=potential)
        m = float(weyl_m_at_minus_zero(ev))
    if b_infinite:
        theta = -m
        if xi is None:
            if c is None:
                if potential is None:
                    raise ValidationError(
                        "b = inf needs xi or c (or a q = 0 potential)"
                    )
                c = boundary_trace_constant(potential)
            xi = mom.i2 / c
    elif theta is None:
        raise ValidationError("finite 1/t moment: theta must be given explicitly")
    return OperatorData(theta=theta, m=m, c=c, xi=xi)


def run_restore(sigma: SpectralMeasure, gamma: float,
                operator: Optional[OperatorData] = None,
                potential: Optional[HalfLinePotential] = None,
                evaluator: Optional[WeylEvaluator] = None) -> PipelineResult:
    """Classify the input function and restore (h, mu) with all flags."""
    class_tag = classify(sigma, gamma)
    mom = moments(sigma)
    od = resolve_operator_data(mom, operator, potential, evaluator)
    restored = restore_system(mom.b, gamma, od.theta, od.m, od.xi, class_tag)
    return PipelineResult(restored=restored, moments=mom, operator=od,
                          class_tag=class_tag)


def run_verify(sigma: SpectralMeasure, gamma: float,
               potential: HalfLinePotential,
               operator: Optional[OperatorData] = None,
               evaluator: Optional[WeylEvaluator] = None,
               sample_z: Optional[Sequence[complex]] = None,
               tol: float = 1e-6) -> VerifyReport:
    """Restore from the measure, then check the forward model against V."""
    result = run_restore(sigma, gamma, operator, potential, evaluator)
    ev = evaluator or WeylEvaluator(potential=potential)
    params = SystemParams(h=result.restored.h, mu=result.restored.mu,
                          m_fn=weyl_m_fn(ev),
                          theta_expected=result.operator.theta)
    if sample_z is None:
        sample_z = log_polar_grid(n_radius=5, n_angle=4)
    f = StieltjesLikeFunction(sigma=sigma, gamma=gamma)
    return verify_realization(f, params, sample_z, tol=tol,
                              class_tag=result.class_tag)
