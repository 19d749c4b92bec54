"""Tests for the Weyl-Titchmarsh solver.

Oracles: closed forms m(lambda) = -i sqrt(lambda - v) for zero/constant
potentials (branch Im sqrt > 0), and sin/cos solutions of the Cauchy
problems.
"""
from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from slrestore.errors import TruncationDominates, Unsupported, ValidationError
from slrestore.weyl import (
    HalfLinePotential,
    OperatorData,
    WeylEvaluator,
    boundary_trace_constant,
    solve_cauchy,
    weyl_m,
    weyl_m_at_minus_zero,
)


def _m_closed(lam: complex, v: float = 0.0) -> complex:
    k = cmath.sqrt(complex(lam) - v)
    if k.imag < 0:
        k = -k
    return -1j * k


@pytest.fixture(scope="module")
def const1_evaluator():
    return WeylEvaluator(potential=HalfLinePotential(kind="constant", value=1.0))


@pytest.fixture(scope="module")
def const4_evaluator():
    return WeylEvaluator(potential=HalfLinePotential(kind="constant", value=4.0))


# -- Cauchy problems ----------------------------------------------------------

def test_cauchy_lambda_zero(zero_potential):
    sol = solve_cauchy(zero_potential, 0.0, 1.0)
    assert abs(sol.phi1 - 1.0) < 1e-8
    assert abs(sol.dphi1 - 1.0) < 1e-8
    assert abs(sol.phi2 + 1.0) < 1e-8
    assert abs(sol.dphi2) < 1e-8
    assert abs(sol.wronskian - 1.0) < 1e-9


def test_cauchy_sin_cos_oracle(zero_potential):
    sol = solve_cauchy(zero_potential, 1.0, math.pi)
    assert abs(sol.phi1 - math.sin(math.pi)) < 1e-8
    assert abs(sol.dphi1 - math.cos(math.pi)) < 1e-8
    assert abs(sol.phi2 + math.cos(math.pi)) < 1e-8
    assert abs(sol.dphi2 - math.sin(math.pi)) < 1e-8


def test_cauchy_shift_invariance():
    p = HalfLinePotential(kind="constant", value=2.0)
    sol = solve_cauchy(p, 2.0, 1.0)  # l - q cancels: same as q=0, lambda=0
    assert abs(sol.phi1 - 1.0) < 1e-8
    assert abs(sol.phi2 + 1.0) < 1e-8


def test_cauchy_rejects_bad_endpoint(zero_potential):
    with pytest.raises(ValidationError):
        solve_cauchy(zero_potential, 1.0, 0.0)


def test_wronskian_conservation(zero_potential, const1_evaluator):
    for p, lam in ((zero_potential, 2.0 + 1.0j),
                   (const1_evaluator.potential, -3.0),
                   (zero_potential, -0.25)):
        sol = solve_cauchy(p, lam, 20.0)
        scale = max(1.0, abs(sol.phi1 * sol.dphi2) + abs(sol.dphi1 * sol.phi2))
        assert abs(sol.wronskian - 1.0) <= 1e-9 * scale


# -- m function ---------------------------------------------------------------

def test_m_at_minus_four(zero_evaluator):
    assert abs(weyl_m(zero_evaluator, -4.0) - 2.0) < 1e-6


def test_m_at_i(zero_evaluator):
    expected = cmath.exp(-1j * math.pi / 4)
    assert abs(weyl_m(zero_evaluator, 1j) - expected) < 1e-6


def test_m_closed_form_grid(zero_evaluator, const1_evaluator, const4_evaluator):
    rng = np.random.default_rng(5)
    grid = [complex(rng.uniform(-5, 5), rng.uniform(0.1, 10)) for _ in range(20)]
    for ev, v in ((zero_evaluator, 0.0), (const1_evaluator, 1.0),
                  (const4_evaluator, 4.0)):
        for lam in grid:
            oracle = _m_closed(lam, v)
            assert abs(weyl_m(ev, lam) - oracle) / abs(oracle) < 1e-6


def test_m_rejects_points_without_decay(zero_evaluator):
    with pytest.raises(ValidationError):
        weyl_m(zero_evaluator, 4.0)  # inside the essential spectrum


def test_reciprocal_m_herglotz_property(zero_evaluator, const1_evaluator):
    # With the sign convention pinned by m = -i sqrt(lambda) it is 1/m (the
    # impedance of the mu = inf system) that maps the upper half-plane into
    # itself, not m; this is what realizability of V(z) requires.
    rng = np.random.default_rng(11)
    grid = [complex(rng.uniform(-5, 5), rng.uniform(0.2, 8)) for _ in range(20)]
    for ev in (zero_evaluator, const1_evaluator):
        assert all((1.0 / weyl_m(ev, lam)).imag > 0 for lam in grid)


def test_m_conjugate_symmetry(zero_evaluator, const1_evaluator):
    for ev in (zero_evaluator, const1_evaluator):
        for lam in (1.0 + 2.0j, -2.0 + 0.5j):
            m_up = weyl_m(ev, lam)
            m_dn = weyl_m(ev, lam.conjugate())
            assert abs(m_dn - m_up.conjugate()) < 1e-8


def test_truncation_stability(zero_potential):
    ev_short = WeylEvaluator(potential=zero_potential, L=20.0, adaptive_length=False)
    ev_long = WeylEvaluator(potential=zero_potential, L=40.0, adaptive_length=False)
    for lam in (0.5j, 1.0 + 1.0j, -1.0 + 2.0j, 3.0 + 0.5j):
        assert abs(weyl_m(ev_short, lam) - weyl_m(ev_long, lam)) <= 1e-7


def test_truncation_dominates_detected(zero_potential, monkeypatch):
    # Every representable potential equals q_inf exactly beyond its cutoff, so
    # the backward initial data are exact and m is L-independent; exercise the
    # guard by faking a length-dependent answer.
    import slrestore.weyl as weyl_mod

    ev = WeylEvaluator(potential=zero_potential, L=10.0, adaptive_length=False)
    monkeypatch.setattr(weyl_mod, "_backward_m",
                        lambda _ev, _lam, length: complex(0.1 + 1e-4 / length, 0.0))
    with pytest.raises(TruncationDominates):
        weyl_m(ev, -0.01, check_truncation=True)


def test_m_check_truncation_clean(zero_evaluator):
    # with adaptive length, doubling L must not move m
    m = weyl_m(zero_evaluator, -0.01, check_truncation=True)
    assert abs(m - 0.1) < 1e-6


# -- boundary limit m(-0) -----------------------------------------------------

def test_m_minus_zero_free(zero_evaluator):
    assert abs(weyl_m_at_minus_zero(zero_evaluator)) < 1e-4


def test_m_minus_zero_constant(const1_evaluator, const4_evaluator):
    assert abs(weyl_m_at_minus_zero(const1_evaluator) - 1.0) < 1e-4
    assert abs(weyl_m_at_minus_zero(const4_evaluator) - 2.0) < 1e-4


def test_m_monotone_near_zero(zero_evaluator):
    values = [weyl_m(zero_evaluator, -s).real for s in (1.0, 0.5, 0.25, 0.125)]
    assert all(b < a for a, b in zip(values, values[1:]))  # m(-s) ~ sqrt(s)


# -- boundary-trace constant --------------------------------------------------

def test_boundary_trace_free(zero_potential):
    assert boundary_trace_constant(zero_potential) == 1.0 / math.sqrt(2.0)


def test_boundary_trace_translation_invariant():
    assert boundary_trace_constant(HalfLinePotential(a=5.0)) == 1.0 / math.sqrt(2.0)


def test_boundary_trace_unsupported():
    p = HalfLinePotential(kind="table", grid=(0.0, 1.0), values=(0.5, 0.0),
                          cutoff=1.0)
    with pytest.raises(Unsupported):
        boundary_trace_constant(p)


# -- data validation ----------------------------------------------------------

def test_operator_data_validation():
    OperatorData(theta=0.0, m=0.0, c=1.0, xi=1.0)
    with pytest.raises(ValidationError):
        OperatorData(theta=-1.0, m=0.5)
    with pytest.raises(ValidationError):
        OperatorData(theta=0.0, m=0.0, c=-1.0)
    with pytest.raises(ValidationError):
        OperatorData(theta=0.0, m=0.0, xi=0.0)


def test_evaluator_validation(zero_potential):
    with pytest.raises(ValidationError):
        WeylEvaluator(potential=zero_potential, L=5.0)
    with pytest.raises(ValidationError):
        WeylEvaluator(potential=zero_potential, ode_tol=0.0)


def test_potential_validation():
    with pytest.raises(ValidationError):
        HalfLinePotential(kind="mystery")
    with pytest.raises(ValidationError):
        HalfLinePotential(kind="table", grid=(0.0,), values=(1.0,), cutoff=1.0)
    with pytest.raises(ValidationError):
        HalfLinePotential(kind="table", grid=(0.0, 1.0), values=(1.0, 0.0),
                          cutoff=0.5)
