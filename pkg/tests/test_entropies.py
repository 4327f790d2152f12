import math

import numpy as np
import pytest

from qmur import entropies as ent
from qmur.distances import purified_distance, spectra_purified_distance
from qmur.errors import (
    DegenerateInputError,
    NormalizationError,
    ParameterError,
    UnsupportedScaleError,
)
from qmur.measurements import (
    MeasurementChannel,
    computational_basis,
    fourier_basis,
    random_basis,
)
from qmur.states import DensityOperator, max_entangled, random_state, werner

# Frozen by independent brute-force computation (fine grids over spectra,
# no qmur code involved); see the matching test for the construction.
HMIN_SMOOTH_06_04_EPS01 = 0.7611721818440679
HMAX_SMOOTH_HALF_HALF_EPS01 = 0.985500433767845
WERNER_HALF_VN = 1.5487949406953985


def rng_for(trial):
    return np.random.Generator(np.random.Philox(key=3000 + trial))


def diag_state(*p, normalized=True):
    return DensityOperator(np.diag(p), (len(p),), normalized=normalized)


# ---------------------------------------------------------------------------
# von Neumann


def test_h_vn_examples():
    assert np.isclose(ent.h_vn(random_state((3,), 1, 0, kind="haar-pure")), 0.0, atol=1e-9)
    assert np.isclose(ent.h_vn(DensityOperator(np.eye(4) / 4, (4,))), 2.0)
    assert np.isclose(ent.h_vn(werner(2, 0.5)), WERNER_HALF_VN, atol=1e-12)


def test_h_vn_requires_normalization():
    with pytest.raises(NormalizationError):
        ent.h_vn(diag_state(0.25, 0.25, normalized=False))


def test_h_vn_cond():
    assert np.isclose(ent.h_vn_cond(max_entangled(2), 0, 1), -1.0, atol=1e-9)
    assert np.isclose(
        ent.h_vn_cond(DensityOperator(np.eye(4) / 4, (2, 2)), 0, 1), 1.0
    )
    # product state: conditioning is vacuous
    a = random_state((2,), 2, 0)
    b = random_state((3,), 2, 1)
    prod = DensityOperator(np.kron(a.matrix, b.matrix), (2, 3))
    assert np.isclose(ent.h_vn_cond(prod, 0, 1), ent.h_vn(a), atol=1e-9)
    with pytest.raises(ParameterError):
        ent.h_vn_cond(prod, 0, 0)


def test_h_measured_cond():
    comp = MeasurementChannel(computational_basis(2), 0)
    assert np.isclose(ent.h_measured_cond(max_entangled(2), comp, 1), 0.0, atol=1e-9)
    plus = np.full((2, 2), 0.5)
    b = random_state((2,), 3, 0)
    rho = DensityOperator(np.kron(plus, b.matrix), (2, 2))
    assert np.isclose(ent.h_measured_cond(rho, comp, 1), 1.0, atol=1e-9)
    rho0 = DensityOperator(np.kron(np.diag([1.0, 0.0]), b.matrix), (2, 2))
    assert np.isclose(ent.h_measured_cond(rho0, comp, 1), 0.0, atol=1e-9)


def test_conditioning_reduces_entropy():
    comp = MeasurementChannel(computational_basis(2), 0)
    for trial in range(25):
        rho = random_state((2, 2), 4, trial)
        h_r_b = ent.h_measured_cond(rho, comp, 1)
        h_r = ent.shannon(np.real(np.diag(rho.reduce([0]).matrix)))
        assert h_r_b <= h_r + 1e-8


# ---------------------------------------------------------------------------
# one-shot entropies


def test_unconditional_entropies():
    assert np.isclose(ent.h_min_uncond(diag_state(0.5, 0.5)), 1.0)
    assert np.isclose(ent.h_min_uncond(diag_state(0.625, 0.125, 0.125, 0.125)),
                      -math.log2(0.625))
    assert np.isclose(ent.h_max_uncond(diag_state(1.0, 0.0)), 0.0)
    assert np.isclose(ent.h_max_uncond(DensityOperator(np.eye(8) / 8, (8,))), 3.0)
    assert np.isclose(ent.h_neg_inf(diag_state(0.75, 0.25)), 2.0)
    assert np.isclose(ent.h_neg_inf(diag_state(0.9, 0.1, 0.0)), -math.log2(0.1))
    with pytest.raises(DegenerateInputError):
        ent.h_min_uncond(np.zeros((2, 2)))


def test_entropy_ordering_on_ensembles():
    for trial in range(50):
        rho = random_state((4,), 5, trial)
        h = ent.h_vn(rho)
        hmin = ent.h_min_uncond(rho)
        hmax = ent.h_max_uncond(rho)
        assert hmin <= h + 1e-9
        assert h <= hmax + 1e-9
        assert hmax <= 2.0 + 1e-9  # log2 d
        assert hmin <= ent.h_neg_inf(rho) + 1e-9


def test_h_min_cond_fixed_examples():
    flat = DensityOperator(np.eye(4) / 4, (2, 2))
    assert np.isclose(ent.h_min_cond_fixed(flat, np.eye(2) / 2), 1.0)
    assert np.isclose(
        ent.h_min_cond_fixed(max_entangled(2), np.eye(2) / 2), -1.0, atol=1e-9
    )
    # support mismatch returns the minus-infinity sentinel
    rho = DensityOperator(np.kron(np.diag([1.0, 0.0]), np.diag([1.0, 0.0])), (2, 2))
    assert ent.h_min_cond_fixed(rho, np.diag([0.0, 1.0])) == float("-inf")


def test_h_min_cond_sdp_examples():
    value, sol = ent.h_min_cond(max_entangled(2))
    assert np.isclose(value, -1.0, atol=1e-7)
    assert sol.residual >= -1e-12  # lifted to exact feasibility
    # product state: optimum is the B marginal
    a = random_state((2,), 6, 0)
    b = random_state((2,), 6, 1)
    prod = DensityOperator(np.kron(a.matrix, b.matrix), (2, 2))
    value, _ = ent.h_min_cond(prod)
    assert np.isclose(value, ent.h_min_uncond(a), atol=1e-7)
    # perfectly correlated classical state: guessing probability 1
    cc = DensityOperator(np.diag([0.5, 0.0, 0.0, 0.5]), (2, 2))
    value, _ = ent.h_min_cond(cc)
    assert np.isclose(value, 0.0, atol=1e-7)


def test_h_min_cond_dominates_fixed_sigma():
    for trial in range(20):
        rho = random_state((2, 2), 7, trial)
        opt, sol = ent.h_min_cond(rho)
        sigma = random_state((2,), 8, trial)
        assert opt >= ent.h_min_cond_fixed(rho, sigma) - 1e-6
        # and agrees with the fixed form at its own normalized optimizer
        norm = sol.sigma / np.trace(sol.sigma).real
        assert np.isclose(opt, ent.h_min_cond_fixed(rho, norm), atol=1e-5)


def test_h_min_cond_bloch_oracle_agrees_with_sdp():
    for trial in range(5):
        rho = random_state((2, 2), 9, trial)
        sdp, _ = ent.h_min_cond(rho)
        grid = ent.h_min_cond_bloch_oracle(rho)
        assert abs(sdp - grid) <= 1e-3


# ---------------------------------------------------------------------------
# smoothing constructions


def test_smooth_hmin_operator_zero_eps_is_identity():
    rho = random_state((4,), 10, 0)
    op, value = ent.smooth_hmin_operator(rho, 0.0)
    assert np.allclose(op.operator, np.eye(4), atol=1e-12)
    assert np.isclose(value, ent.h_min_uncond(rho))


def test_smooth_hmin_operator_clips_peak():
    # frozen against an independent 200-step bisection over clip levels
    op, value = ent.smooth_hmin_operator(diag_state(0.6, 0.4), 0.1)
    assert np.isclose(value, HMIN_SMOOTH_06_04_EPS01, atol=1e-9)
    assert value > -math.log2(0.6)
    assert op.trace_deficit <= 2 * 0.1 + 1e-9


def test_smooth_hmin_operator_flat_spectrum():
    # a flat spectrum can only be scaled down uniformly; the feasible point
    # (1 - eps^2) * 1/d gives value log2 d - log2(1 - eps^2), slightly
    # above log2 d
    eps = 0.1
    op, value = ent.smooth_hmin_operator(DensityOperator(np.eye(2) / 2, (2,)), eps)
    assert np.isclose(value, 1.0 - math.log2(1.0 - eps**2), atol=1e-9)
    assert value >= 1.0


def test_smooth_hmin_stays_in_ball():
    for trial in range(10):
        rho = random_state((4,), 11, trial)
        for eps in (0.01, 0.1, 0.3):
            op, _ = ent.smooth_hmin_operator(rho, eps)
            smoothed = op.smoothed(rho.matrix)
            # 1e-6 slack: the bisection certifies the distance on spectra,
            # and the matrix-route fidelity adds its own roundoff
            assert purified_distance(rho, smoothed) <= eps + 1e-6


def test_smoothing_operator_invariants():
    for trial in range(10):
        rho = random_state((4,), 12, trial)
        for eps in (0.05, 0.2):
            for build, budget in (
                (ent.smooth_budget_operator_hmax, 2 * eps),
                (ent.smooth_budget_operator_hneginf, 3 * eps),
            ):
                op, _ = build(rho, eps)
                assert np.all(op.coeffs >= -1e-12) and np.all(op.coeffs <= 1 + 1e-12)
                assert op.trace_deficit <= budget + 1e-9
                # operator really is diagonal in the recorded eigenbasis
                rebuilt = (op.eigenbasis * op.coeffs) @ op.eigenbasis.conj().T
                assert np.allclose(rebuilt, op.operator, atol=1e-10)


def test_hmax_smoothing_tiny_eps_is_continuity():
    rho = random_state((3,), 13, 0)
    op, value = ent.smooth_budget_operator_hmax(rho, 1e-9)
    assert np.isclose(value, ent.h_max_uncond(rho), atol=1e-3)
    assert np.allclose(op.operator, np.eye(3), atol=1e-3)


def test_hmax_smoothing_strictly_reduces():
    _, value = ent.smooth_budget_operator_hmax(diag_state(0.5, 0.5), 0.1)
    assert value < 1.0
    # matches the independent grid optimum over diagonal candidates
    assert np.isclose(value, HMAX_SMOOTH_HALF_HALF_EPS01, atol=2e-3)


def test_hmax_smoothing_pure_state():
    # for a pure state the optimal diagonal smoothing keeps a single atom
    # of mass 1 - eps^2, so the value is log2(1 - eps^2), just below 0
    eps = 0.15
    _, value = ent.smooth_budget_operator_hmax(diag_state(1.0, 0.0), eps)
    assert np.isclose(value, math.log2(1.0 - eps**2), atol=1e-6)
    assert value <= 0.0


def test_hneginf_smoothing_cuts_small_tail():
    op, value = ent.smooth_budget_operator_hneginf(diag_state(0.99, 0.01), 0.15)
    # the 0.01 tail is below eps and gets cut; the surviving eigenvalue
    # carries the smoothed peak
    assert op.coeffs[np.argsort(op.coeffs)[0]] == 0.0
    assert value < ent.h_neg_inf(diag_state(0.99, 0.01))
    assert op.trace_deficit <= 3 * 0.15 + 1e-9


def test_hneginf_smoothing_flat_spectrum_keeps_everything():
    eps = 0.1
    op, value = ent.smooth_budget_operator_hneginf(
        DensityOperator(np.eye(2) / 2, (2,)), eps
    )
    assert np.all(op.coeffs > 0.0)
    # certified direction: H_max^eps >= value - 2 log2(1/eps); here
    # H_max^eps <= 1, so value can be at most 1 + 2 log2(1/eps)
    assert value <= 1.0 + 2 * math.log2(1 / eps) + 1e-9


def test_epsilon_validation():
    rho = random_state((2,), 14, 0)
    for bad in (-0.1, 0.0, 0.31):
        with pytest.raises(ParameterError):
            ent.smooth_budget_operator_hmax(rho, bad)
    with pytest.raises(ParameterError):
        ent.smooth_hmin_operator(rho, -1e-3)
    sub = DensityOperator(rho.matrix * 0.5, (2,), normalized=False)
    with pytest.raises(NormalizationError):
        ent.smooth_hmin_operator(sub, 0.1)


# ---------------------------------------------------------------------------
# the smooth H_max oracle


def test_oracle_eps_zero_is_exact():
    s = [0.5, 0.3, 0.2]
    assert np.isclose(ent.smooth_hmax_oracle(s, 0.0), ent.hmax_of_spectrum(np.array(s)))


def test_oracle_pure_spectrum():
    assert ent.smooth_hmax_oracle([1.0, 0.0], 0.2) <= 0.0 + 1e-12


def test_oracle_bracketing_qubit():
    s = np.array([0.5, 0.5])
    oracle = ent.smooth_hmax_oracle(s, 0.1)
    _, lower = ent.smooth_budget_operator_hmax(diag_state(0.5, 0.5), 0.1)
    assert lower - 1e-3 <= oracle <= 1.0 + 1e-12


def test_oracle_dimension_guard():
    with pytest.raises(UnsupportedScaleError):
        ent.smooth_hmax_oracle([0.2] * 5, 0.1)
    with pytest.raises(NormalizationError):
        ent.smooth_hmax_oracle([0.9, 0.9], 0.1)


def test_smoothing_monotone_in_eps():
    rho = random_state((3,), 15, 0)
    hmin_values = [ent.smooth_hmin_operator(rho, e)[1] for e in (0.0, 0.05, 0.1, 0.2)]
    assert all(b >= a - 1e-9 for a, b in zip(hmin_values, hmin_values[1:]))
    hmax_values = [ent.smooth_hmax_oracle(rho.eigenvalues(), e) for e in (0.0, 0.05, 0.1)]
    assert all(b <= a + 1e-3 for a, b in zip(hmax_values, hmax_values[1:]))


def test_budget_smoother_accepts_supplied_eigenbasis():
    rho = random_state((4,), 16, 0)
    w, v = np.linalg.eigh(rho.matrix)
    op, value = ent.smooth_budget_operator_hneginf(rho, 0.1, eig=(w[::-1], v[:, ::-1]))
    default_op, default_value = ent.smooth_budget_operator_hneginf(rho, 0.1)
    assert np.isclose(value, default_value, atol=1e-9)
    assert np.allclose(op.operator, default_op.operator, atol=1e-8)
