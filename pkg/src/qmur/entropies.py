"""Entropy measures: von Neumann, min/max, H_{-inf}, and smoothed variants.

All values are in bits (log base 2).  float('-inf') is used as the
sentinel for the minus-infinity cases (empty support, support mismatch).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Sequence

import cvxpy as cp
import numpy as np
from scipy.optimize import minimize

from . import linalg
from .distances import spectra_purified_distance
from .errors import (
    DegenerateInputError,
    DimensionError,
    NormalizationError,
    NumericError,
    ParameterError,
    UnsupportedScaleError,
)
from .measurements import MeasurementChannel, apply
from .states import DensityOperator

NEG_INF = float("-inf")
SMOOTH_EPS_MAX = 0.3  # larger radii make the budget constructions degenerate


# ---------------------------------------------------------------------------
# spectrum-level helpers


def shannon(p: np.ndarray) -> float:
    """Shannon entropy in bits; zero entries excluded by support tolerance."""
    p = np.asarray(p, dtype=float)
    p = p[p > linalg.SUPPORT_TOL]
    return float(-(p * np.log2(p)).sum())


def hmax_of_spectrum(s: np.ndarray) -> float:
    t = np.sqrt(np.clip(np.asarray(s, dtype=float), 0.0, None)).sum()
    return 2.0 * math.log2(t) if t > 0 else NEG_INF


def hmin_of_spectrum(s: np.ndarray) -> float:
    top = float(np.max(s))
    return -math.log2(top) if top > 0 else NEG_INF


def hneginf_of_spectrum(s: np.ndarray) -> float:
    s = np.asarray(s, dtype=float)
    nz = s[s > linalg.SUPPORT_TOL]
    return -math.log2(float(nz.min())) if nz.size else NEG_INF


def _spectrum(rho) -> np.ndarray:
    if isinstance(rho, DensityOperator):
        return rho.eigenvalues()
    w, _ = linalg.psd_eigenvalues(np.asarray(rho, dtype=complex))
    return w


def _as_indices(part) -> list[int]:
    return [int(part)] if np.isscalar(part) else [int(i) for i in part]


# ---------------------------------------------------------------------------
# von Neumann entropies


def h_vn(rho: DensityOperator, subsystems: Sequence[int] | None = None) -> float:
    """Von Neumann entropy (of a marginal, if subsystems is given)."""
    if not rho.normalized or abs(rho.trace() - 1.0) > 1e-9:
        raise NormalizationError("von Neumann entropy requires a normalized state")
    if subsystems is not None:
        rho = rho.reduce(_as_indices(subsystems))
    return shannon(rho.eigenvalues())


def h_vn_cond(rho: DensityOperator, target, memory) -> float:
    """H(target | memory) = H(target, memory) - H(memory)."""
    t, m = _as_indices(target), _as_indices(memory)
    if set(t) & set(m):
        raise ParameterError(f"target {t} and memory {m} overlap")
    return h_vn(rho, t + m) - h_vn(rho, m)


def h_measured_cond(rho: DensityOperator, ch: MeasurementChannel, memory) -> float:
    """Conditional entropy of the measured subsystem given the memory."""
    return h_vn_cond(apply(ch, rho), ch.subsystem, memory)


# ---------------------------------------------------------------------------
# unconditional one-shot entropies


def _positive_spectrum(rho) -> np.ndarray:
    w = _spectrum(rho)
    if w.sum() <= linalg.SUPPORT_TOL:
        raise DegenerateInputError("entropy of a (numerically) zero operator")
    return w


def h_min_uncond(rho) -> float:
    """H_min = -log2 of the largest eigenvalue."""
    return hmin_of_spectrum(_positive_spectrum(rho))


def h_max_uncond(rho) -> float:
    """H_max = 2 log2 tr sqrt(rho)."""
    return hmax_of_spectrum(_positive_spectrum(rho))


def h_neg_inf(rho) -> float:
    """-log2 of the smallest non-zero eigenvalue."""
    return hneginf_of_spectrum(_positive_spectrum(rho))


# ---------------------------------------------------------------------------
# conditional min-entropy


def _split(rho: DensityOperator, target, memory):
    """Reduce to target+memory and reorder so target factors come first."""
    t, m = _as_indices(target), _as_indices(memory)
    if set(t) & set(m):
        raise ParameterError(f"target {t} and memory {m} overlap")
    keep = sorted(set(t) | set(m))
    if any(i < 0 or i >= len(rho.dims) for i in keep):
        raise DimensionError(f"subsystems {keep} out of range for {rho.dims}")
    reduced = rho.reduce(keep) if keep != list(range(len(rho.dims))) else rho
    pos = {old: new for new, old in enumerate(keep)}
    perm = [pos[i] for i in t] + [pos[i] for i in m]
    ordered = reduced.permute(perm)
    d_t = math.prod(rho.dims[i] for i in t)
    d_m = math.prod(rho.dims[i] for i in m)
    return ordered, d_t, d_m


def h_min_cond_fixed(rho: DensityOperator, sigma_b, target=0, memory=1) -> float:
    """H_min(target|memory) against a fixed memory operator sigma_b.

    Computed as -log2 of the largest eigenvalue of
    (1 (x) sigma)^(-1/2) rho (1 (x) sigma)^(-1/2) on the support of sigma.
    Returns -inf when rho's memory marginal leaks outside supp(sigma).
    """
    ordered, d_t, d_m = _split(rho, target, memory)
    sigma = sigma_b.matrix if isinstance(sigma_b, DensityOperator) else np.asarray(sigma_b)
    if sigma.shape != (d_m, d_m):
        raise DimensionError(
            f"memory operator shape {sigma.shape} does not match dimension {d_m}"
        )
    w, v = linalg.psd_eigenvalues(sigma)
    support = w > linalg.SUPPORT_TOL
    proj = (v[:, support]) @ (v[:, support]).conj().T
    rho_m = linalg.partial_trace(ordered.matrix, (d_t, d_m), keep=[1])
    leak = float(np.trace(rho_m).real - np.trace(proj @ rho_m @ proj).real)
    if leak > 1e-9:
        return NEG_INF
    inv_half = linalg.embed_operator(
        linalg.inv_sqrtm_psd(sigma), (d_t, d_m), acting=[1]
    )
    t_op = inv_half @ ordered.matrix @ inv_half
    lam = float(np.linalg.eigvalsh((t_op + t_op.conj().T) / 2)[-1])
    if lam <= 0:
        return NEG_INF
    return -math.log2(lam)


@dataclass(frozen=True)
class SdpSolution:
    """Optimizer of the conditional-min-entropy semidefinite program."""

    sigma: np.ndarray  # unnormalized PSD optimizer on the memory system
    value: float  # tr(sigma) = 2^{-H_min}
    residual: float  # min eigenvalue of 1 (x) sigma - rho (>= -1e-8)
    comp_slackness: float  # |tr(Z (1 (x) sigma - rho))| for the dual Z
    iterations: int


_SDP_CACHE: dict[tuple[int, int], tuple] = {}
# the cached cvxpy problems carry mutable parameters, so solves serialize
_SDP_LOCK = threading.Lock()


def _sdp_problem(d_t: int, d_m: int):
    key = (d_t, d_m)
    if key not in _SDP_CACHE:
        rho_p = cp.Parameter((d_t * d_m, d_t * d_m), hermitian=True)
        sig = cp.Variable((d_m, d_m), hermitian=True)
        cone = cp.kron(np.eye(d_t), sig) - rho_p >> 0
        prob = cp.Problem(cp.Minimize(cp.real(cp.trace(sig))), [cone])
        _SDP_CACHE[key] = (rho_p, sig, cone, prob)
    return _SDP_CACHE[key]


def h_min_cond(rho: DensityOperator, target=0, memory=1) -> tuple[float, SdpSolution]:
    """Conditional min-entropy, optimized over the memory operator.

    Solves min tr(sigma) subject to 1 (x) sigma >= rho, sigma >= 0 and
    returns -log2 of the optimum together with the optimizer.
    """
    ordered, d_t, d_m = _split(rho, target, memory)
    with _SDP_LOCK:
        rho_p, sig, cone, prob = _sdp_problem(d_t, d_m)
        rho_p.value = ordered.matrix
        try:
            prob.solve(solver=cp.CLARABEL)
        except cp.error.SolverError:
            prob.solve(solver=cp.SCS, eps=1e-10)
        if sig.value is None:
            raise NumericError(f"min-entropy SDP failed with status {prob.status}")
        sigma = np.asarray(sig.value)
        dual = cone.dual_value
        iters = int(getattr(prob.solver_stats, "num_iters", 0) or 0)
    sigma = (sigma + sigma.conj().T) / 2
    gap = np.kron(np.eye(d_t), sigma) - ordered.matrix
    min_eig = float(np.linalg.eigvalsh((gap + gap.conj().T) / 2)[0])
    if min_eig < 0:
        # lift to exact feasibility; changes the optimum by O(solver tol)
        sigma = sigma - min_eig * np.eye(d_m)
        gap = np.kron(np.eye(d_t), sigma) - ordered.matrix
        min_eig = float(np.linalg.eigvalsh((gap + gap.conj().T) / 2)[0])
    value = float(np.trace(sigma).real)
    if value <= 0:
        raise NumericError("min-entropy SDP returned a non-positive optimum")
    comp = (
        abs(float(np.trace(np.asarray(dual) @ gap).real))
        if dual is not None
        else float("nan")
    )
    sol = SdpSolution(sigma, value, min_eig, comp, iters)
    return -math.log2(value), sol


def h_min_cond_bloch_oracle(
    rho: DensityOperator, target=0, memory=1, coarse: float = 0.1, rounds: int = 5
) -> float:
    """Grid-search oracle for H_min(target|memory) with a qubit memory.

    Maximizes the fixed-sigma min-entropy over a cartesian grid of the
    Bloch ball, refined locally.  Independent of the SDP solver.
    """
    ordered, d_t, d_m = _split(rho, target, memory)
    if d_m != 2:
        raise UnsupportedScaleError("Bloch-grid oracle requires a qubit memory")
    rho_mat = ordered.matrix
    eye_t = np.eye(d_t)
    pauli = np.array(
        [
            [[0, 1], [1, 0]],
            [[0, -1j], [1j, 0]],
            [[1, 0], [0, -1]],
        ],
        dtype=complex,
    )

    def batch_value(points: np.ndarray) -> np.ndarray:
        # points: (N, 3) Bloch vectors with |r| < 1 (sigma full rank)
        sig = 0.5 * (
            np.eye(2)[None, :, :] + np.einsum("nk,kij->nij", points, pauli)
        )
        w, v = np.linalg.eigh(sig)
        inv_half = np.einsum("nik,nk,njk->nij", v, 1.0 / np.sqrt(w), v.conj())
        big = np.einsum("ab,ncd->nacbd", eye_t, inv_half).reshape(
            -1, d_t * 2, d_t * 2
        )
        t_ops = big @ rho_mat @ big
        lam = np.linalg.eigvalsh((t_ops + t_ops.conj().transpose(0, 2, 1)) / 2)[:, -1]
        return -np.log2(np.maximum(lam, 1e-300))

    r_cap = 1.0 - 1e-9
    axis = np.arange(-1.0, 1.0 + coarse / 2, coarse)
    pts = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    norms = np.linalg.norm(pts, axis=1)
    over = norms > r_cap
    pts[over] *= (r_cap / norms[over])[:, None]
    vals = batch_value(pts)
    best = pts[int(np.argmax(vals))]
    best_val = float(vals.max())
    pitch = coarse
    for _ in range(rounds):
        pitch /= 5.0
        offsets = np.arange(-5, 6) * pitch
        local = best[None, :] + np.stack(
            np.meshgrid(offsets, offsets, offsets, indexing="ij"), axis=-1
        ).reshape(-1, 3)
        norms = np.linalg.norm(local, axis=1)
        over = norms > r_cap
        local[over] *= (r_cap / norms[over])[:, None]
        vals = batch_value(local)
        idx = int(np.argmax(vals))
        if float(vals[idx]) > best_val:
            best_val = float(vals[idx])
            best = local[idx]
    return best_val


# ---------------------------------------------------------------------------
# smoothing constructions


@dataclass(frozen=True, eq=False)
class SmoothingOperator:
    """Nonnegative operator Pi <= 1, diagonal in a recorded eigenbasis."""

    operator: np.ndarray
    eigenbasis: np.ndarray  # columns; Pi = V diag(coeffs) V^dagger
    coeffs: np.ndarray  # in [0, 1]
    trace_deficit: float  # tr((1 - Pi^2) sigma)
    budget: float  # allowed deficit (2 eps or 3 eps)
    budget_tag: str  # "2eps" | "3eps"

    def smoothed(self, mat: np.ndarray) -> np.ndarray:
        out = self.operator @ mat @ self.operator
        return (out + out.conj().T) / 2


def _check_epsilon(eps: float, allow_zero: bool = False) -> float:
    eps = float(eps)
    lo_ok = eps >= 0.0 if allow_zero else eps > 0.0
    if not lo_ok or eps > SMOOTH_EPS_MAX:
        bound = "[0" if allow_zero else "(0"
        raise ParameterError(
            f"epsilon must be in {bound}, {SMOOTH_EPS_MAX}], got {eps}"
        )
    return eps


def _optimal_hmax_smoothing(s: np.ndarray, eps: float) -> np.ndarray:
    """Diagonal subnormalized spectrum q minimizing sum(sqrt(q)) within
    purified distance eps of the spectrum s (restriction to diagonal
    candidates is without loss of generality for H_max)."""
    s = np.clip(np.asarray(s, dtype=float), 0.0, None)
    total = float(s.sum())
    f0 = math.sqrt(max(0.0, 1.0 - eps * eps))
    a = np.sqrt(s)
    d = s.size

    def fid(x):
        out = float(a @ x)
        slack = max(0.0, 1.0 - float(x @ x))
        out += math.sqrt(slack * max(0.0, 1.0 - total))
        return out

    cons = [
        {"type": "ineq", "fun": lambda x: fid(x) - f0},
        {"type": "ineq", "fun": lambda x: 1.0 - float(x @ x)},
    ]
    res = minimize(
        lambda x: float(x.sum()),
        x0=a.copy(),
        jac=lambda x: np.ones(d),
        bounds=[(0.0, 1.0)] * d,
        constraints=cons,
        method="SLSQP",
        options={"maxiter": 400, "ftol": 1e-14},
    )
    x = np.clip(res.x, 0.0, 1.0) if res.x is not None else a
    # restore exact feasibility by blending toward the (feasible) center
    if fid(x) < f0:
        lo, hi = 0.0, 1.0  # blend weight toward a
        for _ in range(60):
            mid = (lo + hi) / 2
            if fid(x + mid * (a - x)) >= f0:
                hi = mid
            else:
                lo = mid
        x = x + hi * (a - x)
    return x * x


def _smoothing_from_target(
    w: np.ndarray, v: np.ndarray, q: np.ndarray, budget: float, tag: str
) -> SmoothingOperator:
    """Build Pi with Pi sigma Pi having spectrum q <= w (same eigenbasis)."""
    q = np.minimum(np.clip(q, 0.0, None), w)
    coeffs = np.ones_like(w)
    on = w > linalg.SUPPORT_TOL
    coeffs[on] = np.sqrt(q[on] / w[on])
    coeffs = np.clip(coeffs, 0.0, 1.0)
    op = (v * coeffs) @ v.conj().T
    op = (op + op.conj().T) / 2
    deficit = float(((1.0 - coeffs**2) * w).sum())
    return SmoothingOperator(op, v, coeffs, deficit, budget, tag)


def smooth_budget_operator_hmax(
    sigma: DensityOperator, eps: float, eig=None
) -> tuple[SmoothingOperator, float]:
    """Smoothing operator with tr((1-Pi^2) sigma) <= 2 eps whose value
    H_max(Pi sigma Pi) is a certified lower bound on the eps-smooth H_max.

    eig optionally supplies a precomputed (eigenvalues, eigenvectors)
    pair; any eigenbasis of sigma works, and callers may pick one that
    commutes with additional structure (e.g. a pinching).
    """
    eps = _check_epsilon(eps)
    w, v = eig if eig is not None else linalg.psd_eigenvalues(sigma.matrix)
    w = np.clip(np.asarray(w, dtype=float), 0.0, None)
    q = _optimal_hmax_smoothing(w, eps)
    target = np.minimum(q, w)  # positive-part construction for commuting operators
    op = _smoothing_from_target(w, v, target, 2.0 * eps, "2eps")
    value = hmax_of_spectrum(op.coeffs**2 * w)
    return op, value


def smooth_budget_operator_hneginf(
    sigma: DensityOperator, eps: float, eig=None
) -> tuple[SmoothingOperator, float]:
    """Compose the 2-eps H_max smoothing with an eps tail-cut projector.

    Total budget tr((1-Pi^2) sigma) <= 3 eps; the returned value
    H_{-inf}(Pi sigma Pi) satisfies
    H_max^eps(sigma) >= value - 2 log2(1/eps).
    """
    eps = _check_epsilon(eps)
    bar, _ = smooth_budget_operator_hmax(sigma, eps, eig=eig)
    w = np.clip(np.real(np.diag(bar.eigenbasis.conj().T @ sigma.matrix @ bar.eigenbasis)), 0.0, None)
    tau = bar.coeffs**2 * w  # spectrum of Pi-bar sigma Pi-bar
    order = np.argsort(tau)[::-1]
    sorted_tau = tau[order]
    tails = np.concatenate([np.cumsum(sorted_tau[::-1])[::-1], [0.0]])
    j = next(k for k in range(tau.size + 1) if tails[k] <= eps + 1e-15)
    keep = np.zeros(tau.size)
    keep[order[:j]] = 1.0
    coeffs = bar.coeffs * keep
    op = (bar.eigenbasis * coeffs) @ bar.eigenbasis.conj().T
    op = (op + op.conj().T) / 2
    deficit = float(((1.0 - coeffs**2) * w).sum())
    smoother = SmoothingOperator(
        op, bar.eigenbasis, coeffs, deficit, 3.0 * eps, "3eps"
    )
    value = hneginf_of_spectrum(coeffs**2 * w)
    return smoother, value


def smooth_hmin_operator(
    sigma: DensityOperator, eps: float
) -> tuple[SmoothingOperator, float]:
    """Peak-clipping smoothing for the unconditional min-entropy.

    Clips the spectrum at the lowest level that keeps the clipped state
    within purified distance eps of sigma (bisection); the returned value
    H_min(Pi sigma Pi) is a feasible-point lower bound on H_min^eps.
    """
    eps = _check_epsilon(eps, allow_zero=True)
    if not sigma.normalized:
        raise NormalizationError("min-entropy smoothing expects a normalized state")
    w, v = linalg.psd_eigenvalues(sigma.matrix)

    def clipped(level: float) -> np.ndarray:
        return np.minimum(w, level)

    top = float(w.max())
    if eps == 0.0:
        q = w
    else:
        lo, hi = 0.0, top
        for _ in range(80):
            mid = (lo + hi) / 2
            if float(spectra_purified_distance(clipped(mid), w)) <= eps:
                hi = mid
            else:
                lo = mid
        q = clipped(hi)
    op = _smoothing_from_target(w, v, q, 2.0 * eps, "2eps")
    value = hmin_of_spectrum(op.coeffs**2 * w)
    return op, value


# ---------------------------------------------------------------------------
# brute-force oracle for the smooth max-entropy (small dimensions only)

ORACLE_DIM_MAX = 4


def smooth_hmax_oracle(spectrum: Sequence[float], eps: float) -> float:
    """Grid minimization of H_max over diagonal states in the eps-ball.

    The restriction to candidates diagonal in the eigenbasis (i.e. to
    spectra) is without loss of generality.  Supports dimension <= 4.
    """
    s = np.clip(np.asarray(spectrum, dtype=float), 0.0, None)
    if s.size > ORACLE_DIM_MAX:
        raise UnsupportedScaleError(
            f"smooth H_max oracle supports dimension <= {ORACLE_DIM_MAX}, got {s.size}"
        )
    if s.sum() > 1.0 + 1e-9:
        raise NormalizationError("spectrum is not subnormalized")
    eps = float(eps)
    if eps < 0:
        raise ParameterError(f"epsilon must be >= 0, got {eps}")
    if eps == 0.0:
        return hmax_of_spectrum(s)
    d = int(s.size)
    coarse = {1: 1e-3, 2: 5e-3, 3: 2e-2, 4: 5e-2}[d]

    def grid_points(center: np.ndarray, half_width: float, pitch: float) -> np.ndarray:
        axes = []
        for i in range(d):
            lo = max(0.0, center[i] - half_width)
            hi = min(1.0, center[i] + half_width)
            n = max(2, int(round((hi - lo) / pitch)) + 1)
            axes.append(np.linspace(lo, hi, n))
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
        return pts[pts.sum(axis=1) <= 1.0 + 1e-12]

    def best_on(pts: np.ndarray):
        dist = spectra_purified_distance(s, pts)
        ok = dist <= eps + 1e-12
        if not ok.any():
            return None, None
        obj = np.sqrt(pts[ok]).sum(axis=1)
        k = int(np.argmin(obj))
        return pts[ok][k], float(obj[k])

    def seeds_on(pts: np.ndarray, count: int) -> list[np.ndarray]:
        dist = spectra_purified_distance(s, pts)
        feas = pts[dist <= eps + 1e-12]
        if feas.size == 0:
            return []
        order = np.argsort(np.sqrt(feas).sum(axis=1))
        picked: list[np.ndarray] = []
        for idx in order:
            cand = feas[idx]
            if all(np.abs(cand - p).max() > 2.0 * coarse for p in picked):
                picked.append(cand)
            if len(picked) == count:
                break
        return picked

    def refine(start: np.ndarray) -> tuple[np.ndarray, float]:
        q, best = start, float(np.sqrt(start).sum())
        pitch = coarse
        while pitch > 1e-5:
            new_pitch = pitch / 5.0
            cand, val = best_on(grid_points(q, 1.5 * pitch, new_pitch))
            if cand is not None and val < best:
                q, best = cand, val
            pitch = new_pitch
        return q, best

    def polish(start: np.ndarray) -> tuple[np.ndarray, float] | tuple[None, None]:
        # constrained local descent; grid refinement alone creeps along the
        # curved feasibility boundary and can stall short of the optimum.
        # substituting q = x^2 makes the objective linear and keeps the
        # constraint gradients finite at the simplex boundary
        res = minimize(
            lambda x: x.sum(),
            np.sqrt(np.clip(start, 0.0, None)),
            constraints=[
                {
                    "type": "ineq",
                    "fun": lambda x: eps
                    - float(spectra_purified_distance(s, x**2)),
                },
                {"type": "ineq", "fun": lambda x: 1.0 - (x**2).sum()},
            ],
            bounds=[(0.0, 1.0)] * d,
            method="SLSQP",
            options={"maxiter": 200, "ftol": 1e-12},
        )
        if not res.success:
            return None, None
        q = np.clip(res.x, 0.0, 1.0) ** 2
        # only feasible candidates are admissible; pull slightly infeasible
        # output back toward the spectrum (the ball is convex and contains s)
        for _ in range(60):
            if (
                float(spectra_purified_distance(s, q)) <= eps + 1e-12
                and q.sum() <= 1.0 + 1e-12
            ):
                return q, float(np.sqrt(q).sum())
            q = s + 0.999 * (q - s)
        return None, None

    # refine from several coarse basins; the coarse grid alone can rank
    # two basins in the wrong order at the larger pitches
    center = np.full(d, 0.5)
    starts = seeds_on(grid_points(center, 0.5, coarse), 8)
    starts.append(s.copy())  # the spectrum itself is always feasible
    candidates = [refine(start) for start in starts]
    for q, _ in list(candidates):
        polished = polish(q)
        if polished[0] is not None:
            candidates.append(polished)
    best = min(val for _, val in candidates)
    return 2.0 * math.log2(best) if best > 0 else NEG_INF
