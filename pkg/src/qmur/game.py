"""Uncertainty-game scenarios, the key-distribution bound demo, and the
finite-copy trend table."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entropies as ent
from .errors import DimensionError, ParameterError, UnsupportedScaleError
from .measurements import (
    MeasurementBasis,
    MeasurementChannel,
    apply,
    overlap_c,
    tensor_power_basis,
)
from .states import DensityOperator, load_state, max_entangled, purify, werner


@dataclass(frozen=True)
class GameScenario:
    """One round of the guessing game: a strategy state plus a basis pair."""

    strategy: str  # "mes" | "product" | "werner" | "custom"
    r_basis: MeasurementBasis
    s_basis: MeasurementBasis
    p: float = 1.0  # werner mixing weight
    state_file: str | None = None
    product_marginal: DensityOperator | None = None


@dataclass(frozen=True)
class GameReport:
    h_r_b: float
    h_s_b: float
    classical_bound: float  # log2(1/c)
    memory_bound: float  # log2(1/c) + H(A|B)
    violation: bool  # the classical bound is beaten
    tightness_gap: float  # lhs minus memory bound

    def to_dict(self) -> dict:
        return {
            "H(R|B)": self.h_r_b,
            "H(S|B)": self.h_s_b,
            "classical_bound": self.classical_bound,
            "memory_bound": self.memory_bound,
            "violation": self.violation,
            "tightness_gap": self.tightness_gap,
        }


def scenario_state(sc: GameScenario) -> DensityOperator:
    d = sc.r_basis.dim
    if sc.strategy == "mes":
        return max_entangled(d)
    if sc.strategy == "werner":
        if not 0.0 <= sc.p <= 1.0:
            raise ParameterError(f"werner weight must be in [0, 1], got {sc.p}")
        return werner(d, sc.p)
    if sc.strategy == "product":
        marg = sc.product_marginal
        if marg is None:
            marg = DensityOperator(np.eye(d) / d, (d,))
        mat = np.kron(marg.matrix, np.eye(d) / d)
        return DensityOperator(mat, (d, d))
    if sc.strategy == "custom":
        if sc.state_file is None:
            raise ParameterError("custom strategy requires a state file")
        rho = load_state(sc.state_file)
        if len(rho.dims) != 2 or rho.dims[0] != d:
            raise DimensionError(
                f"custom state profile {rho.dims} does not match basis dimension {d}"
            )
        return rho
    raise ParameterError(f"unknown strategy {sc.strategy!r}")


def run_game(sc: GameScenario) -> GameReport:
    """Evaluate both conditional uncertainties against both bounds.

    The violation flag marks strategies whose quantum memory beats the
    memoryless entropy bound.
    """
    rho = scenario_state(sc)
    ov = overlap_c(sc.r_basis, sc.s_basis)
    h_r_b = ent.h_measured_cond(rho, MeasurementChannel(sc.r_basis, 0), 1)
    h_s_b = ent.h_measured_cond(rho, MeasurementChannel(sc.s_basis, 0), 1)
    h_a_b = ent.h_vn_cond(rho, 0, 1)
    memory_bound = ov.log2_inv_c + h_a_b
    return GameReport(
        h_r_b=h_r_b,
        h_s_b=h_s_b,
        classical_bound=ov.log2_inv_c,
        memory_bound=memory_bound,
        violation=h_r_b + h_s_b < ov.log2_inv_c - 1e-9,
        tightness_gap=h_r_b + h_s_b - memory_bound,
    )


@dataclass(frozen=True)
class QkdReport:
    """Eavesdropper-uncertainty bound versus the directly computed value."""

    h_s_b: float
    bound: float  # log2(1/c) - H(S|B), lower-bounds H(R|E)
    h_r_e: float  # computed on the purification
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "H(S|B)": self.h_s_b,
            "bound_on_H(R|E)": self.bound,
            "H(R|E)": self.h_r_e,
            "satisfied": self.satisfied,
        }


def qkd_bound(
    rho: DensityOperator, r: MeasurementBasis, s: MeasurementBasis
) -> QkdReport:
    """Certified lower bound on the eavesdropper's uncertainty.

    Purifies the bipartite state to include an adversary system E and
    checks H(R|E) >= log2(1/c) - H(S|B) directly.
    """
    if len(rho.dims) != 2:
        raise DimensionError(f"expected a bipartite state, got profile {rho.dims}")
    ov = overlap_c(r, s)
    h_s_b = ent.h_measured_cond(rho, MeasurementChannel(s, 0), 1)
    abe = purify(rho)
    h_r_e = ent.h_vn_cond(apply(MeasurementChannel(r, 0), abe), 0, 2)
    bound = ov.log2_inv_c - h_s_b
    return QkdReport(h_s_b, bound, h_r_e, h_r_e >= bound - 1e-8)


def _tensor_power_state(rho: DensityOperator, n: int) -> DensityOperator:
    """sigma^(x n) with all A factors grouped before all B factors."""
    d_a, d_b = rho.dims
    mat = rho.matrix
    for _ in range(n - 1):
        mat = np.kron(mat, rho.matrix)
    copies = DensityOperator(mat, (d_a, d_b) * n, rho.normalized)
    perm = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    grouped = copies.permute(perm)
    return DensityOperator(grouped.matrix, (d_a**n, d_b**n), rho.normalized)


def iid_trend(
    rho: DensityOperator,
    r: MeasurementBasis,
    s: MeasurementBasis,
    n_max: int = 3,
) -> list[dict]:
    """Per-copy behaviour of the one-shot relation on n-fold copies.

    Emits one row per n with the per-copy terms of the min-entropy
    relation and the exact product identity c^(n) = c^n.  Informational
    only; no convergence claim is made or checked.
    """
    if not 1 <= n_max <= 3:
        raise ParameterError(f"copy count must be in 1..3, got {n_max}")
    d_a, d_b = rho.dims
    ov = overlap_c(r, s)
    rows = []
    for n in range(1, n_max + 1):
        # the conditional min-entropy program is the bottleneck; beyond a
        # total dimension of 256 the solver becomes unreliable at desk scale
        if (d_a * d_b) ** n > 256:
            raise UnsupportedScaleError(
                f"{n}-copy dimension {(d_a * d_b) ** n} exceeds the supported limit"
            )
        state_n = _tensor_power_state(rho, n)
        r_n = tensor_power_basis(r, n)
        s_n = tensor_power_basis(s, n)
        c_n = overlap_c(r_n, s_n).c
        h_min_r_b, _ = ent.h_min_cond(
            apply(MeasurementChannel(r_n, 0), state_n), 0, 1
        )
        h_neg_sb = ent.h_neg_inf(apply(MeasurementChannel(s_n, 0), state_n))
        h_min_ab = ent.h_min_uncond(state_n)
        rows.append(
            {
                "n": n,
                "c_n": c_n,
                "c_power_identity_gap": abs(c_n - ov.c**n),
                "per_copy_hmin_r_b": h_min_r_b / n,
                "per_copy_hneginf_sb": h_neg_sb / n,
                "per_copy_hmin_ab": h_min_ab / n,
                "per_copy_log2_inv_c": -math.log2(c_n) / n,
            }
        )
    return rows


def werner_sweep(
    r: MeasurementBasis, s: MeasurementBasis, points: int = 11
) -> list[dict]:
    """Key-bound table over the one-parameter noise family."""
    d = r.dim
    rows = []
    for p in np.linspace(0.0, 1.0, points):
        rep = qkd_bound(werner(d, float(p)), r, s)
        game = run_game(GameScenario("werner", r, s, p=float(p)))
        row = {"p": float(p), "violation": game.violation}
        row.update(rep.to_dict())
        rows.append(row)
    return rows
