"""Executable checkers for every inequality in the toolkit.

Each checker evaluates both sides of one relation on concrete inputs and
emits a RelationCertificate recording LHS, RHS, slack, tolerance and the
provenance of every term.  The convention throughout is slack =
lhs - rhs with the relation asserting lhs >= rhs (two-sided checks set
two_sided).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from . import entropies as ent
from . import linalg
from .distances import purified_distance, trace_distance
from .errors import ShapeError, UnsupportedScaleError
from .measurements import (
    MeasurementBasis,
    MeasurementChannel,
    apply,
    generalized_pauli,
    overlap_c,
    pinch_matrix,
)
from .states import DensityOperator, purify

PASS = "pass"
FAIL = "fail"
SKIPPED_DIM = "skipped: dimension"


@dataclass(frozen=True)
class RelationCertificate:
    """Record of one checked inequality instance."""

    relation_id: str
    lhs: float
    rhs: float
    tolerance: float
    status: str
    inputs_digest: str
    terms: tuple[tuple[str, float], ...] = ()
    two_sided: bool = False

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "relation_id": self.relation_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "status": self.status,
            "two_sided": self.two_sided,
            "inputs_digest": self.inputs_digest,
            "terms": {name: value for name, value in self.terms},
        }


def digest_inputs(*parts) -> str:
    """Stable hash of matrices/values identifying a checker's inputs."""
    h = hashlib.sha256()
    for part in parts:
        if isinstance(part, DensityOperator):
            part = part.matrix
        if isinstance(part, MeasurementBasis):
            part = part.vectors
        if isinstance(part, np.ndarray):
            h.update(np.round(np.asarray(part, dtype=complex), 12).tobytes())
        else:
            h.update(repr(part).encode())
    return h.hexdigest()[:16]


def certify(
    relation_id: str,
    lhs: float,
    rhs: float,
    tolerance: float,
    digest: str,
    terms=(),
    two_sided: bool = False,
) -> RelationCertificate:
    slack = lhs - rhs
    ok = slack >= -tolerance and (not two_sided or slack <= tolerance)
    return RelationCertificate(
        relation_id,
        float(lhs),
        float(rhs),
        float(tolerance),
        PASS if ok else FAIL,
        digest,
        tuple((str(n), float(v)) for n, v in terms),
        two_sided,
    )


# ---------------------------------------------------------------------------
# main-text relations


def check_robertson(
    r_obs: np.ndarray, s_obs: np.ndarray, rho: DensityOperator
) -> RelationCertificate:
    """Standard-deviation uncertainty relation from the commutator."""
    for name, obs in (("R", r_obs), ("S", s_obs)):
        if linalg.herm_residual(np.asarray(obs)) > linalg.HERM_TOL:
            raise ShapeError(f"observable {name} is not Hermitian")

    def stddev(obs):
        mean = np.trace(rho.matrix @ obs).real
        second = np.trace(rho.matrix @ obs @ obs).real
        return math.sqrt(max(0.0, second - mean * mean))

    comm = r_obs @ s_obs - s_obs @ r_obs
    rhs = 0.5 * abs(np.trace(rho.matrix @ comm))
    lhs = stddev(r_obs) * stddev(s_obs)
    return certify(
        "robertson",
        lhs,
        rhs,
        1e-9,
        digest_inputs(r_obs, s_obs, rho),
        terms=[("delta_R", stddev(r_obs)), ("delta_S", stddev(s_obs))],
    )


def outcome_distribution(basis: MeasurementBasis, rho: DensityOperator) -> np.ndarray:
    probs = np.einsum(
        "ij,ik,kj->j", basis.vectors.conj(), rho.matrix, basis.vectors
    ).real
    return np.clip(probs, 0.0, None)


def check_maassen_uffink(
    r: MeasurementBasis, s: MeasurementBasis, rho_a: DensityOperator
) -> RelationCertificate:
    """Shannon-entropy uncertainty relation without memory."""
    ov = overlap_c(r, s)
    h_r = ent.shannon(outcome_distribution(r, rho_a))
    h_s = ent.shannon(outcome_distribution(s, rho_a))
    return certify(
        "maassen-uffink",
        h_r + h_s,
        ov.log2_inv_c,
        1e-9,
        digest_inputs(r, s, rho_a),
        terms=[("H(R)", h_r), ("H(S)", h_s), ("c", ov.c)],
    )


def check_main_theorem(
    r: MeasurementBasis, s: MeasurementBasis, rho: DensityOperator
) -> RelationCertificate:
    """H(R|B) + H(S|B) >= log2(1/c) + H(A|B) for bipartite states."""
    ov = overlap_c(r, s)
    h_r_b = ent.h_measured_cond(rho, MeasurementChannel(r, 0), memory=1)
    h_s_b = ent.h_measured_cond(rho, MeasurementChannel(s, 0), memory=1)
    h_a_b = ent.h_vn_cond(rho, 0, 1)
    return certify(
        "main-theorem",
        h_r_b + h_s_b,
        ov.log2_inv_c + h_a_b,
        1e-8,
        digest_inputs(r, s, rho),
        terms=[
            ("H(R|B)", h_r_b),
            ("H(S|B)", h_s_b),
            ("log2(1/c)", ov.log2_inv_c),
            ("H(A|B)", h_a_b),
        ],
    )


def check_br_corollary(
    r: MeasurementBasis, s: MeasurementBasis, rho: DensityOperator
) -> RelationCertificate:
    """H(R|E) + H(S|B) >= log2(1/c) on a purification of the input."""
    ov = overlap_c(r, s)
    abe = purify(rho)  # subsystems A=0, B=1, E=2
    pinched_r = apply(MeasurementChannel(r, 0), abe)
    pinched_s = apply(MeasurementChannel(s, 0), abe)
    h_r_e = ent.h_vn_cond(pinched_r, 0, 2)
    h_s_b = ent.h_vn_cond(pinched_s, 0, 1)
    # purification duality identities used in the proof
    dual_rb_re = abs(ent.h_vn(pinched_r, [0, 1]) - ent.h_vn(pinched_r, [0, 2]))
    dual_ab_e = abs(ent.h_vn(abe, [0, 1]) - ent.h_vn(abe, [2]))
    return certify(
        "br-corollary",
        h_r_e + h_s_b,
        ov.log2_inv_c,
        1e-8,
        digest_inputs(r, s, rho),
        terms=[
            ("H(R|E)", h_r_e),
            ("H(S|B)", h_s_b),
            ("c", ov.c),
            ("duality |H(RB)-H(RE)|", dual_rb_re),
            ("duality |H(AB)-H(E)|", dual_ab_e),
        ],
    )


def check_renyi_endpoint(
    r: MeasurementBasis, s: MeasurementBasis, rho_a: DensityOperator
) -> RelationCertificate:
    """Single-system endpoint pair: H_min(R) + H_max(S) >= log2(1/c)."""
    ov = overlap_c(r, s)
    h_min_r = ent.hmin_of_spectrum(outcome_distribution(r, rho_a))
    h_max_s = ent.hmax_of_spectrum(outcome_distribution(s, rho_a))
    return certify(
        "renyi-endpoint",
        h_min_r + h_max_s,
        ov.log2_inv_c,
        1e-9,
        digest_inputs(r, s, rho_a),
        terms=[("H_min(R)", h_min_r), ("H_max(S)", h_max_s), ("c", ov.c)],
    )


# ---------------------------------------------------------------------------
# the Omega construction and the non-smooth theorem


@dataclass(frozen=True, eq=False)
class OmegaState:
    """Correlated register state on A' B' A B used in the min-entropy proof."""

    state: DensityOperator  # profile (d, d, d_A, d_B)
    source: DensityOperator  # the underlying bipartite state on (d_A, d_B)
    r_basis: MeasurementBasis
    s_basis: MeasurementBasis
    source_digest: str = field(default="")


def build_omega(
    r: MeasurementBasis, s: MeasurementBasis, rho: DensityOperator
) -> OmegaState:
    """Average of register-tagged conjugations by generalized Pauli powers."""
    d_a, d_b = rho.dims
    d = r.dim
    if d * d * d_a * d_b > 4096:
        raise UnsupportedScaleError(
            f"Omega dimension {d * d * d_a * d_b} exceeds the supported limit 4096"
        )
    d_r = generalized_pauli(r)
    d_s = generalized_pauli(s)
    blocks = np.zeros((d, d, d_a * d_b, d_a * d_b), dtype=complex)
    pow_r = np.eye(d_a, dtype=complex)
    for a in range(d):
        pow_s = np.eye(d_a, dtype=complex)
        for b in range(d):
            u = np.kron(pow_r @ pow_s, np.eye(d_b))
            blocks[a, b] = u @ rho.matrix @ u.conj().T
            pow_s = pow_s @ d_s
        pow_r = pow_r @ d_r
    dim = d * d * d_a * d_b
    omega = np.zeros((dim, dim), dtype=complex)
    nb = d_a * d_b
    for a in range(d):
        for b in range(d):
            k = (a * d + b) * nb
            omega[k : k + nb, k : k + nb] = blocks[a, b] / (d * d)
    omega = (omega + omega.conj().T) / 2
    state = DensityOperator(omega, (d, d, d_a, d_b), rho.normalized)
    return OmegaState(state, rho, r, s, digest_inputs(r, s, rho))


def check_omega_identities(omega: OmegaState) -> list[RelationCertificate]:
    """The four register-state identities behind the non-smooth theorem."""
    st = omega.state
    rho = omega.source
    d = omega.r_basis.dim
    log_d = math.log2(d)
    ov = overlap_c(omega.r_basis, omega.s_basis)
    digest = omega.source_digest
    certs = []

    # (1) unconditional min-entropy is invariant under the controlled unitaries
    lhs1 = ent.h_min_uncond(st)
    rhs1 = 2 * log_d + ent.h_min_uncond(rho)
    certs.append(
        certify("omega-1-hmin-equality", lhs1, rhs1, 1e-7, digest, two_sided=True)
    )

    # (2) H_{-inf} of the A'AB marginal picks up one register's worth
    s_pinched = apply(MeasurementChannel(omega.s_basis, 0), rho)
    lhs2 = ent.h_neg_inf(st.reduce([0, 2, 3]))
    rhs2 = log_d + ent.h_neg_inf(s_pinched)
    certs.append(
        certify("omega-2-hneginf-equality", lhs2, rhs2, 1e-7, digest, two_sided=True)
    )

    # (3) conditional min-entropy of B'A given B is bounded by the R branch
    r_pinched = apply(MeasurementChannel(omega.r_basis, 0), rho)
    h_r_b, _ = ent.h_min_cond(r_pinched, 0, 1)
    lhs3 = log_d + h_r_b
    rhs3, _ = ent.h_min_cond(st.reduce([1, 2, 3]), target=[0, 1], memory=2)
    certs.append(
        certify(
            "omega-3-conditional-bound",
            lhs3,
            rhs3,
            1e-6,
            digest,
            terms=[("H_min(R|B)", h_r_b), ("H_min(B'A|B)", rhs3)],
        )
    )

    # (4) the AB marginal of Omega is a double pinching, bounded by the overlap
    lhs4, _ = ent.h_min_cond(st.reduce([2, 3]), 0, 1)
    certs.append(
        certify("omega-4-overlap-bound", lhs4, ov.log2_inv_c, 1e-6, digest)
    )
    return certs


def _omega_chain_terms(omega: OmegaState) -> list[tuple[str, float]]:
    """Intermediate chain of inequalities on the Omega state."""
    st = omega.state
    t1 = ent.h_min_uncond(st) - ent.h_neg_inf(st.reduce([0, 2, 3]))
    t2 = ent.h_min_cond_fixed(st, st.reduce([0, 2, 3]), target=1, memory=[0, 2, 3])
    t3 = ent.h_min_cond_fixed(
        st.reduce([1, 2, 3]), st.reduce([2, 3]), target=0, memory=[1, 2]
    )
    ab_given_b, _ = ent.h_min_cond(st.reduce([1, 2, 3]), target=[0, 1], memory=2)
    a_given_b, _ = ent.h_min_cond(st.reduce([2, 3]), 0, 1)
    t4 = ab_given_b - a_given_b
    return [
        ("chain_t1", t1),
        ("chain_t2", t2),
        ("chain_t3", t3),
        ("chain_t4", t4),
        ("chain_min_step_slack", min(t2 - t1, t3 - t2, t4 - t3)),
    ]


def check_nonsmooth_theorem(
    r: MeasurementBasis,
    s: MeasurementBasis,
    rho: DensityOperator,
    include_chain: bool = True,
) -> RelationCertificate:
    """H_min(R|B) + H_{-inf}(SB) >= log2(1/c) + H_min(AB).

    Holds for subnormalized states as well.  The certificate records the
    intermediate Omega-state chain terms when include_chain is set.
    """
    ov = overlap_c(r, s)
    r_pinched = apply(MeasurementChannel(r, 0), rho)
    s_pinched = apply(MeasurementChannel(s, 0), rho)
    h_min_r_b, _ = ent.h_min_cond(r_pinched, 0, 1)
    h_neg_sb = ent.h_neg_inf(s_pinched)
    h_min_ab = ent.h_min_uncond(rho)
    terms = [
        ("H_min(R|B)", h_min_r_b),
        ("H_neg_inf(SB)", h_neg_sb),
        ("log2(1/c)", ov.log2_inv_c),
        ("H_min(AB)", h_min_ab),
    ]
    if include_chain:
        terms += _omega_chain_terms(build_omega(r, s, rho))
    return certify(
        "nonsmooth-theorem",
        h_min_r_b + h_neg_sb,
        ov.log2_inv_c + h_min_ab,
        1e-6,
        digest_inputs(r, s, rho),
        terms=terms,
    )


# ---------------------------------------------------------------------------
# smooth-theorem proof trace


def _pinched_eigensystem(s: MeasurementBasis, mat: np.ndarray, d_b: int):
    """Eigendecomposition of a state pinched in basis s (x) identity,
    blockwise so the eigenbasis commutes with the pinching exactly."""
    d = s.dim
    w_basis = np.kron(s.vectors, np.eye(d_b))
    rotated = w_basis.conj().T @ mat @ w_basis
    vals = np.zeros(d * d_b)
    vecs = np.zeros((d * d_b, d * d_b), dtype=complex)
    for j in range(d):
        block = rotated[j * d_b : (j + 1) * d_b, j * d_b : (j + 1) * d_b]
        w, v = np.linalg.eigh((block + block.conj().T) / 2)
        vals[j * d_b : (j + 1) * d_b] = w
        vecs[j * d_b : (j + 1) * d_b, j * d_b : (j + 1) * d_b] = v
    return np.clip(vals, 0.0, None), w_basis @ vecs


def check_smooth_proof_trace(
    r: MeasurementBasis,
    s: MeasurementBasis,
    rho: DensityOperator,
    eps: float,
) -> list[RelationCertificate]:
    """Step-by-step certification of the smooth uncertainty relation.

    Constructs the two smoothing operators of the proof, then certifies
    every intermediate budget, distance bound and inequality.  Steps that
    need the smooth-H_max oracle are skipped above its dimension limit.
    """
    eps = ent._check_epsilon(eps)
    digest = digest_inputs(r, s, rho, eps)
    ov = overlap_c(r, s)
    d_a, d_b = rho.dims
    certs: list[RelationCertificate] = []

    # step 1: clip the spectrum of rho_AB (budget 2 eps)
    bar_op, h_min_sigma = ent.smooth_hmin_operator(rho, eps)
    sigma = DensityOperator(
        bar_op.smoothed(rho.matrix), rho.dims, normalized=False
    )
    certs.append(
        certify(
            "trace-budget-2eps",
            2.0 * eps,
            bar_op.trace_deficit,
            1e-9,
            digest,
        )
    )

    # step 2: smooth the pinched state (budget 3 eps), diagonal blockwise
    tau_mat = pinch_matrix(s, sigma.matrix, sigma.dims, 0)
    tau = DensityOperator(tau_mat, sigma.dims, normalized=False)
    eig = _pinched_eigensystem(s, tau_mat, d_b)
    pi_op, h_neg_value = ent.smooth_budget_operator_hneginf(tau, eps, eig=eig)
    certs.append(
        certify(
            "trace-budget-3eps",
            3.0 * eps,
            pi_op.trace_deficit,
            1e-9,
            digest,
        )
    )

    # commutation of Pi with the pinching: the deficit can be measured on
    # the unpinched state, and pinch(Pi sigma Pi) = Pi pinch(sigma) Pi
    deficit_unpinched = float(
        np.trace(
            (np.eye(sigma.dim) - pi_op.operator @ pi_op.operator) @ sigma.matrix
        ).real
    )
    theta_mat = pi_op.smoothed(sigma.matrix)
    theta = DensityOperator(theta_mat, rho.dims, normalized=False)
    commute_dev = float(
        np.max(
            np.abs(
                pinch_matrix(s, theta_mat, rho.dims, 0)
                - pi_op.smoothed(tau_mat)
            )
        )
    )
    certs.append(
        certify(
            "pinch-trace-commutation",
            deficit_unpinched,
            pi_op.trace_deficit,
            1e-9,
            digest,
            terms=[("max_pinch_commutator_deviation", commute_dev)],
            two_sided=True,
        )
    )

    # step 3: the non-smooth theorem applied to the doubly smoothed state
    theorem2 = check_nonsmooth_theorem(r, s, theta, include_chain=False)
    certs.append(
        RelationCertificate(
            "theorem2-on-smoothed-state",
            theorem2.lhs,
            theorem2.rhs,
            theorem2.tolerance,
            theorem2.status,
            digest,
            theorem2.terms,
        )
    )

    # step 4: min-entropy only grows under the smoothing projections
    h_min_theta = ent.h_min_uncond(theta)
    h_min_bar = ent.h_min_uncond(sigma)
    certs.append(
        certify(
            "hmin-projection-monotonicity",
            h_min_theta,
            h_min_bar,
            1e-9,
            digest,
            terms=[("H_min_feasible_estimate", h_min_sigma)],
        )
    )

    # step 5: smooth H_max substate monotonicity (oracle scale only)
    s_on_rho = pinch_matrix(s, rho.matrix, rho.dims, 0)
    if rho.dim <= ent.ORACLE_DIM_MAX:
        big = ent.smooth_hmax_oracle(ent._spectrum(s_on_rho), eps)
        small = ent.smooth_hmax_oracle(ent._spectrum(tau_mat), eps)
        certs.append(
            certify("hmax-substate-monotonicity", big, small, 1e-3, digest)
        )
    else:
        certs.append(
            RelationCertificate(
                "hmax-substate-monotonicity",
                float("nan"),
                float("nan"),
                1e-3,
                SKIPPED_DIM,
                digest,
            )
        )

    # step 6: purified-distance budgets and the triangle assembly
    p1 = purified_distance(rho, sigma)
    p2 = purified_distance(sigma, theta)
    p_total = purified_distance(rho, theta)
    certs.append(
        certify("distance-budget-sqrt-4eps", math.sqrt(4.0 * eps), p1, 1e-9, digest)
    )
    certs.append(
        certify("distance-budget-sqrt-6eps", math.sqrt(6.0 * eps), p2, 1e-9, digest)
    )
    certs.append(
        certify(
            "triangle-5-sqrt-eps",
            5.0 * math.sqrt(eps),
            p_total,
            1e-9,
            digest,
            terms=[("triangle_slack", p1 + p2 - p_total)],
        )
    )

    # step 7: final assembly with every term replaced by its certified
    # computable surrogate
    r_on_theta = apply(MeasurementChannel(r, 0), theta)
    t_r, _ = ent.h_min_cond(r_on_theta, 0, 1)
    t_s = h_neg_value - 2.0 * math.log2(1.0 / eps)
    t_a = h_min_sigma
    certs.append(
        certify(
            "smooth-theorem-assembly",
            t_r + t_s,
            ov.log2_inv_c + t_a - 2.0 * math.log2(1.0 / eps),
            1e-6,
            digest,
            terms=[
                ("H_min(R|B) surrogate", t_r),
                ("H_max^eps(SB) surrogate", t_s),
                ("H_min^eps(AB) surrogate", t_a),
                ("log2(1/c)", ov.log2_inv_c),
            ],
        )
    )
    return certs


# ---------------------------------------------------------------------------
# chain rules and strong subadditivity


def check_chain_rules(rho: DensityOperator) -> list[RelationCertificate]:
    """Chain rule I on tripartite inputs, chain rule II on the AB marginal."""
    digest = digest_inputs(rho)
    certs = []
    if len(rho.dims) >= 3:
        h_ab_c, _ = ent.h_min_cond(rho, target=[0, 1], memory=2)
        h_b_c, _ = ent.h_min_cond(rho, target=1, memory=2)
        h_a_bc = ent.h_min_cond_fixed(
            rho, rho.reduce([1, 2]), target=0, memory=[1, 2]
        )
        certs.append(
            certify(
                "chain-rule-1",
                h_ab_c - h_b_c,
                h_a_bc,
                1e-6,
                digest,
                terms=[
                    ("H_min(AB|C)", h_ab_c),
                    ("H_min(B|C)", h_b_c),
                    ("H_min(A|BC)_fixed", h_a_bc),
                ],
            )
        )
    ab = rho.reduce([0, 1]) if len(rho.dims) > 2 else rho
    h_min_ab = ent.h_min_uncond(ab)
    h_neg_b = ent.h_neg_inf(ab.reduce([1]))
    h_a_b = ent.h_min_cond_fixed(ab, ab.reduce([1]), 0, 1)
    certs.append(
        certify(
            "chain-rule-2",
            h_a_b,
            h_min_ab - h_neg_b,
            1e-8,
            digest,
            terms=[
                ("H_min(AB)", h_min_ab),
                ("H_neg_inf(B)", h_neg_b),
                ("H_min(A|B)_fixed", h_a_b),
            ],
        )
    )
    return certs


def check_subadditivity(rho: DensityOperator) -> RelationCertificate:
    """Strong subadditivity for H_min in the fixed-marginal form."""
    h_a_bc = ent.h_min_cond_fixed(rho, rho.reduce([1, 2]), target=0, memory=[1, 2])
    ab = rho.reduce([0, 1])
    h_a_b = ent.h_min_cond_fixed(ab, ab.reduce([1]), 0, 1)
    return certify(
        "strong-subadditivity-hmin",
        h_a_b,
        h_a_bc,
        1e-8,
        digest_inputs(rho),
    )


# ---------------------------------------------------------------------------
# purified-distance lemmas


def check_ptrace_bound(rho, sigma) -> RelationCertificate:
    """Trace distance is at most twice the purified distance."""
    return certify(
        "purified-distance-trace-bound",
        2.0 * purified_distance(rho, sigma),
        2.0 * trace_distance(rho, sigma),
        1e-9,
        digest_inputs(rho, sigma),
    )


def check_p_nonincreasing(rho, sigma, pi: np.ndarray) -> RelationCertificate:
    """P does not increase under conjugation by a contraction 0 <= Pi <= 1."""
    a = pi @ rho.matrix @ pi
    b = pi @ sigma.matrix @ pi
    a = DensityOperator((a + a.conj().T) / 2, rho.dims, normalized=False)
    b = DensityOperator((b + b.conj().T) / 2, sigma.dims, normalized=False)
    return certify(
        "purified-distance-nonincreasing",
        purified_distance(rho, sigma),
        purified_distance(a, b),
        1e-9,
        digest_inputs(rho, sigma, pi),
    )


def check_dist_projection(rho, pi: np.ndarray) -> RelationCertificate:
    """Distance to the smoothed image Pi rho Pi is bounded by the deficit."""
    a = pi @ rho.matrix @ pi
    a = DensityOperator((a + a.conj().T) / 2, rho.dims, normalized=False)
    tr = rho.trace()
    t2 = float(np.trace(pi @ pi @ rho.matrix).real)
    bound = math.sqrt(max(0.0, tr * tr - t2 * t2)) / math.sqrt(tr)
    return certify(
        "purified-distance-projection-bound",
        bound,
        purified_distance(rho, a),
        1e-9,
        digest_inputs(rho, pi),
    )


def check_diag_rearrangement(rho, sigma) -> RelationCertificate:
    """Replacing rho by its sorted spectrum in sigma's eigenbasis cannot
    increase the purified distance."""
    r_spec = rho.eigenvalues()
    w, v = linalg.psd_eigenvalues(sigma.matrix)
    rearranged = (v * r_spec) @ v.conj().T
    tilde = DensityOperator(
        (rearranged + rearranged.conj().T) / 2, rho.dims, normalized=False
    )
    return certify(
        "purified-distance-rearrangement",
        purified_distance(rho, sigma),
        purified_distance(tilde, sigma),
        1e-9,
        digest_inputs(rho, sigma),
    )


def check_ptrace_monotonicity(rho, sigma, keep) -> RelationCertificate:
    """Purified distance does not increase under partial trace."""
    return certify(
        "purified-distance-partial-trace",
        purified_distance(rho, sigma),
        purified_distance(rho.reduce(keep), sigma.reduce(keep)),
        1e-9,
        digest_inputs(rho, sigma, tuple(keep)),
    )


def check_triangle(a, b, c) -> RelationCertificate:
    """Triangle inequality of the purified distance."""
    return certify(
        "purified-distance-triangle",
        purified_distance(a, b) + purified_distance(b, c),
        purified_distance(a, c),
        1e-9,
        digest_inputs(a, b, c),
    )


# ---------------------------------------------------------------------------
# smooth max-entropy monotonicity lemmas (oracle scale)


def check_hmax_measurement_monotonicity(
    sigma: DensityOperator, basis: MeasurementBasis, eps: float
) -> RelationCertificate:
    """Measurement cannot decrease the (smooth) max-entropy."""
    digest = digest_inputs(sigma, basis, eps)
    measured = apply(MeasurementChannel(basis, 0), sigma)
    if eps == 0.0:
        return certify(
            "hmax-measurement-monotonicity",
            ent.h_max_uncond(measured),
            ent.h_max_uncond(sigma),
            1e-9,
            digest,
        )
    if sigma.dim > ent.ORACLE_DIM_MAX:
        return RelationCertificate(
            "hmax-measurement-monotonicity",
            float("nan"),
            float("nan"),
            1e-3,
            SKIPPED_DIM,
            digest,
        )
    lhs = ent.smooth_hmax_oracle(measured.eigenvalues(), eps)
    rhs = ent.smooth_hmax_oracle(sigma.eigenvalues(), eps)
    return certify("hmax-measurement-monotonicity", lhs, rhs, 1e-3, digest)


def check_hmax_substate_monotonicity(
    sub: DensityOperator, sigma: DensityOperator, eps: float
) -> RelationCertificate:
    """sub <= sigma implies the smooth max-entropy ordering."""
    digest = digest_inputs(sub, sigma, eps)
    if eps == 0.0:
        return certify(
            "hmax-substate-monotonicity",
            ent.h_max_uncond(sigma),
            ent.h_max_uncond(sub),
            1e-9,
            digest,
        )
    if sigma.dim > ent.ORACLE_DIM_MAX:
        return RelationCertificate(
            "hmax-substate-monotonicity",
            float("nan"),
            float("nan"),
            1e-3,
            SKIPPED_DIM,
            digest,
        )
    lhs = ent.smooth_hmax_oracle(sigma.eigenvalues(), eps)
    rhs = ent.smooth_hmax_oracle(sub.eigenvalues(), eps)
    return certify("hmax-substate-monotonicity", lhs, rhs, 1e-3, digest)
