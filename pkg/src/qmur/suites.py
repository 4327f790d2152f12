"""Seeded ensemble sweeps over the relation checkers.

A suite maps a (seed, trial) pair to a deterministic batch of
certificates, so reruns with the same configuration reproduce reports
byte for byte.  Trials may run on a thread pool (QMUR_THREADS); results
are aggregated in trial order regardless of completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import relations as rel
from .entropies import SMOOTH_EPS_MAX
from .errors import ParameterError
from .measurements import (
    MeasurementBasis,
    computational_basis,
    fourier_basis,
    overlap_c,
    random_basis,
    tensor_power_basis,
)
from .states import DensityOperator, RandomEnsembleSpec, random_state, sample


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple[str, ...] = ("all",)
    trials: int = 100
    dims: tuple[int, ...] = (2, 2)
    seed: int = 0
    tolerances: tuple[tuple[str, float], ...] = ()  # per-relation overrides
    epsilons: tuple[float, ...] = (0.05,)
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        unknown = [s for s in self.suites if s not in SUITES and s != "all"]
        if unknown:
            raise ParameterError(f"unknown suites: {unknown}")
        for eps in self.epsilons:
            if not 0.0 < eps <= SMOOTH_EPS_MAX:
                raise ParameterError(f"epsilon {eps} outside (0, {SMOOTH_EPS_MAX}]")

    def to_dict(self) -> dict:
        return {
            "suites": list(self.suites),
            "trials": self.trials,
            "dims": list(self.dims),
            "seed": self.seed,
            "tolerances": {k: v for k, v in self.tolerances},
            "epsilons": list(self.epsilons),
            "workers": self.workers,
        }


def _trial_rng(seed: int, trial: int, lane: int) -> np.random.Generator:
    key = (int(seed) % 2**64) * 2**64 + ((int(trial) * 16 + lane) % 2**64)
    return np.random.Generator(np.random.Philox(key=key))


def _basis_pair(d: int, seed: int, trial: int) -> tuple[MeasurementBasis, MeasurementBasis]:
    return (
        random_basis(d, _trial_rng(seed, trial, 1)),
        random_basis(d, _trial_rng(seed, trial, 2)),
    )


def _bipartite(cfg: SuiteConfig):
    dims = cfg.dims if len(cfg.dims) == 2 else cfg.dims[:2]
    return dims if len(dims) == 2 else (2, 2)


def _tripartite(cfg: SuiteConfig):
    return cfg.dims if len(cfg.dims) == 3 else tuple(cfg.dims[:2]) + (2,)


def _contraction(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random nonnegative operator <= 1, diagonal in a random basis.

    Eigenvalue profile f drawn uniformly per eigenvalue so non-projector
    cases are covered.
    """
    v = random_basis(dim, rng).vectors
    f = rng.uniform(0.0, 1.0, dim)
    pi = (v * f) @ v.conj().T
    return (pi + pi.conj().T) / 2


# ---------------------------------------------------------------------------
# per-trial suite bodies


def _suite_robertson(cfg: SuiteConfig, trial: int):
    d = cfg.dims[0]
    rng = _trial_rng(cfg.seed, trial, 3)

    def herm():
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        return (g + g.conj().T) / 2

    rho = random_state((d,), cfg.seed, trial)
    return [rel.check_robertson(herm(), herm(), rho)]


def _suite_maassen_uffink(cfg: SuiteConfig, trial: int):
    d = cfg.dims[0]
    r, s = _basis_pair(d, cfg.seed, trial)
    rho = random_state((d,), cfg.seed, trial)
    return [rel.check_maassen_uffink(r, s, rho)]


def _suite_renyi_endpoint(cfg: SuiteConfig, trial: int):
    d = cfg.dims[0]
    r, s = _basis_pair(d, cfg.seed, trial)
    rho = random_state((d,), cfg.seed, trial)
    return [rel.check_renyi_endpoint(r, s, rho)]


def _suite_main_theorem(cfg: SuiteConfig, trial: int):
    dims = _bipartite(cfg)
    r, s = _basis_pair(dims[0], cfg.seed, trial)
    rho = random_state(dims, cfg.seed, trial)
    return [rel.check_main_theorem(r, s, rho)]


def _suite_br_corollary(cfg: SuiteConfig, trial: int):
    dims = _bipartite(cfg)
    r, s = _basis_pair(dims[0], cfg.seed, trial)
    rho = random_state(dims, cfg.seed, trial)
    return [rel.check_br_corollary(r, s, rho)]


def _subnormalized(dims, seed: int, trial: int) -> DensityOperator:
    rho = random_state(dims, seed, trial)
    scale = float(_trial_rng(seed, trial, 4).uniform(0.3, 0.95))
    return DensityOperator(rho.matrix * scale, rho.dims, normalized=False)


def _suite_nonsmooth_theorem(cfg: SuiteConfig, trial: int):
    dims = _bipartite(cfg)
    r, s = _basis_pair(dims[0], cfg.seed, trial)
    # alternate normalized and subnormalized inputs; the relation covers both
    if trial % 2 == 0:
        rho = random_state(dims, cfg.seed, trial)
    else:
        rho = _subnormalized(dims, cfg.seed, trial)
    return [rel.check_nonsmooth_theorem(r, s, rho, include_chain=True)]


def _suite_omega(cfg: SuiteConfig, trial: int):
    dims = _bipartite(cfg)
    r, s = _basis_pair(dims[0], cfg.seed, trial)
    rho = random_state(dims, cfg.seed, trial)
    return rel.check_omega_identities(rel.build_omega(r, s, rho))


def _suite_smooth_trace(cfg: SuiteConfig, trial: int):
    dims = _bipartite(cfg)
    r, s = _basis_pair(dims[0], cfg.seed, trial)
    rho = random_state(dims, cfg.seed, trial)
    certs = []
    for eps in cfg.epsilons:
        certs.extend(rel.check_smooth_proof_trace(r, s, rho, eps))
    return certs


def _suite_chain_rules(cfg: SuiteConfig, trial: int):
    rho = random_state(_tripartite(cfg), cfg.seed, trial)
    return rel.check_chain_rules(rho)


def _suite_subadditivity(cfg: SuiteConfig, trial: int):
    rho = random_state(_tripartite(cfg), cfg.seed, trial)
    return [rel.check_subadditivity(rho)]


def _suite_distance_lemmas(cfg: SuiteConfig, trial: int):
    dims = _bipartite(cfg)
    rho = random_state(dims, cfg.seed, trial)
    sigma = sample(
        RandomEnsembleSpec("rank-limited", dims, cfg.seed + 1, trial, rank=2)
    )
    tau = _subnormalized(dims, cfg.seed + 2, trial)
    pi = _contraction(rho.dim, _trial_rng(cfg.seed, trial, 5))
    return [
        rel.check_ptrace_bound(rho, sigma),
        rel.check_ptrace_bound(rho, tau),
        rel.check_p_nonincreasing(rho, sigma, pi),
        rel.check_dist_projection(rho, pi),
        rel.check_dist_projection(tau, pi),
        rel.check_diag_rearrangement(rho, sigma),
        rel.check_ptrace_monotonicity(rho, sigma, [0]),
        rel.check_ptrace_monotonicity(rho, tau, [1]),
        rel.check_triangle(rho, sigma, tau),
    ]


def _suite_smoothing_lemmas(cfg: SuiteConfig, trial: int):
    d = min(cfg.dims[0], 4)
    rho = random_state((d,), cfg.seed, trial)
    basis = random_basis(d, _trial_rng(cfg.seed, trial, 6))
    pi = _contraction(d, _trial_rng(cfg.seed, trial, 7))
    sub_mat = pi @ rho.matrix @ pi
    sub = DensityOperator(
        (sub_mat + sub_mat.conj().T) / 2, (d,), normalized=False
    )
    eps = cfg.epsilons[trial % len(cfg.epsilons)]
    return [
        rel.check_hmax_measurement_monotonicity(rho, basis, 0.0),
        rel.check_hmax_measurement_monotonicity(rho, basis, eps),
        rel.check_hmax_substate_monotonicity(sub, rho, 0.0),
        rel.check_hmax_substate_monotonicity(sub, rho, eps),
    ]


def _suite_iid_overlap(cfg: SuiteConfig, trial: int):
    certs = []
    for d in (2, 3):
        if trial == 0:
            r, s = computational_basis(d), fourier_basis(d)
        else:
            r, s = _basis_pair(d, cfg.seed + d, trial)
        c1 = overlap_c(r, s).c
        for n in (1, 2, 3):
            c_n = overlap_c(tensor_power_basis(r, n), tensor_power_basis(s, n)).c
            certs.append(
                rel.certify(
                    "iid-overlap-product",
                    c_n,
                    c1**n,
                    1e-12,
                    rel.digest_inputs(r, s, n),
                    terms=[("n", float(n)), ("d", float(d))],
                    two_sided=True,
                )
            )
    return certs


SUITES = {
    "robertson": _suite_robertson,
    "maassen-uffink": _suite_maassen_uffink,
    "main-theorem": _suite_main_theorem,
    "br-corollary": _suite_br_corollary,
    "nonsmooth-theorem": _suite_nonsmooth_theorem,
    "omega": _suite_omega,
    "smooth-trace": _suite_smooth_trace,
    "chain-rules": _suite_chain_rules,
    "subadditivity": _suite_subadditivity,
    "renyi-endpoint": _suite_renyi_endpoint,
    "distance-lemmas": _suite_distance_lemmas,
    "smoothing-lemmas": _suite_smoothing_lemmas,
    "iid-overlap": _suite_iid_overlap,
}


@dataclass(frozen=True)
class SuiteResult:
    config: SuiteConfig
    certificates: tuple[tuple[str, int, rel.RelationCertificate], ...]

    @property
    def failures(self) -> int:
        return sum(1 for _, _, c in self.certificates if c.status == rel.FAIL)

    @property
    def min_slack(self) -> float:
        slacks = [
            c.slack for _, _, c in self.certificates if c.status != rel.SKIPPED_DIM
        ]
        return min(slacks) if slacks else float("nan")

    def summary(self) -> dict:
        return {
            "suites": list(self.config.suites),
            "trials": self.config.trials,
            "certificates": len(self.certificates),
            "failures": self.failures,
            "min_slack": self.min_slack,
            "seed": self.config.seed,
        }

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "summary": self.summary(),
            "certificates": [
                dict(suite=suite, trial=trial, **c.to_dict())
                for suite, trial, c in self.certificates
            ],
        }


def _with_overrides(cert: rel.RelationCertificate, overrides: dict):
    tol = overrides.get(cert.relation_id)
    if tol is None or cert.status == rel.SKIPPED_DIM:
        return cert
    return rel.certify(
        cert.relation_id,
        cert.lhs,
        cert.rhs,
        tol,
        cert.inputs_digest,
        terms=cert.terms,
        two_sided=cert.two_sided,
    )


def worker_count(cfg: SuiteConfig) -> int:
    env = os.environ.get("QMUR_THREADS")
    cap = int(env) if env else cfg.workers
    return max(1, cap)


def run_suites(cfg: SuiteConfig) -> SuiteResult:
    """Execute the configured suites over the seeded trial ensemble."""
    names = sorted(SUITES) if "all" in cfg.suites else list(cfg.suites)
    overrides = dict(cfg.tolerances)
    jobs = [(suite, trial) for suite in names for trial in range(cfg.trials)]

    def one(job):
        suite, trial = job
        return [
            (suite, trial, _with_overrides(c, overrides))
            for c in SUITES[suite](cfg, trial)
        ]

    workers = worker_count(cfg)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(one, jobs))
    else:
        batches = [one(job) for job in jobs]
    flat = [entry for batch in batches for entry in batch]
    flat.sort(key=lambda e: (e[0], e[1]))
    return SuiteResult(cfg, tuple(flat))
