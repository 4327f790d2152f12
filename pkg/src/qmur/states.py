"""Density operators: construction, validation, sampling and purification."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    DimensionError,
    FileFormatError,
    NormalizationError,
    ParameterError,
)

TRACE_TOL = 1e-9


@dataclass(frozen=True)
class ValidationReport:
    """Diagnostics for a candidate density operator."""

    herm_residual: float
    min_eigenvalue: float
    trace_deviation: float
    ok: bool


def validate(matrix: np.ndarray, normalized: bool = True) -> ValidationReport:
    """Report Hermiticity residual, minimum eigenvalue and trace deviation.

    Passes iff the matrix is Hermitian to 1e-10, has eigenvalues >= -1e-10
    and its trace is 1 (+-1e-9) when normalized or in (0, 1 + 1e-9] when
    subnormalized.
    """
    matrix = np.asarray(matrix, dtype=complex)
    herm = linalg.herm_residual(matrix)
    tr = float(np.trace(matrix).real)
    if herm <= linalg.HERM_TOL:
        min_eig = float(np.linalg.eigvalsh((matrix + linalg.dagger(matrix)) / 2)[0])
    else:
        min_eig = float("nan")
    if normalized:
        trace_dev = tr - 1.0
        trace_ok = abs(trace_dev) <= TRACE_TOL
    else:
        trace_dev = max(0.0, tr - 1.0) if tr > 0 else tr
        trace_ok = 0.0 < tr <= 1.0 + TRACE_TOL
    ok = herm <= linalg.HERM_TOL and min_eig >= linalg.EIG_CLAMP and trace_ok
    return ValidationReport(herm, min_eig, trace_dev, bool(ok))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A (sub)normalized PSD operator with a tensor dimension profile."""

    matrix: np.ndarray
    dims: tuple[int, ...]
    normalized: bool = True

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        dims = linalg.check_profile(self.dims, matrix.shape[0])
        report = validate(matrix, self.normalized)
        if not report.ok:
            kind = "normalized" if self.normalized else "subnormalized"
            raise NormalizationError(
                f"not a valid {kind} density operator: "
                f"herm residual {report.herm_residual:.2e}, "
                f"min eigenvalue {report.min_eigenvalue:.2e}, "
                f"trace deviation {report.trace_deviation:.2e}"
            )
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def reduce(self, keep: Sequence[int]) -> "DensityOperator":
        """Marginal on the kept subsystems."""
        keep = sorted(set(keep))
        sub = linalg.partial_trace(self.matrix, self.dims, keep)
        dims = tuple(self.dims[k] for k in keep) if keep else (1,)
        return DensityOperator(sub, dims, self.normalized)

    def permute(self, perm: Sequence[int]) -> "DensityOperator":
        mat = linalg.permute_subsystems(self.matrix, self.dims, perm)
        return DensityOperator(mat, tuple(self.dims[p] for p in perm), self.normalized)

    def eigenvalues(self) -> np.ndarray:
        """Spectrum, non-increasing, roundoff clamped to [0, inf)."""
        w, _ = linalg.psd_eigenvalues(self.matrix)
        return w


def from_matrix(
    matrix: np.ndarray, dims: Sequence[int] | None = None, normalized: bool = True
) -> DensityOperator:
    matrix = np.asarray(matrix, dtype=complex)
    if dims is None:
        dims = (matrix.shape[0],)
    return DensityOperator(matrix, tuple(dims), normalized)


def max_entangled(d: int) -> DensityOperator:
    """Maximally entangled pure state |Phi> = d^{-1/2} sum_j |jj> on [d, d]."""
    if d < 2:
        raise DimensionError(f"maximally entangled state needs d >= 2, got {d}")
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / math.sqrt(d)
    return DensityOperator(np.outer(vec, vec.conj()), (d, d))


def werner(d: int, p: float) -> DensityOperator:
    """Interpolation p * |Phi><Phi| + (1 - p) * 1/d^2 on [d, d]."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"mixing parameter must be in [0, 1], got {p}")
    phi = max_entangled(d).matrix
    mat = p * phi + (1.0 - p) * np.eye(d * d) / (d * d)
    return DensityOperator(mat, (d, d))


def purify(rho: DensityOperator) -> DensityOperator:
    """Minimal purification: appends a system E of dimension rank(rho).

    The output is pure on profile dims + (d_E,) and traces back to rho.
    """
    if not rho.normalized:
        raise NormalizationError("only normalized states are purified")
    w, v = linalg.psd_eigenvalues(rho.matrix)
    support = w > linalg.SUPPORT_TOL
    lam = w[support]
    vecs = v[:, support]
    d_e = int(lam.size)
    # |psi> = sum_k sqrt(lam_k) |v_k> |k>_E
    psi = (vecs * np.sqrt(lam)).reshape(-1)  # index order (system, E), E fastest
    mat = np.outer(psi, psi.conj())
    return DensityOperator(mat, rho.dims + (d_e,))


@dataclass(frozen=True)
class RandomEnsembleSpec:
    """Deterministic recipe for one random state.

    Identical (kind, dims, seed, trial) reproduces the state bit-for-bit.
    kind is one of 'haar-pure', 'hilbert-schmidt-mixed', 'rank-limited'.
    """

    kind: str
    dims: tuple[int, ...]
    seed: int
    trial: int = 0
    rank: int = 2  # only used by 'rank-limited'

    def rng(self) -> np.random.Generator:
        # Philox is counter-based; keying on (seed, trial) gives independent
        # substreams that are safe to draw in parallel.
        key = (int(self.seed) % 2**64) * 2**64 + (int(self.trial) % 2**64)
        return np.random.Generator(np.random.Philox(key=key))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample(spec: RandomEnsembleSpec) -> DensityOperator:
    """Draw the state described by spec (reproducibly)."""
    rng = spec.rng()
    dims = tuple(int(d) for d in spec.dims)
    d = math.prod(dims)
    if spec.kind == "haar-pure":
        vec = _complex_gaussian(rng, d)
        vec /= np.linalg.norm(vec)
        mat = np.outer(vec, vec.conj())
    elif spec.kind == "hilbert-schmidt-mixed":
        g = _complex_gaussian(rng, (d, d))
        mat = g @ g.conj().T
        mat /= np.trace(mat).real
    elif spec.kind == "rank-limited":
        r = int(spec.rank)
        if r < 1:
            raise ParameterError(f"rank must be >= 1, got {r}")
        vec = _complex_gaussian(rng, d * r)
        vec /= np.linalg.norm(vec)
        full = np.outer(vec, vec.conj())
        mat = linalg.partial_trace(full, (d, r), keep=[0])
    else:
        raise ParameterError(f"unknown ensemble kind {spec.kind!r}")
    mat = (mat + mat.conj().T) / 2
    return DensityOperator(mat, dims)


def random_state(
    dims: Sequence[int], seed: int, trial: int = 0, kind: str = "hilbert-schmidt-mixed"
) -> DensityOperator:
    return sample(RandomEnsembleSpec(kind, tuple(dims), seed, trial))


# ---------------------------------------------------------------------------
# State file format (shared with the CLI):
# {"profile": [d_A, d_B, ...], "normalized": bool,
#  "matrix": [[[re, im], ...], ...]} with row-major entries and reals as
# IEEE double decimal strings.


def _entry(z: complex) -> list[str]:
    return [repr(float(z.real)), repr(float(z.imag))]


def state_to_dict(rho: DensityOperator) -> dict:
    return {
        "profile": list(rho.dims),
        "normalized": bool(rho.normalized),
        "matrix": [[_entry(z) for z in row] for row in rho.matrix],
    }


def save_state(path: str, rho: DensityOperator) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(rho), fh, indent=1)
        fh.write("\n")


def state_from_dict(obj: dict) -> DensityOperator:
    try:
        dims = tuple(int(d) for d in obj["profile"])
        normalized = bool(obj["normalized"])
        rows = obj["matrix"]
        mat = np.array(
            [[complex(float(re), float(im)) for re, im in row] for row in rows]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed state file: {exc}") from exc
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise FileFormatError(f"state matrix is not square: shape {mat.shape}")
    try:
        return DensityOperator(mat, dims, normalized)
    except (NormalizationError, DimensionError) as exc:
        raise FileFormatError(f"state file violates invariants: {exc}") from exc


def load_state(path: str) -> DensityOperator:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read state file {path}: {exc}") from exc
    return state_from_dict(obj)
