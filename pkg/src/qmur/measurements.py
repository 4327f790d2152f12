"""Orthonormal measurement bases, their overlap, and pinching channels."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, FileFormatError, UnsupportedScaleError
from .states import DensityOperator

ORTHO_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Orthonormal basis of a subsystem; column j of vectors is |psi_j>."""

    vectors: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionError(f"basis must be d x d, got shape {v.shape}")
        gram = v.conj().T @ v
        residual = np.max(np.abs(gram - np.eye(v.shape[0])))
        if residual > ORTHO_TOL:
            raise DimensionError(
                f"basis vectors not orthonormal (residual {residual:.3e})"
            )
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def vector(self, j: int) -> np.ndarray:
        return self.vectors[:, j]

    def projector(self, j: int) -> np.ndarray:
        v = self.vectors[:, j]
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class MeasurementChannel:
    """Pinching in a basis on one subsystem, identity elsewhere."""

    basis: MeasurementBasis
    subsystem: int = 0


@dataclass(frozen=True)
class OverlapResult:
    c: float
    log2_inv_c: float


def computational_basis(d: int) -> MeasurementBasis:
    return MeasurementBasis(np.eye(d), label=f"computational({d})")


def fourier_basis(d: int) -> MeasurementBasis:
    """Discrete Fourier basis v_k[j] = exp(2 pi i jk / d) / sqrt(d).

    Mutually unbiased with the computational basis (overlap 1/d).
    """
    j = np.arange(d).reshape(-1, 1)
    k = np.arange(d).reshape(1, -1)
    v = np.exp(2j * np.pi * j * k / d) / math.sqrt(d)
    return MeasurementBasis(v, label=f"fourier({d})")


def random_basis(d: int, rng: np.random.Generator, label: str = "") -> MeasurementBasis:
    """Haar-random basis: orthonormalized complex Gaussian matrix.

    Modified Gram-Schmidt with one re-orthogonalization pass.
    """
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q = np.zeros_like(g)
    for k in range(d):
        v = g[:, k]
        for _ in range(2):  # re-orthogonalize for numerical robustness
            for i in range(k):
                v = v - (q[:, i].conj() @ v) * q[:, i]
        q[:, k] = v / np.linalg.norm(v)
    return MeasurementBasis(q, label=label or f"random({d})")


def overlap_c(r: MeasurementBasis, s: MeasurementBasis) -> OverlapResult:
    """Squared overlap c = max_{j,k} |<psi_j|phi_k>|^2 and log2(1/c)."""
    if r.dim != s.dim:
        raise DimensionError(f"basis dimensions differ: {r.dim} vs {s.dim}")
    c = float(np.max(np.abs(r.vectors.conj().T @ s.vectors) ** 2))
    c = min(c, 1.0)
    return OverlapResult(c, -math.log2(c))


def pinch_matrix(basis: MeasurementBasis, mat: np.ndarray, dims, subsystem: int) -> np.ndarray:
    """Apply the pinching channel on one subsystem of a raw matrix."""
    dims = tuple(dims)
    if not 0 <= subsystem < len(dims):
        raise DimensionError(f"subsystem {subsystem} out of range for {dims}")
    if dims[subsystem] != basis.dim:
        raise DimensionError(
            f"basis dimension {basis.dim} != subsystem dimension {dims[subsystem]}"
        )
    out = np.zeros_like(np.asarray(mat, dtype=complex))
    for j in range(basis.dim):
        pj = linalg.embed_operator(basis.projector(j), dims, [subsystem])
        out += pj @ mat @ pj
    return out


def apply(ch: MeasurementChannel, rho: DensityOperator) -> DensityOperator:
    """Measure (pinch) one subsystem; trace preserving and idempotent."""
    mat = pinch_matrix(ch.basis, rho.matrix, rho.dims, ch.subsystem)
    mat = (mat + mat.conj().T) / 2
    return DensityOperator(mat, rho.dims, rho.normalized)


def generalized_pauli(basis: MeasurementBasis) -> np.ndarray:
    """D = sum_j exp(2 pi i j / d) |psi_j><psi_j|; unitary with D^d = 1."""
    d = basis.dim
    phases = np.exp(2j * np.pi * np.arange(d) / d)
    return (basis.vectors * phases) @ basis.vectors.conj().T


def twirl(
    basis: MeasurementBasis, rho: DensityOperator, subsystem: int = 0
) -> DensityOperator:
    """Pinching written as the average of conjugations by powers of D.

    Equals apply(MeasurementChannel(basis, subsystem), rho); that equality
    is the tested contract.
    """
    d = basis.dim
    if rho.dims[subsystem] != d:
        raise DimensionError(
            f"basis dimension {d} != subsystem dimension {rho.dims[subsystem]}"
        )
    dd = generalized_pauli(basis)
    out = np.zeros_like(rho.matrix)
    power = np.eye(d, dtype=complex)
    for _ in range(d):
        u = linalg.embed_operator(power, rho.dims, [subsystem])
        out = out + u @ rho.matrix @ u.conj().T
        power = power @ dd
    out = (out + out.conj().T) / (2 * d)
    return DensityOperator(out, rho.dims, rho.normalized)


def tensor_power_basis(basis: MeasurementBasis, n: int) -> MeasurementBasis:
    """n-fold tensor power basis, materialized explicitly (small n only)."""
    if basis.dim**n > 64:
        raise UnsupportedScaleError(
            f"tensor power dimension {basis.dim}**{n} exceeds the supported limit"
        )
    v = basis.vectors
    for _ in range(n - 1):
        v = np.kron(v, basis.vectors)
    return MeasurementBasis(v, label=f"{basis.label}^{n}")


# ---------------------------------------------------------------------------
# Basis file format: {"dimension": d, "vectors": [[[re, im], ...], ...],
#  "label": str}; vectors[k] holds the entries of |psi_k>.


def basis_to_dict(basis: MeasurementBasis) -> dict:
    return {
        "dimension": basis.dim,
        "vectors": [
            [[repr(float(z.real)), repr(float(z.imag))] for z in basis.vectors[:, k]]
            for k in range(basis.dim)
        ],
        "label": basis.label,
    }


def save_basis(path: str, basis: MeasurementBasis) -> None:
    with open(path, "w") as fh:
        json.dump(basis_to_dict(basis), fh, indent=1)
        fh.write("\n")


def basis_from_dict(obj: dict) -> MeasurementBasis:
    try:
        d = int(obj["dimension"])
        label = str(obj.get("label", ""))
        cols = [
            [complex(float(re), float(im)) for re, im in vec] for vec in obj["vectors"]
        ]
        v = np.array(cols, dtype=complex).T
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed basis file: {exc}") from exc
    if v.shape != (d, d):
        raise FileFormatError(f"basis file declares d={d} but has shape {v.shape}")
    try:
        return MeasurementBasis(v, label=label)
    except DimensionError as exc:
        raise FileFormatError(f"basis file violates invariants: {exc}") from exc


def load_basis(path: str) -> MeasurementBasis:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read basis file {path}: {exc}") from exc
    return basis_from_dict(obj)
