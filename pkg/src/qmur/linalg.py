"""Dense complex linear algebra on multipartite operators.

All operators are square numpy arrays over a Hilbert space whose tensor
structure is described by a dimension profile: an ordered tuple of
subsystem dimensions whose product equals the matrix dimension.  The
index convention is row-major with the left tensor factor slowest.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, NumericError, PositivityError, ShapeError

# Tolerances used across the toolkit.
HERM_TOL = 1e-10       # max-norm Hermiticity residual accepted by eig_hermitian
SUPPORT_TOL = 1e-10    # eigenvalues below this count as zero (rank decisions)
EIG_CLAMP = -1e-10     # eigenvalues in [EIG_CLAMP, 0) are roundoff, clamped to 0


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def herm_residual(m: np.ndarray) -> float:
    """Max-norm deviation of m from its Hermitian part."""
    return float(np.max(np.abs(m - dagger(m))))


def check_profile(dims: Sequence[int], dim: int) -> tuple[int, ...]:
    """Validate a dimension profile against a matrix dimension."""
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionError(f"invalid dimension profile {dims}")
    if math.prod(dims) != dim:
        raise DimensionError(f"profile {dims} does not factor dimension {dim}")
    return dims


def _require_square(m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix contains non-finite entries")
    return m.shape[0]


def eig_hermitian(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues real and sorted
    non-increasingly and eigenvectors as the corresponding columns, so
    that m = V @ diag(w) @ V†.
    """
    _require_square(m)
    if herm_residual(m) > HERM_TOL:
        raise ShapeError(
            f"matrix is not Hermitian (residual {herm_residual(m):.3e} > {HERM_TOL})"
        )
    try:
        w, v = np.linalg.eigh((m + dagger(m)) / 2)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - eigh rarely fails
        raise NumericError(f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(w)[::-1]
    return w[order].real, v[:, order]


def psd_eigenvalues(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a PSD matrix with roundoff clamping.

    Eigenvalues in [EIG_CLAMP, 0) are set to 0; anything more negative is
    a genuine positivity failure.
    """
    w, v = eig_hermitian(m)
    if w.min(initial=0.0) < EIG_CLAMP:
        raise PositivityError(
            f"matrix has negative eigenvalue {w.min():.3e} below {EIG_CLAMP}"
        )
    return np.maximum(w, 0.0), v


def mat_fn_psd(m: np.ndarray, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar map to a PSD matrix through its spectrum.

    The map is applied only on eigenvalues above the support tolerance;
    eigenvalues on the kernel are sent to 0 (pseudo-inverse convention,
    which makes fn = 1/sqrt the inverse square root on the support).
    """
    w, v = psd_eigenvalues(m)
    out = np.zeros_like(w)
    on_support = w > SUPPORT_TOL
    out[on_support] = fn(w[on_support])
    return (v * out) @ dagger(v)


def sqrtm_psd(m: np.ndarray) -> np.ndarray:
    return mat_fn_psd(m, np.sqrt)


def inv_sqrtm_psd(m: np.ndarray) -> np.ndarray:
    return mat_fn_psd(m, lambda w: 1.0 / np.sqrt(w))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, left factor slowest (row-major convention)."""
    return np.kron(np.asarray(a), np.asarray(b))


def tensor_many(*ops: np.ndarray) -> np.ndarray:
    out = np.asarray(ops[0])
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def partial_trace(
    m: np.ndarray, dims: Sequence[int], keep: Sequence[int]
) -> np.ndarray:
    """Trace out all subsystems not listed in keep.

    Kept subsystems retain their relative order.  An empty keep set
    returns the 1x1 matrix holding the full trace.
    """
    m = np.asarray(m)
    n = _require_square(m)
    dims = check_profile(dims, n)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionError(f"keep set {keep} out of range for profile {dims}")
    t = m.reshape(dims + dims)
    traced = [i for i in range(len(dims)) if i not in keep]
    for i in reversed(traced):
        half = t.ndim // 2
        t = np.trace(t, axis1=i, axis2=i + half)
    d_keep = math.prod(dims[k] for k in keep) if keep else 1
    return t.reshape(d_keep, d_keep)


def permute_subsystems(
    m: np.ndarray, dims: Sequence[int], perm: Sequence[int]
) -> np.ndarray:
    """Reorder tensor factors: output subsystem j is input subsystem perm[j]."""
    m = np.asarray(m)
    n = _require_square(m)
    dims = check_profile(dims, n)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(len(dims))):
        raise DimensionError(f"{perm} is not a permutation of {len(dims)} subsystems")
    half = len(dims)
    t = m.reshape(dims + dims)
    t = t.transpose(perm + [p + half for p in perm])
    return t.reshape(n, n)


def embed_operator(
    op: np.ndarray, dims: Sequence[int], acting: Sequence[int]
) -> np.ndarray:
    """Extend an operator acting on a subset of subsystems by identity.

    acting lists the subsystem indices (in the tensor-factor order of op);
    the result acts on the full profile dims.
    """
    op = np.asarray(op)
    dims = tuple(int(d) for d in dims)
    acting = [int(a) for a in acting]
    if len(set(acting)) != len(acting):
        raise DimensionError("acting subsystems must be distinct")
    if any(a < 0 or a >= len(dims) for a in acting):
        raise DimensionError(f"acting set {acting} out of range for profile {dims}")
    d_act = math.prod(dims[a] for a in acting)
    if op.shape != (d_act, d_act):
        raise DimensionError(
            f"operator shape {op.shape} does not match subsystems {acting} of {dims}"
        )
    rest = [i for i in range(len(dims)) if i not in acting]
    d_rest = math.prod(dims[r] for r in rest) if rest else 1
    big = np.kron(op, np.eye(d_rest))
    order = acting + rest  # current subsystem layout of big
    perm = [order.index(j) for j in range(len(dims))]
    return permute_subsystems(big, [dims[s] for s in order], perm)


def trace_norm(m: np.ndarray) -> float:
    """Schatten 1-norm (sum of singular values)."""
    _require_square(m)
    return float(np.linalg.svd(np.asarray(m), compute_uv=False).sum())
