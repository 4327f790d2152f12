"""Fidelity, purified distance, trace distance and epsilon-ball membership."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, NormalizationError, ParameterError
from .states import TRACE_TOL, DensityOperator


def _mat(x) -> np.ndarray:
    return x.matrix if isinstance(x, DensityOperator) else np.asarray(x, dtype=complex)


def _check_pair(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    a, b = _mat(rho), _mat(sigma)
    if a.shape != b.shape:
        raise DimensionError(f"state dimensions differ: {a.shape} vs {b.shape}")
    return a, b


def fidelity(rho, sigma) -> float:
    """Standard fidelity F = || sqrt(rho) sqrt(sigma) ||_1."""
    a, b = _check_pair(rho, sigma)
    return linalg.trace_norm(linalg.sqrtm_psd(a) @ linalg.sqrtm_psd(b))


def gen_fidelity(rho, sigma) -> float:
    """Generalized fidelity: F plus the subnormalization deficit term.

    Equals the standard fidelity when either state is normalized.
    """
    a, b = _check_pair(rho, sigma)
    ta, tb = np.trace(a).real, np.trace(b).real
    if ta > 1.0 + TRACE_TOL or tb > 1.0 + TRACE_TOL:
        raise NormalizationError(f"traces must be <= 1, got {ta}, {tb}")
    deficit = math.sqrt(max(0.0, 1.0 - ta) * max(0.0, 1.0 - tb))
    return fidelity(a, b) + deficit


def spectra_gen_fidelity(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Generalized fidelity between commuting states given as spectra.

    q may be a batch with the spectrum on the last axis.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    f = np.sqrt(np.clip(p * q, 0.0, None)).sum(axis=-1)
    deficit = np.sqrt(
        np.clip(1.0 - p.sum(), 0.0, None) * np.clip(1.0 - q.sum(axis=-1), 0.0, None)
    )
    return f + deficit


def purified_distance(rho, sigma) -> float:
    """P = sqrt(1 - gen_fidelity^2); the metric defining smoothing balls."""
    f = gen_fidelity(rho, sigma)
    # roundoff can push F slightly above 1 for identical states
    return math.sqrt(max(0.0, 1.0 - min(f, 1.0) ** 2))


def spectra_purified_distance(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    f = np.minimum(spectra_gen_fidelity(p, q), 1.0)
    return np.sqrt(np.clip(1.0 - f**2, 0.0, None))


def trace_distance(rho, sigma) -> float:
    """Half the Schatten 1-norm of the difference."""
    a, b = _check_pair(rho, sigma)
    return 0.5 * linalg.trace_norm(a - b)


@dataclass(frozen=True)
class BallSpec:
    """Purified-distance ball of radius epsilon around a center state."""

    center: DensityOperator
    radius: float

    def __post_init__(self):
        if not 0.0 <= self.radius <= 1.0:
            raise ParameterError(f"ball radius must be in [0, 1], got {self.radius}")


@dataclass(frozen=True)
class BallMembership:
    inside: bool
    margin: float  # radius - purified distance
    distance: float


def in_ball(candidate: DensityOperator, ball: BallSpec) -> BallMembership:
    """Membership test with the distance margin epsilon - P."""
    p = purified_distance(candidate, ball.center)
    margin = ball.radius - p
    return BallMembership(bool(p <= ball.radius + 1e-9), margin, p)
