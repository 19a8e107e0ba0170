"""Edge costs for the matching graph.

Three layers: the Mahalanobis covariate distance, an optional dose-gap
penalty that divides it by the squared dose difference, and an optional
assignment-probability caliper that either adds a large penalty (soft) or
forbids the edge outright (hard).  ``FORBIDDEN`` (infinity) marks edges
the solver must treat as absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .core import Cohort, DataError, Unit

FORBIDDEN = math.inf

DistanceKind = Literal["mahalanobis", "dose_penalized"]
CaliperMode = Literal["soft", "hard"]


@dataclass(frozen=True)
class CovarianceEstimate:
    """Sample covariance of the cohort covariates, ridged if near-singular."""

    matrix: np.ndarray
    ridge_applied: float = 0.0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DataError("covariance matrix must be square")
        if not np.allclose(m, m.T, rtol=1e-12, atol=1e-12):
            raise DataError("covariance matrix must be symmetric")
        eigvals = np.linalg.eigvalsh(m)
        if eigvals.min() <= 0:
            raise DataError("covariance matrix must be positive definite")
        object.__setattr__(self, "matrix", m)
        # Cholesky factor cached for whitening; L L^T = matrix.
        object.__setattr__(self, "_chol", np.linalg.cholesky(m))

    def whiten(self, x: np.ndarray) -> np.ndarray:
        """Map rows of x to the space where the distance is Euclidean."""
        return np.linalg.solve_triangular(self._chol, np.atleast_2d(x).T, lower=True).T


@dataclass(frozen=True)
class CaliperConfig:
    """Assignment-probability caliper: penalize or forbid pairs whose
    min(p_hat) falls below xi."""

    xi: float = 0.1
    mode: CaliperMode = "soft"
    penalty_M: Optional[float] = None  # None: 1e6 x max finite base distance

    def __post_init__(self):
        if not 0.0 < self.xi < 0.5:
            raise DataError("caliper xi must lie in (0, 0.5)")
        if self.mode not in ("soft", "hard"):
            raise DataError(f"unknown caliper mode {self.mode!r}")
        if self.penalty_M is not None and not self.penalty_M > 0:
            raise DataError("caliper penalty_M must be positive")


@dataclass(frozen=True)
class DistanceConfig:
    kind: DistanceKind = "mahalanobis"
    caliper: Optional[CaliperConfig] = None

    def __post_init__(self):
        if self.kind not in ("mahalanobis", "dose_penalized"):
            raise DataError(f"unknown distance kind {self.kind!r}")


def fit_covariance(cohort: Cohort) -> CovarianceEstimate:
    """Sample covariance (denominator N-1) of the cohort covariates.

    A ridge of 1e-6 * trace/K is added when the spectrum is degenerate
    (smallest eigenvalue below 1e-8 of the largest), keeping the
    Mahalanobis distance a true metric.
    """
    x = cohort.covariate_matrix()
    n, k = x.shape
    if n < 2:
        raise DataError("covariance needs at least 2 units")
    if not np.all(np.isfinite(x)):
        raise DataError("non-finite covariate")
    c = np.cov(x, rowvar=False, ddof=1).reshape(k, k)
    eigvals = np.linalg.eigvalsh(c)
    ridge = 0.0
    if eigvals.min() < 1e-8 * max(eigvals.max(), 0.0) or eigvals.min() <= 0:
        ridge = 1e-6 * np.trace(c) / k
        if ridge <= 0:
            ridge = 1e-6
        c = c + ridge * np.eye(k)
    return CovarianceEstimate(matrix=c, ridge_applied=ridge)


def mahalanobis(x_a, x_b, cov: CovarianceEstimate) -> float:
    """sqrt((x_a - x_b) C^-1 (x_a - x_b)^T)."""
    a = np.asarray(x_a, dtype=float)
    b = np.asarray(x_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1 or a.shape[0] != cov.matrix.shape[0]:
        raise DataError("covariate dimension mismatch")
    d = a - b
    y = np.linalg.solve(cov.matrix, d)
    return float(np.sqrt(max(d @ y, 0.0)))


def base_distance(u_a: Unit, u_b: Unit, cov: CovarianceEstimate,
                  config: DistanceConfig) -> float:
    """Covariate distance, optionally divided by the squared dose gap.

    Equal doses under the dose-penalized kind give FORBIDDEN (the pair
    carries no dose contrast, so the edge is useless anyway).
    """
    phi = mahalanobis(u_a.covariates, u_b.covariates, cov)
    if config.kind == "mahalanobis":
        return phi
    dz = u_a.dose - u_b.dose
    if dz == 0.0:
        return FORBIDDEN
    return phi / (dz * dz)


def calipered_distance(u_a: Unit, u_b: Unit, base: float,
                       p_pair: tuple[float, float],
                       caliper: CaliperConfig) -> float:
    """Apply the assignment-probability caliper to a base distance.

    Soft mode adds penalty_M when min(p_hat) < xi; hard mode returns
    FORBIDDEN instead.  ``p_pair`` must be a complementary probability
    pair for (u_a, u_b).
    """
    pa, pb = p_pair
    if not (0.0 <= pa <= 1.0 and 0.0 <= pb <= 1.0):
        raise DataError("assignment probabilities must lie in [0, 1]")
    if abs(pa + pb - 1.0) > 1e-9:
        raise DataError("assignment probabilities must sum to 1")
    if min(pa, pb) >= caliper.xi:
        return base
    if caliper.mode == "hard":
        return FORBIDDEN
    if caliper.penalty_M is None:
        raise DataError("soft caliper needs penalty_M (auto-set when building "
                        "a matching problem)")
    return base + caliper.penalty_M


def pairwise_mahalanobis(x: np.ndarray, cov: CovarianceEstimate) -> np.ndarray:
    """N x N matrix of Mahalanobis distances between rows of x."""
    x = np.asarray(x, dtype=float)
    l = np.linalg.cholesky(cov.matrix)
    # Whiten: rows y with ||y_a - y_b|| = mahalanobis(x_a, x_b).
    y = np.linalg.solve(l, x.T).T
    sq = np.sum(y * y, axis=1)
    g = y @ y.T
    d2 = sq[:, None] + sq[None, :] - 2.0 * g
    np.fill_diagonal(d2, 0.0)
    return np.sqrt(np.maximum(d2, 0.0))
