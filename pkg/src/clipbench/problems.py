"""Objective-function oracles with analytic smoothness/noise metadata.

Each problem exposes the exact expected objective ``value``, its exact
gradient ``grad``, and a one-draw stochastic gradient ``sample_grad``
that is unbiased for ``grad`` with variance bounded by ``meta.sigma_sq``.
Problems are immutable; the caller owns all RNG state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data_ingest import Dataset, spectral_norm_sq

__all__ = [
    "ProblemMeta",
    "Problem",
    "Quadratic",
    "BernoulliShiftQuadratic",
    "ChiSquareQuadratic",
    "LogisticRegressionProblem",
]


@dataclass(frozen=True, eq=False)
class ProblemMeta:
    """Analytic constants of a problem.

    ``L0``/``L1`` are the relaxed smoothness constants (local gradient
    Lipschitz constant ``L0 + L1 * norm(grad)`` on pairs closer than
    ``1/L1``), ``L`` the classical one, ``mu`` the strong-convexity
    modulus (0 when absent), ``sigma_sq`` the stochastic-gradient
    variance bound. ``f_star``/``x_star`` are None when unknown.
    """

    dim: int
    L0: float
    L1: float
    L: float
    mu: float
    sigma_sq: float
    f_star: float | None = None
    x_star: np.ndarray | None = None


class Problem:
    """Oracle interface; subclasses fill in the actual formulas."""

    meta: ProblemMeta

    def value(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def grad(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def sample_grad(self, x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def variance_at(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def check_dim(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.size != self.meta.dim:
            raise ValueError(
                f"point has shape {x.shape}, problem dimension is {self.meta.dim}"
            )
        return x


class Quadratic(Problem):
    """Deterministic ``f(x) = (L/2) * norm(x)^2`` with minimizer 0."""

    def __init__(self, dim: int = 1, L: float = 1.0):
        if dim < 1 or not L > 0:
            raise ValueError("need dim >= 1 and L > 0")
        self.L = float(L)
        self.meta = ProblemMeta(
            dim=dim, L0=L, L1=0.0, L=L, mu=L, sigma_sq=0.0,
            f_star=0.0, x_star=np.zeros(dim),
        )

    def value(self, x):
        x = self.check_dim(x)
        return 0.5 * self.L * float(x @ x)

    def grad(self, x):
        x = self.check_dim(x)
        return self.L * x

    def sample_grad(self, x, rng):
        return self.grad(x)

    def variance_at(self, x):
        return 0.0


class BernoulliShiftQuadratic(Problem):
    """Two-outcome stochastic quadratic in one dimension.

    The stochastic gradient is ``x + a`` with probability ``p`` and ``x``
    otherwise, so ``grad(x) = x + p*a`` and the noise variance is
    ``p*(1-p)*a^2`` at every point. This is the adversarial construction
    whose clipped-SGD fixed point is available in closed form.
    """

    def __init__(self, a: float, p: float):
        if not a > 0:
            raise ValueError(f"shift a must be positive, got {a!r}")
        if not 0 < p < 0.5:
            raise ValueError(f"p must lie in (0, 1/2), got {p!r}")
        self.a = float(a)
        self.p = float(p)
        sigma_sq = p * (1.0 - p) * a * a
        self.meta = ProblemMeta(
            dim=1, L0=1.0, L1=0.0, L=1.0, mu=1.0, sigma_sq=sigma_sq,
            f_star=0.5 * sigma_sq, x_star=np.array([-p * a]),
        )

    def value(self, x):
        x = self.check_dim(x)
        v = float(x[0])
        return 0.5 * (self.p * (v + self.a) ** 2 + (1.0 - self.p) * v * v)

    def grad(self, x):
        x = self.check_dim(x)
        return x + self.p * self.a

    def sample_grad(self, x, rng):
        if rng.random() < self.p:
            return x + self.a
        return x

    def variance_at(self, x):
        return self.meta.sigma_sq


class ChiSquareQuadratic(Problem):
    """Quadratic with additive coordinate-wise chi-squared(1) gradient noise.

    ``sample_grad(x) = L*x + xi`` with ``xi_i ~ chi^2(1)`` (drawn as the
    square of one standard normal per coordinate), so the expected
    gradient is ``L*x + 1`` and the variance is ``2*dim`` everywhere.
    """

    def __init__(self, dim: int = 100, L: float = 0.1):
        if dim < 1 or not L > 0:
            raise ValueError("need dim >= 1 and L > 0")
        self.L = float(L)
        self._ones = np.ones(dim)
        self.meta = ProblemMeta(
            dim=dim, L0=L, L1=0.0, L=L, mu=L, sigma_sq=2.0 * dim,
            f_star=-dim / (2.0 * L), x_star=-self._ones / L,
        )

    def value(self, x):
        x = self.check_dim(x)
        return 0.5 * self.L * float(x @ x) + float(x.sum())

    def grad(self, x):
        x = self.check_dim(x)
        return self.L * x + 1.0

    def sample_grad(self, x, rng):
        z = rng.standard_normal(self.meta.dim)
        return self.L * x + z * z

    def variance_at(self, x):
        return self.meta.sigma_sq


def _sigmoid(t: np.ndarray) -> np.ndarray:
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    e = np.exp(t[~pos])
    out[~pos] = e / (1.0 + e)
    return out


class LogisticRegressionProblem(Problem):
    """Binary logistic loss over a parsed dataset, optional ridge term.

    ``value(x) = mean_i log(1 + exp(-y_i <a_i, x>)) + (lam/2) norm(x)^2``
    with ``sample_grad`` drawing one row uniformly (batch size 1). The
    smoothness constant is estimated by power iteration on the feature
    Gram matrix; ``meta.sigma_sq`` is the exhaustive per-row gradient
    variance at x = 0, an estimate rather than a global bound.
    """

    def __init__(
        self,
        dataset: Dataset,
        lam: float = 0.0,
        add_intercept: bool = False,
        normalize_rows: bool = False,
    ):
        if lam < 0:
            raise ValueError(f"ridge weight must be nonnegative, got {lam!r}")
        A = dataset.to_dense()
        if normalize_rows:
            norms = np.linalg.norm(A, axis=1)
            A = A / np.where(norms > 0, norms, 1.0)[:, None]
        if add_intercept:
            A = np.hstack([A, np.ones((A.shape[0], 1))])
        self.A = A
        self.y = dataset.labels.astype(float)
        self.n = A.shape[0]
        self.lam = float(lam)
        L = spectral_norm_sq(A) / (4.0 * self.n) + lam
        self.meta = ProblemMeta(
            dim=A.shape[1], L0=L, L1=0.0, L=L, mu=lam,
            sigma_sq=self._row_variance(np.zeros(A.shape[1])),
        )

    def _margins(self, x: np.ndarray) -> np.ndarray:
        return self.y * (self.A @ x)

    def value(self, x):
        x = self.check_dim(x)
        m = self._margins(x)
        # log(1 + exp(-m)) = max(0, -m) + log1p(exp(-|m|)), stable both tails
        losses = np.maximum(0.0, -m) + np.log1p(np.exp(-np.abs(m)))
        return float(losses.mean()) + 0.5 * self.lam * float(x @ x)

    def grad(self, x):
        x = self.check_dim(x)
        s = _sigmoid(-self._margins(x))
        return -(self.A.T @ (self.y * s)) / self.n + self.lam * x

    def sample_grad(self, x, rng):
        i = int(rng.integers(self.n))
        m = self.y[i] * float(self.A[i] @ x)
        if m >= 0:
            s = 1.0 / (1.0 + math.exp(m))
        else:
            e = math.exp(-m)
            s = e / (1.0 + e)
        return (-self.y[i] * s) * self.A[i] + self.lam * x

    def _row_variance(self, x: np.ndarray) -> float:
        s = _sigmoid(-self._margins(x))
        G = (-(self.y * s))[:, None] * self.A  # per-row gradients minus the common ridge term
        mean = G.mean(axis=0)
        return float(((G - mean) ** 2).sum(axis=1).mean())

    def variance_at(self, x):
        x = self.check_dim(x)
        return self._row_variance(x)
