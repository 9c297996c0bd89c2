"""Euclidean-norm gradient clipping and the single clipped descent step.

Everything here is a pure function of its inputs; the clipping threshold
``c`` caps the Euclidean norm of the applied gradient and never changes
its direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ClipParams", "clip", "clip_coefficient", "clipped_step"]


@dataclass(frozen=True)
class ClipParams:
    """Clipping threshold and step size shared by one update rule.

    ``c`` may be ``math.inf``, which disables clipping.
    """

    c: float
    eta: float

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise ValueError(f"clipping threshold must be positive, got {self.c!r}")
        if not (self.eta > 0 and math.isfinite(self.eta)):
            raise ValueError(f"step size must be positive and finite, got {self.eta!r}")


def _as_vector(u, name: str = "u") -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-d vector, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} has non-finite coordinates")
    return arr


def clip(u, c: float) -> np.ndarray:
    """Rescale ``u`` to Euclidean norm at most ``c``, preserving direction.

    Returns ``u`` itself (exactly, no copy) when ``norm(u) <= c``; this
    includes the zero vector and the boundary ``norm(u) == c``.
    """
    u = _as_vector(u)
    if not c > 0:
        raise ValueError(f"clipping threshold must be positive, got {c!r}")
    norm = math.sqrt(float(u @ u))
    if norm <= c:
        return u
    v = u * (c / norm)
    m = math.sqrt(float(v @ v))
    while m > c:
        # float rescaling can overshoot by an ulp; norm <= c is a hard
        # contract (DP sensitivity), so nudge strictly below 1 and retry.
        v = v * min(c / m, 1.0 - 2e-16)
        m = math.sqrt(float(v @ v))
    return v


def clip_coefficient(u, c: float) -> float:
    """The scalar ``min(1, c / norm(u))`` applied by :func:`clip`.

    Returns 1.0 for the zero vector (nothing to rescale).
    """
    u = _as_vector(u)
    if not c > 0:
        raise ValueError(f"clipping threshold must be positive, got {c!r}")
    norm = math.sqrt(float(u @ u))
    if norm <= c:
        return 1.0
    return c / norm


def clipped_step(x, g_raw, params: ClipParams) -> np.ndarray:
    """One descent update ``x - eta * clip(g_raw, c)``."""
    x = _as_vector(x, "x")
    g_raw = _as_vector(g_raw, "g_raw")
    if x.shape != g_raw.shape:
        raise ValueError(
            f"dimension mismatch: x has dim {x.size}, gradient has dim {g_raw.size}"
        )
    return x - params.eta * clip(g_raw, params.c)
