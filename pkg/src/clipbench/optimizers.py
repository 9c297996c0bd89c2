"""The four iteration schemes: GD, clipped GD, (clipped) SGD, and DP-SGD.

A run is a deterministic function of (problem, config): stochastic draws
come from one Philox stream whose 256-bit counter is reset per step, so
the randomness consumed at step ``t`` (lane 0: gradient samples, lane 1:
privacy noise) is a pure function of (seed, t, sample index) and never
depends on what other steps drew. Traces record the exact-oracle gradient
norm at every iterate, which is what the convergence statements bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import clip
from .problems import Problem

__all__ = [
    "METHODS",
    "DIVERGENCE_LIMIT",
    "DivergenceError",
    "RunConfig",
    "TraceRecord",
    "Trace",
    "privacy_noise",
    "run",
    "run_gd",
    "run_clipped_sgd",
    "run_dp_sgd",
]

METHODS = ("gd", "clipped_gd", "sgd", "clipped_sgd", "dp_sgd")
_UNCLIPPED = ("gd", "sgd")
_DETERMINISTIC = ("gd", "clipped_gd")

DIVERGENCE_LIMIT = 1e12


class DivergenceError(RuntimeError):
    """Iterate or objective exceeded the divergence guard; carries the
    trace accumulated so far in ``.trace``."""

    def __init__(self, message: str, trace: "Trace"):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True, eq=False)
class RunConfig:
    """Parameters of one optimization run.

    ``c`` must be ``math.inf`` exactly for the unclipped methods and a
    finite positive threshold for the clipped/DP ones. ``thin`` > 1
    records every thin-th iterate (the final one is always kept).
    """

    method: str
    c: float
    eta: float
    T: int
    x0: np.ndarray
    B: int = 1
    sigma_dp: float = 0.0
    seed: int = 0
    thin: int = 1

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.method in _UNCLIPPED:
            if not math.isinf(self.c):
                raise ValueError(f"{self.method} requires c = inf, got {self.c!r}")
        else:
            if not (self.c > 0 and math.isfinite(self.c)):
                raise ValueError(f"{self.method} requires finite c > 0, got {self.c!r}")
        if not (self.eta > 0 and math.isfinite(self.eta)):
            raise ValueError(f"step size must be positive and finite, got {self.eta!r}")
        if self.T < 0:
            raise ValueError(f"iteration budget must be >= 0, got {self.T!r}")
        if self.B < 1:
            raise ValueError(f"minibatch size must be >= 1, got {self.B!r}")
        if self.sigma_dp < 0 or not math.isfinite(self.sigma_dp):
            raise ValueError(f"DP noise scale must be finite and >= 0, got {self.sigma_dp!r}")
        if self.sigma_dp > 0 and self.method != "dp_sgd":
            raise ValueError("sigma_dp > 0 is only valid for dp_sgd")
        if self.thin < 1:
            raise ValueError(f"thinning stride must be >= 1, got {self.thin!r}")
        x0 = np.asarray(self.x0, dtype=float).copy()
        if x0.ndim != 1 or x0.size == 0 or not np.isfinite(x0).all():
            raise ValueError("x0 must be a finite non-empty 1-d vector")
        x0.setflags(write=False)
        object.__setattr__(self, "x0", x0)


@dataclass(frozen=True)
class TraceRecord:
    """One recorded iterate: objective, exact gradient norm, the norm of
    the update actually applied at this step, and the fraction of
    per-sample gradients that were clipped (0 after the final iterate)."""

    t: int
    f_val: float
    grad_norm: float
    applied_norm: float
    clipped_fraction: float


@dataclass(frozen=True, eq=False)
class Trace:
    """Per-iteration record of one run, stored as parallel arrays."""

    config: RunConfig
    iters: np.ndarray
    f_vals: np.ndarray
    grad_norms: np.ndarray
    applied_norms: np.ndarray
    clipped_fracs: np.ndarray
    final_point: np.ndarray
    max_per_sample_norm: float = 0.0

    @property
    def min_grad_norm(self) -> float:
        return float(self.grad_norms.min())

    @property
    def records(self) -> list[TraceRecord]:
        return [
            TraceRecord(int(t), float(f), float(g), float(a), float(cf))
            for t, f, g, a, cf in zip(
                self.iters, self.f_vals, self.grad_norms,
                self.applied_norms, self.clipped_fracs,
            )
        ]


class _StepRng:
    """Counter-based per-step random streams from a single Philox key.

    ``at_step(t, lane)`` resets the 256-bit counter to the start of block
    (t, lane), so every draw is addressed by (seed, t, lane, position)
    and replays bit-for-bit regardless of consumption elsewhere.
    """

    def __init__(self, seed: int):
        self._bg = np.random.Philox(key=int(seed) % (1 << 64))
        self.gen = np.random.Generator(self._bg)
        self._state = self._bg.state
        self._counter = np.zeros(4, dtype=np.uint64)

    def at_step(self, t: int, lane: int = 0) -> np.random.Generator:
        state = self._state
        counter = self._counter
        counter[2] = t
        counter[3] = lane
        state["state"]["counter"] = counter
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        state["uinteger"] = 0
        self._bg.state = state
        return self.gen


def privacy_noise(dim: int, sigma_dp: float, rng: np.random.Generator) -> np.ndarray:
    """Gaussian privacy noise with total expected squared norm sigma_dp^2."""
    return rng.standard_normal(dim) * (sigma_dp / math.sqrt(dim))


def _partial_trace(config, ts, fs, gs, aps, cfs, k, x, max_sample) -> Trace:
    return Trace(
        config=config,
        iters=ts[:k].copy(),
        f_vals=fs[:k].copy(),
        grad_norms=gs[:k].copy(),
        applied_norms=aps[:k].copy(),
        clipped_fracs=cfs[:k].copy(),
        final_point=x.copy(),
        max_per_sample_norm=max_sample,
    )


def _run(problem: Problem, config: RunConfig) -> Trace:
    x = config.x0.astype(float)
    problem.check_dim(x)
    method = config.method
    c, eta, T, B = config.c, config.eta, config.T, config.B
    deterministic = method in _DETERMINISTIC
    dp = method == "dp_sgd"
    rng = None if deterministic else _StepRng(config.seed)
    noise_scale = config.sigma_dp / math.sqrt(x.size) if dp else 0.0

    n_rec = len(range(0, T + 1, config.thin)) + (1 if T % config.thin else 0)
    ts = np.empty(n_rec, dtype=np.int64)
    fs = np.empty(n_rec)
    gs = np.empty(n_rec)
    aps = np.empty(n_rec)
    cfs = np.empty(n_rec)
    k = 0
    max_sample = 0.0

    value, grad, sample_grad = problem.value, problem.grad, problem.sample_grad
    for t in range(T + 1):
        f = value(x)
        g = grad(x)
        grad_norm = math.sqrt(float(g @ g))
        x_norm = math.sqrt(float(x @ x))
        if (
            not math.isfinite(f)
            or not math.isfinite(grad_norm)
            or abs(f) > DIVERGENCE_LIMIT
            or x_norm > DIVERGENCE_LIMIT
        ):
            raise DivergenceError(
                f"divergence at t={t}: f={f!r}, |x|={x_norm!r} (limit {DIVERGENCE_LIMIT:g})",
                _partial_trace(config, ts, fs, gs, aps, cfs, k, x, max_sample),
            )

        if t < T:
            if deterministic:
                applied = clip(g, c)
                frac = 1.0 if grad_norm > c else 0.0
            else:
                gen = rng.at_step(t)
                clipped_count = 0
                acc = None
                for _ in range(B):
                    s = sample_grad(x, gen)
                    if math.sqrt(float(s @ s)) > c:
                        clipped_count += 1
                    cs = clip(s, c)
                    cs_norm = math.sqrt(float(cs @ cs))
                    if cs_norm > max_sample:
                        max_sample = cs_norm
                    acc = cs.copy() if acc is None else acc + cs
                applied = acc if B == 1 else acc / B
                frac = clipped_count / B
                if dp:
                    z = rng.at_step(t, lane=1).standard_normal(x.size) * noise_scale
                    applied = applied + z
            applied_norm = math.sqrt(float(applied @ applied))
        else:
            applied_norm = 0.0
            frac = 0.0

        if t % config.thin == 0 or t == T:
            ts[k] = t
            fs[k] = f
            gs[k] = grad_norm
            aps[k] = applied_norm
            cfs[k] = frac
            k += 1

        if t < T:
            x = x - eta * applied

    return Trace(
        config=config,
        iters=ts, f_vals=fs, grad_norms=gs, applied_norms=aps, clipped_fracs=cfs,
        final_point=x, max_per_sample_norm=max_sample,
    )


def run_gd(problem: Problem, config: RunConfig) -> Trace:
    """Deterministic (clipped) gradient descent on the exact gradient."""
    if config.method not in _DETERMINISTIC:
        raise ValueError(f"run_gd handles gd/clipped_gd, got {config.method!r}")
    return _run(problem, config)


def run_clipped_sgd(problem: Problem, config: RunConfig) -> Trace:
    """(Clipped) SGD: each of the B per-sample gradients is clipped before
    averaging, matching the per-sample sensitivity discipline of DP-SGD."""
    if config.method not in ("sgd", "clipped_sgd"):
        raise ValueError(f"run_clipped_sgd handles sgd/clipped_sgd, got {config.method!r}")
    return _run(problem, config)


def run_dp_sgd(problem: Problem, config: RunConfig) -> Trace:
    """Minibatch SGD with per-sample clipping plus spherical Gaussian noise
    of total variance sigma_dp^2 added to the averaged update."""
    if config.method != "dp_sgd":
        raise ValueError(f"run_dp_sgd handles dp_sgd, got {config.method!r}")
    return _run(problem, config)


def run(problem: Problem, config: RunConfig) -> Trace:
    """Dispatch on config.method."""
    if config.method in _DETERMINISTIC:
        return run_gd(problem, config)
    if config.method == "dp_sgd":
        return run_dp_sgd(problem, config)
    return run_clipped_sgd(problem, config)
