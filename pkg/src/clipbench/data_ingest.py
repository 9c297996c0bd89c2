"""LIBSVM-format dataset parsing and dataset-level smoothness estimates.

Datasets are immutable after construction. Feature indices are 1-based as
in the file format; dense materialization maps index ``i`` to column
``i - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

__all__ = [
    "ParseError",
    "SparseRow",
    "Dataset",
    "parse_libsvm",
    "serialize_libsvm",
    "estimate_L",
    "spectral_norm_sq",
    "subsample",
    "synthesize_logistic_dataset",
    "bundled_dataset_path",
]

_POSITIVE_LABELS = {"+1", "1"}
_NEGATIVE_LABELS = {"-1", "0"}


class ParseError(ValueError):
    """Malformed LIBSVM input; the message carries the 1-based line number."""


@dataclass(frozen=True)
class SparseRow:
    """One sparse feature row: strictly increasing 1-based indices."""

    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.int64)
        val = np.asarray(self.values, dtype=float)
        if idx.shape != val.shape or idx.ndim != 1:
            raise ValueError("indices and values must be 1-d and the same length")
        if idx.size and (idx[0] < 1 or np.any(np.diff(idx) <= 0)):
            raise ValueError("indices must be strictly increasing and >= 1")
        if not np.isfinite(val).all():
            raise ValueError("feature values must be finite")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRow):
            return NotImplemented
        return np.array_equal(self.indices, other.indices) and np.array_equal(
            self.values, other.values
        )


@dataclass(frozen=True)
class Dataset:
    """Parsed dataset: sparse rows plus +/-1 labels."""

    rows: tuple[SparseRow, ...]
    labels: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "labels", labels)
        if len(self.rows) != labels.size or len(self.rows) < 1:
            raise ValueError("need one label per row and at least one row")
        if not np.isin(labels, (-1, 1)).all():
            raise ValueError("labels must be +1 or -1")
        max_idx = max((int(r.indices[-1]) for r in self.rows if r.indices.size), default=0)
        if self.dim < max_idx:
            raise ValueError(f"dim {self.dim} smaller than max feature index {max_idx}")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.labels, other.labels)
            and self.rows == other.rows
        )

    def to_dense(self) -> np.ndarray:
        """Materialize the n x dim feature matrix (float64)."""
        A = np.zeros((self.n, self.dim))
        for i, row in enumerate(self.rows):
            A[i, row.indices - 1] = row.values
        return A


def _parse_label(token: str, lineno: int) -> int:
    if token in _POSITIVE_LABELS:
        return 1
    if token in _NEGATIVE_LABELS:
        return -1
    raise ParseError(f"line {lineno}: unmappable label {token!r} (expected +1/1/-1/0)")


def _parse_feature(token: str, lineno: int) -> tuple[int, float]:
    idx_s, sep, val_s = token.partition(":")
    if not sep:
        raise ParseError(f"line {lineno}: malformed feature token {token!r}")
    try:
        idx = int(idx_s)
        val = float(val_s)
    except ValueError:
        raise ParseError(f"line {lineno}: malformed feature token {token!r}") from None
    if idx < 1:
        raise ParseError(f"line {lineno}: feature index must be >= 1, got {idx}")
    if not math.isfinite(val):
        raise ParseError(f"line {lineno}: non-finite feature value in {token!r}")
    return idx, val


def parse_libsvm(source: str | Iterable[str]) -> Dataset:
    """Parse LIBSVM text ("label idx:val idx:val ...", one sample per line).

    Labels +1/1 map to +1 and -1/0 map to -1; anything else is an error.
    Blank lines and lines starting with ``#`` are skipped. Errors report
    the offending 1-based line number.
    """
    if isinstance(source, str):
        source = source.splitlines()
    rows: list[SparseRow] = []
    labels: list[int] = []
    dim = 0
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        labels.append(_parse_label(tokens[0], lineno))
        indices = []
        values = []
        prev = 0
        for token in tokens[1:]:
            idx, val = _parse_feature(token, lineno)
            if idx <= prev:
                raise ParseError(
                    f"line {lineno}: feature indices not strictly increasing ({idx} after {prev})"
                )
            prev = idx
            indices.append(idx)
            values.append(val)
        rows.append(SparseRow(np.array(indices, dtype=np.int64), np.array(values)))
        dim = max(dim, prev)
    if not rows:
        raise ParseError("line 0: no data rows found")
    return Dataset(tuple(rows), np.array(labels, dtype=np.int64), dim)


def serialize_libsvm(ds: Dataset) -> str:
    """Inverse of :func:`parse_libsvm`; values use shortest round-trip decimals."""
    lines = []
    for row, label in zip(ds.rows, ds.labels):
        parts = ["+1" if label > 0 else "-1"]
        parts.extend(f"{int(idx)}:{float(val)!r}" for idx, val in zip(row.indices, row.values))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def spectral_norm_sq(A: np.ndarray, iters: int = 50, tol: float = 1e-8) -> float:
    """Largest eigenvalue of ``A.T @ A`` by power iteration.

    Deterministic: starts from the normalized all-ones vector and runs at
    most ``iters`` Rayleigh-quotient refinements.
    """
    if A.size == 0:
        return 0.0
    d = A.shape[1]
    v = np.full(d, 1.0 / math.sqrt(d))
    lam = 0.0
    for _ in range(iters):
        w = A.T @ (A @ v)
        norm_w = math.sqrt(float(w @ w))
        if norm_w == 0.0:
            return 0.0
        v = w / norm_w
        lam_new = float(v @ (A.T @ (A @ v)))
        if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            return lam_new
        lam = lam_new
    return lam


def estimate_L(ds: Dataset) -> float:
    """Logistic-loss smoothness constant ``lambda_max(A^T A) / (4 n)``.

    Upper-bounds the spectral norm of the (unregularized) logistic Hessian
    ``(1/n) A^T D A`` at any point, since the diagonal weights never
    exceed 1/4.
    """
    if ds.dim == 0:
        return 0.0
    return spectral_norm_sq(ds.to_dense()) / (4.0 * ds.n)


def subsample(ds: Dataset, k: int, seed: int) -> Dataset:
    """Deterministic k-row sample without replacement, original order kept."""
    if not 1 <= k <= ds.n:
        raise ValueError(f"k must be in [1, {ds.n}], got {k}")
    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(ds.n, size=k, replace=False))
    rows = tuple(ds.rows[i] for i in picked)
    return Dataset(rows, ds.labels[picked], ds.dim)


def synthesize_logistic_dataset(
    n: int = 500,
    dim: int = 60,
    nnz: int = 10,
    flip: float = 0.08,
    value_scale: float = 0.06,
    pos_frac: float = 0.5,
    seed: int = 7,
) -> Dataset:
    """Build a sparse classification dataset for offline logistic experiments.

    Stands in for a LIBSVM distribution when no network is available: rows
    get ~``nnz`` active features of value ``value_scale``, labels come from
    a planted weight vector (thresholded at the ``pos_frac`` quantile of
    the noisy margins) with a ``flip`` fraction of label noise so the data
    stays non-separable. The defaults are the bundled dataset's recipe.
    """
    if not (n >= 1 and dim >= 1 and 1 <= nnz <= dim):
        raise ValueError("bad synthetic dataset shape")
    if not (0 <= flip < 0.5 and 0 < pos_frac < 1 and value_scale > 0):
        raise ValueError("bad synthetic dataset parameters")
    rng = np.random.default_rng(seed)
    w_true = rng.normal(0.0, 1.0, size=dim)
    rows = []
    margins = np.empty(n)
    for i in range(n):
        k = max(1, min(dim, int(rng.poisson(nnz))))
        idx = np.sort(rng.choice(dim, size=k, replace=False)) + 1
        rows.append(SparseRow(idx, np.full(k, float(value_scale))))
        margins[i] = w_true[idx - 1].sum() + rng.normal(0.0, 0.5)
    threshold = np.quantile(margins, 1.0 - pos_frac)
    labels = np.where(margins > threshold, 1, -1)
    flips = rng.random(n) < flip
    labels = np.where(flips, -labels, labels)
    return Dataset(tuple(rows), labels.astype(np.int64), dim)


def bundled_dataset_path() -> Path:
    """Path of the dataset file shipped with the package."""
    return Path(__file__).with_name("data") / "synth_logistic_500.libsvm"
