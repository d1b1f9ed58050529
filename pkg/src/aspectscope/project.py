"""Exact t-SNE projection of topic vectors to 2D.

This is the non-approximated algorithm: full pairwise affinities with a
per-point bandwidth binary-searched to the target perplexity, then
gradient descent on the Kullback-Leibler divergence with early
exaggeration, momentum, and adaptive per-coordinate gains. Cost is
O(N^2) in time and memory, so a configurable point cap applies.

Determinism: points are processed in paper_id-sorted order internally
and each point's initial coordinates derive from (seed, paper_id), so
the same inputs give bit-identical output regardless of row order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatchError, TrainingError

DEFAULT_PERPLEXITY = 30.0
DEFAULT_ITERATIONS = 1000
EXAGGERATION_FACTOR = 12.0
EXAGGERATION_ITERATIONS = 250
DEFAULT_LEARNING_RATE = 200.0
DEFAULT_MAX_POINTS = 20_000
MIN_POINTS = 5
_KL_RECORD_EVERY = 25
_SEARCH_STEPS = 50
_ENTROPY_TOL = 1e-5
_EPS = 1e-12


@dataclass(frozen=True)
class ProjectionConfig:
    perplexity: float = DEFAULT_PERPLEXITY
    iterations: int = DEFAULT_ITERATIONS
    exaggeration: float = EXAGGERATION_FACTOR
    learning_rate: float = DEFAULT_LEARNING_RATE
    seed: int = 0
    max_points: int = DEFAULT_MAX_POINTS
    sample_over_cap: bool = False

    def __post_init__(self):
        if self.perplexity < 2:
            raise ValueError("perplexity must be >= 2")
        if self.iterations < EXAGGERATION_ITERATIONS:
            raise ValueError(f"iterations must be >= {EXAGGERATION_ITERATIONS}")
        if self.exaggeration <= 0 or self.learning_rate <= 0:
            raise ValueError("exaggeration and learning_rate must be > 0")
        if self.max_points < MIN_POINTS:
            raise ValueError(f"max_points must be >= {MIN_POINTS}")


@dataclass(frozen=True)
class ProjectedPoint:
    paper_id: str
    x: float
    y: float
    dominant_topic: int
    title: str = ""


def _point_rng(seed: int, paper_id: str) -> np.random.Generator:
    digest = hashlib.sha256(paper_id.encode("utf-8")).digest()
    return np.random.default_rng((seed, int.from_bytes(digest[:8], "little")))


def _conditional_affinities(sq_dists: np.ndarray, perplexity: float) -> np.ndarray:
    """Row-stochastic P[i, j] with each row's entropy matched to log(perplexity)."""
    n = sq_dists.shape[0]
    target = np.log(perplexity)
    beta = np.ones(n)
    beta_lo = np.zeros(n)
    beta_hi = np.full(n, np.inf)
    # Shift each row by its smallest off-diagonal distance; the
    # normalized distribution and its entropy are unchanged.
    off = sq_dists + np.where(np.eye(n, dtype=bool), np.inf, 0.0)
    shift = off.min(axis=1)
    shift[~np.isfinite(shift)] = 0.0
    d = sq_dists - shift[:, None]
    # The diagonal is excluded from every sum; zero it so exp never
    # sees the negative -shift values there.
    np.fill_diagonal(d, 0.0)

    P = np.empty_like(sq_dists)
    for _ in range(_SEARCH_STEPS):
        P = np.exp(-d * beta[:, None])
        np.fill_diagonal(P, 0.0)
        sum_p = np.maximum(P.sum(axis=1), _EPS)
        entropy = np.log(sum_p) + beta * (d * P).sum(axis=1) / sum_p
        diff = entropy - target
        if np.all(np.abs(diff) < _ENTROPY_TOL):
            break
        too_spread = diff > _ENTROPY_TOL
        too_tight = diff < -_ENTROPY_TOL
        beta_lo[too_spread] = beta[too_spread]
        beta_hi[too_tight] = beta[too_tight]
        grow = too_spread & np.isinf(beta_hi)
        mid = too_spread | too_tight
        beta[grow] *= 2.0
        both = mid & ~grow
        beta[both] = (beta_lo[both] + beta_hi[both]) / 2.0
    return P / np.maximum(P.sum(axis=1, keepdims=True), _EPS)


def embed(
    vectors: np.ndarray, paper_ids: Sequence[str], config: ProjectionConfig
) -> tuple[np.ndarray, tuple[tuple[int, float], ...]]:
    """2D embedding of *vectors*, plus (iteration, KL divergence) samples.

    Row i of the result corresponds to row i of the input. The embedding
    is centered: its centroid is the origin.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    n = vectors.shape[0]
    if n != len(paper_ids):
        raise DimensionMismatchError("one paper_id per vector row required")
    if len(set(paper_ids)) != n:
        raise ValueError("paper_ids must be unique")
    if not np.all(np.isfinite(vectors)):
        raise ValueError("vectors must be finite")

    # Canonical processing order: everything downstream sees the same
    # matrices no matter how the caller ordered the rows.
    order = sorted(range(n), key=lambda i: paper_ids[i])
    X = vectors[order]
    ids = [paper_ids[i] for i in order]

    sq_norms = (X * X).sum(axis=1)
    sq_dists = np.maximum(sq_norms[:, None] + sq_norms[None, :] - 2.0 * X @ X.T, 0.0)

    perplexity = min(config.perplexity, (n - 1) / 3.0)
    perplexity = max(perplexity, 2.0)
    P_cond = _conditional_affinities(sq_dists, perplexity)
    P = (P_cond + P_cond.T) / (2.0 * n)
    P = np.maximum(P, _EPS)

    Y = np.empty((n, 2))
    for i, paper_id in enumerate(ids):
        Y[i] = _point_rng(config.seed, paper_id).normal(0.0, 1e-4, 2)

    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)
    history: list[tuple[int, float]] = []
    for it in range(1, config.iterations + 1):
        y_sq = (Y * Y).sum(axis=1)
        num = 1.0 / (1.0 + np.maximum(y_sq[:, None] + y_sq[None, :] - 2.0 * Y @ Y.T, 0.0))
        np.fill_diagonal(num, 0.0)
        Q = np.maximum(num / num.sum(), _EPS)

        p_eff = P * config.exaggeration if it <= EXAGGERATION_ITERATIONS else P
        L = (p_eff - Q) * num
        grad = 4.0 * (L.sum(axis=1)[:, None] * Y - L @ Y)

        momentum = 0.5 if it <= EXAGGERATION_ITERATIONS else 0.8
        same_sign = np.sign(grad) == np.sign(velocity)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        np.maximum(gains, 0.01, out=gains)
        velocity = momentum * velocity - config.learning_rate * gains * grad
        Y += velocity
        Y -= Y.mean(axis=0)

        if it % _KL_RECORD_EVERY == 0 or it == config.iterations:
            history.append((it, float((P * np.log(P / Q)).sum())))

    inverse = np.empty(n, dtype=np.intp)
    inverse[order] = np.arange(n)
    return Y[inverse], tuple(history)


def project(
    theta: np.ndarray,
    paper_ids: Sequence[str],
    config: ProjectionConfig | None = None,
    titles: Mapping[str, str] | None = None,
) -> list[ProjectedPoint]:
    """Project documents' topic vectors to 2D scatter points.

    Output order matches input order. Above ``config.max_points`` the
    call fails unless ``sample_over_cap`` is set, in which case a
    seed-deterministic sample of max_points documents is projected.
    """
    if config is None:
        config = ProjectionConfig()
    theta = np.asarray(theta, dtype=np.float64)
    paper_ids = list(paper_ids)
    n = theta.shape[0]
    if n < MIN_POINTS:
        raise TrainingError("too few documents to project")
    if n > config.max_points:
        if not config.sample_over_cap:
            raise TrainingError(
                f"too many documents to project ({n} > cap {config.max_points}); "
                "enable sampling or raise the cap"
            )
        canonical = sorted(range(n), key=lambda i: paper_ids[i])
        rng = np.random.default_rng(config.seed)
        chosen = rng.choice(n, size=config.max_points, replace=False)
        keep = sorted(canonical[i] for i in chosen)
        theta = theta[keep]
        paper_ids = [paper_ids[i] for i in keep]

    coords, _ = embed(theta, paper_ids, config)
    dominant = np.argmax(theta, axis=1)
    return [
        ProjectedPoint(
            paper_id=pid,
            x=float(coords[i, 0]),
            y=float(coords[i, 1]),
            dominant_topic=int(dominant[i]),
            title=titles.get(pid, "") if titles is not None else "",
        )
        for i, pid in enumerate(paper_ids)
    ]
