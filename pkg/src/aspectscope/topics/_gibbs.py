"""Collapsed-Gibbs inner loops.

The kernels consume a pre-generated array of uniforms (one per token),
so the sampled trajectory depends only on the caller's RNG stream; the
same functions produce identical results with or without numba.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def train_sweep(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, uniforms):
    """One full sweep over all tokens, resampling each topic assignment."""
    K = n_kw.shape[0]
    V = n_kw.shape[1]
    cum = np.empty(K, dtype=np.float64)
    for i in range(word_ids.shape[0]):
        d = doc_ids[i]
        w = word_ids[i]
        k_old = z[i]
        n_dk[d, k_old] -= 1
        n_kw[k_old, w] -= 1
        n_k[k_old] -= 1
        total = 0.0
        for k in range(K):
            # Doc-length denominator is constant across k and cancels.
            p = (n_kw[k, w] + beta) / (n_k[k] + V * beta) * (n_dk[d, k] + alpha)
            total += p
            cum[k] = total
        threshold = uniforms[i] * total
        k_new = 0
        while cum[k_new] <= threshold and k_new < K - 1:
            k_new += 1
        z[i] = k_new
        n_dk[d, k_new] += 1
        n_kw[k_new, w] += 1
        n_k[k_new] += 1


@njit(cache=True)
def fold_sweep(word_ids, z, n_dk_local, n_kw, n_k, alpha, beta, uniforms):
    """One fold-in sweep for a single document; topic-word counts stay fixed."""
    K = n_kw.shape[0]
    V = n_kw.shape[1]
    cum = np.empty(K, dtype=np.float64)
    for i in range(word_ids.shape[0]):
        w = word_ids[i]
        k_old = z[i]
        n_dk_local[k_old] -= 1
        total = 0.0
        for k in range(K):
            p = (n_kw[k, w] + beta) / (n_k[k] + V * beta) * (n_dk_local[k] + alpha)
            total += p
            cum[k] = total
        threshold = uniforms[i] * total
        k_new = 0
        while cum[k_new] <= threshold and k_new < K - 1:
            k_new += 1
        z[i] = k_new
        n_dk_local[k_new] += 1


@njit(cache=True)
def log_joint(n_dk, n_kw, n_k, n_d, alpha, beta):
    """Complete-data log joint probability of words and assignments."""
    K = n_kw.shape[0]
    V = n_kw.shape[1]
    D = n_dk.shape[0]
    total = K * (math.lgamma(V * beta) - V * math.lgamma(beta))
    for k in range(K):
        s = 0.0
        for v in range(V):
            s += math.lgamma(n_kw[k, v] + beta)
        total += s - math.lgamma(n_k[k] + V * beta)
    total += D * (math.lgamma(K * alpha) - K * math.lgamma(alpha))
    for d in range(D):
        s = 0.0
        for k in range(K):
            s += math.lgamma(n_dk[d, k] + alpha)
        total += s - math.lgamma(n_d[d] + K * alpha)
    return total
