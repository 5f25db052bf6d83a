"""Cutoff estimation and greedy sampling set selection via bandwidth proxies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyComplementError,
    InvalidTargetError,
    RankDeficientError,
    SingularGramError,
    ZeroSignalError,
)
from .graphs import InnerProduct, complement, q_norm, vertex_set
from .spectral import SpectralBasis

DEFAULT_PROXY_ORDER = 3


def _scaled_power(variation: np.ndarray, inner: InnerProduct, k: int) -> np.ndarray:
    """Dense k-th power of the inner-product-scaled variation operator."""
    z = np.asarray(variation, dtype=float) / inner.entries[:, None]
    return np.linalg.matrix_power(z, k)


def _check_order(k: int) -> int:
    k = int(k)
    if k < 1:
        raise ValueError("proxy order must be a positive integer")
    return k


def spectral_proxy(variation, inner: InnerProduct, x, k: int = DEFAULT_PROXY_ORDER) -> float:
    """Bandwidth estimate of a signal without an eigendecomposition.

    Applies the scaled variation operator ``k`` times and returns the k-th
    root of the weighted norm ratio. On an eigenmode this equals the mode
    frequency exactly; on mixtures it increases toward the top occupied
    frequency as ``k`` grows.

    Raises
    ------
    ZeroSignalError
        If ``x`` is the zero signal.
    """
    k = _check_order(k)
    x = np.asarray(x, dtype=float)
    ref = q_norm(x, inner)
    if ref == 0.0:
        raise ZeroSignalError("bandwidth proxy of the zero signal is undefined")
    z = x
    for _ in range(k):
        z = (variation @ z) / inner.entries
    return float((q_norm(z, inner) / ref) ** (1.0 / k))


def proxy_operator(variation, inner: InnerProduct, keep, k: int = DEFAULT_PROXY_ORDER) -> np.ndarray:
    """Restriction of the k-step operator to signals supported on ``keep``.

    Column ``j`` maps a unit impulse at ``keep[j]`` through the scaled
    operator power, expressed in coordinates where the inner product is
    Euclidean. The smallest singular value of this matrix, raised to
    ``1/k``, is the cutoff estimate of the complement of ``keep``.
    """
    k = _check_order(k)
    keep = vertex_set(keep, inner.n)
    if keep.size == 0:
        raise EmptyComplementError("the kept vertex set is empty")
    q = inner.entries
    scaled = np.sqrt(q)[:, None] * _scaled_power(variation, inner, k)
    return scaled[:, keep] / np.sqrt(q[keep])[None, :]


def proxy_gram(variation, inner: InnerProduct, k: int = DEFAULT_PROXY_ORDER) -> np.ndarray:
    """Gram matrix of the full k-step operator.

    Cutoffs of nested sampling sets only need principal submatrices of this
    matrix, so computing it once amortizes repeated cutoff evaluations.
    """
    k = _check_order(k)
    zk = _scaled_power(variation, inner, k)
    return zk.T @ (inner.entries[:, None] * zk)


@dataclass(frozen=True)
class CutoffEstimate:
    """A cutoff frequency together with the signal that attains it.

    ``minimizer`` has unit Euclidean norm and is exactly zero on the
    sampled vertices.
    """

    omega: float
    minimizer: np.ndarray

    def __post_init__(self):
        phi = np.array(self.minimizer, dtype=float)
        phi.flags.writeable = False
        object.__setattr__(self, "minimizer", phi)


def cutoff_frequency(
    variation,
    inner: InnerProduct,
    sampled,
    k: int = DEFAULT_PROXY_ORDER,
    gram: np.ndarray | None = None,
) -> CutoffEstimate:
    """Smallest proxy bandwidth among signals vanishing on ``sampled``.

    Computed through a full symmetric eigendecomposition of the Gram matrix
    of the restricted k-step operator. Pass a precomputed
    :func:`proxy_gram` result to amortize repeated evaluations over nested
    sampling sets.
    """
    k = _check_order(k)
    n = inner.n
    sampled = vertex_set(sampled, n)
    keep = complement(sampled, n)
    if keep.size == 0:
        raise EmptyComplementError("every vertex is sampled; no cutoff exists")
    q = inner.entries
    if gram is None:
        h = proxy_operator(variation, inner, keep, k)
        g = h.T @ h
    else:
        root_inv = 1.0 / np.sqrt(q[keep])
        g = gram[np.ix_(keep, keep)] * np.outer(root_inv, root_inv)
    vals, vecs = np.linalg.eigh(g)
    smallest = max(float(vals[0]), 0.0)
    omega = smallest ** (1.0 / (2.0 * k))

    phi_keep = vecs[:, 0] / np.sqrt(q[keep])
    phi_keep /= np.linalg.norm(phi_keep)
    lead = np.argmax(np.abs(phi_keep) > 1e-12)
    if phi_keep[lead] < 0.0:
        phi_keep = -phi_keep
    phi = np.zeros(n)
    phi[keep] = phi_keep
    return CutoffEstimate(omega, phi)


@dataclass(frozen=True)
class SamplingResult:
    """Vertices in selection order and the cutoff reached after each addition."""

    order: np.ndarray
    cutoffs: np.ndarray

    def __post_init__(self):
        order = np.array(self.order, dtype=np.intp)
        cutoffs = np.array(self.cutoffs, dtype=float)
        if order.ndim != 1 or order.shape != cutoffs.shape:
            raise ValueError("order and cutoffs must be 1-d and equally long")
        if np.unique(order).size != order.size:
            raise ValueError("selected vertices must be distinct")
        order.flags.writeable = False
        cutoffs.flags.writeable = False
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "cutoffs", cutoffs)

    def head(self, m: int) -> np.ndarray:
        """The first ``m`` selected vertices as a sorted index array."""
        return np.sort(self.order[:m])


def greedy_select(
    variation,
    inner: InnerProduct,
    m: int,
    k: int = DEFAULT_PROXY_ORDER,
) -> SamplingResult:
    """Grow a sampling set of size ``m`` by maximizing the cutoff estimate.

    The first vertex is chosen by scoring every singleton set exactly: the
    minimizer for the empty set is the constant kernel mode, whose entries
    carry no per-vertex information. Each subsequent vertex is the one with
    the largest magnitude in the current minimizer, ties going to the
    lowest vertex id. Deterministic for fixed inputs.

    Raises
    ------
    InvalidTargetError
        If ``m`` is not in ``[1, n)``.
    """
    k = _check_order(k)
    n = inner.n
    m = int(m)
    if not 1 <= m < n:
        raise InvalidTargetError(f"sampling set size must be in [1, {n}), got {m}")
    gram = proxy_gram(variation, inner, k)

    best_vertex = -1
    best: CutoffEstimate | None = None
    for i in range(n):
        est = cutoff_frequency(variation, inner, [i], k, gram=gram)
        if best is None or est.omega > best.omega:
            best_vertex, best = i, est

    order = [best_vertex]
    cutoffs = [best.omega]
    current = best
    while len(order) < m:
        scores = np.abs(current.minimizer)
        scores[order] = -1.0
        nxt = int(np.argmax(scores))
        order.append(nxt)
        current = cutoff_frequency(variation, inner, order, k, gram=gram)
        cutoffs.append(current.omega)
    return SamplingResult(np.asarray(order), np.asarray(cutoffs))


def e_opt_metric(basis: SpectralBasis, sampled, band: int) -> float:
    """Smallest singular value of the weighted sampled-mode matrix.

    Larger is better: its inverse bounds both the noise amplification and
    the model-mismatch amplification of reconstruction from ``sampled``
    using the first ``band`` modes.

    Raises
    ------
    RankDeficientError
        If the value falls below 1e-12, i.e. the sampling set cannot see
        the band.
    """
    band = int(band)
    sampled = vertex_set(sampled, basis.n)
    if band < 1:
        raise ValueError("band must contain at least one mode")
    if sampled.size < band:
        raise ValueError(f"need at least {band} samples, got {sampled.size}")
    rows = np.sqrt(basis.inner.entries[sampled])[:, None] * basis.modes[sampled][:, :band]
    sigma = float(np.linalg.svd(rows, compute_uv=False)[-1])
    if sigma < 1e-12:
        raise RankDeficientError(sigma)
    return sigma


def a_opt_metric(basis: SpectralBasis, sampled, band: int) -> float:
    """Trace of the inverse Gram matrix: the mean-squared-error design objective.

    Raises
    ------
    SingularGramError
        If the Gram matrix of the sampled modes is numerically singular.
    """
    band = int(band)
    if band < 1:
        raise ValueError("band must contain at least one mode")
    sampled = vertex_set(sampled, basis.n)
    u = basis.modes[sampled][:, :band]
    q_s = basis.inner.entries[sampled]
    gram = u.T @ (q_s[:, None] * u)
    w = np.linalg.eigvalsh(gram)
    if w[0] <= 1e-13 * max(float(w[-1]), 1e-300):
        raise SingularGramError(float(max(w[0], 0.0)))
    return float(np.sum(1.0 / w))
