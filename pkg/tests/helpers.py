"""Shared instance builders and independent oracles for the test suite."""

import numpy as np

import graphsampling as gs


def geometric_instance(seed, n=12, side=10.0, kernel_sigma=1.0):
    """Point cloud, kernel graph, and Laplacian for one seeded instance."""
    cfg = gs.GeoConfig(n=n, side=side, kernel_sigma=kernel_sigma, seed=seed)
    rng = np.random.default_rng(seed)
    pc = gs.sample_points(cfg, rng)
    g = gs.gaussian_kernel_graph(pc, kernel_sigma)
    return pc, g, gs.combinatorial_laplacian(g)


def all_inners(g, pc):
    """The three inner products used throughout the experiments."""
    return {
        "identity": gs.identity_inner_product(g.n),
        "degree": gs.degree_matrix(g),
        "voronoi": gs.voronoi_areas(pc),
    }


def cluster_cloud(seed, per=13, spread=0.35, side=10.0):
    """Three tight blobs in the square: a graph with a wide spectral gap."""
    rng = np.random.default_rng(seed)
    centers = np.array([[2.0, 2.0], [8.0, 2.0], [5.0, 8.0]])
    pts = np.concatenate([c + spread * rng.standard_normal((per, 2)) for c in centers])
    return gs.PointCloud(np.clip(pts, 0.0, side), side), rng


def random_weights(rng, n):
    """Symmetric nonnegative weight matrix with zero diagonal."""
    w = rng.uniform(0.0, 1.0, size=(n, n))
    w = 0.5 * (w + w.T)
    np.fill_diagonal(w, 0.0)
    return w


def laplacian_quadratic_oracle(w, x):
    """Explicit double sum ``0.5 * sum_ij w_ij (x_i - x_j)^2``."""
    n = w.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += w[i, j] * (x[i] - x[j]) ** 2
    return 0.5 * total


def brute_force_singleton(lap, inner, k):
    """Exhaustive argmax of the singleton cutoff, via explicit powers and SVD."""
    n = inner.n
    q = inner.entries
    zk = np.linalg.matrix_power(lap / q[:, None], k)
    scaled = np.sqrt(q)[:, None] * zk
    best, best_val = -1, -1.0
    for i in range(n):
        keep = np.array([j for j in range(n) if j != i])
        h = scaled[:, keep] / np.sqrt(q[keep])[None, :]
        omega = np.linalg.svd(h, compute_uv=False)[-1] ** (1.0 / k)
        if omega > best_val:
            best, best_val = i, omega
    return best, best_val


def explicit_cutoff(lap, inner, sampled, k):
    """Cutoff via explicit dense matrices and SVD, independent of the library path."""
    n = inner.n
    q = inner.entries
    keep = np.array(sorted(set(range(n)) - set(int(s) for s in sampled)))
    zk = np.linalg.matrix_power(lap / q[:, None], k)
    h = (np.sqrt(q)[:, None] * zk)[:, keep] / np.sqrt(q[keep])[None, :]
    return np.linalg.svd(h, compute_uv=False)[-1] ** (1.0 / k)
