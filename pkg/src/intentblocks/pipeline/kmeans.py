"""Seeded k-means with k-means++ init and medoid extraction.

Hand-rolled so that seeding, tie-breaking, and empty-cluster handling are
pinned: ties resolve to the lowest index, and an emptied cluster is re-seeded
from the point farthest from its assigned centroid.
"""

from __future__ import annotations

import numpy as np

MAX_ITER = 100
TOL = 1e-6


def _plus_plus_init(vectors: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = vectors.shape[0]
    chosen = [int(rng.integers(n))]
    while len(chosen) < k:
        d2 = np.min(
            ((vectors[:, None, :] - vectors[chosen][None, :, :]) ** 2).sum(-1), axis=1
        )
        total = float(d2.sum())
        if total <= 0.0:
            # All remaining points coincide with a centroid: take lowest unused index.
            for idx in range(n):
                if idx not in chosen:
                    chosen.append(idx)
                    break
            else:
                chosen.append(chosen[-1])
        else:
            chosen.append(int(rng.choice(n, p=d2 / total)))
    return vectors[chosen].copy()


def kmeans(
    vectors: np.ndarray,
    k: int,
    rng: np.random.Generator,
    max_iter: int = MAX_ITER,
    tol: float = TOL,
) -> tuple[np.ndarray, np.ndarray]:
    """Returns (assignments, centroids)."""
    vectors = np.asarray(vectors, dtype=np.float64)
    n = vectors.shape[0]
    if n == 0:
        raise ValueError("kmeans needs at least one vector")
    k = min(k, n)
    centroids = _plus_plus_init(vectors, k, rng)
    assign = np.zeros(n, dtype=np.int64)
    for _ in range(max_iter):
        d2 = ((vectors[:, None, :] - centroids[None, :, :]) ** 2).sum(-1)
        assign = d2.argmin(axis=1)
        new_centroids = centroids.copy()
        reseeded: set[int] = set()
        for j in range(k):
            members = vectors[assign == j]
            if len(members) > 0:
                new_centroids[j] = members.mean(axis=0)
            else:
                own = d2[np.arange(n), assign].copy()
                for used in reseeded:
                    own[used] = -np.inf
                far = int(own.argmax())
                reseeded.add(far)
                new_centroids[j] = vectors[far]
        shift = float(np.max(np.linalg.norm(new_centroids - centroids, axis=1)))
        centroids = new_centroids
        if shift <= tol:
            break
    d2 = ((vectors[:, None, :] - centroids[None, :, :]) ** 2).sum(-1)
    assign = d2.argmin(axis=1)
    return assign, centroids


def medoid_indices(
    vectors: np.ndarray, assign: np.ndarray, centroids: np.ndarray
) -> list[int | None]:
    """Per cluster, the member index closest to the centroid (None if empty)."""
    out: list[int | None] = []
    for j in range(centroids.shape[0]):
        members = np.flatnonzero(assign == j)
        if members.size == 0:
            out.append(None)
            continue
        dist = np.linalg.norm(vectors[members] - centroids[j], axis=1)
        out.append(int(members[int(dist.argmin())]))
    return out
