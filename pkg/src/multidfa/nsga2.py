"""NSGA-II survivor selection for minimization problems."""
from __future__ import annotations

from typing import Sequence

import numpy as np


def dominates(u, v) -> bool:
    """True iff u is no worse than v everywhere and strictly better somewhere."""
    return all(a <= b for a, b in zip(u, v)) and any(a < b for a, b in zip(u, v))


def fast_non_dominated_sort(objectives) -> list[list[int]]:
    """Indices grouped into Pareto fronts, best front first.

    Within a front, indices keep their input order.
    """
    F = np.asarray(objectives, dtype=float)
    n = len(F)
    if n == 0:
        return []
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    counts = dom.sum(axis=0)
    fronts = []
    current = np.flatnonzero(counts == 0)
    while current.size:
        fronts.append(current.tolist())
        counts = counts - dom[current].sum(axis=0)
        counts[current] = -1
        current = np.flatnonzero(counts == 0)
    return fronts


def crowding_distance(objectives) -> np.ndarray:
    F = np.asarray(objectives, dtype=float)
    n, m = F.shape
    dist = np.zeros(n)
    if n <= 2:
        dist[:] = np.inf
        return dist
    for j in range(m):
        # ties on objective j fall back to lexicographic order of the point
        keys = [F[:, c] for c in reversed(range(m)) if c != j] + [F[:, j]]
        order = np.lexsort(keys)
        col = F[order, j]
        dist[order[0]] = dist[order[-1]] = np.inf
        span = col[-1] - col[0]
        if span == 0:
            continue
        dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist


def rank_and_crowding(objectives) -> tuple[np.ndarray, np.ndarray]:
    F = np.asarray(objectives, dtype=float)
    rank = np.zeros(len(F), dtype=int)
    crowd = np.zeros(len(F))
    for r, front in enumerate(fast_non_dominated_sort(F)):
        rank[front] = r
        crowd[front] = crowding_distance(F[front])
    return rank, crowd


def select_indices(objectives, target_size: int) -> list[int]:
    """Indices of the ``target_size`` survivors.

    Fronts are taken whole while they fit.  The front that overflows is cut
    by descending crowding distance, ties broken by the objective values and
    then by input position.
    """
    F = np.asarray(objectives, dtype=float)
    if target_size > len(F):
        raise ValueError(f"cannot select {target_size} out of {len(F)}")
    chosen = []
    for front in fast_non_dominated_sort(F):
        if len(chosen) + len(front) <= target_size:
            chosen.extend(front)
            if len(chosen) == target_size:
                break
            continue
        crowd = crowding_distance(F[front])
        ranked = sorted(range(len(front)),
                        key=lambda i: (-crowd[i], *F[front[i]], front[i]))
        chosen.extend(front[i] for i in ranked[: target_size - len(chosen)])
        break
    return chosen


def nsga2_select(scored: Sequence[tuple], target_size: int) -> list[tuple]:
    """Select from ``(individual, fitness)`` pairs, fitness being a tuple to minimize."""
    idx = select_indices([tuple(f) for _, f in scored], target_size)
    return [scored[i] for i in idx]
