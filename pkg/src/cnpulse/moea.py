"""NSGA-II machinery: dominance, fast non-dominated sorting, crowding, elite truncation.

Objective vectors are minimised.  Populations are ``(N, M)`` array-likes; every
function returns population *indices* so callers keep their own individuals.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np


def dominates(u: Sequence[float], v: Sequence[float]) -> bool:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    strictly = False
    for x, y in zip(u, v):
        if x > y:
            return False
        if x < y:
            strictly = True
    return strictly


def dominance_matrix(objs: np.ndarray) -> np.ndarray:
    """``D[i, j]`` is True iff individual i dominates individual j."""
    le = (objs[:, None, :] <= objs[None, :, :]).all(axis=2)
    lt = (objs[:, None, :] < objs[None, :, :]).any(axis=2)
    return le & lt


def non_dominated_sort(objs) -> list[list[int]]:
    """Fast non-dominated sort; each front lists indices in ascending order."""
    objs = np.asarray(objs, dtype=float)
    if objs.ndim != 2 or len(objs) == 0:
        raise ValueError("need a non-empty (N, M) objective array")
    dom = dominance_matrix(objs)
    dominated_count = dom.sum(axis=0)
    fronts: list[list[int]] = []
    current = np.flatnonzero(dominated_count == 0)
    while current.size:
        fronts.append([int(i) for i in current])
        dominated_count = dominated_count - dom[current].sum(axis=0)
        dominated_count[current] = -1
        current = np.flatnonzero(dominated_count == 0)
    return fronts


def crowding_distance(front_objs) -> np.ndarray:
    """Crowding distance of each member of one front.

    Per objective the front is ordered by that objective (ties broken by the
    remaining objectives, then position); both ends get infinity and interior
    members accumulate the normalised gap between their neighbours.  An
    objective with zero range contributes nothing.
    """
    f = np.asarray(front_objs, dtype=float)
    size, n_obj = f.shape
    dist = np.zeros(size)
    if size <= 2:
        dist[:] = np.inf
        return dist
    for j in range(n_obj):
        keys = [np.arange(size)] + [f[:, k] for k in reversed(range(n_obj)) if k != j] + [f[:, j]]
        order = np.lexsort(keys)
        col = f[order, j]
        dist[order[0]] = dist[order[-1]] = np.inf
        span = col[-1] - col[0]
        if span > 0:
            dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist


def select_elites(objs, k: int) -> list[int]:
    """Indices of k elites: whole fronts in rank order, the last split by crowding.

    Within the split front, higher crowding wins and equal crowding goes to the
    lower index.  Returned order: rank, then crowding (descending), then index.
    """
    objs = np.asarray(objs, dtype=float)
    if not 0 <= k <= len(objs):
        raise ValueError(f"cannot select {k} elites from {len(objs)} individuals")
    chosen: list[int] = []
    for front in non_dominated_sort(objs):
        if len(chosen) >= k:
            break
        cd = crowding_distance(objs[front])
        ranked = sorted(range(len(front)), key=lambda t: (-cd[t], front[t]))
        chosen.extend(front[t] for t in ranked[: k - len(chosen)])
    return chosen
