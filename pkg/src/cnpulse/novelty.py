"""Behaviour-space novelty and two-phase novelty selection."""
from __future__ import annotations

import logging
from typing import Callable, Sequence

import numpy as np

log = logging.getLogger(__name__)


def distance(b1, b2) -> float:
    u = np.asarray(b1, dtype=float)
    v = np.asarray(b2, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"behaviour length mismatch: {u.shape} vs {v.shape}")
    return float(np.sqrt(((u - v) ** 2).sum()))


def distance_matrix(behaviors) -> np.ndarray:
    b = np.asarray(behaviors, dtype=float)
    diff = b[:, None, :] - b[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def novelty_scores(behaviors) -> np.ndarray:
    """Sum of distances from each member to every member of the pool."""
    return distance_matrix(behaviors).sum(axis=1)


def novelty_score(i: int, behaviors) -> float:
    return float(novelty_scores(behaviors)[i])


def minimum_novelty(i: int, behaviors) -> float:
    """Distance to the nearest *other* member; infinite for a singleton pool."""
    d = distance_matrix(behaviors)[i]
    others = np.delete(d, i)
    return float(others.min()) if others.size else float("inf")


def pool_size(k: int, multiplier: float, population: int) -> int:
    size = int(round(multiplier * k))
    if size > population:
        log.warning("selection pool %d exceeds population %d; clamping", size, population)
        size = population
    return max(size, k)


def novelty_select(
    behaviors,
    fitness,
    k: int,
    multiplier: float,
    base_selector: Callable[[int], Sequence[int]],
) -> list[int]:
    """Novelty selection over a population.

    ``base_selector(count)`` returns population indices of the ``count`` best
    candidates (in its preference order).  ``fitness`` is the tie-break key,
    lower is better.  The result holds k indices listed in the order the base
    selector ranked them, so ``multiplier == 1`` reproduces the base selection
    exactly.
    """
    behaviors = np.asarray(behaviors)
    fitness = np.asarray(fitness, dtype=float)
    size = pool_size(k, multiplier, len(behaviors))
    pool = list(base_selector(size))
    base_rank = {idx: r for r, idx in enumerate(pool)}

    dist = distance_matrix(behaviors[pool])
    # rounded so summation order cannot split equal scores; ties keep base order
    scores = np.round(dist.sum(axis=1), 9)
    order = sorted(range(len(pool)), key=lambda t: -scores[t])

    result = order[:k]
    for cand in order[k:]:
        result.append(cand)
        sub = dist[np.ix_(result, result)]
        np.fill_diagonal(sub, np.inf)
        min_nov = sub.min(axis=1)
        # lowest minimum novelty goes; ties drop the worse fitness, then the later entry
        victim = max(
            range(len(result)),
            key=lambda t: (-min_nov[t], fitness[pool[result[t]]], t),
        )
        del result[victim]

    chosen = [pool[t] for t in result]
    return sorted(chosen, key=base_rank.__getitem__)
