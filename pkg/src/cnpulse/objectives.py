"""Hierarchical and composite objectives over (mistakes, layers, comparators).

All objectives are minimised.
"""
from __future__ import annotations

from dataclasses import dataclass

W_MISTAKES = 10000
W_LAYERS = 100
W_COMPARATORS = 1


@dataclass(frozen=True)
class ObjectiveParams:
    alpha1: float = 1.0
    alpha2: float = 10.0
    alpha3: float = 1.0
    alpha4: float = 10.0

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3", "alpha4"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


DEFAULT_PARAMS = ObjectiveParams()


def single_fitness(m: int, l: int, c: int) -> int:
    """``10000 m + 100 l + c``; strictly hierarchical while l, c < 100."""
    return W_MISTAKES * m + W_LAYERS * l + W_COMPARATORS * c


def composite_vector(m: int, l: int, c: int, params: ObjectiveParams = DEFAULT_PARAMS) -> tuple[float, float, float]:
    return (
        float(single_fitness(m, l, c)),
        params.alpha1 * m + params.alpha2 * l,
        params.alpha3 * m + params.alpha4 * c,
    )


def raw_vector(m: int, l: int, c: int) -> tuple[int, int, int]:
    return (m, l, c)
