"""Brute-force reference checks, independent of the bit-parallel evaluator."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .sortnet import Network, count_layers

MAX_PERMUTATION_LINES = 8


class OracleLimitError(ValueError):
    pass


def permutation_validity(network: Network) -> bool:
    """True iff the network sorts every permutation of ``1..n``."""
    n = network.lines
    if n > MAX_PERMUTATION_LINES:
        raise OracleLimitError(f"permutation check refused for n={n} > {MAX_PERMUTATION_LINES}")
    values = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int64)
    for a, b in network.comparators:
        lo = np.minimum(values[:, a], values[:, b])
        hi = np.maximum(values[:, a], values[:, b])
        values[:, a] = lo
        values[:, b] = hi
    return bool((np.diff(values, axis=1) >= 0).all())


@dataclass(frozen=True)
class MinimalSearch:
    found: bool
    comparators: int | None = None
    layers: int | None = None
    witness: Network | None = None


def exhaustive_minimal(n: int, max_comparators: int) -> MinimalSearch:
    """Smallest valid sorter by comparator count, then best layer count at that size.

    Enumerates comparator sequences length by length, skipping sequences with
    an immediately repeated comparator (a repeat is the identity).  Validity
    is decided on permutations, not zero-one inputs.
    """
    if n > 4 or max_comparators > 6:
        raise OracleLimitError("exhaustive search limited to n <= 4 and at most 6 comparators")
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for length in range(max_comparators + 1):
        best: Network | None = None
        best_layers = None
        for seq in itertools.product(pairs, repeat=length):
            if any(seq[i] == seq[i + 1] for i in range(length - 1)):
                continue
            net = Network(n, seq)
            if not permutation_validity(net):
                continue
            layers = count_layers(seq)
            if best_layers is None or layers < best_layers:
                best, best_layers = net, layers
        if best is not None:
            return MinimalSearch(True, length, best_layers, best)
    return MinimalSearch(False)
