"""Bit-parallel comparator-network kernels.

Every binary input pattern of an n-line network is one bit position in a
stream of uint64 words, one stream per line.  A comparator (a, b) on packed
words is ``min = x[a] & x[b]``, ``max = x[a] | x[b]`` and it swaps exactly the
patterns in ``x[a] & ~x[b]``.

Two interchangeable backends evaluate a batch of networks:

* ``evaluate_batch_numba`` -- an ``@njit`` loop over networks/comparators/words
* ``evaluate_batch_numpy`` -- the same computation vectorised across networks
  with numpy, looping only over comparator positions

Set ``CNPULSE_NO_NUMBA=1`` to force the numpy path (also used automatically
when numba cannot be imported).
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("CNPULSE_NO_NUMBA", "") in ("", "0")

_LOW_MASKS = np.array(
    [
        0xAAAAAAAAAAAAAAAA,
        0xCCCCCCCCCCCCCCCC,
        0xF0F0F0F0F0F0F0F0,
        0xFF00FF00FF00FF00,
        0xFFFF0000FFFF0000,
        0xFFFFFFFF00000000,
    ],
    dtype=np.uint64,
)


def word_count(n: int) -> int:
    return max(1, (1 << n) // 64)


def initial_words(n: int) -> np.ndarray:
    """Packed zero-one patterns, shape ``(n, W)``: bit p of line i is bit i of p."""
    w = word_count(n)
    x = np.zeros((n, w), dtype=np.uint64)
    word_idx = np.arange(w, dtype=np.uint64)
    for i in range(n):
        if i < 6:
            x[i, :] = _LOW_MASKS[i]
        else:
            on = ((word_idx >> np.uint64(i - 6)) & np.uint64(1)).astype(bool)
            x[i, on] = np.uint64(0xFFFFFFFFFFFFFFFF)
    if n < 6:
        # padding bits become all-zero patterns: sorted and swap-free
        x &= np.uint64((1 << (1 << n)) - 1)
    return x


def pack_networks(networks_cmp: list[list[tuple[int, int]]]) -> tuple[np.ndarray, np.ndarray]:
    """Pad comparator lists into ``(N, Cmax)`` index arrays.

    Padding uses the comparator (0, 0), which is an exact no-op on packed words.
    """
    count = len(networks_cmp)
    cmax = max((len(c) for c in networks_cmp), default=0)
    a = np.zeros((count, max(cmax, 1)), dtype=np.int64)
    b = np.zeros((count, max(cmax, 1)), dtype=np.int64)
    for k, comps in enumerate(networks_cmp):
        if comps:
            arr = np.asarray(comps, dtype=np.int64)
            a[k, : len(comps)] = arr[:, 0]
            b[k, : len(comps)] = arr[:, 1]
    return a, b


def evaluate_batch_numpy(
    a: np.ndarray, b: np.ndarray, init: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    count, cmax = a.shape
    n, w = init.shape
    x = np.broadcast_to(init, (count, n, w)).copy()
    counts = np.zeros((count, n), dtype=np.int64)
    rows = np.arange(count)
    for j in range(cmax):
        ia = a[:, j]
        ib = b[:, j]
        xa = x[rows, ia]
        xb = x[rows, ib]
        swaps = np.bitwise_count(xa & ~xb).sum(axis=1, dtype=np.int64)
        x[rows, ia] = xa & xb
        x[rows, ib] = xa | xb
        np.add.at(counts, (rows, ia), swaps)
        np.add.at(counts, (rows, ib), swaps)
    unsorted = np.zeros((count, w), dtype=np.uint64)
    for i in range(n - 1):
        unsorted |= x[:, i, :] & ~x[:, i + 1, :]
    mistakes = np.bitwise_count(unsorted).sum(axis=1, dtype=np.int64)
    return mistakes, counts


def _popcount64(v):
    v = v - ((v >> np.uint64(1)) & np.uint64(0x5555555555555555))
    v = (v & np.uint64(0x3333333333333333)) + ((v >> np.uint64(2)) & np.uint64(0x3333333333333333))
    v = (v + (v >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (v * np.uint64(0x0101010101010101)) >> np.uint64(56)


def _evaluate_batch_loops(a, b, lengths, init):
    count = a.shape[0]
    n, w = init.shape
    mistakes = np.zeros(count, dtype=np.int64)
    counts = np.zeros((count, n), dtype=np.int64)
    x = np.empty((n, w), dtype=np.uint64)
    for k in range(count):
        x[:, :] = init
        for j in range(lengths[k]):
            ia = a[k, j]
            ib = b[k, j]
            total = 0
            for t in range(w):
                xa = x[ia, t]
                xb = x[ib, t]
                total += _popcount64(xa & ~xb)
                x[ia, t] = xa & xb
                x[ib, t] = xa | xb
            counts[k, ia] += total
            counts[k, ib] += total
        bad = 0
        for t in range(w):
            u = np.uint64(0)
            for i in range(n - 1):
                u |= x[i, t] & ~x[i + 1, t]
            bad += _popcount64(u)
        mistakes[k] = bad
    return mistakes, counts


if HAVE_NUMBA:
    _popcount64 = njit(cache=True, inline="always")(_popcount64)
    _evaluate_batch_nb = njit(cache=True)(_evaluate_batch_loops)

    def evaluate_batch_numba(
        a: np.ndarray, b: np.ndarray, lengths: np.ndarray, init: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        return _evaluate_batch_nb(a, b, lengths, init)
else:  # pragma: no cover
    evaluate_batch_numba = None


def evaluate_batch(networks_cmp: list[list[tuple[int, int]]], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Mistake counts ``(N,)`` and per-line swap counts ``(N, n)`` for a batch."""
    init = initial_words(n)
    a, b = pack_networks(networks_cmp)
    if USE_NUMBA:
        lengths = np.array([len(c) for c in networks_cmp], dtype=np.int64)
        return evaluate_batch_numba(a, b, lengths, init)
    return evaluate_batch_numpy(a, b, init)
