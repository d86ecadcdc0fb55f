"""Sorting-network genome: representation, evaluation and variation operators."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels

log = logging.getLogger(__name__)

MAX_COMPARATORS = 99
MAX_LINES = 24

Comparator = tuple[int, int]


class ContractError(ValueError):
    """An operation was called outside its precondition."""


@dataclass(frozen=True)
class Network:
    """Comparators applied in order; after ``(a, b)`` line a holds the smaller value."""

    lines: int
    comparators: tuple[Comparator, ...] = ()

    def __post_init__(self):
        if not 2 <= self.lines <= MAX_LINES:
            raise ContractError(f"line count must be in [2, {MAX_LINES}], got {self.lines}")
        comps = tuple((int(a), int(b)) for a, b in self.comparators)
        for a, b in comps:
            if not 0 <= a < b < self.lines:
                raise ContractError(f"comparator ({a}, {b}) invalid for {self.lines} lines")
        if len(comps) > MAX_COMPARATORS:
            raise ContractError(f"{len(comps)} comparators exceeds cap {MAX_COMPARATORS}")
        object.__setattr__(self, "comparators", comps)

    def __len__(self) -> int:
        return len(self.comparators)

    def with_comparators(self, comparators) -> "Network":
        return Network(self.lines, tuple(comparators))


@dataclass(frozen=True)
class EvalResult:
    mistakes: int
    layers: int
    comparators: int
    behavior: tuple[int, ...] = field(repr=False)

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.mistakes, self.layers, self.comparators)


def apply(network: Network, values: Sequence) -> tuple[list, list[int]]:
    """Run one input through the network; returns the output and per-line swap counts."""
    if len(values) != network.lines:
        raise ContractError(f"input has {len(values)} values, network has {network.lines} lines")
    out = list(values)
    counts = [0] * network.lines
    for a, b in network.comparators:
        if out[a] > out[b]:
            out[a], out[b] = out[b], out[a]
            counts[a] += 1
            counts[b] += 1
    return out, counts


def count_layers(comparators: Sequence[Comparator], n: int | None = None) -> int:
    # n is accepted for interface symmetry; the greedy rule needs only the lines touched
    layers = 0
    touched: set[int] = set()
    for a, b in comparators:
        if not layers or a in touched or b in touched:
            layers += 1
            touched = set()
        touched.add(a)
        touched.add(b)
    return layers


def evaluate_many(networks: Sequence[Network]) -> list[EvalResult]:
    """Evaluate networks (grouped by line count) over all 2^n zero-one inputs."""
    results: list[EvalResult | None] = [None] * len(networks)
    by_lines: dict[int, list[int]] = {}
    for idx, net in enumerate(networks):
        by_lines.setdefault(net.lines, []).append(idx)
    for n, idxs in by_lines.items():
        mistakes, counts = _kernels.evaluate_batch([list(networks[i].comparators) for i in idxs], n)
        for row, i in enumerate(idxs):
            net = networks[i]
            results[i] = EvalResult(
                mistakes=int(mistakes[row]),
                layers=count_layers(net.comparators),
                comparators=len(net),
                behavior=tuple(int(v) for v in counts[row]),
            )
    return results  # type: ignore[return-value]


def evaluate(network: Network) -> EvalResult:
    return evaluate_many([network])[0]


def evaluate_naive(network: Network) -> EvalResult:
    """Per-pattern scalar reference for :func:`evaluate`; exponentially slower."""
    n = network.lines
    mistakes = 0
    behavior = [0] * n
    for p in range(1 << n):
        out, counts = apply(network, [(p >> i) & 1 for i in range(n)])
        if any(out[i] > out[i + 1] for i in range(n - 1)):
            mistakes += 1
        for i, c in enumerate(counts):
            behavior[i] += c
    return EvalResult(mistakes, count_layers(network.comparators), len(network), tuple(behavior))


# -- variation operators ----------------------------------------------------
# The *_at forms are deterministic; the rng forms draw their arguments.


def random_comparator(n: int, rng: np.random.Generator) -> Comparator:
    a, b = rng.choice(n, size=2, replace=False)
    return (int(min(a, b)), int(max(a, b)))


def insert_at(network: Network, pos: int, comparator: Comparator) -> Network:
    if len(network) >= MAX_COMPARATORS:
        log.debug("insert skipped: network already has %d comparators", len(network))
        return network
    comps = list(network.comparators)
    comps.insert(pos, comparator)
    return network.with_comparators(comps)


def remove_at(network: Network, pos: int) -> Network:
    comps = list(network.comparators)
    del comps[pos]
    return network.with_comparators(comps)


def swap_at(network: Network, i: int, j: int) -> Network:
    if i == j:
        raise ContractError("swap positions must be distinct")
    comps = list(network.comparators)
    comps[i], comps[j] = comps[j], comps[i]
    return network.with_comparators(comps)


def crossover_at(parent_a: Network, parent_b: Network, cut_a: int, cut_b: int) -> Network:
    if parent_a.lines != parent_b.lines:
        raise ContractError(f"crossover of {parent_a.lines}-line and {parent_b.lines}-line networks")
    child = parent_a.comparators[:cut_a] + parent_b.comparators[cut_b:]
    return parent_a.with_comparators(child[:MAX_COMPARATORS])


def mutate_add(network: Network, rng: np.random.Generator) -> Network:
    if len(network) >= MAX_COMPARATORS:
        log.debug("mutate_add is a no-op at the comparator cap")
        return network
    comp = random_comparator(network.lines, rng)
    pos = int(rng.integers(0, len(network) + 1))
    return insert_at(network, pos, comp)


def mutate_remove(network: Network, rng: np.random.Generator) -> Network:
    if not network.comparators:
        return network
    return remove_at(network, int(rng.integers(0, len(network))))


def mutate_swap(network: Network, rng: np.random.Generator) -> Network:
    if len(network) < 2:
        return network
    i, j = rng.choice(len(network), size=2, replace=False)
    return swap_at(network, int(i), int(j))


def crossover(parent_a: Network, parent_b: Network, rng: np.random.Generator) -> Network:
    if parent_a.lines != parent_b.lines:
        raise ContractError(f"crossover of {parent_a.lines}-line and {parent_b.lines}-line networks")
    cut_a = int(rng.integers(0, len(parent_a) + 1))
    cut_b = int(rng.integers(0, len(parent_b) + 1))
    return crossover_at(parent_a, parent_b, cut_a, cut_b)


def random_network(n: int, size: int, rng: np.random.Generator) -> Network:
    return Network(n, tuple(random_comparator(n, rng) for _ in range(size)))


# -- text format -------------------------------------------------------------


def export_network(network: Network) -> str:
    rows = [f"n={network.lines}"] + [f"{a},{b}" for a, b in network.comparators]
    return "\n".join(rows) + "\n"


def parse_network(text: str) -> Network:
    rows = text.splitlines()
    if not rows or not rows[0].startswith("n="):
        raise ContractError("network text must start with a 'n=<lines>' header")
    try:
        n = int(rows[0][2:])
        comps = []
        for row in rows[1:]:
            if not row.strip():
                continue
            a, b = row.split(",")
            comps.append((int(a), int(b)))
    except ValueError as exc:
        raise ContractError(f"malformed network text: {exc}") from exc
    return Network(n, tuple(comps))
