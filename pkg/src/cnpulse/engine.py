"""Generational loop with five selection modes and the novelty pulsation schedule."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from . import moea, novelty, sortnet
from .objectives import DEFAULT_PARAMS, ObjectiveParams, composite_vector, raw_vector, single_fitness

MODES = ("single", "nsga2", "composite", "composite-novelty", "pulsation")
PHASES = ("off-first", "on-first")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    lines: int = 4
    population_size: int = 100
    elite_fraction: float = 0.10
    selection_multiplier: float = 2.0
    pulsation_period: int = 5
    generations: int = 500
    mode: str = "pulsation"
    params: ObjectiveParams = DEFAULT_PARAMS
    seed: int = 0
    p_add: float = 0.4
    p_remove: float = 0.3
    p_swap: float = 0.3
    p_crossover: float = 0.9
    init_range: tuple[int, int] | None = None
    target_comparators: int | None = None
    pulse_phase: str = "off-first"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.pulse_phase not in PHASES:
            raise ConfigError(f"pulse phase must be one of {PHASES}")
        if not 2 <= self.lines <= sortnet.MAX_LINES:
            raise ConfigError(f"lines must be in [2, {sortnet.MAX_LINES}]")
        if self.population_size < 1:
            raise ConfigError("population size must be at least 1")
        if not 0 < self.elite_fraction <= 1:
            raise ConfigError("elite fraction must lie in (0, 1]")
        if not 1 <= self.selection_multiplier <= 1 / self.elite_fraction + 1e-9:
            raise ConfigError(
                f"selection multiplier {self.selection_multiplier} must lie between 1 and "
                f"1/elite fraction = {1 / self.elite_fraction:g}"
            )
        if self.pulsation_period < 1:
            raise ConfigError("pulsation period must be at least 1")
        if self.generations < 0:
            raise ConfigError("generation budget must be non-negative")
        probs = (self.p_add, self.p_remove, self.p_swap)
        if min(probs) < 0 or not math.isclose(sum(probs), 1.0):
            raise ConfigError("mutation probabilities must be non-negative and sum to 1")
        if not 0 <= self.p_crossover <= 1:
            raise ConfigError("crossover probability must lie in [0, 1]")
        lo, hi = self.comparator_range
        if not 0 <= lo <= hi <= sortnet.MAX_COMPARATORS:
            raise ConfigError(f"initial comparator range [{lo}, {hi}] outside [0, {sortnet.MAX_COMPARATORS}]")
        if self.target_comparators is not None and self.target_comparators < 0:
            raise ConfigError("target comparator count must be non-negative")

    @property
    def comparator_range(self) -> tuple[int, int]:
        if self.init_range is None:
            return (self.lines, min(4 * self.lines, sortnet.MAX_COMPARATORS))
        return self.init_range

    @property
    def elite_count(self) -> int:
        return min(self.population_size, max(1, round(self.elite_fraction * self.population_size)))


@dataclass(frozen=True)
class Individual:
    genome: sortnet.Network
    result: sortnet.EvalResult
    composite: tuple[float, float, float]

    @property
    def fitness(self) -> int:
        return single_fitness(*self.result.triple)

    @property
    def behavior(self) -> tuple[int, ...]:
        return self.result.behavior


@dataclass(frozen=True)
class GenerationRecord:
    gen: int
    novelty_active: bool
    best_m: int
    best_l: int
    best_c: int
    best_o1: int
    mean_o1: float
    distinct_behaviors: int
    wall_ms: float


@dataclass
class RunResult:
    config: RunConfig
    population: list[Individual]
    records: list[GenerationRecord] = field(default_factory=list)
    target_gen: int | None = None  # first generation meeting hit_target

    @property
    def best(self) -> Individual:
        return self.population[0]


def make_individuals(genomes: Sequence[sortnet.Network], params: ObjectiveParams) -> list[Individual]:
    results = sortnet.evaluate_many(genomes)
    return [Individual(g, r, composite_vector(*r.triple, params)) for g, r in zip(genomes, results)]


def rank_population(population: list[Individual]) -> list[Individual]:
    """Stable order by single fitness; index ties in selection then favour lower fitness."""
    return sorted(population, key=lambda ind: ind.fitness)


def init_population(config: RunConfig, rng: np.random.Generator) -> list[Individual]:
    lo, hi = config.comparator_range
    genomes = [
        sortnet.random_network(config.lines, int(rng.integers(lo, hi + 1)), rng)
        for _ in range(config.population_size)
    ]
    return rank_population(make_individuals(genomes, config.params))


def novelty_active(gen: int, mode: str, period: int = 5, phase: str = "off-first") -> bool:
    if mode == "composite-novelty":
        return True
    if mode != "pulsation":
        return False
    odd_block = (gen // period) % 2 == 1
    return odd_block if phase == "off-first" else not odd_block


def select(population: list[Individual], config: RunConfig, use_novelty: bool) -> list[int]:
    k = config.elite_count
    if config.mode == "single":
        return sorted(range(len(population)), key=lambda i: population[i].fitness)[:k]
    if config.mode == "nsga2":
        objs = np.array([raw_vector(*ind.result.triple) for ind in population], dtype=float)
        return moea.select_elites(objs, k)
    objs = np.array([ind.composite for ind in population], dtype=float)
    if not use_novelty:
        return moea.select_elites(objs, k)
    return novelty.novelty_select(
        [ind.behavior for ind in population],
        objs[:, 0],
        k,
        config.selection_multiplier,
        lambda count: moea.select_elites(objs, count),
    )


def reproduce(elites: list[Individual], count: int, config: RunConfig, rng: np.random.Generator) -> list[sortnet.Network]:
    ops = (sortnet.mutate_add, sortnet.mutate_remove, sortnet.mutate_swap)
    cum = np.cumsum([config.p_add, config.p_remove, config.p_swap])
    children = []
    for _ in range(count):
        first = elites[int(rng.integers(len(elites)))].genome
        second = elites[int(rng.integers(len(elites)))].genome
        child = sortnet.crossover(first, second, rng) if rng.random() < config.p_crossover else first
        op = ops[min(int(np.searchsorted(cum, rng.random(), side="right")), 2)]
        children.append(op(child, rng))
    return children


def make_record(gen: int, population: list[Individual], config: RunConfig, wall_ms: float) -> GenerationRecord:
    best = min(population, key=lambda ind: ind.fitness)
    m, l, c = best.result.triple
    return GenerationRecord(
        gen=gen,
        novelty_active=novelty_active(gen, config.mode, config.pulsation_period, config.pulse_phase),
        best_m=m,
        best_l=l,
        best_c=c,
        best_o1=best.fitness,
        mean_o1=float(np.mean([ind.fitness for ind in population])),
        distinct_behaviors=len({ind.behavior for ind in population}),
        wall_ms=wall_ms,
    )


def step(
    population: list[Individual], config: RunConfig, gen: int, rng: np.random.Generator
) -> tuple[list[Individual], GenerationRecord]:
    """Select from generation ``gen`` and breed generation ``gen + 1``."""
    t0 = time.perf_counter()
    active = novelty_active(gen, config.mode, config.pulsation_period, config.pulse_phase)
    elites = [population[i] for i in select(population, config, active)]
    children = reproduce(elites, config.population_size - len(elites), config, rng)
    nxt = rank_population(elites + make_individuals(children, config.params))
    return nxt, make_record(gen + 1, nxt, config, (time.perf_counter() - t0) * 1e3)


def reached_target(record: GenerationRecord, config: RunConfig) -> bool:
    return (
        config.target_comparators is not None
        and record.best_m == 0
        and record.best_c <= config.target_comparators
    )


def hit_target(record: GenerationRecord, config: RunConfig) -> bool:
    """Target for convergence timing: validity, plus the comparator bound when one is set."""
    if record.best_m != 0:
        return False
    return config.target_comparators is None or record.best_c <= config.target_comparators


def iterate(config: RunConfig) -> Iterator[tuple[list[Individual], GenerationRecord]]:
    """Yield (population, record) for generation 0 and each later generation."""
    rng = np.random.default_rng(config.seed)
    t0 = time.perf_counter()
    population = init_population(config, rng)
    record = make_record(0, population, config, (time.perf_counter() - t0) * 1e3)
    yield population, record
    for gen in range(config.generations):
        if reached_target(record, config):
            return
        population, record = step(population, config, gen, rng)
        yield population, record


def run(config: RunConfig, on_record: Callable[[GenerationRecord], None] | None = None) -> RunResult:
    result = RunResult(config, [])
    for population, record in iterate(config):
        result.population = population
        result.records.append(record)
        if on_record is not None:
            on_record(record)
        if result.target_gen is None and hit_target(record, config):
            result.target_gen = record.gen
    return result
