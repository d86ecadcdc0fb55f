import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnpulse import moea, novelty


def reference_select(behaviors, fitness, k, pool):
    """Straight transcription of the five steps with math.dist; returns a set."""
    score = {i: round(math.fsum(math.dist(behaviors[i], behaviors[j]) for j in pool), 9) for i in pool}

    def sq(i, j):
        return sum((x - y) ** 2 for x, y in zip(behaviors[i], behaviors[j]))

    ordered = sorted(pool, key=lambda i: -score[i])
    result = ordered[:k]
    for cand in ordered[k:]:
        result.append(cand)

        def min_nov(i):
            return min(sq(i, j) for j in result if j != i)

        lowest = min(min_nov(i) for i in result)
        tied = [t for t, i in enumerate(result) if min_nov(i) == lowest]
        worst = max(fitness[result[t]] for t in tied)
        victim = max(t for t in tied if fitness[result[t]] == worst)
        del result[victim]
    return set(result)


def test_distance_examples():
    assert novelty.distance([0, 0], [3, 4]) == 5
    assert novelty.distance([2, 7, 1], [2, 7, 1]) == 0
    with pytest.raises(ValueError):
        novelty.distance([1, 2], [1, 2, 3])


@given(st.lists(st.integers(0, 1000), min_size=1, max_size=8), st.data())
def test_distance_symmetric(x, data):
    y = data.draw(st.lists(st.integers(0, 1000), min_size=len(x), max_size=len(x)))
    assert novelty.distance(x, y) == novelty.distance(y, x)


def test_novelty_score_examples():
    pool = [[0, 0], [3, 4], [6, 8]]
    assert novelty.novelty_score(0, pool) == 15
    assert novelty.novelty_scores([[1, 1]] * 4).tolist() == [0, 0, 0, 0]
    assert novelty.novelty_score(0, [[5, 5]]) == 0


def test_minimum_novelty_examples():
    pool = [[0, 0], [3, 4], [6, 8]]
    assert novelty.minimum_novelty(0, pool) == 5
    dup = [[1, 2], [1, 2], [9, 9]]
    assert novelty.minimum_novelty(0, dup) == novelty.minimum_novelty(1, dup) == 0
    assert novelty.minimum_novelty(0, [[1, 2]]) == math.inf


def test_two_cluster_example():
    beh = {"A": [0, 0], "B": [0, 1], "C": [10, 10], "D": [10, 11]}
    names = list(beh)
    behaviors = [beh[x] for x in names]
    chosen = novelty.novelty_select(behaviors, [0, 0, 0, 0], 2, 2, lambda c: list(range(c)))
    picked = {names[i] for i in chosen}
    assert len(picked & {"A", "B"}) == 1 and len(picked & {"C", "D"}) == 1
    assert set(chosen) == reference_select(behaviors, [0, 0, 0, 0], 2, [0, 1, 2, 3])


def _population(rng, size):
    objs = rng.integers(0, 12, size=(size, 3)).astype(float)
    beh = rng.integers(0, 6, size=(size, 4))
    return objs, beh


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 60), st.sampled_from([0.1, 0.2, 0.25]), st.data())
def test_matches_reference_and_keeps_size(seed, size, frac, data):
    rng = np.random.default_rng(seed)
    objs, beh = _population(rng, size)
    k = max(1, round(frac * size))
    s = data.draw(st.floats(1, 1 / frac))
    base = lambda c: moea.select_elites(objs, c)
    chosen = novelty.novelty_select(beh, objs[:, 0], k, s, base)
    assert len(chosen) == k == len(set(chosen))
    pool = base(novelty.pool_size(k, s, size))
    assert set(chosen) == reference_select(beh.tolist(), objs[:, 0], k, pool)


def test_multiplier_one_reduces_to_base(rng):
    for _ in range(20):
        objs, beh = _population(rng, 50)
        base = moea.select_elites(objs, 5)
        assert novelty.novelty_select(beh, objs[:, 0], 5, 1, lambda c: moea.select_elites(objs, c)) == base


def test_inverse_fraction_uses_whole_population():
    seen = []

    def base(count):
        seen.append(count)
        return list(range(count))

    novelty.novelty_select(np.arange(40).reshape(20, 2), np.zeros(20), 2, 10, base)
    assert seen == [20]


def test_pool_clamped_to_population(caplog):
    chosen = novelty.novelty_select(np.arange(10).reshape(5, 2), np.zeros(5), 2, 4, lambda c: list(range(c)))
    assert len(chosen) == 2
    assert "clamping" in caplog.text


def test_tie_break_keeps_best_fitness():
    # three identical behaviours with fitness 5, 1, 9; only one of the cluster can stay
    beh = [[0, 0], [0, 0], [0, 0], [50, 50]]
    fit = [5, 1, 9, 3]
    chosen = novelty.novelty_select(beh, fit, 2, 2, lambda c: list(range(c)))
    assert set(chosen) == {1, 3}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_duplicate_cluster_dispersal(seed, k):
    rng = np.random.default_rng(seed)
    dup = [[7, 7, 7]] * (k + 1 + int(rng.integers(0, 3)))
    spread = [[1000 * (i + 1), 0, 3000 * i] for i in range(k - 1)]
    beh = dup + spread
    order = rng.permutation(len(beh))
    beh = [beh[i] for i in order]
    fit = rng.integers(0, 100, size=len(beh))
    chosen = novelty.novelty_select(beh, fit, k, len(beh) / k, lambda c: list(range(c)))
    assert sum(beh[i] == [7, 7, 7] for i in chosen) <= 1
    assert len(chosen) == k


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_best_fitness_survives(seed):
    rng = np.random.default_rng(seed)
    objs, beh = _population(rng, 40)
    chosen = novelty.novelty_select(beh, objs[:, 0], 4, 2.5, lambda c: moea.select_elites(objs, c))
    pool = moea.select_elites(objs, 10)
    assert min(objs[i, 0] for i in chosen) == min(objs[i, 0] for i in pool)
