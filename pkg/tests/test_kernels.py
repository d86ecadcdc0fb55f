import numpy as np
import pytest

from cnpulse import _kernels, sortnet

from conftest import random_networks


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 9])
def test_initial_words_encode_every_pattern_once(n):
    x = _kernels.initial_words(n)
    bits = np.unpackbits(x.view(np.uint8), axis=1, bitorder="little")[:, : 1 << n]
    patterns = (bits.astype(np.int64) << np.arange(n)[:, None]).sum(axis=0)
    assert sorted(patterns.tolist()) == list(range(1 << n))


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
@pytest.mark.parametrize("n", [2, 4, 6, 8, 11])
def test_numba_and_numpy_backends_agree(n):
    nets = random_networks(n, 60, np.random.default_rng(n))
    comps = [list(x.comparators) for x in nets]
    init = _kernels.initial_words(n)
    a, b = _kernels.pack_networks(comps)
    lengths = np.array([len(c) for c in comps], dtype=np.int64)
    m1, c1 = _kernels.evaluate_batch_numpy(a, b, init)
    m2, c2 = _kernels.evaluate_batch_numba(a, b, lengths, init)
    np.testing.assert_array_equal(m1, m2)
    np.testing.assert_array_equal(c1, c2)


def test_numpy_fallback_selected_by_env(monkeypatch):
    monkeypatch.setattr(_kernels, "USE_NUMBA", False)
    nets = random_networks(5, 20, np.random.default_rng(0))
    assert sortnet.evaluate_many(nets) == [sortnet.evaluate_naive(x) for x in nets]


def test_empty_batch_row_padding():
    m, c = _kernels.evaluate_batch([[], [(0, 1)]], 3)
    # empty 3-line network: every pattern with an inversion is unsorted (8 - 4 sorted)
    assert m.tolist() == [4, 3]
    assert c.tolist() == [[0, 0, 0], [2, 2, 0]]


def test_env_flag_disables_numba():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CNPULSE_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from cnpulse import _kernels; print(_kernels.USE_NUMBA)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "False"
