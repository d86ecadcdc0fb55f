"""Compare the numba and numpy evaluation backends.

    python benchmarks/bench_evaluate.py [--batch 100] [--repeat 5]

Times one population-sized batch of random networks per line count, plus a
short engine run with each backend.  Results of the two backends are
checked for equality before timing.
"""
import argparse
import time

import numpy as np

from cnpulse import _kernels, engine, sortnet


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--batch", type=int, default=100)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--lines", type=int, nargs="+", default=[4, 6, 8, 10, 12, 14, 16])
    args = p.parse_args()
    rng = np.random.default_rng(0)

    print(f"{'n':>3} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.lines:
        nets = [sortnet.random_network(n, int(rng.integers(n, 4 * n + 1)), rng) for _ in range(args.batch)]
        comps = [list(x.comparators) for x in nets]
        init = _kernels.initial_words(n)
        a, b = _kernels.pack_networks(comps)
        lengths = np.array([len(c) for c in comps], dtype=np.int64)
        ref = _kernels.evaluate_batch_numpy(a, b, init)
        got = _kernels.evaluate_batch_numba(a, b, lengths, init)  # also warms the JIT
        assert all(np.array_equal(x, y) for x, y in zip(ref, got)), f"backends disagree at n={n}"
        t_nb = best_of(lambda: _kernels.evaluate_batch_numba(a, b, lengths, init), args.repeat)
        t_np = best_of(lambda: _kernels.evaluate_batch_numpy(a, b, init), args.repeat)
        print(f"{n:>3} {t_nb * 1e3:>10.3f} {t_np * 1e3:>10.3f} {t_np / t_nb:>7.1f}x")

    cfg = engine.RunConfig(lines=8, generations=100, seed=1)
    print(f"\nengine: n={cfg.lines}, pop={cfg.population_size}, {cfg.generations} generations, mode={cfg.mode}")
    for flag in (True, False):
        _kernels.USE_NUMBA = flag
        t = best_of(lambda: engine.run(cfg), 1)
        print(f"  {'numba' if flag else 'numpy'}: {t:.2f}s")


if __name__ == "__main__":
    main()
