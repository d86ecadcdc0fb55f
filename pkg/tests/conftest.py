import numpy as np
import pytest

from cnpulse import sortnet

FIG1 = sortnet.Network(4, ((0, 1), (2, 3), (0, 2), (1, 3), (1, 2)))

# acceptance criterion id -> (passed, detail); printed in the terminal summary
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def transposition_network(n: int) -> sortnet.Network:
    """Odd-even transposition sort: n rounds of alternating adjacent comparators."""
    comps = [(i, i + 1) for r in range(n) for i in range(r % 2, n - 1, 2)]
    return sortnet.Network(n, tuple(comps))


def random_networks(n: int, count: int, rng: np.random.Generator) -> list[sortnet.Network]:
    """Half uniformly random networks, half lightly mutated valid sorters."""
    nets = []
    base = transposition_network(n)
    ops = (sortnet.mutate_add, sortnet.mutate_remove, sortnet.mutate_swap)
    for i in range(count):
        if i % 2 == 0:
            nets.append(sortnet.random_network(n, int(rng.integers(0, 4 * n + 1)), rng))
        else:
            net = base
            for _ in range(int(rng.integers(0, 3))):
                net = ops[int(rng.integers(3))](net, rng)
            nets.append(net)
    return nets


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"criterion {cid}: {'PASS' if ok else 'FAIL'}  {detail}")
