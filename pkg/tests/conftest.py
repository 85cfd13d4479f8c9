import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nerode import generators as gen  # noqa: E402


def machine_corpus(seed=2024, count=60, max_states=8):
    """Deterministic random machines of 1..max_states states over 2-3 symbols."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_states)
        out.append(gen.random_machine(
            rng, n, n_inputs=rng.choice((2, 3)), n_outputs=rng.choice((2, 3)),
            redundancy=rng.choice((0.0, 0.3, 0.6)), connected=rng.random() < 0.7,
        ))
    return out


def window_corpus(seed=7, per_shape=3):
    """Random window systems for every |U| in {2, 3} and m in {1, 2, 3}."""
    rng = random.Random(seed)
    out = [gen.identity_window(), gen.identity_window(gen.alphabet(3))]
    for n_inputs in (2, 3):
        for m in (1, 2, 3):
            for _ in range(per_shape):
                out.append(gen.random_window(rng, n_inputs, m, rng.choice((2, 3))))
    return out


@pytest.fixture(scope="session")
def machines():
    return machine_corpus()


@pytest.fixture(scope="session")
def windows():
    return window_corpus()


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
