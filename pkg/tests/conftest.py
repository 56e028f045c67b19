import numpy as np
import pytest

from metabench import make_objective


class ScriptedRng:
    """Stand-in for ``numpy.random.Generator`` that replays queued draws.

    Each queued value is returned as-is, or broadcast when a scalar meets a
    ``size`` request.
    """

    def __init__(self, random=(), integers=(), normal=()):
        self._queues = {"random": list(random), "integers": list(integers), "normal": list(normal)}

    def _next(self, kind, size):
        value = self._queues[kind].pop(0)
        if size is not None and np.isscalar(value):
            return np.full(size, value)
        return np.asarray(value) if size is not None else value

    def random(self, size=None):
        return self._next("random", size)

    def integers(self, low, high=None, size=None):
        return self._next("integers", size)

    def standard_normal(self, size=None):
        return self._next("normal", size)


@pytest.fixture
def scripted():
    return ScriptedRng


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def rastrigin10():
    return make_objective("rastrigin", 10)


@pytest.fixture
def peaks_obj():
    return make_objective("peaks")


_ACCEPTANCE = []


def record_acceptance(number, title, passed, detail):
    _ACCEPTANCE.append((number, title, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}: {detail}")
