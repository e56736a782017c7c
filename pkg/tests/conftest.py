import contextlib
import random
import warnings

import pytest

from nolf.curves import CurveDictionary, standard_dictionary
from nolf.words import Letter, Word

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def run(number, title):
        info = {}
        try:
            yield info
        except BaseException:
            line = f"FAIL criterion {number}: {title}"
            request.config.stash[ACCEPTANCE].append(line)
            print(line)
            raise
        detail = f" ({info['detail']})" if "detail" in info else ""
        line = f"PASS criterion {number}: {title}{detail}"
        request.config.stash[ACCEPTANCE].append(line)
        print(line)

    return run


def random_word(rng, d, n, base="D2", positive=True):
    ids = [c.id for c in d]
    letters = []
    for _ in range(n):
        e = 1 if positive else rng.choice((1, -1))
        letters.append(Letter(rng.choice(ids), rng.choice((1, -1)), e))
    return Word(d, base, tuple(letters))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def d3():
    return standard_dictionary(3)


@pytest.fixture
def d5():
    return standard_dictionary(5)


@pytest.fixture
def mixed_dictionary():
    """N_5 with a null curve, a degenerate curve and an alias."""
    d = standard_dictionary(5)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        d.register("deg", d.lattice.vec("a1+a4"))
    d.register("sep", d.lattice.zero(), tag="sep")
    d.register("alias_a1", d.lattice.vec("-a1"))
    return d


def small_dictionary(g=3):
    d = CurveDictionary(g)
    d.register("c", d.lattice.vec("a1"))
    return d
