import random
import sys
from fractions import Fraction

import pytest

from argshift.corpus import load_algebra, load_corpus
from argshift.io import parse_invariants, read_text
from argshift.corpus import resolve

NAMES = ["abelian3", "aff1", "heisenberg3", "nilp7_155", "ooms8", "so3"]


@pytest.fixture(scope="session")
def algs():
    return {name: load_algebra(f"corpus/{name}.alg") for name in NAMES}


@pytest.fixture(scope="session")
def corpus():
    return {e.name: e for e in load_corpus()}


@pytest.fixture(scope="session")
def nilp7_invariants(algs):
    alg = algs["nilp7_155"]
    return dict(parse_invariants(read_text(resolve("corpus/nilp7_155.inv")), alg.labels))


@pytest.fixture
def rng():
    return random.Random(1234)


def e(n, i, c=1):
    """Coordinate vector with c in 0-based slot i."""
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return tuple(v)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.format_results():
        terminalreporter.write_line(line)
