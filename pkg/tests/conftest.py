from pathlib import Path

import pytest

from dnlab.algebra import chain, from_hasse, with_top
from dnlab.enumerate import catalog_up_to
from dnlab.io import load_algebra

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "dnlab" / "fixtures"


@pytest.fixture(scope="session")
def fig1():
    return load_algebra(FIXTURES / "fig1.alg")


@pytest.fixture(scope="session")
def fig2():
    return load_algebra(FIXTURES / "fig2.alg")


@pytest.fixture(scope="session")
def pentagon():
    return from_hasse(list("0abc1"), [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
                      label="pentagon")


@pytest.fixture(scope="session")
def chain2():
    return with_top(chain(2))


@pytest.fixture(scope="session")
def cat4():
    return catalog_up_to(4)


@pytest.fixture(scope="session")
def cat5():
    return catalog_up_to(5)


@pytest.fixture(scope="session")
def cat4_tops():
    return catalog_up_to(4, tops=True)
