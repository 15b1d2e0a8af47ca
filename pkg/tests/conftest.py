import pytest

from fibsite.fincat import (
    codiscrete_groupoid,
    cyclic_groupoid,
    poset_chain,
    terminal_category,
)


@pytest.fixture
def pt():
    return terminal_category()


@pytest.fixture
def chain2():
    return poset_chain(["V", "U"])


@pytest.fixture
def chain3():
    return poset_chain(["W", "V", "U"])


@pytest.fixture
def z2():
    return cyclic_groupoid(2)


@pytest.fixture
def z3():
    return cyclic_groupoid(3)


@pytest.fixture
def e2():
    return codiscrete_groupoid(["o1", "o2"])
