import pytest

import sandpiles as sp


@pytest.fixture(scope="session", autouse=True)
def runtime_checks():
    # every stabilization in the suite re-verifies its odometer identity
    sp.set_runtime_checks(True)
    yield
    sp.set_runtime_checks(False)


@pytest.fixture
def t2():
    return sp.build_wired_regular_tree(3, 2)


@pytest.fixture
def t3():
    return sp.build_wired_regular_tree(3, 3)


@pytest.fixture
def t4():
    return sp.build_wired_regular_tree(3, 4)


@pytest.fixture
def ctree():
    return sp.counterexample_tree()


@pytest.fixture
def ball1():
    return sp.build_wired_ball(3, 1)


@pytest.fixture
def ball2():
    return sp.build_wired_ball(3, 2)
