import pytest

from ar1persist import build_rule, expand


@pytest.fixture(scope="session")
def rule():
    return build_rule()


@pytest.fixture(scope="session")
def series8():
    return expand(8)


@pytest.fixture(scope="session")
def series40():
    return expand(40)


@pytest.fixture(scope="session")
def series60():
    return expand(60)
