import pytest

from factprimes import build_table

# Large enough for the corollary window [12602987, 12603987] and for the
# 1e7 sampling used by the bound and deviation checks.
BIG_LIMIT = 12_604_000


@pytest.fixture(scope="session")
def table_small():
    return build_table(10_000)


@pytest.fixture(scope="session")
def table_big():
    return build_table(BIG_LIMIT)
