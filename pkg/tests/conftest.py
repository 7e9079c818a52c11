from __future__ import annotations

import pytest

from centlab.engine.group import GroupHandle
from centlab.families.builders import heisenberg_mod
from centlab.families.search import search_extensions


@pytest.fixture(scope="session")
def heis4() -> GroupHandle:
    return heisenberg_mod(4)


@pytest.fixture(scope="session")
def heis9() -> GroupHandle:
    return heisenberg_mod(9)


@pytest.fixture(scope="session")
def nonabelian_p3():
    """First extension with |Z| = 3 whose central quotient is Z9 : Z9."""
    return search_extensions(3, 1, [3], limit=1)[0]
