import random

import pytest

from deforma.catalog import suite_algebras, suite_structures


@pytest.fixture
def algebras():
    return suite_algebras()


@pytest.fixture(params=suite_structures(), ids=lambda s: s[0])
def structure(request):
    """One (name, algebra, alpha1) pair per parametrized run."""
    return request.param


@pytest.fixture
def rng():
    # fixed seed: failures must reproduce
    return random.Random(20260819)
