"""Shared fixtures: small canonical modules and rings."""

from __future__ import annotations

import pytest

from flab.rings import make_field, make_ring
from flab.testing import canon2 as _canon2
from flab.testing import pcanon2 as _pcanon2


@pytest.fixture
def F5():
    return make_field(5)


@pytest.fixture
def F7():
    return make_field(7)


@pytest.fixture
def Z25():
    return make_ring("witt", 5, 1, 2)


@pytest.fixture
def canon2():
    return _canon2()


@pytest.fixture
def pcanon2():
    return _pcanon2()
