import numpy as np
import pytest

from lcak.catalogs import catalog_entry


@pytest.fixture(scope="session")
def a41():
    return catalog_entry("A4_1")


@pytest.fixture(scope="session")
def a48():
    return catalog_entry("A4_8")


@pytest.fixture(scope="session")
def abelian_kahler():
    return catalog_entry("abelian_kahler")


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
