import pytest

from griess_lab.fock import build_axis_family
from griess_lab.lattice import DiskCache, build_standard, find_a


@pytest.fixture(scope="session")
def cache(tmp_path_factory):
    return DiskCache(str(tmp_path_factory.mktemp("shells")))


@pytest.fixture(scope="session")
def e8():
    return build_standard("E8")


@pytest.fixture(scope="session")
def a_vector(e8, cache):
    return find_a(e8, cache)


@pytest.fixture(scope="session")
def family(a_vector, cache):
    return build_axis_family(a_vector, cache)
