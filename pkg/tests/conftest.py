"""Shared fixtures: the bundled domain corpus and cached certificates."""

import pytest

import turanlab.corpus as corpus
from turanlab import certify


@pytest.fixture(scope="session")
def domains():
    out = {}
    for name in corpus.bundled_names():
        loaded_name, td = corpus.load_domain_spec(name)
        assert loaded_name == name
        out[name] = td
    return out


@pytest.fixture(scope="session")
def disk(domains):
    return domains["disk"]


@pytest.fixture(scope="session")
def heptagon(domains):
    return domains["heptagon"]


@pytest.fixture(scope="session")
def square(domains):
    return domains["square"]


@pytest.fixture(scope="session")
def stadium(domains):
    return domains["stadium"]


@pytest.fixture(scope="session")
def triangle(domains):
    return domains["triangle"]


@pytest.fixture(scope="session")
def truncated_disk(domains):
    return domains["truncated_disk"]


@pytest.fixture(scope="session")
def disk_cert(disk):
    return certify(disk)


@pytest.fixture(scope="session")
def heptagon_cert(heptagon):
    return certify(heptagon)


@pytest.fixture(scope="session")
def truncated_disk_cert(truncated_disk):
    return certify(truncated_disk)
