import pytest

from daml_kit import corpus


@pytest.fixture(scope="session")
def aqss():
    return corpus.load("aqss_lla")


@pytest.fixture(scope="session")
def hydre():
    return corpus.load("hydre")


@pytest.fixture(scope="session")
def errors_pipeline():
    return corpus.load("errors_pipeline")


@pytest.fixture(scope="session")
def odw():
    return corpus.load("odw")
