import pytest

from isodelaunay import origami


@pytest.fixture(scope="session")
def torus():
    return origami.Origami.from_spec("h=();v=()")


@pytest.fixture(scope="session")
def square_l():
    return origami.Origami.from_spec("h=(12);v=(13)")


@pytest.fixture(scope="session")
def prym():
    return origami.Origami.from_spec("h=(12)(3)(45);v=(1)(234)(5)")


@pytest.fixture(scope="session")
def staircase():
    return origami.Origami.from_spec("h=(12)(34)(56);v=(23)(45)(16)")


@pytest.fixture(scope="session")
def torus_graph(torus):
    return origami.build_origami_graph(torus)


@pytest.fixture(scope="session")
def square_l_graph(square_l):
    return origami.build_origami_graph(square_l)


@pytest.fixture(scope="session")
def prym_graph(prym):
    return origami.build_origami_graph(prym)


@pytest.fixture(scope="session")
def staircase_graph(staircase):
    return origami.build_origami_graph(staircase)
