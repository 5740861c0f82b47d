import random
from pathlib import Path

import pytest

from genscale.coregraph import build_core_graph
from genscale.families import load_family, load_family_file
from genscale.scale import check_conditions

CONFIGS = Path(__file__).resolve().parents[1] / "src" / "genscale" / "configs"


def bundled(name):
    return load_family_file(CONFIGS / name)


class Setup:
    """A monoid with its core graph and scale report, built once per session."""

    def __init__(self, S, cap=64, samples=None):
        self.S = S
        self.graph = build_core_graph(S, cap)
        self._report = None
        self._samples = samples

    @property
    def report(self):
        if self._report is None:
            self._report = check_conditions(self.S, self.graph, self._samples)
        return self._report

    def p(self, text):
        return self.S.parse(text)


@pytest.fixture(scope="session")
def axb():
    return Setup(load_family({"kind": "AxB", "max_prime": 13}))


@pytest.fixture(scope="session")
def axb5():
    return Setup(load_family({"kind": "AxB", "max_prime": 5}))


@pytest.fixture(scope="session")
def binary():
    return Setup(bundled("selfsimilar-binary.toml"))


@pytest.fixture(scope="session")
def free2():
    return Setup(load_family({"kind": "SelfSimilar", "group": "trivial", "alphabet": ["a", "b"]}))


@pytest.fixture(scope="session")
def doubled():
    return Setup(bundled("freely-doubled.toml"))


@pytest.fixture(scope="session")
def ledrappier():
    return Setup(bundled("ledrappier.toml"))


@pytest.fixture(scope="session")
def z2flip():
    return Setup(bundled("z2-flip.toml"))


@pytest.fixture(scope="session")
def gone_mad():
    return Setup(bundled("graph-products-gone-mad.toml"))


@pytest.fixture
def rng():
    return random.Random(20261018)
