from pathlib import Path

import pytest

from gph.exactla import Field
from gph.io import load_algebra
from gph.quiveralg import Quiver, build_algebra, tensor_algebra

DATA = Path(__file__).resolve().parents[1] / "src" / "gph" / "corpus" / "data"
QQ = Field()


def corpus_algebra(name):
    return load_algebra(DATA / "algebras" / f"{name}.json")


def path_algebra(vertices, arrows, relations=(), field=QQ, name=None):
    """Relations given as lists of (coef, [arrow, ...]) in traversal order."""
    q = Quiver(vertices, arrows)
    rels = [{(q.arrow(p[0]).source, tuple(p)): field(c) for c, p in r} for r in relations]
    return build_algebra(field, q, rels, name=name)


@pytest.fixture(scope="session")
def kx():
    return corpus_algebra("k_x2")


@pytest.fixture(scope="session")
def ky():
    return corpus_algebra("k_y2")


@pytest.fixture(scope="session")
def a2():
    return corpus_algebra("kA2")


@pytest.fixture(scope="session")
def square():
    return corpus_algebra("square")


@pytest.fixture(scope="session")
def morita_b():
    return corpus_algebra("morita_B")


@pytest.fixture(scope="session")
def lam_ns(kx, a2):
    return tensor_algebra(kx, a2)


@pytest.fixture(scope="session")
def lam_d4(kx, square):
    return tensor_algebra(kx, square)


@pytest.fixture(scope="session")
def lam_morita(kx, morita_b):
    return tensor_algebra(kx, morita_b)
