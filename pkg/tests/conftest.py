# conftest.py
import json

import pytest
from hypothesis import strategies as st

from hnlat import linalg
from hnlat.lattice import HermLattice


def gram_of(rows):
    return linalg.matmul(rows, linalg.transpose(rows))


@st.composite
def well_conditioned_grams(draw, min_rank=1, max_rank=3):
    """A·Aᵀ + I with A in [-1, 1]: every vector has norm at least its length squared."""
    n = draw(st.integers(min_rank, max_rank))
    A = [[draw(st.integers(-1, 1)) for _ in range(n)] for _ in range(n)]
    G = gram_of(A)
    return [[G[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]


@st.composite
def integer_grams(draw, min_rank=1, max_rank=3, entry=2):
    """A·Aᵀ + d·I, rejecting singular draws."""
    n = draw(st.integers(min_rank, max_rank))
    A = [[draw(st.integers(-entry, entry)) for _ in range(n)] for _ in range(n)]
    d = draw(st.integers(0, 1))
    G = gram_of(A)
    G = [[G[i][j] + (d if i == j else 0) for j in range(n)] for i in range(n)]
    if linalg.det(G) == 0:
        G = [[G[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    return G


@pytest.fixture
def identity2():
    return HermLattice.from_gram([[1, 0], [0, 1]], "identity2")


@pytest.fixture
def identity3():
    return HermLattice.from_gram(linalg.identity(3), "identity3")


@pytest.fixture
def diag14():
    return HermLattice.from_gram([[1, 0], [0, 4]], "diag14")


@pytest.fixture
def diag119():
    return HermLattice.from_gram([[1, 0, 0], [0, 1, 0], [0, 0, 9]], "diag119")


@pytest.fixture
def hexagonal():
    """The A2 root lattice: semistable, not diagonal."""
    return HermLattice.from_gram([[2, 1], [1, 2]], "hexagonal")


@pytest.fixture
def write_lattice(tmp_path):
    """Write a lattice file and return its path."""
    def write(gram, name=None, subs=None, filename="lattice.json"):
        data = {"rank": len(gram), "gram": [[str(x) for x in row] for row in gram]}
        if name is not None:
            data["name"] = name
        if subs is not None:
            data["subs"] = subs
        path = tmp_path / filename
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return write
