from fractions import Fraction
from pathlib import Path
from typing import Dict

import pytest

from gammoidkit.gammoid import Edge, SinkSet, WeightedDigraph
from gammoidkit.transversal import Presentation

CORPUS = Path(__file__).parent / "corpus"

# the two structures are dual to each other: vertex u of the digraph owns set {u} + succ(u)
EXAMPLE_SETS = ((1, 2, 3), (2, 4, 5), (3, 5, 6))
EXAMPLE_EDGES = ((1, 2), (1, 3), (2, 4), (2, 5), (3, 5), (3, 6))
EXAMPLE_WEIGHTS: Dict[Edge, Fraction] = {
    edge: Fraction(w) for edge, w in zip(EXAMPLE_EDGES, (2, 3, 5, 7, 11, 13))
}


@pytest.fixture(scope="session")
def corpus() -> Path:
    return CORPUS


@pytest.fixture
def presentation() -> Presentation:
    return Presentation(n=6, sets=EXAMPLE_SETS)


@pytest.fixture
def digraph() -> WeightedDigraph:
    return WeightedDigraph(n=6, edges=EXAMPLE_EDGES)


@pytest.fixture
def weighted_digraph() -> WeightedDigraph:
    return WeightedDigraph(n=6, edges=EXAMPLE_EDGES, weights=EXAMPLE_WEIGHTS)


@pytest.fixture
def sinks() -> SinkSet:
    return SinkSet(vertices=(4, 5, 6))


@pytest.fixture
def weights() -> Dict[Edge, Fraction]:
    return dict(EXAMPLE_WEIGHTS)
