import logging
from fractions import Fraction
from itertools import combinations

import pytest
from pydantic import ValidationError

from gammoidkit.exceptions import NormalizationImpossibleError, OutOfRangeError
from gammoidkit.linalg import FP, QQ, FieldMatrix, rank
from gammoidkit.matroid import Matroid, represents
from gammoidkit.transversal import (
    Matching,
    Presentation,
    bipartite_to_presentation,
    complete_matchings,
    matching_rank,
    max_matching,
    presentation_to_bipartite,
    transversal_matroid,
    transversal_representation,
)

from tests.instances import brute_force_matching_rank, random_presentations


def test_presentation_canonical() -> None:
    p = Presentation(n=4, sets=[[3, 1, 3], [4]])
    assert p.sets == ((1, 3), (4,))
    assert p.r == 2
    assert p.empty_sets == []


def test_presentation_out_of_range() -> None:
    with pytest.raises(ValidationError):
        Presentation(n=3, sets=[[1, 4]])


def test_bipartite(presentation) -> None:
    g = presentation_to_bipartite(presentation)
    assert g.right_size == 3
    assert g.right_labels == (1, 2, 3)
    assert g.adjacency == ((1, 2, 3), (2, 4, 5), (3, 5, 6))
    assert (4, 2) in g.edges()
    assert bipartite_to_presentation(g) == presentation


def test_max_matching(presentation) -> None:
    g = presentation_to_bipartite(presentation)
    assert max_matching(g, [1, 2, 3]).pairs == {(1, 1), (2, 2), (3, 3)}
    assert max_matching(g, [4, 5, 6]).size == 2
    assert max_matching(g).sorted_pairs() == [(1, 1), (2, 2), (3, 3)]
    with pytest.raises(OutOfRangeError):
        max_matching(g, [7])


def test_matching_rejects_repeated_vertex() -> None:
    with pytest.raises(ValidationError):
        Matching(pairs=frozenset({(1, 1), (1, 2)}))


def test_matching_of(presentation) -> None:
    g = presentation_to_bipartite(presentation)
    assert Matching.from_representatives([1, 4, 6]).is_matching_of(g)
    assert not Matching.from_representatives([4, 2, 3]).is_matching_of(g)
    assert Matching.from_representatives([3, 5, 6]).representatives() == {1: 3, 2: 5, 3: 6}


def test_complete_matchings(presentation) -> None:
    g = presentation_to_bipartite(presentation)
    matchings = list(complete_matchings(g))
    assert len(matchings) == 18
    assert matchings[0] == Matching.from_representatives([1, 2, 3])
    assert all(m.size == 3 and m.is_matching_of(g) for m in matchings)


def test_matching_rank_brute_force(presentation) -> None:
    g = presentation_to_bipartite(presentation)
    for size in range(presentation.n + 1):
        for s in combinations(range(1, presentation.n + 1), size):
            assert matching_rank(g, s) == brute_force_matching_rank(presentation, s)


def test_matching_rank_random_presentations() -> None:
    for p in random_presentations(seed=13, count=40, sizes=(4, 5, 6)):
        g = presentation_to_bipartite(p)
        for size in range(p.n + 1):
            for s in combinations(range(1, p.n + 1), size):
                assert matching_rank(g, s) == brute_force_matching_rank(p, s)


def test_representation_rank_matches_matching_rank() -> None:
    presentations = random_presentations(seed=17, count=30, sizes=(5, 6, 7, 8))
    assert any(max_matching(presentation_to_bipartite(p)).size < p.r for p in presentations)
    for p in presentations:
        g = presentation_to_bipartite(p)
        matrices = [transversal_representation(p, seed=seed).matrix for seed in (1, 2, 3)]
        for size in range(min(p.r, p.n) + 1):
            for s in combinations(range(1, p.n + 1), size):
                expected = matching_rank(g, s)
                ranks = [rank(x.columns([j - 1 for j in s])) for x in matrices]
                assert max(ranks) <= expected
                assert expected in ranks


def test_transversal_matroid(presentation) -> None:
    m = transversal_matroid(presentation)
    assert m.is_basis([1, 2, 3])
    assert not m.is_basis([4, 5, 6])
    assert len(m.bases) == 17


def test_partial_transversals_when_no_full_one() -> None:
    m = transversal_matroid(Presentation(n=3, sets=[[1], [1], [2, 3]]))
    assert m == Matroid(3, [[1, 2], [1, 3]])


def test_empty_set_is_logged(caplog) -> None:
    with caplog.at_level(logging.WARNING, logger="gammoidkit.transversal"):
        m = transversal_matroid(Presentation(n=2, sets=[[], [1, 2]]))
    assert "empty sets [1]" in caplog.text
    assert m == Matroid(2, [[1], [2]])


def test_representation_normalized_pattern(presentation, weights) -> None:
    alpha = {
        (1, 2): weights[(1, 2)],
        (1, 3): weights[(1, 3)],
        (2, 4): weights[(2, 4)],
        (2, 5): weights[(2, 5)],
        (3, 5): weights[(3, 5)],
        (3, 6): weights[(3, 6)],
    }
    x = transversal_representation(
        presentation,
        normalize=True,
        matching=Matching.from_representatives([1, 2, 3]),
        weights=alpha,
        field=QQ,
    )
    assert x.matrix == FieldMatrix(
        QQ,
        [
            [1, -2, -3, 0, 0, 0],
            [0, 1, 0, -5, -7, 0],
            [0, 0, 1, 0, -11, -13],
        ],
    )
    assert set(x.weights) == set(alpha)
    assert rank(x.matrix) == 3


def test_representation_seeded(presentation) -> None:
    first = transversal_representation(presentation, seed=5)
    again = transversal_representation(presentation, seed=5)
    other = transversal_representation(presentation, seed=6)
    assert first.matrix == again.matrix
    assert first.matrix != other.matrix
    assert len(first.weights) == 9
    assert all(value != 0 for value in first.weights.values())
    # zero pattern follows the sets
    assert first.matrix[0, 3] == 0 and first.matrix[0, 0] != 0


def test_representation_rational_weights(presentation) -> None:
    x = transversal_representation(presentation, seed=3, field=QQ)
    for value in x.weights.values():
        assert isinstance(value, Fraction)
        assert 1 <= value.numerator and value.denominator <= 97


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_representation_represents_matroid(presentation, seed) -> None:
    m = transversal_matroid(presentation)
    assert represents(transversal_representation(presentation, seed=seed).matrix, m)
    normalized = transversal_representation(presentation, seed=seed, normalize=True)
    assert represents(normalized.matrix, m)


def test_normalization_impossible() -> None:
    p = Presentation(n=2, sets=[[1], [1]])
    with pytest.raises(NormalizationImpossibleError):
        transversal_representation(p, normalize=True)
    assert transversal_representation(p).matrix.shape == (2, 2)


def test_normalization_rejects_foreign_matching(presentation) -> None:
    with pytest.raises(NormalizationImpossibleError):
        transversal_representation(
            presentation, normalize=True, matching=Matching.from_representatives([4, 2, 3])
        )


def test_fp_default_field(presentation) -> None:
    assert transversal_representation(presentation).matrix.field == FP
