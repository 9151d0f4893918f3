"""
Set-system presentations, bipartite matchings and the transversal matroid M[H].
"""

import logging
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from gammoidkit.exceptions import NormalizationImpossibleError, OutOfRangeError
from gammoidkit.field import BaseField
from gammoidkit.linalg import FP, FieldMatrix
from gammoidkit.matroid import Matroid
from gammoidkit.utils import SplitMix64, Subset, subsets_of_size

logger = logging.getLogger(__name__)

# (set index i, element j), both 1-based
WeightKey = Tuple[int, int]


class Presentation(BaseModel):
    """
    The set system (A_1, ..., A_r) of subsets of [n].
    """

    model_config = ConfigDict(frozen=True)

    n: int
    sets: Tuple[Tuple[int, ...], ...] = ()

    @field_validator("sets", mode="before")
    @classmethod
    def sort_sets(cls, value: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(sorted(set(a))) for a in value)

    @model_validator(mode="after")
    def elements_in_range(self) -> "Presentation":
        if self.n < 0:
            raise ValueError(f"ground size must be non-negative, got {self.n}")
        for i, a in enumerate(self.sets, start=1):
            for e in a:
                if not 1 <= e <= self.n:
                    raise ValueError(f"A_{i} contains {e}, outside [1, {self.n}]")
        return self

    @property
    def r(self) -> int:
        return len(self.sets)

    @property
    def empty_sets(self) -> List[int]:
        """
        indices i with A_i empty; such a presentation has no full transversal
        """
        return [i for i, a in enumerate(self.sets, start=1) if not a]


class BipartiteGraph(BaseModel):
    """
    H: left vertices [n], right vertices 1..r labelled by `right_labels`; adjacency[i - 1]
    is the sorted left neighbourhood of right vertex i.
    """

    model_config = ConfigDict(frozen=True)

    left_size: int
    right_labels: Tuple[int, ...]
    adjacency: Tuple[Tuple[int, ...], ...]

    @property
    def right_size(self) -> int:
        return len(self.adjacency)

    def edges(self) -> List[Tuple[int, int]]:
        """
        (left, right) pairs in ascending right, then left order
        """
        return [(j, i) for i, a in enumerate(self.adjacency, start=1) for j in a]


class Matching(BaseModel):
    """
    Set of (left, right) pairs, right vertices numbered 1..r.
    """

    model_config = ConfigDict(frozen=True)

    pairs: FrozenSet[Tuple[int, int]] = frozenset()

    @model_validator(mode="after")
    def no_repeated_vertex(self) -> "Matching":
        lefts = [left for left, _ in self.pairs]
        rights = [right for _, right in self.pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("a matching cannot repeat a vertex")
        return self

    @classmethod
    def from_representatives(cls, representatives: Iterable[int]) -> "Matching":
        """
        matching sending right vertex i to the i-th representative
        """
        return cls(pairs=frozenset((j, i) for i, j in enumerate(representatives, start=1)))

    @property
    def size(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.pairs, key=lambda pair: (pair[1], pair[0]))

    def representatives(self) -> Dict[int, int]:
        """
        right vertex -> matched left vertex
        """
        return {right: left for left, right in self.pairs}

    def is_matching_of(self, g: BipartiteGraph) -> bool:
        return all(
            1 <= right <= g.right_size and left in g.adjacency[right - 1]
            for left, right in self.pairs
        )


class TransversalRepresentation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: FieldMatrix
    weights: Dict[WeightKey, Any]
    matching: Optional[Matching] = None
    seed: Optional[int] = None


def presentation_to_bipartite(p: Presentation) -> BipartiteGraph:
    if p.empty_sets:
        logger.warning("Presentation has empty sets %s; no full transversal exists", p.empty_sets)
    return BipartiteGraph(
        left_size=p.n, right_labels=tuple(range(1, p.r + 1)), adjacency=p.sets
    )


def bipartite_to_presentation(g: BipartiteGraph) -> Presentation:
    return Presentation(n=g.left_size, sets=g.adjacency)


def max_matching(g: BipartiteGraph, restrict_left: Optional[Iterable[int]] = None) -> Matching:
    """
    Maximum matching between `restrict_left` (default: all of [n]) and the right side.

    Augmenting paths are grown from right vertices in ascending order and neighbours are
    scanned in ascending order, so the output is a function of the input alone.
    :param g:
    :param restrict_left:
    :return:
    """
    if restrict_left is None:
        allowed: Set[int] = set(range(1, g.left_size + 1))
    else:
        allowed = set(restrict_left)
        for e in allowed:
            if not 1 <= e <= g.left_size:
                raise OutOfRangeError(f"left vertex {e} is outside [1, {g.left_size}]")
    neighbours = [[j for j in a if j in allowed] for a in g.adjacency]
    # left vertex -> right vertex currently matched to it
    owner: Dict[int, int] = {}

    def augment(right: int, seen: Set[int]) -> bool:
        for left in neighbours[right - 1]:
            if left in seen:
                continue
            seen.add(left)
            if left not in owner or augment(owner[left], seen):
                owner[left] = right
                return True
        return False

    for right in range(1, g.right_size + 1):
        augment(right, set())
    return Matching(pairs=frozenset(owner.items()))


def complete_matchings(g: BipartiteGraph) -> Iterator[Matching]:
    """
    every matching that covers the right side, ordered by representative tuples
    """

    def extend(right: int, used: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if right > g.right_size:
            yield used
            return
        for left in g.adjacency[right - 1]:
            if left not in used:
                yield from extend(right + 1, used + (left,))

    for representatives in extend(1, ()):
        yield Matching.from_representatives(representatives)


def matching_rank(g: BipartiteGraph, subset: Iterable[int]) -> int:
    return max_matching(g, subset).size


def transversal_matroid(p: Presentation) -> Matroid:
    """
    M[H]: the k-subsets of [n] matchable into the right side, k the maximum matching size.

    When a full transversal exists (k = r) these are exactly the transversals; otherwise
    they are the maximum partial transversals.
    """
    g = presentation_to_bipartite(p)
    k = max_matching(g).size
    bases: List[Subset] = [s for s in subsets_of_size(p.n, k) if matching_rank(g, s) == k]
    return Matroid(p.n, bases)


def transversal_representation(
    p: Presentation,
    seed: int = 1,
    normalize: bool = False,
    matching: Optional[Matching] = None,
    weights: Optional[Dict[WeightKey, Any]] = None,
    field: BaseField = FP,
) -> TransversalRepresentation:
    """
    The r x n matrix X with X[i][j] = -alpha_ij for j in A_i and 0 elsewhere.

    alpha_ij comes from `weights` when given there, otherwise from a SplitMix64 stream
    seeded with `seed`, drawn in ascending (i, j) order and never zero. In normalized
    mode the entries X[i][j_i] of a complete matching (the given one, or the
    deterministic maximum matching) are set to 1 and carry no weight.
    :param p: presentation
    :param seed:
    :param normalize:
    :param matching: explicit complete matching for normalized mode
    :param weights: explicit alpha values, keyed by (i, j)
    :param field:
    :return: the matrix with the weight assignment used
    """
    g = presentation_to_bipartite(p)
    pivots: Dict[int, int] = {}
    if normalize:
        if matching is None:
            matching = max_matching(g)
        if matching.size < p.r or not matching.is_matching_of(g):
            raise NormalizationImpossibleError(
                f"normalization needs a matching covering all {p.r} sets, found {matching.size}"
            )
        pivots = matching.representatives()
    rng = SplitMix64(seed)
    explicit = weights or {}
    used: Dict[WeightKey, Any] = {}
    zero, one = field.zero(), field.one()
    rows = []
    for i, a in enumerate(p.sets, start=1):
        row = [zero] * p.n
        for j in a:
            if pivots.get(i) == j:
                row[j - 1] = one
                continue
            if (i, j) in explicit:
                alpha = field.coerce(explicit[(i, j)])
            else:
                alpha = field.random_nonzero(rng)
            used[(i, j)] = alpha
            row[j - 1] = field.neg(alpha)
        rows.append(row)
    return TransversalRepresentation(
        matrix=FieldMatrix(field, rows, ncols=p.n),
        weights=used,
        matching=matching if normalize else None,
        seed=seed,
    )
