"""
The correspondence between digraphs with sinks and bipartite graphs with a complete
matching, and the checks that L(G, A) is the dual of M[H].
"""

from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

from gammoidkit.exceptions import DimensionMismatchError, NoCompleteMatchingError
from gammoidkit.field import BaseField
from gammoidkit.gammoid import (
    Edge,
    SinkSet,
    WeightedDigraph,
    gammoid_matroid,
    gammoid_representation,
    sinkify,
)
from gammoidkit.linalg import FP, FieldMatrix, matmul, rank
from gammoidkit.matroid import column_matroid, dual, matroid_diff
from gammoidkit.models import DualityReport, OrthogonalityReport
from gammoidkit.transversal import (
    BipartiteGraph,
    Matching,
    Presentation,
    WeightKey,
    max_matching,
    presentation_to_bipartite,
    transversal_matroid,
    transversal_representation,
)


class DualPair(BaseModel):
    """
    (G, A) together with H and its complete matching {(u, u^) : u not in A}.

    Right vertex i of H stands for the i-th non-sink of G in ascending order, and its set
    is {u} plus the out-neighbours of u.
    """

    model_config = ConfigDict(frozen=True)

    digraph: WeightedDigraph
    sinks: SinkSet
    presentation: Presentation
    matching: Matching

    @property
    def bipartite(self) -> BipartiteGraph:
        return presentation_to_bipartite(self.presentation)

    @property
    def non_sinks(self) -> Tuple[int, ...]:
        return tuple(u for u in range(1, self.digraph.n + 1) if u not in self.sinks)

    def transversal_weights(self, edge_weights: Dict[Edge, Any]) -> Dict[WeightKey, Any]:
        """
        alpha_ij of X from the edge weights: row i is the i-th non-sink u, alpha_iv = w(u, v)
        """
        successors = self.digraph.successors()
        return {
            (i, v): edge_weights[(u, v)]
            for i, u in enumerate(self.non_sinks, start=1)
            for v in successors[u]
        }


def digraph_to_bipartite(g: WeightedDigraph, a: Union[SinkSet, Iterable[int]]) -> DualPair:
    sinks = SinkSet.of(a).check_within(g.n)
    h = sinkify(g, sinks)
    successors = h.successors()
    non_sinks = [u for u in range(1, g.n + 1) if u not in sinks]
    presentation = Presentation(n=g.n, sets=[[u, *successors[u]] for u in non_sinks])
    return DualPair(
        digraph=h,
        sinks=sinks,
        presentation=presentation,
        matching=Matching.from_representatives(non_sinks),
    )


def bipartite_to_digraph(h: Presentation, matching: Optional[Matching] = None) -> DualPair:
    """
    Recover (G, A) from H and a complete matching.

    The vertex matched to right vertex i gets an edge to every other element of A_i; the
    unmatched vertices are the sinks. Without an explicit matching the deterministic
    maximum matching is used.
    :param h: presentation of H
    :param matching: complete matching, (left, right) pairs
    :return: the canonical pair of the recovered digraph
    """
    g = presentation_to_bipartite(h)
    if matching is None:
        matching = max_matching(g)
    if matching.size < h.r or not matching.is_matching_of(g):
        raise NoCompleteMatchingError(
            f"need a matching covering all {h.r} sets, found {max_matching(g).size}"
        )
    representatives = matching.representatives()
    edges = [
        (representatives[i], v)
        for i, a in enumerate(h.sets, start=1)
        for v in a
        if v != representatives[i]
    ]
    matched = set(representatives.values())
    sinks = [v for v in range(1, h.n + 1) if v not in matched]
    return digraph_to_bipartite(WeightedDigraph(n=h.n, edges=edges), sinks)


def verify_recurrence(
    y_row: Sequence[Any],
    g: WeightedDigraph,
    a: Union[SinkSet, Iterable[int]],
    weights: Dict[Edge, Any],
    field: BaseField = FP,
) -> bool:
    """
    y_i = sum over out-neighbours j of alpha_ij * y_j, for every non-sink i
    """
    if len(y_row) != g.n:
        raise DimensionMismatchError(f"vector of length {len(y_row)} for {g.n} vertices")
    sinks = SinkSet.of(a).check_within(g.n)
    h = sinkify(g, sinks)
    y = [field.coerce(value) for value in y_row]
    successors = h.successors()
    for i in range(1, g.n + 1):
        if i in sinks:
            continue
        total = field.zero()
        for j in successors[i]:
            total = field.add(total, field.mul(field.coerce(weights[(i, j)]), y[j - 1]))
        if total != y[i - 1]:
            return False
    return True


class PairRepresentations(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: FieldMatrix
    y: FieldMatrix
    weights: Dict[Edge, Any]


def pair_representations(
    pair: DualPair, seed: int = 1, field: BaseField = FP, max_retries: int = 3
) -> PairRepresentations:
    """
    X (normalized on the pair's matching) and Y built from one weight assignment
    """
    y = gammoid_representation(
        pair.digraph, pair.sinks, seed=seed, field=field, max_retries=max_retries
    )
    x = transversal_representation(
        pair.presentation,
        seed=seed,
        normalize=True,
        matching=pair.matching,
        weights=pair.transversal_weights(y.weights),
        field=field,
    )
    return PairRepresentations(x=x.matrix, y=y.matrix, weights=y.weights)


def verify_orthogonality(
    pair: DualPair, seed: int = 1, field: BaseField = FP, max_retries: int = 3
) -> OrthogonalityReport:
    """
    X Y^T = 0 with rank X = r and rank Y = n - r, so the row spaces are complementary
    """
    reps = pair_representations(pair, seed=seed, field=field, max_retries=max_retries)
    n, r = pair.digraph.n, pair.presentation.r
    product_is_zero = matmul(reps.x, reps.y.transpose()).is_zero()
    rank_x, rank_y = rank(reps.x), rank(reps.y)
    rows_ok = all(
        verify_recurrence(row, pair.digraph, pair.sinks, reps.weights, field) for row in reps.y.rows
    )
    return OrthogonalityReport(
        product_is_zero=product_is_zero,
        rank_x=rank_x,
        rank_y=rank_y,
        r=r,
        n=n,
        rows_satisfy_recurrence=rows_ok,
        complementary=product_is_zero and rank_x == r and rank_y == n - r,
    )


def verify_representations(
    pair: DualPair, seed: int = 1, field: BaseField = FP, max_retries: int = 3
) -> Dict[str, bool]:
    """
    whether the columns of X represent M[H] and the columns of Y represent L(G, A)
    """
    reps = pair_representations(pair, seed=seed, field=field, max_retries=max_retries)
    return {
        "x_represents_transversal": column_matroid(reps.x)
        == transversal_matroid(pair.presentation),
        "y_represents_gammoid": column_matroid(reps.y) == gammoid_matroid(pair.digraph, pair.sinks),
    }


def verify_cotransversal_duality(pair: DualPair) -> DualityReport:
    left = gammoid_matroid(pair.digraph, pair.sinks)
    right = dual(transversal_matroid(pair.presentation))
    equal = left == right
    return DualityReport(
        equal=equal, left=left, right=right, diff=[] if equal else matroid_diff(left, right)
    )
