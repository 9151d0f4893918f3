"""
Weighted digraphs with sinks, vertex-disjoint linkages and the strict gammoid L(G, A).
"""

import logging
from collections import defaultdict
from typing import Any, Dict, Iterable, Iterator, List, Optional, Set, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from gammoidkit.exceptions import (
    CyclicGraphError,
    DimensionMismatchError,
    SingularMatrixError,
    SingularSystemError,
)
from gammoidkit.field import BaseField, is_exact_number
from gammoidkit.linalg import FP, QQ, FieldMatrix, det, identity_minus, inverse
from gammoidkit.matroid import Matroid
from gammoidkit.models import LgvReport
from gammoidkit.utils import SplitMix64, Subset, canonical_subset, subsets_of_size

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Path = Tuple[int, ...]


class WeightedDigraph(BaseModel):
    """
    Directed graph on [n]. `weights` may cover only some edges; the rest are drawn from
    a seed when a weighted object is built.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    edges: Tuple[Edge, ...] = ()
    weights: Dict[Edge, Any] = {}
    allow_loops: bool = False

    @field_validator("edges")
    @classmethod
    def edges_unique(cls, value: Tuple[Edge, ...]) -> Tuple[Edge, ...]:
        if len(set(value)) != len(value):
            duplicates = sorted({e for e in value if value.count(e) > 1})
            raise ValueError(f"duplicate edges {duplicates}")
        return tuple(sorted(value))

    @model_validator(mode="after")
    def edges_in_range(self) -> "WeightedDigraph":
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {u}->{v} leaves [1, {self.n}]")
            if u == v and not self.allow_loops:
                raise ValueError(f"loop at vertex {u}")
        edge_set = set(self.edges)
        for edge, weight in self.weights.items():
            if edge not in edge_set:
                raise ValueError(f"weight given for missing edge {edge}")
            if not is_exact_number(weight):
                raise ValueError(f"weight of {edge} must be an exact number, got {weight!r}")
        return self

    def successors(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.edges:
            out[u].append(v)
        return out

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return graph

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())


class SinkSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...] = ()

    @field_validator("vertices", mode="before")
    @classmethod
    def sort_vertices(cls, value: Iterable[int]) -> Tuple[int, ...]:
        return tuple(sorted(set(value)))

    @classmethod
    def of(cls, value: Union["SinkSet", Iterable[int]]) -> "SinkSet":
        return value if isinstance(value, SinkSet) else cls(vertices=value)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.vertices

    @property
    def size(self) -> int:
        return len(self.vertices)

    def check_within(self, n: int) -> "SinkSet":
        canonical_subset(self.vertices, n)
        return self


class Routing(BaseModel):
    """
    Pairwise vertex-disjoint paths from a start set onto the sinks.

    `endpoint_permutation` lists (start, end) pairs by ascending start; `sign` is the parity
    of the permutation taking the ascending starts to the ascending ends.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    paths: Tuple[Path, ...]
    endpoint_permutation: Tuple[Tuple[int, int], ...]
    sign: int
    weight: Any


class Linkage(BaseModel):
    model_config = ConfigDict(frozen=True)

    size: int
    paths: Tuple[Path, ...] = ()


class PathSums(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: FieldMatrix
    weights: Dict[Edge, Any]


class GammoidRepresentation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: FieldMatrix
    weights: Dict[Edge, Any]
    sinks: Tuple[int, ...]


def sinkify(g: WeightedDigraph, a: Union[SinkSet, Iterable[int]]) -> WeightedDigraph:
    """
    drop every edge leaving a sink; L(G, A) does not change
    """
    sinks = SinkSet.of(a).check_within(g.n)
    edges = tuple(edge for edge in g.edges if edge[0] not in sinks)
    if len(edges) == len(g.edges):
        return g
    return WeightedDigraph(
        n=g.n,
        edges=edges,
        weights={edge: w for edge, w in g.weights.items() if edge[0] not in sinks},
        allow_loops=g.allow_loops,
    )


def resolve_weights(
    g: WeightedDigraph,
    field: BaseField = FP,
    seed: int = 1,
    weights: Optional[Dict[Edge, Any]] = None,
    rng: Optional[SplitMix64] = None,
) -> Dict[Edge, Any]:
    """
    One value per edge: explicit weights (from `weights`, then from the graph) coerced into
    the field, the rest drawn nonzero from the seeded stream in ascending edge order.
    """
    rng = rng or SplitMix64(seed)
    explicit = {**g.weights, **(weights or {})}
    resolved = {}
    for edge in g.edges:
        if edge in explicit:
            resolved[edge] = field.coerce(explicit[edge])
        else:
            resolved[edge] = field.random_nonzero(rng)
    return resolved


def weight_matrix(g: WeightedDigraph, weights: Dict[Edge, Any], field: BaseField) -> FieldMatrix:
    rows = [[field.zero()] * g.n for _ in range(g.n)]
    for (u, v), w in weights.items():
        rows[u - 1][v - 1] = w
    return FieldMatrix._trusted(field, rows, g.n)


def _fully_weighted(g: WeightedDigraph, weights: Optional[Dict[Edge, Any]]) -> bool:
    explicit = {**g.weights, **(weights or {})}
    return all(edge in explicit for edge in g.edges)


def path_sum_matrix(
    g: WeightedDigraph,
    seed: int = 1,
    field: BaseField = FP,
    weights: Optional[Dict[Edge, Any]] = None,
    max_retries: int = 3,
) -> PathSums:
    """
    P = (I - W)^-1, so P[i][j] is the sum of the weights of all paths from i to j.

    When some weights are drawn at random, a singular I - W is retried with fresh draws
    from the same stream up to `max_retries` times.
    :param g:
    :param seed:
    :param field:
    :param weights: explicit edge weights, overriding the graph's own
    :param max_retries:
    :return: P and the weights used
    """
    rng = SplitMix64(seed)
    attempts = 1 if _fully_weighted(g, weights) else 1 + max_retries
    for attempt in range(attempts):
        resolved = resolve_weights(g, field, weights=weights, rng=rng)
        try:
            matrix = inverse(identity_minus(weight_matrix(g, resolved, field)))
        except SingularMatrixError:
            logger.warning(
                "I - W is singular for seed %s (attempt %d of %d)", seed, attempt + 1, attempts
            )
            continue
        return PathSums(matrix=matrix, weights=resolved)
    raise SingularSystemError(f"I - W stayed singular after {attempts} attempt(s)")


def path_sum_by_dp(
    g: WeightedDigraph, weights: Dict[Edge, Any], field: BaseField = QQ
) -> FieldMatrix:
    """
    path sums of a DAG accumulated in reverse topological order
    """
    graph = g.to_networkx()
    if not nx.is_directed_acyclic_graph(graph):
        raise CyclicGraphError("path sums by accumulation need an acyclic graph")
    successors = g.successors()
    rows: Dict[int, List[Any]] = {}
    for i in reversed(list(nx.lexicographical_topological_sort(graph))):
        row = [field.one() if j == i else field.zero() for j in range(1, g.n + 1)]
        for v in successors[i]:
            w = field.coerce(weights[(i, v)])
            row = [field.add(x, field.mul(w, y)) for x, y in zip(row, rows[v])]
        rows[i] = row
    return FieldMatrix._trusted(field, [rows[i] for i in range(1, g.n + 1)], g.n)


def gammoid_representation(
    g: WeightedDigraph,
    a: Union[SinkSet, Iterable[int]],
    seed: int = 1,
    field: BaseField = FP,
    weights: Optional[Dict[Edge, Any]] = None,
    max_retries: int = 3,
) -> GammoidRepresentation:
    """
    Y with row i equal to (p_{1,a_i}, ..., p_{n,a_i}) for the ascending sinks a_i.

    The sink columns form an identity block.
    """
    sinks = SinkSet.of(a).check_within(g.n)
    h = sinkify(g, sinks)
    sums = path_sum_matrix(h, seed=seed, field=field, weights=weights, max_retries=max_retries)
    p = sums.matrix
    rows = [[p[j, sink - 1] for j in range(g.n)] for sink in sinks.vertices]
    return GammoidRepresentation(
        matrix=FieldMatrix._trusted(field, rows, g.n), weights=sums.weights, sinks=sinks.vertices
    )


def _flow_network(
    g: WeightedDigraph, sinks: SinkSet, sources: Subset
) -> Tuple[Dict[Tuple[int, int], int], Dict[int, List[int]]]:
    # vertex v splits into 2v (in) and 2v + 1 (out); 0 is the super-source, 1 the super-sink
    capacity: Dict[Tuple[int, int], int] = {}
    neighbours: Dict[int, Set[int]] = defaultdict(set)

    def arc(x: int, y: int) -> None:
        capacity[(x, y)] = 1
        capacity.setdefault((y, x), 0)
        neighbours[x].add(y)
        neighbours[y].add(x)

    for v in range(1, g.n + 1):
        arc(2 * v, 2 * v + 1)
    for u, v in g.edges:
        if u != v:
            arc(2 * u + 1, 2 * v)
    for s in sources:
        arc(0, 2 * s)
    for t in sinks.vertices:
        arc(2 * t + 1, 1)
    return capacity, {x: sorted(ys) for x, ys in neighbours.items()}


def max_linkage(
    g: WeightedDigraph, a: Union[SinkSet, Iterable[int]], b: Iterable[int]
) -> Linkage:
    """
    Maximum number of vertex-disjoint paths from distinct vertices of b to distinct sinks.

    Unit-capacity augmenting paths on the vertex-split network, searched depth first with
    ascending neighbour order; the witness paths are listed by ascending start.
    """
    sinks = SinkSet.of(a).check_within(g.n)
    h = sinkify(g, sinks)
    sources = canonical_subset(b, g.n)
    residual, order = _flow_network(h, sinks, sources)
    real = {arc for arc, c in residual.items() if c == 1}

    def augment(x: int, seen: Set[int]) -> bool:
        if x == 1:
            return True
        seen.add(x)
        for y in order.get(x, ()):
            if y not in seen and residual[(x, y)] > 0 and augment(y, seen):
                residual[(x, y)] -= 1
                residual[(y, x)] += 1
                return True
        return False

    size = 0
    while augment(0, set()):
        size += 1

    def carries_flow(x: int, y: int) -> bool:
        return (x, y) in real and residual[(x, y)] == 0

    successors = h.successors()
    paths = []
    for s in sources:
        if not carries_flow(0, 2 * s):
            continue
        path = [s]
        while not carries_flow(2 * path[-1] + 1, 1):
            tail = 2 * path[-1] + 1
            path.append(next(v for v in successors[path[-1]] if carries_flow(tail, 2 * v)))
        paths.append(tuple(path))
    return Linkage(size=size, paths=tuple(paths))


def gammoid_matroid(g: WeightedDigraph, a: Union[SinkSet, Iterable[int]]) -> Matroid:
    """
    L(G, A): the |A|-subsets linkable onto A. A itself is always a basis.
    """
    sinks = SinkSet.of(a).check_within(g.n)
    h = sinkify(g, sinks)
    k = sinks.size
    bases = [b for b in subsets_of_size(g.n, k) if max_linkage(h, sinks, b).size == k]
    return Matroid(g.n, bases)


def permutation_sign(images: List[int]) -> int:
    """
    sign of the permutation i -> images[i] of 0..k-1
    """
    inversions = sum(
        1 for i in range(len(images)) for j in range(i + 1, len(images)) if images[i] > images[j]
    )
    return -1 if inversions % 2 else 1


def _require_dag(g: WeightedDigraph) -> None:
    if not g.is_acyclic():
        raise CyclicGraphError("routing enumeration needs an acyclic graph")


def _iter_routings(
    h: WeightedDigraph, sinks: SinkSet, starts: Subset
) -> Iterator[Tuple[Path, ...]]:
    successors = h.successors()
    start_set = set(starts)

    def walk(v: int, path: Path, blocked: Set[int]) -> Iterator[Path]:
        if v in sinks:
            yield path
            return
        for w in successors[v]:
            if w not in blocked and w not in path:
                yield from walk(w, path + (w,), blocked)

    def route(k: int, used: Set[int], chosen: Tuple[Path, ...]) -> Iterator[Tuple[Path, ...]]:
        if k == len(starts):
            yield chosen
            return
        s = starts[k]
        blocked = used | (start_set - {s})
        for path in walk(s, (s,), blocked):
            yield from route(k + 1, used | set(path), chosen + (path,))

    return route(0, set(), ())


def enumerate_routings(
    g: WeightedDigraph,
    a: Union[SinkSet, Iterable[int]],
    b: Iterable[int],
    weights: Optional[Dict[Edge, Any]] = None,
    seed: int = 1,
    field: BaseField = QQ,
) -> List[Routing]:
    """
    Every routing from b onto the sinks of an acyclic digraph, by backtracking.

    Paths share no vertex at all; a start that is itself a sink contributes its
    length-0 path.
    :param g:
    :param a: sinks
    :param b: start set with |b| = |a|
    :param weights: explicit edge weights
    :param seed: seed for weights not given explicitly
    :param field:
    :return: routings in depth-first order (starts ascending, neighbours ascending)
    """
    sinks = SinkSet.of(a).check_within(g.n)
    starts = canonical_subset(b, g.n)
    if len(starts) != sinks.size:
        raise DimensionMismatchError(f"|B| = {len(starts)} but |A| = {sinks.size}")
    h = sinkify(g, sinks)
    _require_dag(h)
    resolved = resolve_weights(h, field, seed=seed, weights=weights)
    return [
        _make_routing(paths, sinks, resolved, field)
        for paths in _iter_routings(h, sinks, starts)
    ]


def _make_routing(
    paths: Tuple[Path, ...], sinks: SinkSet, weights: Dict[Edge, Any], field: BaseField
) -> Routing:
    position = {t: i for i, t in enumerate(sinks.vertices)}
    weight = field.one()
    for path in paths:
        for edge in zip(path, path[1:]):
            weight = field.mul(weight, weights[edge])
    return Routing(
        paths=paths,
        endpoint_permutation=tuple((path[0], path[-1]) for path in paths),
        sign=permutation_sign([position[path[-1]] for path in paths]),
        weight=weight,
    )


def signed_routing_sum(routings: Iterable[Routing], field: BaseField) -> Any:
    total = field.zero()
    for routing in routings:
        term = routing.weight if routing.sign > 0 else field.neg(routing.weight)
        total = field.add(total, term)
    return total


def lgv_check(
    g: WeightedDigraph,
    a: Union[SinkSet, Iterable[int]],
    b: Iterable[int],
    weights: Optional[Dict[Edge, Any]] = None,
    seed: int = 1,
    field: BaseField = QQ,
) -> LgvReport:
    """
    compare det of Y's columns b with the signed weighted sum of the routings from b
    """
    return lgv_suite(g, a, weights=weights, seed=seed, field=field, subsets=[b])[0]


def lgv_suite(
    g: WeightedDigraph,
    a: Union[SinkSet, Iterable[int]],
    weights: Optional[Dict[Edge, Any]] = None,
    seed: int = 1,
    field: BaseField = QQ,
    subsets: Optional[Iterable[Iterable[int]]] = None,
) -> List[LgvReport]:
    """
    lgv_check for several start sets (default: every |A|-subset) sharing one Y
    """
    sinks = SinkSet.of(a).check_within(g.n)
    h = sinkify(g, sinks)
    _require_dag(h)
    resolved = resolve_weights(h, field, seed=seed, weights=weights)
    y = gammoid_representation(h, sinks, field=field, weights=resolved).matrix
    if subsets is None:
        subsets = subsets_of_size(g.n, sinks.size)
    reports = []
    for b in subsets:
        starts = canonical_subset(b, g.n)
        if len(starts) != sinks.size:
            raise DimensionMismatchError(f"|B| = {len(starts)} but |A| = {sinks.size}")
        routings = [
            _make_routing(paths, sinks, resolved, field)
            for paths in _iter_routings(h, sinks, starts)
        ]
        determinant = det(y.columns([j - 1 for j in starts]))
        signed_sum = signed_routing_sum(routings, field)
        reports.append(
            LgvReport(
                subset=starts,
                determinant=determinant,
                signed_sum=signed_sum,
                routings=len(routings),
                equal=determinant == signed_sum,
            )
        )
    return reports
