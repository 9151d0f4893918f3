from itertools import combinations
from typing import Any, Dict, Iterable, List, Tuple

from dictdiffer import diff

from gammoidkit.exceptions import StructuralError
from gammoidkit.linalg import FieldMatrix, nullspace_basis, rank
from gammoidkit.models import ExchangeReport
from gammoidkit.utils import Subset, canonical_subset


class Matroid:
    """
    A matroid on the ground set [n] = {1, ..., n}, given by its explicit base list.

    The stored form is canonical: every basis is an ascending tuple and the list is sorted
    lexicographically without duplicates, so equality is plain tuple comparison. The
    constructor checks structure only; the exchange axiom is checked by
    :func:`validate_basis_exchange`.
    """

    __slots__ = ("n", "bases", "_basis_set")

    def __init__(self, n: int, bases: Iterable[Iterable[int]]) -> None:
        if not _is_int(n) or n < 0:
            raise StructuralError(f"ground set size must be a non-negative integer, got {n!r}")
        canonical = set()
        for basis in bases:
            items = list(basis)
            if len(set(items)) != len(items):
                raise StructuralError(f"basis {items} repeats an element")
            for e in items:
                if not _is_int(e):
                    raise StructuralError(f"basis element {e!r} is not an integer")
                if not 1 <= e <= n:
                    raise StructuralError(
                        f"basis {sorted(items)} has element {e} outside [1, {n}]"
                    )
            canonical.add(tuple(sorted(items)))
        if not canonical:
            raise StructuralError("a matroid needs at least one basis")
        sizes = {len(basis) for basis in canonical}
        if len(sizes) != 1:
            raise StructuralError(f"bases have different sizes {sorted(sizes)}")
        self.n = n
        self.bases: Tuple[Subset, ...] = tuple(sorted(canonical))
        self._basis_set = frozenset(self.bases)

    @property
    def rank(self) -> int:
        return len(self.bases[0])

    @property
    def ground_set(self) -> Subset:
        return tuple(range(1, self.n + 1))

    def is_basis(self, subset: Iterable[int]) -> bool:
        return tuple(sorted(subset)) in self._basis_set

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "rank": self.rank, "bases": [list(basis) for basis in self.bases]}

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "Matroid":
        matroid = cls(obj["n"], obj["bases"])
        if "rank" in obj and obj["rank"] != matroid.rank:
            raise StructuralError(f"declared rank {obj['rank']} but bases have size {matroid.rank}")
        return matroid

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.bases == other.bases

    def __hash__(self) -> int:
        return hash((self.n, self.bases))

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_basis_exchange(m: Matroid) -> ExchangeReport:
    """
    check the exchange axiom over every ordered pair of bases
    :param m:
    :return: ok, or the first (B1, B2, e) without a partner f, in lexicographic scan order
    """
    for b1 in m.bases:
        set1 = set(b1)
        for b2 in m.bases:
            set2 = set(b2)
            for e in sorted(set1 - set2):
                reduced = set1 - {e}
                if not any(m.is_basis(reduced | {f}) for f in sorted(set2 - set1)):
                    return ExchangeReport(ok=False, counterexample=(b1, b2, e))
    return ExchangeReport(ok=True)


def dual(m: Matroid) -> Matroid:
    ground = set(m.ground_set)
    return Matroid(m.n, (ground - set(basis) for basis in m.bases))


def rank_of(m: Matroid, subset: Iterable[int]) -> int:
    s = set(canonical_subset(subset, m.n))
    return max(len(s.intersection(basis)) for basis in m.bases)


def equal(m1: Matroid, m2: Matroid) -> bool:
    return m1 == m2


def column_matroid(matrix: FieldMatrix) -> Matroid:
    """
    Matroid of the columns of a matrix, columns labelled 1..ncols.

    The bases are the column sets of size rank(matrix) that have full rank.
    """
    r = rank(matrix)
    bases = [
        tuple(j + 1 for j in columns)
        for columns in combinations(range(matrix.ncols), r)
        if rank(matrix.columns(columns)) == r
    ]
    return Matroid(matrix.ncols, bases)


def represents(matrix: FieldMatrix, m: Matroid) -> bool:
    return matrix.ncols == m.n and column_matroid(matrix) == m


def dual_representation(matrix: FieldMatrix) -> FieldMatrix:
    """
    Rows spanning the orthogonal complement of the row space; when matrix represents M
    with full row rank, the result represents the dual of M.
    """
    return nullspace_basis(matrix)


def matroid_diff(left: Matroid, right: Matroid) -> List[Any]:
    """
    structural diff of two canonical renderings, empty when equal
    """
    return [list(change) for change in diff(left.to_dict(), right.to_dict())]
