"""Vertex partitions of H(n, q) and their equitable-partition certificates.

A partition (C_1, ..., C_r) is equitable when every vertex of C_i has a
number of neighbors in C_j depending only on (i, j); those counts form the
quotient matrix S.  For a 2-partition the cell order is (C, complement),
so S[0][0] counts neighbors inside C of a C vertex.  All checks run on
exact integers; rationals use fractions.Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .hamming import (
    Automorphism,
    GraphParams,
    eigenvalue,
    encode_vertex,
    decode_vertex,
    essential_coordinates_of_values,
    neighbor_table,
    vertex_map,
)


@dataclass(frozen=True)
class QuotientMatrix:
    """Square matrix of neighbor counts, rows indexed by cell."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        r = len(self.rows)
        if r == 0 or any(len(row) != r for row in self.rows):
            raise ValueError("quotient matrix must be square and nonempty")
        if any(x < 0 for row in self.rows for x in row):
            raise ValueError("quotient matrix entries must be nonnegative")

    @property
    def r(self) -> int:
        return len(self.rows)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)


@dataclass(frozen=True)
class NotEquitable:
    """Witness that a partition is not equitable.

    vertices = (u, v) lie in the same cell but have count_u != count_v
    neighbors in the cell target_cell; u is the first vertex of that cell
    in index order and v the first conflicting vertex after it.
    """

    cell: int
    vertices: tuple[int, int]
    target_cell: int
    counts: tuple[int, int]


@dataclass(frozen=True)
class NotCompletelyRegular:
    """The distance partition of the code is not equitable."""

    witness: NotEquitable


@dataclass(frozen=True)
class FiberMismatch:
    """A fiber {x in C : x_k = symbol} with an unexpected size."""

    coordinate: int
    symbol: int
    count: int
    expected: Fraction


@dataclass(frozen=True)
class TwoPartition:
    """An ordered 2-partition (C, complement) of H(n, q).

    cell is an integer bitset with bit v set iff vertex v lies in C.
    Both cells must be nonempty.
    """

    params: GraphParams
    cell: int

    def __post_init__(self) -> None:
        n_bits = self.params.vertex_count
        if self.cell >> n_bits:
            raise ValueError("cell bitset has bits beyond q^n")
        if self.cell == 0 or self.cell == (1 << n_bits) - 1:
            raise ValueError("both cells of a 2-partition must be nonempty")

    @classmethod
    def from_vertices(cls, params: GraphParams, vertices: Iterable[int]) -> "TwoPartition":
        bits = 0
        for v in vertices:
            if not 0 <= v < params.vertex_count:
                raise ValueError(f"vertex {v} outside [0, {params.vertex_count})")
            bits |= 1 << v
        return cls(params, bits)

    @classmethod
    def from_tuples(cls, params: GraphParams, tuples: Iterable[Sequence[int]]) -> "TwoPartition":
        return cls.from_vertices(params, (encode_vertex(params, t) for t in tuples))

    def contains(self, v: int) -> bool:
        return bool((self.cell >> v) & 1)

    @property
    def size(self) -> int:
        return self.cell.bit_count()

    def vertices(self) -> list[int]:
        return [v for v in range(self.params.vertex_count) if (self.cell >> v) & 1]

    def complement_bits(self) -> int:
        return ((1 << self.params.vertex_count) - 1) ^ self.cell

    def complement(self) -> "TwoPartition":
        """The same partition with the cells swapped."""
        return TwoPartition(self.params, self.complement_bits())

    def labels(self) -> tuple[int, ...]:
        return tuple(0 if (self.cell >> v) & 1 else 1 for v in range(self.params.vertex_count))


@dataclass(frozen=True)
class RPartition:
    """An ordered r-partition given by a cell label per vertex."""

    params: GraphParams
    labels: tuple[int, ...]
    r: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.labels) != self.params.vertex_count:
            raise ValueError("need one label per vertex")
        r = max(self.labels) + 1
        if r < 2:
            raise ValueError("need at least 2 cells")
        seen = set(self.labels)
        if seen != set(range(r)):
            raise ValueError("labels must use every cell index 0..r-1")
        object.__setattr__(self, "r", r)

    @classmethod
    def from_two_partition(cls, p: TwoPartition) -> "RPartition":
        return cls(p.params, p.labels())


Partition = Union[TwoPartition, RPartition]


def _partition_labels(p: Partition) -> tuple[Sequence[int], int]:
    if isinstance(p, TwoPartition):
        return p.labels(), 2
    return p.labels, p.r


def equitable_check(p: Partition) -> QuotientMatrix | NotEquitable:
    """Quotient matrix of p, or the first witness that none exists.

    Vertices are scanned in index order; the reference count vector of a
    cell is that of its first vertex, and the witness pairs it with the
    first vertex whose counts differ.
    """
    labels, r = _partition_labels(p)
    nbrs = neighbor_table(p.params)
    ref: list[tuple[int, ...] | None] = [None] * r
    ref_vertex = [0] * r
    for v in range(p.params.vertex_count):
        counts = [0] * r
        for w in nbrs[v]:
            counts[labels[w]] += 1
        t = tuple(counts)
        c = labels[v]
        if ref[c] is None:
            ref[c] = t
            ref_vertex[c] = v
        elif t != ref[c]:
            seen = ref[c]
            j = next(i for i in range(r) if seen[i] != t[i])
            return NotEquitable(
                cell=c,
                vertices=(ref_vertex[c], v),
                target_cell=j,
                counts=(seen[j], t[j]),
            )
    return QuotientMatrix(tuple(row for row in ref if row is not None))


def quotient_eigenvalues(s: QuotientMatrix, params: GraphParams) -> tuple[int, int]:
    """(degree, S11 - S21): the two eigenvalues of a 2x2 quotient matrix."""
    if s.r != 2:
        raise ValueError("quotient eigenvalue pair needs a 2x2 matrix")
    if s.row_sums() != (params.degree, params.degree):
        raise ValueError(
            f"row sums {s.row_sums()} do not match the degree {params.degree}"
        )
    return params.degree, s.rows[0][0] - s.rows[1][0]


def quotient_eigenvalue_indices(s: QuotientMatrix, params: GraphParams) -> dict[int, int]:
    """Multiplicity of each graph eigenvalue index in the quotient spectrum.

    Exact: for every index i the kernel dimension of S - lambda_i(n,q) I is
    computed by rational Gaussian elimination.  The multiplicities must sum
    to r, otherwise the quotient has an eigenvalue outside the graph
    spectrum and a ValueError is raised.
    """
    out: dict[int, int] = {}
    total = 0
    for i in range(params.n + 1):
        lam = eigenvalue(params, i)
        mult = s.r - _rank_shifted(s, lam)
        if mult:
            out[i] = mult
            total += mult
    if total != s.r:
        raise ValueError("quotient matrix has an eigenvalue outside the graph spectrum")
    return out


def _rank_shifted(s: QuotientMatrix, lam: int) -> int:
    r = s.r
    m = [[Fraction(s.rows[i][j] - (lam if i == j else 0)) for j in range(r)] for i in range(r)]
    rank = 0
    for col in range(r):
        pivot = next((i for i in range(rank, r) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(r):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def predicted_cell_size(s: QuotientMatrix, params: GraphParams) -> Fraction:
    """|C| = q^n * S21 / (S12 + S21), exactly, for a 2x2 quotient matrix."""
    if s.r != 2:
        raise ValueError("cell size prediction needs a 2x2 matrix")
    s12, s21 = s.rows[0][1], s.rows[1][0]
    if s12 + s21 == 0:
        raise ValueError("S12 + S21 = 0 admits no 2-partition of a connected graph")
    return Fraction(params.vertex_count * s21, s12 + s21)


def orthogonal_array_check(p: TwoPartition, s: QuotientMatrix) -> FiberMismatch | None:
    """Check every fiber {x in C : x_k = a} has size S21 * q^(n-2) / 2.

    Applies only when the second quotient eigenvalue is the second graph
    eigenvalue; otherwise a ValueError is raised.  Returns None on pass or
    the first mismatching fiber (coordinates ascending, symbols ascending).
    """
    params = p.params
    lam = quotient_eigenvalues(s, params)[1]
    if lam != eigenvalue(params, 2):
        raise ValueError(
            f"fiber size law needs second eigenvalue {eigenvalue(params, 2)}, got {lam}"
        )
    expected = Fraction(s.rows[1][0] * params.q ** (params.n - 2), 2)
    counts = [[0] * params.q for _ in range(params.n)]
    for v in p.vertices():
        for k, x in enumerate(decode_vertex(params, v)):
            counts[k][x] += 1
    for k in range(params.n):
        for a in range(params.q):
            if counts[k][a] != expected:
                return FiberMismatch(k + 1, a, counts[k][a], expected)
    return None


def essential_coordinates(p: Partition) -> frozenset[int]:
    """Coordinates along which some adjacent pair changes cell."""
    labels, _ = _partition_labels(p)
    return essential_coordinates_of_values(p.params, labels)


def reduce(p: TwoPartition) -> tuple[TwoPartition, tuple[int, ...]]:
    """Delete all nonessential coordinates, highest index first.

    Returns the reduced partition together with the deleted coordinates
    (descending).  Deleting a nonessential coordinate keeps the partition
    equitable with the same eigenvalue index.
    """
    params = p.params
    ess = essential_coordinates(p)
    removed = tuple(sorted(set(range(1, params.n + 1)) - ess, reverse=True))
    if not removed:
        return p, ()
    if len(removed) == params.n:
        raise ValueError("partition depends on no coordinate; cells cannot both be nonempty")
    kept = sorted(ess)
    new_params = GraphParams(len(kept), params.q)
    bits = 0
    for w in range(new_params.vertex_count):
        digits = decode_vertex(new_params, w)
        full = [0] * params.n
        for pos, k in enumerate(kept):
            full[k - 1] = digits[pos]
        if p.contains(encode_vertex(params, full)):
            bits |= 1 << w
    return TwoPartition(new_params, bits), removed


def extend(p: TwoPartition, d: int) -> TwoPartition:
    """Append d fresh nonessential coordinates: C x A^d inside H(n+d, q).

    The quotient matrix gains d(q-1) on the diagonal and the eigenvalue
    index is preserved.
    """
    if d < 0:
        raise ValueError("cannot extend by a negative number of coordinates")
    if d == 0:
        return p
    params = p.params
    new_params = GraphParams(params.n + d, params.q)
    block = params.q ** d
    run = (1 << block) - 1
    bits = 0
    for v in p.vertices():
        bits |= run << (v * block)
    return TwoPartition(new_params, bits)


def spectral_check(p: TwoPartition, lam: int) -> tuple[int, int] | None:
    """Check that (A - lam I) applied to the cell indicator is constant.

    This holds iff p is equitable with second quotient eigenvalue lam.
    Returns None on pass, else the first vertex pair with different
    residual values.  Kept independent of equitable_check on purpose so
    the two certify each other.
    """
    params = p.params
    cell = p.cell
    q = params.q
    residual0 = None
    for v in range(params.vertex_count):
        acc = 0
        stride = params.vertex_count
        for _ in range(params.n):
            stride //= q
            d = (v // stride) % q
            base = v - d * stride
            for s_ in range(q):
                if s_ != d:
                    acc += (cell >> (base + s_ * stride)) & 1
        res = acc - lam * ((cell >> v) & 1)
        if residual0 is None:
            residual0 = res
            first = v
        elif res != residual0:
            return (first, v)
    return None


def distance_partition_check(
    params: GraphParams, code: Iterable[int]
) -> QuotientMatrix | NotCompletelyRegular:
    """Equitability of the distance partition of a nonempty vertex set.

    Cells are the sets of vertices at Hamming distance 0, 1, ... from the
    code.  When equitable, the returned matrix is tridiagonal and the code
    is completely regular.
    """
    vs = sorted(set(code))
    if not vs:
        raise ValueError("code must be nonempty")
    if vs[0] < 0 or vs[-1] >= params.vertex_count:
        raise ValueError("code contains out-of-range vertices")
    nbrs = neighbor_table(params)
    dist = [-1] * params.vertex_count
    frontier = vs
    for v in frontier:
        dist[v] = 0
    d = 0
    while frontier:
        nxt = []
        for v in frontier:
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = d + 1
                    nxt.append(w)
        frontier = nxt
        d += 1
    if max(dist) == 0:
        raise ValueError("code covers every vertex; the distance partition has one cell")
    result = equitable_check(RPartition(params, tuple(dist)))
    if isinstance(result, NotEquitable):
        return NotCompletelyRegular(result)
    return result


def transform(p: TwoPartition, g: Automorphism) -> TwoPartition:
    """The image partition (g(C), g(C) complement)."""
    vm = vertex_map(p.params, g)
    bits = 0
    for v in p.vertices():
        bits |= 1 << vm[v]
    return TwoPartition(p.params, bits)
