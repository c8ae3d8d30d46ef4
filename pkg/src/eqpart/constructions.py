"""Constructions of equitable 2-partitions with second eigenvalue
lambda_2(n, q), and the clique-balance conditions behind them.

Three building blocks:

* grid balance: on the product of two cliques K_q x K_q2 (the rook's
  graph), a 2-partition is equitable with eigenvalue -2 iff every maximal
  clique meets the cell in the same fraction of its size;
* permutation switching: a balanced base partition of H(2, q) is extended
  by nonessential coordinates and each alphabet-block slice is switched by
  a coordinate transposition, preserving the quotient matrix;
* alphabet lifting: blowing every symbol of H(n, q') up to a block of m
  symbols maps equitable partitions to equitable partitions of H(n, mq')
  with the same eigenvalue index set.

Lifting a partition of H(4, 2) into two induced 8-cycles yields, for every
even q, an equitable 2-partition of H(4, q) with eigenvalue lambda_2 in
which every coordinate is essential.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .hamming import GraphParams, decode_vertex, encode_vertex, neighbor_table
from .partitions import (
    NotEquitable,
    QuotientMatrix,
    RPartition,
    TwoPartition,
    equitable_check,
    extend,
    quotient_eigenvalue_indices,
)


@dataclass(frozen=True)
class AlphabetBlocks:
    """An ordered partition of the alphabet {0..q-1} into nonempty blocks."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("need at least one block")
        union: set[int] = set()
        total = 0
        for b in self.blocks:
            if not b:
                raise ValueError("blocks must be nonempty")
            union |= b
            total += len(b)
        if total != len(union):
            raise ValueError("blocks must be pairwise disjoint")
        if union != set(range(len(union))):
            raise ValueError("blocks must cover an alphabet {0..q-1} exactly")

    @property
    def q(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self) -> dict[int, int]:
        out = {}
        for i, b in enumerate(self.blocks):
            for s in b:
                out[s] = i
        return out


@dataclass(frozen=True)
class LiftBlocks(AlphabetBlocks):
    """Alphabet blocks of equal size m; block t lifts base symbol t."""

    def __post_init__(self) -> None:
        super().__post_init__()
        m = len(self.blocks[0])
        if any(len(b) != m for b in self.blocks):
            raise ValueError("lift blocks must all have the same size")

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])


@dataclass(frozen=True)
class GridImbalance:
    """A maximal clique of the grid meeting the cell in the wrong ratio."""

    clique: tuple[str, int]  # ("row", a) or ("column", b)
    ratio: Fraction


def _grid_cell_bits(q: int, q2: int, cell: Iterable[tuple[int, int]]) -> int:
    bits = 0
    for a, b in cell:
        if not (0 <= a < q and 0 <= b < q2):
            raise ValueError(f"grid vertex ({a}, {b}) out of range")
        bits |= 1 << (a * q2 + b)
    return bits


def grid_quotient(
    q: int, q2: int, cell: Iterable[tuple[int, int]]
) -> QuotientMatrix | NotEquitable:
    """Equitability of a 2-partition of the rook's graph K_q x K_q2.

    Vertices are the grid points (a, b), adjacent iff they share a row or
    a column.  Same result convention as equitable_check.
    """
    if q < 2 or q2 < 2:
        raise ValueError("need q, q2 >= 2")
    bits = _grid_cell_bits(q, q2, cell)
    total = q * q2
    if bits == 0 or bits == (1 << total) - 1:
        raise ValueError("both cells must be nonempty")
    ref: list[tuple[int, int] | None] = [None, None]
    ref_vertex = [0, 0]
    for v in range(total):
        a, b = divmod(v, q2)
        in_c = 0
        for b2 in range(q2):
            if b2 != b:
                in_c += (bits >> (a * q2 + b2)) & 1
        for a2 in range(q):
            if a2 != a:
                in_c += (bits >> (a2 * q2 + b)) & 1
        deg = q + q2 - 2
        counts = (in_c, deg - in_c)
        c = 0 if (bits >> v) & 1 else 1
        if ref[c] is None:
            ref[c] = counts
            ref_vertex[c] = v
        elif counts != ref[c]:
            seen = ref[c]
            j = 0 if seen[0] != counts[0] else 1
            return NotEquitable(
                cell=c, vertices=(ref_vertex[c], v), target_cell=j,
                counts=(seen[j], counts[j]),
            )
    return QuotientMatrix(tuple(row for row in ref if row is not None))


def grid_clique_balance(
    q: int, q2: int, cell: Iterable[tuple[int, int]]
) -> QuotientMatrix | GridImbalance:
    """Even clique distribution test on the rook's graph K_q x K_q2.

    Passes iff every row {a} x {0..q2-1} and every column {0..q-1} x {b}
    meets the cell in the same fraction rho of its size, which happens iff
    the 2-partition is equitable with eigenvalue -2.  On pass, returns the
    quotient matrix

        [[rho(q+q2) - 2,  (1-rho)(q+q2)],
         [rho(q+q2),      (1-rho)(q+q2) - 2]].

    Rows are examined before columns, each in ascending index order, and
    the first clique off the common ratio is reported.
    """
    if q < 2 or q2 < 2:
        raise ValueError("need q, q2 >= 2")
    cell = list(cell)
    bits = _grid_cell_bits(q, q2, cell)
    total = q * q2
    if bits == 0 or bits == (1 << total) - 1:
        raise ValueError("both cells must be nonempty")
    rho = Fraction(bits.bit_count(), total)
    for a in range(q):
        cnt = sum((bits >> (a * q2 + b)) & 1 for b in range(q2))
        if Fraction(cnt, q2) != rho:
            return GridImbalance(("row", a), Fraction(cnt, q2))
    for b in range(q2):
        cnt = sum((bits >> (a * q2 + b)) & 1 for a in range(q))
        if Fraction(cnt, q) != rho:
            return GridImbalance(("column", b), Fraction(cnt, q))
    s21 = rho * (q + q2)
    s12 = (1 - rho) * (q + q2)
    if s21.denominator != 1 or s12.denominator != 1:
        raise AssertionError("balanced ratio must give integer quotient entries")
    s = QuotientMatrix(((int(s21) - 2, int(s12)), (int(s21), int(s12) - 2)))
    if grid_quotient(q, q2, cell) != s:
        raise AssertionError("balanced cell failed the direct equitability check")
    return s


def permutation_switching(blocks: AlphabetBlocks, base: TwoPartition) -> TwoPartition:
    """Switch an extended base partition of H(2, q) along alphabet blocks.

    With blocks (A_1, ..., A_{n-1}) of {0..q-1} and a base 2-partition
    (C, complement) of H(2, q), the base is extended by n-2 nonessential
    coordinates and the slice x_1 in A_i is switched by the transposition
    of coordinates 2 and i+1 (the A_1 slice stays put).  The result is
    equitable with the same quotient matrix as the extension.

    The base must satisfy the two-sided balance condition: within every
    slice A_i x {0..q-1} all rows {a} x alphabet (a in A_i) and all block
    columns A_i x {b} meet C in the common fraction |C| / q^2 of their
    size.  Single-symbol blocks force that fraction to be 0 or 1, which no
    proper cell attains, so they are effectively rejected.  Violations
    raise ValueError; the output is re-verified before it is returned.
    """
    params = base.params
    if params.n != 2:
        raise ValueError("base must be a 2-partition of H(2, q)")
    q = params.q
    if blocks.q != q:
        raise ValueError("blocks must partition the alphabet of the base")
    rho = Fraction(base.size, q * q)
    for i, block in enumerate(blocks.blocks, 1):
        for a in sorted(block):
            cnt = sum(1 for b in range(q) if base.contains(a * q + b))
            if Fraction(cnt, q) != rho:
                raise ValueError(
                    f"row {a} of block {i} meets the cell in ratio {Fraction(cnt, q)}, "
                    f"expected {rho}"
                )
        for b in range(q):
            cnt = sum(1 for a in block if base.contains(a * q + b))
            if Fraction(cnt, len(block)) != rho:
                raise ValueError(
                    f"column {b} of block {i} meets the cell in ratio "
                    f"{Fraction(cnt, len(block))}, expected {rho}"
                )
    n = len(blocks.blocks) + 1
    extended = extend(base, n - 2)
    s_ref = equitable_check(extended)
    if isinstance(s_ref, NotEquitable):
        raise ValueError("balanced base failed the equitability check")
    if n == 2:
        return extended
    new_params = extended.params
    block_of = blocks.block_of()
    bits = 0
    for v in range(new_params.vertex_count):
        digits = decode_vertex(new_params, v)
        i = block_of[digits[0]]
        partner = 1 if i == 0 else i + 1  # 0-based tuple position of coordinate 2 or i+2
        if base.contains(digits[0] * q + digits[partner]):
            bits |= 1 << v
    switched = TwoPartition(new_params, bits)
    s_out = equitable_check(switched)
    if s_out != s_ref:
        raise ValueError("switched partition lost equitability; base is not valid")
    return switched


def alphabet_lift(p: RPartition, blocks: LiftBlocks) -> RPartition:
    """Blow up each symbol t of H(n, q') to the block A_t inside H(n, mq').

    The cell of a lifted vertex is the cell of its block word.  The input
    must be equitable; the output is re-verified and its quotient matrix
    must equal m*S + n(m-1)*I, which preserves the eigenvalue index set.
    """
    params = p.params
    if len(blocks.blocks) != params.q:
        raise ValueError("need exactly one block per base symbol")
    s_base = equitable_check(p)
    if isinstance(s_base, NotEquitable):
        raise ValueError("input partition is not equitable")
    m = blocks.block_size
    new_params = GraphParams(params.n, blocks.q)
    block_of = blocks.block_of()
    labels = []
    for v in range(new_params.vertex_count):
        word = tuple(block_of[x] for x in decode_vertex(new_params, v))
        labels.append(p.labels[encode_vertex(params, word)])
    lifted = RPartition(new_params, tuple(labels))
    s_out = equitable_check(lifted)
    expected = QuotientMatrix(tuple(
        tuple(m * s_base.rows[i][j] + (params.n * (m - 1) if i == j else 0)
              for j in range(s_base.r))
        for i in range(s_base.r)
    ))
    if s_out != expected:
        raise AssertionError("lifted partition has an unexpected quotient matrix")
    if quotient_eigenvalue_indices(s_out, new_params) != quotient_eigenvalue_indices(s_base, params):
        raise AssertionError("lifting changed the eigenvalue index set")
    return lifted


def lift_two_partition(p: TwoPartition, blocks: LiftBlocks) -> TwoPartition:
    """alphabet_lift specialized to 2-partitions (cell = lifted cell)."""
    lifted = alphabet_lift(RPartition.from_two_partition(p), blocks)
    bits = 0
    for v, label in enumerate(lifted.labels):
        if label == 0:
            bits |= 1 << v
    return TwoPartition(lifted.params, bits)


_EIGHT_CYCLE_TUPLES = (
    (0, 0, 0, 1),
    (0, 0, 1, 1),
    (0, 0, 1, 0),
    (0, 1, 1, 0),
    (1, 1, 1, 0),
    (1, 1, 0, 0),
    (1, 1, 0, 1),
    (1, 0, 0, 1),
)


def eight_cycle_partition() -> TwoPartition:
    """The 2-partition of H(4, 2) whose cells are both induced 8-cycles.

    Its quotient matrix is [[2, 2], [2, 2]], its second eigenvalue is
    lambda_2(4, 2) = 0, and every coordinate is essential.
    """
    params = GraphParams(4, 2)
    return TwoPartition.from_tuples(params, _EIGHT_CYCLE_TUPLES)


def is_induced_cycle(params: GraphParams, code: Iterable[int]) -> Optional[int]:
    """Length of the cycle induced by the vertex set, or None.

    The induced subgraph must be connected and 2-regular; sets of fewer
    than 3 vertices never qualify.
    """
    vs = set(code)
    if any(not 0 <= v < params.vertex_count for v in vs):
        raise ValueError("code contains out-of-range vertices")
    if len(vs) < 3:
        return None
    nbrs = neighbor_table(params)
    for v in vs:
        if sum(1 for w in nbrs[v] if w in vs) != 2:
            return None
    start = min(vs)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in nbrs[v]:
                if w in vs and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    if seen != vs:
        return None
    return len(vs)


def lifted_cycle_pair(
    q: int, split: Iterable[int], cycle_pair: TwoPartition | None = None
) -> TwoPartition:
    """Alphabet-lift an induced-8-cycle pair of H(4, 2) up to H(4, q).

    q must be even; split is the set of symbols lifting 0 and must have
    size exactly q/2.  The default cycle pair is eight_cycle_partition().
    The output is an equitable 2-partition of H(4, q) with second
    eigenvalue lambda_2(4, q) = 2q - 4.
    """
    if q < 2 or q % 2:
        raise ValueError("alphabet size q must be even and >= 2")
    split = frozenset(split)
    if any(not 0 <= s < q for s in split):
        raise ValueError("split contains symbols outside the alphabet")
    if len(split) != q // 2:
        raise ValueError(f"split must have size q/2 = {q // 2}, got {len(split)}")
    if cycle_pair is None:
        cycle_pair = eight_cycle_partition()
    cp_params = cycle_pair.params
    if (cp_params.n, cp_params.q) != (4, 2):
        raise ValueError("cycle pair must be a partition of H(4, 2)")
    if is_induced_cycle(cp_params, cycle_pair.vertices()) != 8:
        raise ValueError("cell of the cycle pair is not an induced 8-cycle")
    if is_induced_cycle(cp_params, TwoPartition(cp_params, cycle_pair.complement_bits()).vertices()) != 8:
        raise ValueError("complement of the cycle pair is not an induced 8-cycle")
    blocks = LiftBlocks((split, frozenset(range(q)) - split))
    lifted = lift_two_partition(cycle_pair, blocks)
    s = equitable_check(lifted)
    if isinstance(s, NotEquitable) or s.rows[0][0] - s.rows[1][0] != 2 * q - 4:
        raise AssertionError("lifted cycle pair lost the lambda_2 eigenvalue")
    return lifted
