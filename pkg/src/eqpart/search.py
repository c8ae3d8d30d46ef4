"""Exhaustive search over 2-partitions and ternary functions of H(n, q).

Two independent enumeration routes are kept deliberately separate so they
can certify each other: a plain sweep over all cell bitsets (desk scale
only) and a backtracking search driven by candidate quotient matrices.
The backtracking search tree is sharded at a fixed prefix depth; shards
can run in worker processes, and their merged, sorted union is identical
for any thread count.

Canonical forms minimize the cell bitset over the full group of
coordinate and symbol permutations by branch and bound, so two partitions
are isomorphic iff their canonical forms coincide.  Complement swaps are
not quotiented out: (C, complement) and (complement, C) are distinct.
"""

from __future__ import annotations

import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .constructions import (
    AlphabetBlocks,
    is_induced_cycle,
    lifted_cycle_pair,
    permutation_switching,
)
from .eigenfunctions import (
    Constant,
    NotMember,
    QuasiCross,
    QuasiString,
    VertexFunction,
    classify_top_two,
    in_top_two_eigenspaces,
)
from .hamming import GraphParams, eigenvalue, neighbor_table
from .partitions import (
    NotEquitable,
    QuotientMatrix,
    TwoPartition,
    equitable_check,
    essential_coordinates,
    predicted_cell_size,
)

BRUTE_FORCE_LIMIT = 25          # vertex-count bound for the 2^(q^n) sweep
TERNARY_SWEEP_LIMIT = 1 << 24   # bound on 3^(q^n) for the function sweep
CANONICAL_N_LIMIT = 5
CANONICAL_Q_LIMIT = 5
_SHARD_DEPTH = 10               # fixed prefix depth; independent of threads


@dataclass(frozen=True)
class EnumConstraints:
    """Restrictions applied while enumerating 2-partitions.

    At most one of quotient / eigenvalue_index may be set.  reduced_only
    keeps partitions with every coordinate essential; up_to_iso keeps one
    canonical representative per isomorphism class.
    """

    quotient: Optional[QuotientMatrix] = None
    eigenvalue_index: Optional[int] = None
    reduced_only: bool = False
    up_to_iso: bool = False

    def __post_init__(self) -> None:
        if self.quotient is not None and self.eigenvalue_index is not None:
            raise ValueError("give a quotient matrix or an eigenvalue index, not both")


def candidate_quotient_matrices(
    params: GraphParams, constraints: EnumConstraints
) -> tuple[QuotientMatrix, ...]:
    """All 2x2 quotient matrices compatible with the constraints.

    For an eigenvalue index i the candidates are the matrices with
    S11 - S21 = lambda_i, correct row sums, S12, S21 >= 1 and an integer
    predicted cell size strictly between 0 and q^n.
    """
    k = params.degree
    if constraints.quotient is not None:
        s = constraints.quotient
        if s.r != 2 or s.row_sums() != (k, k):
            raise ValueError("quotient constraint has wrong shape or row sums")
        return (s,)
    if constraints.eigenvalue_index is None:
        raise ValueError("constraints resolve to no candidate quotient matrices")
    lam = eigenvalue(params, constraints.eigenvalue_index)
    out = []
    for s21 in range(1, k + 1):
        s11 = lam + s21
        if s11 < 0:
            continue
        s12 = k - s11
        s22 = k - s21
        if s12 < 1 or s22 < 0:
            continue
        size = predicted_cell_size(QuotientMatrix(((s11, s12), (s21, s22))), params)
        if size.denominator != 1 or not 0 < size < params.vertex_count:
            continue
        out.append(QuotientMatrix(((s11, s12), (s21, s22))))
    return tuple(out)


def _fast_two_quotient(nbrs, cell: int, n_vertices: int):
    """(s11, s12, s21, s22) of the cell bitset, or None; early abort."""
    s11 = s21 = -1
    for v in range(n_vertices):
        cnt = 0
        for w in nbrs[v]:
            cnt += (cell >> w) & 1
        if (cell >> v) & 1:
            if s11 < 0:
                s11 = cnt
            elif cnt != s11:
                return None
        else:
            if s21 < 0:
                s21 = cnt
            elif cnt != s21:
                return None
    deg = len(nbrs[0])
    return s11, deg - s11, s21, deg - s21


def _satisfies(params, s_tuple, constraints) -> bool:
    if constraints.quotient is not None:
        s = constraints.quotient
        return s_tuple == (s.rows[0][0], s.rows[0][1], s.rows[1][0], s.rows[1][1])
    if constraints.eigenvalue_index is not None:
        return s_tuple[0] - s_tuple[2] == eigenvalue(params, constraints.eigenvalue_index)
    return True


def brute_force_enumerate(
    params: GraphParams, constraints: EnumConstraints = EnumConstraints()
) -> list[TwoPartition]:
    """Sweep all 2^(q^n) - 2 proper cells; keep the equitable ones that
    satisfy the constraints.  Guarded to q^n <= 25.  Output is sorted by
    cell bitset."""
    n_vertices = params.vertex_count
    if n_vertices > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force sweep guarded to q^n <= {BRUTE_FORCE_LIMIT}, got {n_vertices}"
        )
    nbrs = neighbor_table(params)
    out = []
    for cell in range(1, (1 << n_vertices) - 1):
        s = _fast_two_quotient(nbrs, cell, n_vertices)
        if s is None or not _satisfies(params, s, constraints):
            continue
        p = TwoPartition(params, cell)
        if constraints.reduced_only and len(essential_coordinates(p)) != params.n:
            continue
        out.append(p)
    if constraints.up_to_iso:
        out = [p for p in out if p.cell == canonical_form(p)]
    return out


# --- backtracking route -----------------------------------------------------


def _search_shard(n, q, s11, s21, size_c, prefix, depth):
    """All completions of the prefix assignment to valid cells, as ints.

    Vertices are assigned in index order; vertex v < depth goes to the
    cell given by bit v of prefix.  Feasibility pruning: a vertex w with
    cnt assigned neighbors in C, pending unassigned neighbors and target
    count req must satisfy cnt <= req <= cnt + pending.
    """
    params = GraphParams(n, q)
    nbrs = neighbor_table(params)
    n_vertices = params.vertex_count
    cnt = [0] * n_vertices        # assigned neighbors in C
    pending = [len(nbrs[v]) for v in range(n_vertices)]
    in_c = [False] * n_vertices
    found: list[int] = []

    def feasible(w: int) -> bool:
        req = s11 if in_c[w] else s21
        return cnt[w] <= req <= cnt[w] + pending[w]

    def dfs(v: int, size: int) -> None:
        if v == n_vertices:
            bits = 0
            for u in range(n_vertices):
                if in_c[u]:
                    bits |= 1 << u
            found.append(bits)
            return
        choices = ((prefix >> v) & 1,) if v < depth else (0, 1)
        rest = n_vertices - v - 1
        for c in choices:
            new_size = size + c
            if new_size > size_c or size_c - new_size > rest:
                continue
            in_c[v] = bool(c)
            ok = feasible(v)
            touched = []
            if ok:
                for w in nbrs[v]:
                    pending[w] -= 1
                    if c:
                        cnt[w] += 1
                    touched.append(w)
                    if w <= v and not feasible(w):
                        ok = False
                        break
            if ok:
                dfs(v + 1, new_size)
            for w in touched:
                pending[w] += 1
                if c:
                    cnt[w] -= 1
        in_c[v] = False

    dfs(0, 0)
    return found


def _search_shard_star(args):
    return _search_shard(*args)


def backtracking_enumerate(
    params: GraphParams,
    constraints: EnumConstraints,
    threads: int = 1,
) -> list[TwoPartition]:
    """Enumerate equitable 2-partitions matching a quotient matrix or an
    eigenvalue index by pruned backtracking over vertex assignments.

    The search tree is split at a fixed prefix depth into shards whose
    results are merged and sorted, so the output is identical for every
    thread count.  Output is sorted by cell bitset and agrees with
    brute_force_enumerate wherever both are allowed to run.
    """
    candidates = candidate_quotient_matrices(params, constraints)
    depth = min(params.vertex_count, _SHARD_DEPTH)
    cells: set[int] = set()
    for s in candidates:
        size = predicted_cell_size(s, params)
        if size.denominator != 1 or not 0 < size < params.vertex_count:
            continue
        args = [
            (params.n, params.q, s.rows[0][0], s.rows[1][0], int(size), p, depth)
            for p in range(1 << depth)
        ]
        if threads <= 1:
            chunks = [_search_shard(*a) for a in args]
        else:
            with ProcessPoolExecutor(max_workers=threads) as ex:
                chunks = list(
                    ex.map(_search_shard_star, args, chunksize=max(1, len(args) // (8 * threads)))
                )
        for chunk in chunks:
            cells.update(chunk)
    out = [TwoPartition(params, c) for c in sorted(cells)]
    if constraints.reduced_only:
        out = [p for p in out if len(essential_coordinates(p)) == params.n]
    if constraints.up_to_iso:
        out = [p for p in out if p.cell == canonical_form(p)]
    return out


# --- canonical forms --------------------------------------------------------


def _subslice(bits: int, m: int, pos: int, symbol: int, q: int) -> int:
    """Restrict a bitset over q^m tuples to digit pos = symbol (big-endian
    positions 0..m-1), re-indexed over the remaining m-1 positions."""
    low = q ** (m - 1 - pos)
    out = 0
    idx = 0
    for high in range(q ** pos):
        base = (high * q + symbol) * low
        chunk = (bits >> base) & ((1 << low) - 1)
        out |= chunk << idx
        idx += low
    return out


@lru_cache(maxsize=65536)
def canonical_form(p: TwoPartition) -> int:
    """The minimum cell bitset over all graph automorphisms of p.

    Branch and bound over which source coordinate and symbol permutation
    feed each target coordinate, most significant first; a node is cut
    when even packing each block's members into its lowest positions
    cannot beat the incumbent.  Guarded to n <= 5 and q <= 5.
    """
    params = p.params
    if params.n > CANONICAL_N_LIMIT or params.q > CANONICAL_Q_LIMIT:
        raise ValueError(
            f"canonical form guarded to n <= {CANONICAL_N_LIMIT}, q <= {CANONICAL_Q_LIMIT}"
        )
    q = params.q
    perms = tuple(itertools.permutations(range(q)))
    best: Optional[int] = None

    def descend(slices: tuple[int, ...], m: int) -> None:
        nonlocal best
        k = len(slices)
        if m == 0:
            val = 0
            for i, b in enumerate(slices):
                val |= b << (k - 1 - i)
            if best is None or val < best:
                best = val
            return
        length = q ** m
        if best is not None:
            bound = 0
            for i, s in enumerate(slices):
                pc = s.bit_count()
                bound |= ((1 << pc) - 1) << ((k - 1 - i) * length)
            if bound >= best:
                return
        seen = set()
        for pos in range(m):
            for gamma in perms:
                new_slices = tuple(
                    _subslice(s, m, pos, gamma[c], q)
                    for s in slices
                    for c in range(q - 1, -1, -1)
                )
                if new_slices in seen:
                    continue
                seen.add(new_slices)
                descend(new_slices, m - 1)

    descend((p.cell,), params.n)
    assert best is not None
    return best


def are_isomorphic(p1: TwoPartition, p2: TwoPartition) -> bool:
    """Whether some automorphism maps the cell of p1 onto the cell of p2."""
    if p1.params != p2.params:
        raise ValueError("partitions live on different graphs")
    return canonical_form(p1) == canonical_form(p2)


# --- ternary function census -------------------------------------------------


@dataclass(frozen=True)
class TernaryCensus:
    """Exact counts of the classifier outcomes over all ternary functions."""

    constants: int
    quasi_strings: int
    quasi_crosses: int
    not_member: int

    @property
    def members(self) -> int:
        return self.constants + self.quasi_strings + self.quasi_crosses

    @property
    def total(self) -> int:
        return self.members + self.not_member


def enumerate_ternary_census(params: GraphParams) -> TernaryCensus:
    """Sweep all 3^(q^n) ternary functions; classify each one.

    The operator membership test and the shape classifier must agree on
    every function (AssertionError otherwise).  Guarded to
    3^(q^n) <= 2^24.
    """
    n_vertices = params.vertex_count
    if 3 ** n_vertices > TERNARY_SWEEP_LIMIT:
        raise ValueError(f"ternary sweep guarded to 3^(q^n) <= {TERNARY_SWEEP_LIMIT}")
    counts = {Constant: 0, QuasiString: 0, QuasiCross: 0, NotMember: 0}
    for values in itertools.product((-1, 0, 1), repeat=n_vertices):
        f = VertexFunction(params, values)
        member = in_top_two_eigenspaces(f)
        form = classify_top_two(f)
        if member == isinstance(form, NotMember):
            raise AssertionError("membership test and classifier disagree")
        counts[type(form)] += 1
    return TernaryCensus(
        constants=counts[Constant],
        quasi_strings=counts[QuasiString],
        quasi_crosses=counts[QuasiCross],
        not_member=counts[NotMember],
    )


# --- classification of reduced lambda_2 partitions ---------------------------


@dataclass(frozen=True)
class SmallBase:
    """Reduced lambda_2 partition on n <= 3 coordinates: a base case.

    secondary_switching records, when requested, whether the partition is
    also isomorphic to a permutation-switching output; None means the
    check was not run.
    """

    secondary_switching: Optional[bool] = None


@dataclass(frozen=True)
class CyclePairLifting:
    """Isomorphic to an alphabet lift of an induced-8-cycle pair."""

    split: frozenset[int]
    cycle_pair: TwoPartition


@dataclass(frozen=True)
class SwitchingConstruction:
    """Isomorphic to a permutation-switching output."""

    blocks: AlphabetBlocks
    base: TwoPartition


@dataclass(frozen=True)
class Unclassified:
    pass


ReducedLambda2Tag = Union[SmallBase, CyclePairLifting, SwitchingConstruction, Unclassified]


@lru_cache(maxsize=1)
def _cycle_pairs_h42() -> tuple[TwoPartition, ...]:
    """All 2-partitions of H(4, 2) whose cells are both induced 8-cycles,
    in ascending cell-bitset order."""
    params = GraphParams(4, 2)
    out = []
    for combo in itertools.combinations(range(16), 8):
        p = TwoPartition.from_vertices(params, combo)
        if is_induced_cycle(params, combo) != 8:
            continue
        if is_induced_cycle(params, TwoPartition(params, p.complement_bits()).vertices()) != 8:
            continue
        out.append(p)
    return tuple(out)


@lru_cache(maxsize=8)
def _lambda2_bases(q: int) -> tuple[TwoPartition, ...]:
    """All equitable 2-partitions of H(2, q) with second eigenvalue -2."""
    params = GraphParams(2, q)
    return tuple(
        brute_force_enumerate(params, EnumConstraints(eigenvalue_index=2))
    )


def _ordered_alphabet_blocks(q: int, parts: int):
    """Ordered partitions of {0..q-1} into the given number of nonempty
    blocks, in lexicographic order of the assignment vector."""
    for assignment in itertools.product(range(parts), repeat=q):
        if set(assignment) != set(range(parts)):
            continue
        yield AlphabetBlocks(tuple(
            frozenset(s for s in range(q) if assignment[s] == i)
            for i in range(parts)
        ))


def _match_cycle_pair_lifting(p: TwoPartition) -> Optional[CyclePairLifting]:
    params = p.params
    if params.n != 4 or params.q % 2:
        return None
    target = canonical_form(p)
    for split in itertools.combinations(range(params.q), params.q // 2):
        for pair in _cycle_pairs_h42():
            candidate = lifted_cycle_pair(params.q, split, pair)
            if canonical_form(candidate) == target:
                return CyclePairLifting(split=frozenset(split), cycle_pair=pair)
    return None


def _match_switching(p: TwoPartition) -> Optional[SwitchingConstruction]:
    params = p.params
    if params.n < 2 or params.q < params.n - 1:
        return None
    target = canonical_form(p)
    for blocks in _ordered_alphabet_blocks(params.q, params.n - 1):
        for base in _lambda2_bases(params.q):
            try:
                candidate = permutation_switching(blocks, base)
            except ValueError:
                continue
            if canonical_form(candidate) == target:
                return SwitchingConstruction(blocks=blocks, base=base)
    return None


def classify_reduced_lambda2(
    p: TwoPartition, check_secondary: bool = False
) -> ReducedLambda2Tag:
    """Tag a reduced equitable lambda_2 partition by the construction
    family that produces it.

    Preconditions (ValueError): p is equitable, its second quotient
    eigenvalue is lambda_2(n, q), and every coordinate is essential.
    n <= 3 is tagged SmallBase outright (set check_secondary to also
    record whether a switching construction matches).  For n >= 4 the
    cycle-pair lifting recognizer runs first, then the switching
    recognizer; splits are tried in lexicographic order and the first
    match wins.  Every reduced lambda_2 partition in range of the guards
    is expected to match a family; an Unclassified result is flagged
    loudly because it would be a counterexample to that classification.
    """
    params = p.params
    s = equitable_check(p)
    if isinstance(s, NotEquitable):
        raise ValueError("partition is not equitable")
    lam = s.rows[0][0] - s.rows[1][0]
    if lam != eigenvalue(params, 2):
        raise ValueError(
            f"second quotient eigenvalue {lam} is not lambda_2 = {eigenvalue(params, 2)}"
        )
    if len(essential_coordinates(p)) != params.n:
        raise ValueError("partition is not reduced; delete nonessential coordinates first")
    if params.n <= 3:
        if check_secondary:
            return SmallBase(secondary_switching=_match_switching(p) is not None)
        return SmallBase()
    tag = _match_cycle_pair_lifting(p)
    if tag is not None:
        return tag
    tag_a = _match_switching(p)
    if tag_a is not None:
        return tag_a
    warnings.warn(
        "reduced lambda_2 partition matched no construction family; "
        "this would be a counterexample to the expected classification",
        stacklevel=2,
    )
    return Unclassified()
