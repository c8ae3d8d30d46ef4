"""Exact integer model of the Hamming graph H(n, q).

Vertices are the q-ary n-tuples over {0, ..., q-1}, encoded as integers in
[0, q^n) by the big-endian rule

    index = sum_k x_k * q^(n-k)

so coordinate 1 is the most significant digit.  Coordinates are numbered
1..n throughout; symbols run 0..q-1.  Two vertices are adjacent iff they
differ in exactly one coordinate, hence the graph is regular of degree
n(q-1).  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

# Hard ceiling on q^n so vertex indices stay comfortably machine-sized.
MAX_VERTICES = 1 << 32


@dataclass(frozen=True)
class GraphParams:
    """The pair (n, q) defining H(n, q), with derived sizes attached."""

    n: int
    q: int
    vertex_count: int = field(init=False, repr=False, compare=False)
    degree: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got n={self.n}")
        if self.q < 2:
            raise ValueError(f"need q >= 2, got q={self.q}")
        count = self.q ** self.n
        if count > MAX_VERTICES:
            raise ValueError(f"q^n = {count} exceeds the 2^32 vertex guard")
        object.__setattr__(self, "vertex_count", count)
        object.__setattr__(self, "degree", self.n * (self.q - 1))


def eigenvalue(params: GraphParams, i: int) -> int:
    """The i-th adjacency eigenvalue (q-1)n - qi of H(n, q), 0 <= i <= n.

    Index 0 gives the degree; the sequence is strictly decreasing in i.
    """
    if not 0 <= i <= params.n:
        raise ValueError(f"eigenvalue index {i} outside [0, {params.n}]")
    return (params.q - 1) * params.n - params.q * i


def coordinate_stride(params: GraphParams, k: int) -> int:
    """Weight q^(n-k) of coordinate k in the vertex encoding."""
    if not 1 <= k <= params.n:
        raise ValueError(f"coordinate {k} outside [1, {params.n}]")
    return params.q ** (params.n - k)


def coordinate_value(params: GraphParams, v: int, k: int) -> int:
    """Symbol in coordinate k of the vertex with index v."""
    return (v // coordinate_stride(params, k)) % params.q


def encode_vertex(params: GraphParams, coords: Sequence[int]) -> int:
    """Vertex index of the tuple (x_1, ..., x_n)."""
    if len(coords) != params.n:
        raise ValueError(f"expected {params.n} coordinates, got {len(coords)}")
    v = 0
    for x in coords:
        if not 0 <= x < params.q:
            raise ValueError(f"symbol {x} outside [0, {params.q})")
        v = v * params.q + x
    return v


def decode_vertex(params: GraphParams, v: int) -> tuple[int, ...]:
    """Tuple (x_1, ..., x_n) of the vertex with index v."""
    if not 0 <= v < params.vertex_count:
        raise ValueError(f"vertex {v} outside [0, {params.vertex_count})")
    out = []
    for _ in range(params.n):
        out.append(v % params.q)
        v //= params.q
    return tuple(reversed(out))


def neighbors(params: GraphParams, v: int) -> list[tuple[int, int]]:
    """All (k, w) with w adjacent to v by changing coordinate k.

    Ordered by coordinate ascending, then by the replacement symbol.
    """
    if not 0 <= v < params.vertex_count:
        raise ValueError(f"vertex {v} outside [0, {params.vertex_count})")
    q = params.q
    out = []
    stride = params.vertex_count
    for k in range(1, params.n + 1):
        stride //= q
        d = (v // stride) % q
        base = v - d * stride
        for s in range(q):
            if s != d:
                out.append((k, base + s * stride))
    return out


@lru_cache(maxsize=None)
def neighbor_table(params: GraphParams) -> tuple[tuple[int, ...], ...]:
    """Adjacency lists for all vertices, same neighbor order as neighbors()."""
    return tuple(
        tuple(w for _, w in neighbors(params, v))
        for v in range(params.vertex_count)
    )


def line_cliques(params: GraphParams, k: int) -> Iterator[tuple[int, ...]]:
    """The q^(n-1) maximal cliques in direction k.

    Each clique is the set of q vertices agreeing everywhere except in
    coordinate k, yielded as an ascending vertex tuple; the cliques are
    yielded in ascending order of their smallest vertex.
    """
    stride = coordinate_stride(params, k)
    q = params.q
    for base in range(params.vertex_count):
        if (base // stride) % q == 0:
            yield tuple(base + s * stride for s in range(q))


def essential_coordinates_of_values(
    params: GraphParams, values: Sequence[int]
) -> frozenset[int]:
    """Coordinates k such that some line in direction k is non-constant.

    A coordinate missing from the result can be deleted without changing
    the function of the remaining coordinates.
    """
    ess = set()
    for k in range(1, params.n + 1):
        for line in line_cliques(params, k):
            v0 = values[line[0]]
            if any(values[w] != v0 for w in line[1:]):
                ess.add(k)
                break
    return frozenset(ess)


# ---------------------------------------------------------------------------
# automorphisms: coordinate permutation composed with per-coordinate symbol
# permutations (the full automorphism group of H(n, q) for n >= 2, q >= 3)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """A map y = g(x) with y_k = alpha_k(x_{pi(k)}).

    coord_perm[k-1] = pi(k) says which source coordinate feeds target
    coordinate k; alpha_perms[k-1] is the symbol permutation applied at
    target coordinate k (alpha_perms[k-1][s] is the image of symbol s).
    """

    coord_perm: tuple[int, ...]
    alpha_perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.coord_perm)
        if sorted(self.coord_perm) != list(range(1, n + 1)):
            raise ValueError(f"coord_perm {self.coord_perm} is not a permutation of 1..{n}")
        if len(self.alpha_perms) != n:
            raise ValueError("need one symbol permutation per coordinate")
        q = len(self.alpha_perms[0]) if self.alpha_perms else 0
        for a in self.alpha_perms:
            if sorted(a) != list(range(q)):
                raise ValueError(f"alpha permutation {a} is not a permutation of 0..{q - 1}")


def identity_automorphism(params: GraphParams) -> Automorphism:
    ident = tuple(range(params.q))
    return Automorphism(
        coord_perm=tuple(range(1, params.n + 1)),
        alpha_perms=tuple(ident for _ in range(params.n)),
    )


def apply_automorphism(params: GraphParams, g: Automorphism, v: int) -> int:
    """Image of vertex v under g."""
    if len(g.coord_perm) != params.n or len(g.alpha_perms[0]) != params.q:
        raise ValueError("automorphism shape does not match the graph")
    x = decode_vertex(params, v)
    y = tuple(
        g.alpha_perms[k][x[g.coord_perm[k] - 1]] for k in range(params.n)
    )
    return encode_vertex(params, y)


def vertex_map(params: GraphParams, g: Automorphism) -> tuple[int, ...]:
    """The full vertex permutation induced by g, as a lookup tuple."""
    return tuple(apply_automorphism(params, g, v) for v in range(params.vertex_count))


def compose(g: Automorphism, h: Automorphism) -> Automorphism:
    """The automorphism mapping x to g(h(x))."""
    n = len(g.coord_perm)
    if n != len(h.coord_perm):
        raise ValueError("cannot compose automorphisms of different arity")
    # z_k = alpha^g_k(y_{pi_g(k)}) with y_j = alpha^h_j(x_{pi_h(j)})
    coord = tuple(h.coord_perm[g.coord_perm[k] - 1] for k in range(n))
    alphas = tuple(
        tuple(g.alpha_perms[k][h.alpha_perms[g.coord_perm[k] - 1][s]]
              for s in range(len(g.alpha_perms[k])))
        for k in range(n)
    )
    return Automorphism(coord, alphas)


def inverse(g: Automorphism) -> Automorphism:
    n = len(g.coord_perm)
    q = len(g.alpha_perms[0])
    pi_inv = [0] * n
    for k in range(n):
        pi_inv[g.coord_perm[k] - 1] = k + 1
    alphas = []
    for k in range(n):
        src = pi_inv[k] - 1  # target coordinate of g that read source k
        a_inv = [0] * q
        for s in range(q):
            a_inv[g.alpha_perms[src][s]] = s
        alphas.append(tuple(a_inv))
    return Automorphism(tuple(pi_inv), tuple(alphas))


def random_automorphism(params: GraphParams, rng) -> Automorphism:
    """Uniform random automorphism drawn from the given random.Random."""
    coord = tuple(rng.sample(range(1, params.n + 1), params.n))
    alphas = tuple(
        tuple(rng.sample(range(params.q), params.q)) for _ in range(params.n)
    )
    return Automorphism(coord, alphas)
