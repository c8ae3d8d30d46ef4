"""Integer-valued functions on the vertices of H(n, q) and their spectra.

A lambda-eigenfunction is any f with sum_{w ~ v} f(w) = lambda f(v) at
every vertex; the all-zero function counts as a lambda-eigenfunction for
every lambda.  The classifiers below characterize the ternary functions
(values in {-1, 0, 1}) lying in the span of the top two eigenspaces: they
are exactly the constants, the quasi-strings (supported on one coordinate)
and the quasi-crosses (supported on two).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .hamming import (
    GraphParams,
    coordinate_stride,
    eigenvalue,
    essential_coordinates_of_values,
    line_cliques,
)
from .partitions import QuotientMatrix, TwoPartition, quotient_eigenvalues

# Bound on |f(v)| so repeated adjacency sums stay far from any word size.
MAX_ABS_VALUE = 1 << 20


@dataclass(frozen=True)
class VertexFunction:
    """A function from vertex indices to integers, stored densely."""

    params: GraphParams
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.params.vertex_count:
            raise ValueError("need one value per vertex")
        for v in self.values:
            if abs(v) > MAX_ABS_VALUE:
                raise ValueError(f"value {v} exceeds the magnitude guard {MAX_ABS_VALUE}")

    def is_ternary(self) -> bool:
        return all(v in (-1, 0, 1) for v in self.values)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


def constant_function(params: GraphParams, value: int) -> VertexFunction:
    return VertexFunction(params, (value,) * params.vertex_count)


def adjacency_image(f: VertexFunction) -> tuple[int, ...]:
    """(A f)(v) = sum of f over the neighbors of v, for every v.

    Computed per line: each vertex of a line receives the line total minus
    its own value, which costs O(q^n * n) instead of O(q^n * n * q).
    """
    params = f.params
    vals = f.values
    out = [0] * params.vertex_count
    for k in range(1, params.n + 1):
        for line in line_cliques(params, k):
            total = sum(vals[v] for v in line)
            for v in line:
                out[v] += total - vals[v]
    return tuple(out)


def is_eigenfunction(f: VertexFunction, lam: int) -> bool:
    """Whether A f = lam f holds exactly (true for the all-zero f)."""
    img = adjacency_image(f)
    return all(img[v] == lam * f.values[v] for v in range(f.params.vertex_count))


def restrict(f: VertexFunction, k: int, symbol: int) -> VertexFunction:
    """The restriction of f to the hyperplane x_k = symbol, as a function
    on H(n-1, q)."""
    params = f.params
    if params.n < 2:
        raise ValueError("restriction needs n >= 2")
    if not 0 <= symbol < params.q:
        raise ValueError(f"symbol {symbol} outside [0, {params.q})")
    stride = coordinate_stride(params, k)
    new_params = GraphParams(params.n - 1, params.q)
    vals = []
    for w in range(new_params.vertex_count):
        high, low = divmod(w, stride)
        vals.append(f.values[(high * params.q + symbol) * stride + low])
    return VertexFunction(new_params, tuple(vals))


def restriction_difference(f: VertexFunction, k: int, a: int, b: int) -> VertexFunction:
    """restrict(f, k, a) - restrict(f, k, b), pointwise.

    If f is a lambda_i(n, q)-eigenfunction, the result is a
    lambda_{i-1}(n-1, q)-eigenfunction.
    """
    if a == b:
        raise ValueError("the two restricted symbols must differ")
    fa = restrict(f, k, a)
    fb = restrict(f, k, b)
    return VertexFunction(fa.params, tuple(x - y for x, y in zip(fa.values, fb.values)))


def quasi_string(
    params: GraphParams, plus: Iterable[int], minus: Iterable[int], k: int
) -> VertexFunction:
    """The function of x_k alone: +1 on plus, -1 on minus, 0 elsewhere.

    plus and minus must be disjoint and not both empty.  It is a
    lambda_1(n, q)-eigenfunction iff |plus| = |minus| (a string).
    """
    plus, minus = frozenset(plus), frozenset(minus)
    _check_symbols(params, plus | minus)
    if plus & minus:
        raise ValueError("plus and minus sets must be disjoint")
    if not (plus | minus):
        raise ValueError("plus and minus sets must not both be empty")
    stride = coordinate_stride(params, k)
    vals = []
    for v in range(params.vertex_count):
        x = (v // stride) % params.q
        vals.append(1 if x in plus else -1 if x in minus else 0)
    return VertexFunction(params, tuple(vals))


def quasi_cross(
    params: GraphParams,
    plus: Iterable[int],
    minus: Iterable[int],
    i: int,
    j: int,
) -> VertexFunction:
    """+1 where x_i in plus and x_j not in minus; -1 where x_i not in plus
    and x_j in minus; 0 elsewhere.

    plus and minus must both be nonempty and i != j.  It is a
    lambda_1(n, q)-eigenfunction iff |plus| = |minus| (a cross), and it is
    the sum of the (plus, complement, i)- and (complement, minus, j)-quasi
    strings.
    """
    plus, minus = frozenset(plus), frozenset(minus)
    _check_symbols(params, plus | minus)
    if not plus or not minus:
        raise ValueError("plus and minus sets must both be nonempty")
    if i == j:
        raise ValueError("the two coordinates must differ")
    si = coordinate_stride(params, i)
    sj = coordinate_stride(params, j)
    q = params.q
    vals = []
    for v in range(params.vertex_count):
        in_plus = ((v // si) % q) in plus
        in_minus = ((v // sj) % q) in minus
        vals.append(1 if in_plus and not in_minus else -1 if not in_plus and in_minus else 0)
    return VertexFunction(params, tuple(vals))


def _check_symbols(params: GraphParams, symbols: Iterable[int]) -> None:
    for s in symbols:
        if not 0 <= s < params.q:
            raise ValueError(f"symbol {s} outside [0, {params.q})")


def in_top_two_eigenspaces(f: VertexFunction) -> bool:
    """Whether f is a constant plus a lambda_1(n, q)-eigenfunction.

    Equivalent operator test: (A - lambda_1 I) f is a constant function.
    """
    lam1 = eigenvalue(f.params, 1)
    img = adjacency_image(f)
    first = img[0] - lam1 * f.values[0]
    return all(
        img[v] - lam1 * f.values[v] == first
        for v in range(1, f.params.vertex_count)
    )


# --- classified shapes ------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: int

    def build(self, params: GraphParams) -> VertexFunction:
        return constant_function(params, self.value)


@dataclass(frozen=True)
class QuasiString:
    plus: frozenset[int]
    minus: frozenset[int]
    coordinate: int

    def build(self, params: GraphParams) -> VertexFunction:
        return quasi_string(params, self.plus, self.minus, self.coordinate)


@dataclass(frozen=True)
class QuasiCross:
    plus: frozenset[int]
    minus: frozenset[int]
    coordinate_i: int
    coordinate_j: int

    def build(self, params: GraphParams) -> VertexFunction:
        return quasi_cross(params, self.plus, self.minus, self.coordinate_i, self.coordinate_j)


@dataclass(frozen=True)
class NotMember:
    pass


@dataclass(frozen=True)
class AllZero:
    pass


@dataclass(frozen=True)
class NotEigen:
    pass


TopTwoForm = Union[Constant, QuasiString, QuasiCross, NotMember]
Lambda1Form = Union[AllZero, QuasiString, QuasiCross, NotEigen]


def classify_top_two(f: VertexFunction) -> TopTwoForm:
    """Classify a ternary f inside the span of the top two eigenspaces.

    Returns NotMember when the operator test fails; otherwise the shape is
    read off the essential coordinates: none gives a constant, one a
    quasi-string, two a quasi-cross normalized to coordinate_i <
    coordinate_j.  The rebuilt shape is compared against f; a mismatch
    (or three or more essential coordinates) cannot happen for a member
    and raises AssertionError.
    """
    if not f.is_ternary():
        raise ValueError("classification applies to ternary functions only")
    if not in_top_two_eigenspaces(f):
        return NotMember()
    params = f.params
    ess = sorted(essential_coordinates_of_values(params, f.values))
    form: TopTwoForm
    if len(ess) == 0:
        form = Constant(f.values[0])
    elif len(ess) == 1:
        k = ess[0]
        stride = coordinate_stride(params, k)
        fiber = [f.values[a * stride] for a in range(params.q)]
        form = QuasiString(
            plus=frozenset(a for a in range(params.q) if fiber[a] == 1),
            minus=frozenset(a for a in range(params.q) if fiber[a] == -1),
            coordinate=k,
        )
    elif len(ess) == 2:
        i, j = ess
        si = coordinate_stride(params, i)
        sj = coordinate_stride(params, j)
        grid = [
            [f.values[a * si + b * sj] for b in range(params.q)]
            for a in range(params.q)
        ]
        form = QuasiCross(
            plus=frozenset(a for a in range(params.q) if any(x == 1 for x in grid[a])),
            minus=frozenset(b for b in range(params.q) if any(grid[a][b] == -1 for a in range(params.q))),
            coordinate_i=i,
            coordinate_j=j,
        )
    else:
        raise AssertionError(
            "member of the top-two eigenspace span with 3+ essential coordinates"
        )
    if form.build(params).values != f.values:
        raise AssertionError("classified shape does not rebuild the input function")
    return form


def classify_lambda1(f: VertexFunction) -> Lambda1Form:
    """Classify a ternary f as a lambda_1(n, q)-eigenfunction shape.

    The nonzero ternary lambda_1-eigenfunctions are exactly the strings
    and crosses: quasi-strings and quasi-crosses with |plus| = |minus|.
    The verdict is cross-validated against the eigen-equation.
    """
    if not f.is_ternary():
        raise ValueError("classification applies to ternary functions only")
    if f.is_zero():
        return AllZero()
    form = classify_top_two(f)
    balanced = isinstance(form, (QuasiString, QuasiCross)) and len(form.plus) == len(form.minus)
    direct = is_eigenfunction(f, eigenvalue(f.params, 1))
    if balanced != direct:
        raise AssertionError("shape classification disagrees with the eigen-equation")
    return form if balanced else NotEigen()


def partition_eigenfunction(p: TwoPartition, s: QuotientMatrix) -> VertexFunction:
    """The two-valued eigenfunction attached to an equitable 2-partition.

    f = (S12 + S21) * indicator(C) - S21 takes the value S12 on C and
    -S21 elsewhere and satisfies A f = (S11 - S21) f.
    """
    quotient_eigenvalues(s, p.params)  # validates shape and row sums
    s12, s21 = s.rows[0][1], s.rows[1][0]
    vals = tuple(s12 if p.contains(v) else -s21 for v in range(p.params.vertex_count))
    return VertexFunction(p.params, vals)
