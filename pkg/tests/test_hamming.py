"""Vertex codec, neighbor structure, and automorphism algebra."""

import random

import pytest

from eqpart.hamming import (
    Automorphism,
    GraphParams,
    apply_automorphism,
    compose,
    coordinate_stride,
    coordinate_value,
    decode_vertex,
    eigenvalue,
    encode_vertex,
    essential_coordinates_of_values,
    identity_automorphism,
    inverse,
    line_cliques,
    neighbor_table,
    neighbors,
    random_automorphism,
    vertex_map,
)

PARAMS = [GraphParams(2, 2), GraphParams(3, 2), GraphParams(2, 3), GraphParams(2, 4), GraphParams(3, 3)]


def test_params_validation():
    with pytest.raises(ValueError):
        GraphParams(0, 2)
    with pytest.raises(ValueError):
        GraphParams(2, 1)
    with pytest.raises(ValueError):
        GraphParams(33, 2)  # 2^33 vertices exceeds the bitset bound
    p = GraphParams(32, 2)
    assert p.vertex_count == 1 << 32


def test_degree_and_eigenvalues():
    p = GraphParams(4, 2)
    assert p.degree == 4
    assert [eigenvalue(p, i) for i in range(5)] == [4, 2, 0, -2, -4]
    p = GraphParams(3, 4)
    assert p.degree == 9
    assert eigenvalue(p, 2) == 1
    with pytest.raises(ValueError):
        eigenvalue(p, 4)
    with pytest.raises(ValueError):
        eigenvalue(p, -1)


def test_codec_round_trip():
    for params in PARAMS:
        for v in range(params.vertex_count):
            word = decode_vertex(params, v)
            assert len(word) == params.n
            assert all(0 <= x < params.q for x in word)
            assert encode_vertex(params, word) == v
            for k in range(1, params.n + 1):
                assert coordinate_value(params, v, k) == word[k - 1]


def test_codec_is_big_endian():
    params = GraphParams(3, 4)
    assert encode_vertex(params, (1, 2, 3)) == 1 * 16 + 2 * 4 + 3
    assert coordinate_stride(params, 1) == 16
    assert coordinate_stride(params, 3) == 1
    assert decode_vertex(params, 27) == (1, 2, 3)


def test_encode_validates():
    params = GraphParams(2, 3)
    with pytest.raises(ValueError):
        encode_vertex(params, (0, 3))
    with pytest.raises(ValueError):
        encode_vertex(params, (0,))


def test_neighbors_structure():
    for params in PARAMS:
        table = neighbor_table(params)
        for v in range(params.vertex_count):
            ns = neighbors(params, v)
            assert [w for _, w in ns] == list(table[v])
            assert len(ns) == params.degree
            word = decode_vertex(params, v)
            for k, w in ns:
                other = decode_vertex(params, w)
                diff = [i for i in range(params.n) if word[i] != other[i]]
                assert diff == [k - 1]
            # coordinate-major, symbol-ascending order
            keys = [(k, decode_vertex(params, w)[k - 1]) for k, w in ns]
            assert keys == sorted(keys)


def test_neighbor_symmetry():
    for params in PARAMS:
        table = neighbor_table(params)
        for v in range(params.vertex_count):
            for w in table[v]:
                assert v in table[w]


def test_line_cliques_cover_all_edges():
    for params in PARAMS:
        seen = set()
        for k in range(1, params.n + 1):
            lines = list(line_cliques(params, k))
            assert len(lines) == params.vertex_count // params.q
            for line in lines:
                assert list(line) == sorted(line)
                for v in line:
                    assert v not in seen
                    seen.add(v)
            seen.clear()
            # each line is a clique in direction k
            for line in lines:
                words = [decode_vertex(params, v) for v in line]
                for i in range(params.n):
                    vals = {w[i] for w in words}
                    assert len(vals) == (params.q if i == k - 1 else 1)


def test_essential_coordinates_of_values():
    params = GraphParams(3, 2)
    f = [coordinate_value(params, v, 2) for v in range(8)]
    assert essential_coordinates_of_values(params, f) == frozenset({2})
    g = [1] * 8
    assert essential_coordinates_of_values(params, g) == frozenset()
    h = [coordinate_value(params, v, 1) ^ coordinate_value(params, v, 3) for v in range(8)]
    assert essential_coordinates_of_values(params, h) == frozenset({1, 3})


def test_automorphism_validation():
    params = GraphParams(2, 3)
    with pytest.raises(ValueError):
        Automorphism((1, 1), ((0, 1, 2), (0, 1, 2)))
    with pytest.raises(ValueError):
        Automorphism((1, 2), ((0, 1, 1), (0, 1, 2)))
    g = identity_automorphism(params)
    assert all(apply_automorphism(params, g, v) == v for v in range(9))


def test_automorphism_algebra():
    rng = random.Random(11)
    for params in PARAMS:
        for _ in range(20):
            g = random_automorphism(params, rng)
            h = random_automorphism(params, rng)
            gh = compose(g, h)
            for v in range(params.vertex_count):
                assert apply_automorphism(params, gh, v) == apply_automorphism(
                    params, g, apply_automorphism(params, h, v)
                )
            gi = inverse(g)
            for v in range(params.vertex_count):
                assert apply_automorphism(params, gi, apply_automorphism(params, g, v)) == v


def test_automorphism_preserves_adjacency():
    rng = random.Random(12)
    for params in PARAMS:
        table = neighbor_table(params)
        for _ in range(10):
            g = random_automorphism(params, rng)
            vm = vertex_map(params, g)
            assert sorted(vm) == list(range(params.vertex_count))
            for v in range(params.vertex_count):
                assert sorted(vm[w] for w in table[v]) == sorted(table[vm[v]])
