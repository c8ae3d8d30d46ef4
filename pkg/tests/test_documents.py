"""JSON document parsing and the nibble-wise hex cell codec."""

import random

import pytest

from eqpart.constructions import eight_cycle_partition
from eqpart.documents import (
    DocumentError,
    blocks_to_text,
    cell_to_hex,
    function_from_doc,
    function_to_doc,
    hex_to_cell,
    load_json,
    parse_blocks,
    partition_from_doc,
    partition_to_doc,
)
from eqpart.eigenfunctions import VertexFunction
from eqpart.hamming import GraphParams


def test_cell_hex_known_value():
    assert cell_to_hex(eight_cycle_partition().cell, 16) == "e427"
    assert hex_to_cell("e427", 16) == eight_cycle_partition().cell
    assert cell_to_hex(0b0110, 4) == "6"
    assert cell_to_hex(1, 9) == "100"


def test_cell_hex_round_trip():
    rng = random.Random(1)
    for bits in (1, 4, 7, 16, 27, 81):
        for _ in range(25):
            cell = rng.getrandbits(bits)
            assert hex_to_cell(cell_to_hex(cell, bits), bits) == cell


def test_cell_hex_rejects():
    with pytest.raises(DocumentError, match="exactly"):
        hex_to_cell("e427", 9)
    with pytest.raises(DocumentError, match="invalid hex"):
        hex_to_cell("e42x", 16)
    with pytest.raises(DocumentError, match="beyond"):
        hex_to_cell("4", 2)
    with pytest.raises(ValueError):
        cell_to_hex(16, 4)


def test_partition_doc_round_trip():
    p = eight_cycle_partition()
    doc = partition_to_doc(p)
    assert doc == {"format_version": 1, "n": 4, "q": 2, "cell": "e427"}
    assert partition_from_doc(doc) == p
    by_vertices = {"format_version": 1, "n": 4, "q": 2, "vertices": p.vertices()}
    assert partition_from_doc(by_vertices) == p


def test_partition_doc_rejects():
    good = {"format_version": 1, "n": 2, "q": 2, "cell": "6"}
    assert partition_from_doc(good).cell == 6
    for mutation in (
        {"format_version": 2},
        {"format_version": "1"},
        {"n": "2"},
        {"n": True},
        {"cell": 6},
        {"cell": "64"},
        {"vertices": [0]},  # both cell and vertices
        {"q": 1},
    ):
        doc = {**good, **mutation}
        with pytest.raises(DocumentError):
            partition_from_doc(doc)
    with pytest.raises(DocumentError):
        partition_from_doc({"format_version": 1, "n": 2, "q": 2})
    with pytest.raises(DocumentError):
        partition_from_doc({"format_version": 1, "n": 2, "q": 2, "vertices": [0, True]})
    with pytest.raises(DocumentError):
        partition_from_doc({"format_version": 1, "n": 2, "q": 2, "vertices": [0, 4]})
    with pytest.raises(DocumentError, match="nonempty"):
        partition_from_doc({"format_version": 1, "n": 2, "q": 2, "cell": "f"})
    with pytest.raises(DocumentError):
        partition_from_doc([1, 2, 3])


def test_function_doc_round_trip():
    f = VertexFunction(GraphParams(2, 2), (1, 0, -1, 3))
    doc = function_to_doc(f)
    assert doc == {"format_version": 1, "n": 2, "q": 2, "values": [1, 0, -1, 3]}
    assert function_from_doc(doc) == f


def test_function_doc_rejects():
    good = {"format_version": 1, "n": 2, "q": 2, "values": [1, 0, -1, 0]}
    assert function_from_doc(good).values == (1, 0, -1, 0)
    with pytest.raises(DocumentError, match="all 4"):
        function_from_doc({**good, "values": [1, 0]})
    with pytest.raises(DocumentError):
        function_from_doc({**good, "values": [1, 0, 0.5, 0]})
    with pytest.raises(DocumentError):
        function_from_doc({**good, "values": [1, 0, True, 0]})
    with pytest.raises(DocumentError):
        function_from_doc({**good, "values": "1010"})
    with pytest.raises(DocumentError, match="missing"):
        function_from_doc({"format_version": 1, "n": 2, "q": 2})
    with pytest.raises(DocumentError):
        function_from_doc({**good, "values": [1, 0, 1 << 30, 0]})


def test_load_json():
    assert load_json('{"a": 1}') == {"a": 1}
    with pytest.raises(DocumentError, match="invalid JSON"):
        load_json("{")


def test_parse_blocks():
    assert parse_blocks("0,1|2,3") == (frozenset({0, 1}), frozenset({2, 3}))
    assert parse_blocks("2") == (frozenset({2}),)
    assert parse_blocks(" 0 , 1 ") == (frozenset({0, 1}),)
    with pytest.raises(DocumentError, match="repeats"):
        parse_blocks("0,0")
    with pytest.raises(DocumentError, match="invalid block"):
        parse_blocks("0,x")
    with pytest.raises(DocumentError):
        parse_blocks("0,|1")


def test_blocks_round_trip():
    for text in ("0,1|2,3", "0|1|2", "0,2|1,3"):
        assert blocks_to_text(parse_blocks(text)) == text
