import random

import pytest

from oracles import random_type2, random_typen
from typenfuzzy.errors import ArgumentError
from typenfuzzy.tabular import set_from_csv, set_to_csv, write_rows


def test_header_and_numbers():
    assert write_rows(["a", "b"], [("x", 0.90), ("y", None), ("z", 3.0)]) == "a,b\nx,0.9\ny,\nz,3\n"


def test_round_trip():
    rng = random.Random(5)
    for level in (1, 2, 3):
        for _ in range(20):
            F = random_type2(rng) if level == 2 else random_typen(rng, level)
            text = set_to_csv(F)
            G = set_from_csv(text, F.name)
            assert G.entries == F.entries
            assert set_to_csv(G) == text


def test_bad_tables():
    with pytest.raises(ArgumentError):
        set_from_csv("")
    with pytest.raises(ArgumentError):
        set_from_csv("element,value,x,top\n")
    with pytest.raises(ArgumentError):
        set_from_csv("element,value,top\nx1,1\n")
