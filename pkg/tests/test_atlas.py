import json
import random
from pathlib import Path

import pytest

from buildfano.atlas import (
    TooLarge,
    classify_fano,
    classify_record,
    connected_fano_types,
    enumerate_building_sets,
    fano_building_sets_of_dim,
    fano_threefold_census,
    naive_building_sets,
    product_building_set,
    verify_realization,
)
from buildfano.buildset import apply_permutation, canonical_form, validate_building_set
from buildfano.fan import build_fan
from buildfano.digraph import fans_isomorphic
from cases import FOUR_TYPES, P1, P2, SMALL_TYPES

GOLDEN = json.loads((Path(__file__).parent / "golden" / "census.json").read_text())


def test_counts_small():
    assert [len(enumerate_building_sets(n)) for n in range(1, 5)] == [1, 2, 6, 47]
    assert [len(enumerate_building_sets(n, connected_only=True)) for n in range(1, 5)] == [1, 1, 4, 40]


def test_matches_naive_oracle():
    for n in range(1, 5):
        assert enumerate_building_sets(n) == naive_building_sets(n)


def test_enumeration_closed():
    for n in range(1, 5):
        for B in enumerate_building_sets(n):
            validate_building_set(B.members, n)
            assert canonical_form(B)[0] == B


def test_size_limits():
    with pytest.raises(TooLarge):
        enumerate_building_sets(6)
    with pytest.raises(TooLarge):
        naive_building_sets(5)
    assert len(enumerate_building_sets(6, limit=50)) == 50


def test_golden_census():
    for n in range(1, 5):
        got = classify_fano(n).to_json()
        got.pop("seconds")
        assert got == GOLDEN[str(n)]


def test_connected_types_match_lists():
    def forms(bsets):
        return {canonical_form(B)[0] for B in bsets}

    small = [B for n in range(1, 4) for B in enumerate_building_sets(n, connected_only=True)]
    assert forms(small) == forms(SMALL_TYPES)
    assert forms(connected_fano_types(4)) == forms(FOUR_TYPES)


def test_census_invariant_under_relabeling():
    rng = random.Random(3)
    for B in enumerate_building_sets(4):
        perm = list(range(1, 5))
        rng.shuffle(perm)
        shuffled = apply_permutation(B, perm)
        a, b = classify_record(B), classify_record(shuffled)
        assert (a.fano, a.connected, a.wall_profile) == (b.fano, b.connected, b.wall_profile)
        assert canonical_form(shuffled)[0] == B


def test_product_building_set():
    B = product_building_set([P1, P2])
    assert B.size == 5 and len(B.components()) == 2
    assert len(build_fan(B).max_cones) == 6


def test_surfaces_from_products():
    tags = sorted(tag for tag, _ in fano_building_sets_of_dim(2))
    assert tags == ["1x1", "2", "2", "2", "2"]


def test_threefold_census():
    c = fano_threefold_census()
    assert (c.indecomposable, c.products, c.distinct) == (9, 5, 14)
    shapes = sorted(t["shape"] for t in c.types)
    assert shapes.count("2x1") == 4 and shapes.count("1x1x1") == 1


def test_threefold_types_pairwise_non_isomorphic():
    items = fano_building_sets_of_dim(3)
    fans = [build_fan(B) for _, B in items]
    for i in range(len(fans)):
        for j in range(i + 1, len(fans)):
            assert fans_isomorphic(fans[i], fans[j]) is None


def test_verify_realization_point_and_product():
    assert verify_realization(SMALL_TYPES[0])[1]
    assert verify_realization(product_building_set([P1, P1]))[1]


def test_report_table():
    text = classify_fano(3).table()
    assert text.splitlines()[0].startswith("|S| = 3: 6 building sets")
