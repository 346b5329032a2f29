import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from buildfano.buildset import (
    BuildingSet,
    EmptyMember,
    EmptyRestrictionTarget,
    GroundSetTooLarge,
    InvalidContractionTarget,
    MissingSingleton,
    SimpleGraph,
    UnionViolation,
    apply_permutation,
    canonical_form,
    closure,
    components,
    contraction,
    elements_of,
    from_generators,
    from_json,
    graphical_building_set,
    isomorphic,
    mask_of,
    popcount,
    restriction,
    union_of,
    validate_building_set,
)
from cases import ALL3, BLOWUP, P1xP1, SMALL_TYPES, WORKED, bs, m


def lists(B):
    return [list(elements_of(x)) for x in B.members]


def test_validate_accepts_blowup():
    B = validate_building_set([[1], [2], [3], [2, 3], [1, 2, 3]], 3)
    assert lists(B) == [[1], [2], [3], [2, 3], [1, 2, 3]]


def test_validate_single_point():
    assert validate_building_set([[1]], 1).members == (1,)


def test_validate_union_violation_names_pair():
    with pytest.raises(UnionViolation) as info:
        validate_building_set([[1], [2], [3], [1, 2], [2, 3]], 3)
    assert info.value.pair == (m(1, 2), m(2, 3))


def test_validate_missing_singleton():
    with pytest.raises(MissingSingleton) as info:
        validate_building_set([[1], [3], [1, 3]], 3)
    assert info.value.element == 2


def test_validate_empty_member():
    with pytest.raises(EmptyMember):
        validate_building_set([[1], []], 1)


def test_ground_cap():
    with pytest.raises(GroundSetTooLarge):
        validate_building_set([[1]], 17)


def test_components():
    assert components(BLOWUP) == (m(1, 2, 3),)
    assert components(P1xP1) == (m(1, 2), m(3, 4))
    assert components(bs(2)) == (m(1), m(2))


def test_components_tile_building_set():
    for B in [BLOWUP, P1xP1, WORKED, bs(3), bs(5, [1, 2], [4, 5])]:
        parts = [restriction(B, C) for C in components(B)]
        assert union_of(parts) == B


def test_restriction():
    assert lists(restriction(BLOWUP, m(2, 3))) == [[2], [3], [2, 3]]
    assert lists(restriction(WORKED, m(3, 4))) == [[3], [4]]
    assert restriction(WORKED, m(5)).members == (m(5),)
    with pytest.raises(EmptyRestrictionTarget):
        restriction(BLOWUP, 0)


def test_restriction_keeps_labels():
    R = restriction(WORKED, m(2, 5))
    assert R.labels == (2, 5)
    std, labels = R.standardized()
    assert labels == (2, 5)
    assert lists(std) == [[1], [2], [1, 2]]


def test_contraction():
    C = contraction(BLOWUP, m(2, 3))
    assert C.ground == m(1) and lists(C) == [[1]]
    full = bs(3, [1, 2], [1, 3], [2, 3], [1, 2, 3])
    assert lists(contraction(full, m(1))) == [[2], [3], [2, 3]]
    assert lists(contraction(bs(3, [1, 2, 3]), m(1))) == [[2], [3], [2, 3]]
    with pytest.raises(InvalidContractionTarget):
        contraction(BLOWUP, m(1, 2, 3))


def test_contraction_matches_definition_exhaustively():
    for B in SMALL_TYPES + [WORKED]:
        S = B.ground
        for C in range(1, S):
            if C & ~S:
                continue
            rest = S & ~C
            want = {I for I in range(1, rest + 1) if I & ~rest == 0 and (I in B.member_set or (I | C) in B.member_set)}
            got = contraction(B, C)
            assert set(got.members) == want
            validate_building_set(got.members, list(elements_of(rest)))
            validate_building_set(restriction(B, C).members, list(elements_of(C)))


def test_graphical():
    tri = SimpleGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    assert len(graphical_building_set(tri).members) == 7
    path = SimpleGraph.from_edges(3, [(1, 2), (2, 3)])
    assert lists(graphical_building_set(path)) == [[1], [2], [3], [1, 2], [2, 3], [1, 2, 3]]
    assert lists(graphical_building_set(SimpleGraph.from_edges(2, []))) == [[1], [2]]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=10))))
def test_graphical_always_valid(data):
    n, edges = data
    G = SimpleGraph.from_edges(n, [(u, v) for u, v in edges if u != v])
    B = graphical_building_set(G)
    validate_building_set(B.members, n)
    assert sorted(popcount(C) for C in B.components()) == sorted(G.component_sizes())


def test_canonical_form_swap():
    A = bs(3, [2, 3], [1, 2, 3])
    B = bs(3, [1, 2], [1, 2, 3])
    assert canonical_form(A)[0] == canonical_form(B)[0]
    assert isomorphic(A, B)


def test_canonical_form_permutation_is_witness():
    C, perm = canonical_form(WORKED)
    assert apply_permutation(WORKED, perm) == C


def test_canonical_form_idempotent():
    for B in SMALL_TYPES + [WORKED, P1xP1]:
        C = canonical_form(B)[0]
        assert canonical_form(C)[0] == C


def test_small_types_pairwise_distinct():
    forms = {canonical_form(B)[0] for B in SMALL_TYPES}
    assert len(forms) == 6


def test_canonical_form_invariant_under_all_permutations():
    for B in [ALL3, bs(4, [1, 2], [1, 2, 3], [1, 2, 3, 4]), bs(5, [1, 2], [3, 4], [1, 2, 3, 4, 5])]:
        want = canonical_form(B)[0]
        for perm in itertools.permutations(range(1, B.size + 1)):
            assert canonical_form(apply_permutation(B, perm))[0] == want


def test_canonical_form_size_cap():
    with pytest.raises(GroundSetTooLarge):
        canonical_form(from_generators(8))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 1), max_size=5))))
def test_closure_gives_valid_building_set(data):
    n, extra = data
    fam = closure([1 << i for i in range(n)] + extra)
    B = validate_building_set(fam, n)
    assert union_of([restriction(B, C) for C in B.components()]) == B


def test_json_roundtrip():
    text = json.dumps(WORKED.to_json())
    assert from_json(text) == WORKED
    R = restriction(WORKED, m(2, 5))
    assert R.to_json() == {"ground": [2, 5], "members": [[2], [5], [2, 5]]}
    assert from_json(R.to_json()) == R


def test_str():
    assert str(BLOWUP) == "{{1}, {2}, {3}, {2,3}, {1,2,3}}"


def test_mask_helpers():
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b1010) == (2, 4)
    assert isinstance(BLOWUP, BuildingSet)
