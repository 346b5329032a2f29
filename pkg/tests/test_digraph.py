import itertools
import random

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from buildfano.atlas import enumerate_building_sets
from buildfano.buildset import apply_permutation, elements_of, restriction
from buildfano.fan import build_fan, is_complete, is_smooth, product_fan
from buildfano.fano import is_fano_criterion
from buildfano.digraph import (
    CASE_A,
    CASE_B,
    CASE_C,
    DigraphError,
    DirectedGraph,
    EmptyArrowSet,
    HypothesisViolated,
    NotConnected,
    NotFano,
    NotFullDimensional,
    building_set_digraph,
    compute_U,
    fan_of_digraph,
    fano_to_digraph,
    fans_isomorphic,
    from_F,
    glue_at_node,
    interval_renumbering,
    is_interval,
    is_smooth_fano_polytope,
    lattice_hull,
    decomposition_pieces,
    polytope_from_digraph,
    realize,
    rho,
    to_F,
)
from cases import ALL3, P1, P1xP1, P2, PATH4, REALIZED, REALIZED_ARROWS, bs, m


def test_rho_and_F():
    assert rho((1, 2), 3) == (1, -1, 0)
    for n in range(2, 6):
        assert to_F(rho((1, 2), n)) == (1,) + (0,) * (n - 2)
    for x in [(1, 0, -1), (2, -3, 1), (0, 1, -1)]:
        assert from_F(to_F(x)) == x


def test_digraph_validation():
    with pytest.raises(DigraphError):
        DirectedGraph.from_arrows(2, [(1, 1)])
    with pytest.raises(DigraphError):
        DirectedGraph.from_arrows(2, [(1, 2), (1, 2)])
    with pytest.raises(EmptyArrowSet):
        polytope_from_digraph(DirectedGraph(2, ()))


def test_single_arrow_is_a_point():
    P = polytope_from_digraph(DirectedGraph(2, ((1, 2),)))
    assert P.dim == 0 and not P.full_dimensional
    with pytest.raises(NotFullDimensional):
        is_smooth_fano_polytope(P)


def test_two_cycle_segment():
    G = DirectedGraph(2, ((1, 2), (2, 1)))
    P = polytope_from_digraph(G)
    assert P.full_dimensional and len(P.facets) == 2
    assert set(P.vertices) == {(1, -1), (-1, 1)}
    assert is_smooth_fano_polytope(P)
    assert fans_isomorphic(fan_of_digraph(G), build_fan(P1)) is not None


def test_long_segment_not_fano():
    P = lattice_hull([(2, -2), (-2, 2)], 2)
    assert not is_smooth_fano_polytope(P)


def test_realized_example_polytope():
    G = DirectedGraph(5, tuple(sorted(REALIZED_ARROWS)))
    P = polytope_from_digraph(G)
    assert len(P.vertices) == 9
    assert is_smooth_fano_polytope(P)


def test_compute_U_examples():
    c = compute_U(REALIZED)
    assert c.case == CASE_B and set(c.U) == {m(1, 2, 3), m(2, 3, 4, 5)}
    c = compute_U(ALL3)
    assert c.case == CASE_C and set(c.U) == {m(1, 2), m(1, 3), m(2, 3)}
    assert compute_U(P2).case == CASE_A and compute_U(P2).U == ()


def test_decomposition_pieces_example():
    c = compute_U(REALIZED)
    assert decomposition_pieces(REALIZED, c) == set(REALIZED.members)


def test_interval_renumbering_example():
    B = bs(4, [2, 4], [2, 3, 4])
    f = interval_renumbering(B)
    assert f == {1: 1, 2: 2, 4: 3, 3: 4}


def test_interval_renumbering_trivial_and_pairs():
    assert interval_renumbering(bs(3)) == {1: 1, 2: 2, 3: 3}
    B = bs(4, [1, 3], [2, 4])
    f = interval_renumbering(B)
    for mem in (m(1, 3), m(2, 4)):
        assert is_interval(f[e] for e in elements_of(mem))


def test_interval_renumbering_rejects_overlap():
    with pytest.raises(HypothesisViolated):
        interval_renumbering(bs(3, [1, 2], [2, 3], [1, 2, 3]))


def _laminar_families(n):
    subsets = [x for x in range(1, 1 << n) if bin(x).count("1") >= 2]
    for k in range(0, 4):
        for fam in itertools.combinations(subsets, k):
            if all(not (a & b) or (a & b) in (a, b) for a, b in itertools.combinations(fam, 2)):
                yield fam


def test_interval_renumbering_all_laminar_families():
    for n in range(2, 6):
        for fam in _laminar_families(n):
            B = bs(n, *[elements_of(x) for x in fam])
            f = interval_renumbering(B)
            assert sorted(f.values()) == list(range(1, n + 1))
            for x in fam:
                assert is_interval(f[e] for e in elements_of(x))


def test_realized_example_exact_arrows():
    G = fano_to_digraph(REALIZED)
    assert G.nodes == 5
    assert set(G.arrows) == REALIZED_ARROWS and len(G.arrows) == 9


def test_projective_plane_cycle():
    G = fano_to_digraph(P2)
    assert set(G.arrows) == {(1, 2), (2, 3), (3, 1)}


def test_case_c_arrows():
    G = fano_to_digraph(ALL3)
    assert set(G.arrows) == {(1, 2), (2, 3), (3, 1), (1, 3), (2, 1), (3, 2)}
    assert fans_isomorphic(build_fan(ALL3), fan_of_digraph(G)) is not None


def test_realize_errors():
    with pytest.raises(NotFano):
        fano_to_digraph(PATH4)
    with pytest.raises(NotConnected):
        fano_to_digraph(P1xP1)


def test_realize_arrow_bijection():
    R = realize(REALIZED)
    assert len(R.arrow_of) == len(REALIZED.members) - 1
    assert len(set(R.arrow_of.values())) == len(R.arrow_of)


def test_glue_at_node():
    G = glue_at_node([DirectedGraph(2, ((1, 2), (2, 1))), DirectedGraph(2, ((1, 2), (2, 1)))])
    assert G.nodes == 3 and set(G.arrows) == {(1, 2), (2, 1), (1, 3), (3, 1)}
    H = building_set_digraph(P1xP1)
    assert fans_isomorphic(build_fan(P1xP1), fan_of_digraph(H)) is not None


def test_fans_isomorphic_basics():
    f = build_fan(REALIZED)
    M = fans_isomorphic(f, f)
    assert M is not None
    assert fans_isomorphic(build_fan(P2), build_fan(P1xP1)) is None
    g = product_fan([build_fan(P1), build_fan(P1)])
    assert fans_isomorphic(g, build_fan(P1xP1)) is not None


def test_fans_isomorphic_under_relabeling():
    B = bs(4, [1, 2], [1, 2, 3], [1, 2, 4], [1, 2, 3, 4])
    for perm in itertools.permutations(range(1, 5)):
        assert fans_isomorphic(build_fan(B), build_fan(apply_permutation(B, perm))) is not None


def test_fans_distinguished():
    a = build_fan(bs(4, [1, 2], [1, 2, 3], [1, 2, 3, 4]))
    b = build_fan(bs(4, [1, 2], [3, 4], [1, 2, 3, 4]))
    assert len(a.rays) == len(b.rays)
    assert fans_isomorphic(a, b) is None


# -- independent smooth-Fano oracle -------------------------------------------

def oracle_smooth_fano(points):
    """scipy hull in F-coordinates, exact lattice checks on top."""
    pts = np.array([to_F(p) for p in set(points)], dtype=float)
    n = pts.shape[1]
    if n == 1:
        lo, hi = pts.min(), pts.max()
        return bool(lo == -1 and hi == 1)
    hull = ConvexHull(pts)
    _, keep = np.unique(np.round(hull.equations, 6), axis=0, return_index=True)
    eq = hull.equations[keep]
    if np.any(eq[:, -1] >= 0):
        return None
    verts = pts[hull.vertices]
    lo, hi = verts.min(axis=0).astype(int), verts.max(axis=0).astype(int)
    for y in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if any(y) and np.all(eq[:, :-1] @ np.array(y) + eq[:, -1] < -1e-9):
            return False
    for row in eq:
        on = verts[np.abs(verts @ row[:-1] + row[-1]) < 1e-9]
        if len(on) != n or round(abs(np.linalg.det(on))) != 1:
            return False
    return True


def test_oracle_on_random_digraphs():
    rng = random.Random(7)
    checked = fano = 0
    for _ in range(400):
        nodes = rng.choice([3, 4])
        pairs = [(i, j) for i in range(1, nodes + 1) for j in range(1, nodes + 1) if i != j]
        arrows = tuple(rng.sample(pairs, rng.randint(nodes, len(pairs))))
        P = polytope_from_digraph(DirectedGraph(nodes, arrows))
        if not P.full_dimensional or any(f.offset <= 0 for f in P.facets):
            continue
        want = oracle_smooth_fano([rho(a, nodes) for a in arrows])
        if want is None:
            continue
        got = is_smooth_fano_polytope(P)
        assert got == want, arrows
        checked += 1
        fano += got
    assert checked > 100 and 0 < fano < checked


def test_every_realization_through_five():
    for n in range(2, 6):
        for B in enumerate_building_sets(n, connected_only=True):
            if not is_fano_criterion(B)[0]:
                continue
            G = fano_to_digraph(B)
            assert len(G.arrows) == len(B.members) - 1
            P = polytope_from_digraph(G)
            assert len(P.vertices) == len(G.arrows)
            assert is_smooth_fano_polytope(P)
            assert oracle_smooth_fano([rho(a, G.nodes) for a in G.arrows]) is True
            f = fan_of_digraph(G)
            assert is_smooth(f) and is_complete(f)
            assert fans_isomorphic(build_fan(B), f) is not None


def test_U_shape_exhaustive():
    for n in range(2, 6):
        for B in enumerate_building_sets(n, connected_only=True):
            if is_fano_criterion(B)[0]:
                c = compute_U(B)
                if c.case != CASE_A:
                    assert decomposition_pieces(B, c) == set(B.members)
                if c.case == CASE_C:
                    assert all((a | b) == B.ground for a, b in itertools.combinations(c.U, 2))


def test_components_realized_by_restriction():
    B = bs(5, [1, 2], [3, 4, 5])
    for C in B.components():
        assert is_fano_criterion(restriction(B, C))[0]
    G = building_set_digraph(B)
    assert fans_isomorphic(build_fan(B), fan_of_digraph(G)) is not None
