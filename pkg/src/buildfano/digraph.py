"""Lattice polytopes of directed graphs and the realization of Fano
building sets as smooth Fano polytopes ``P_G``.

Arrow ``(i, j)`` gives the point ``e_i - e_j`` of the sum-zero hyperplane
``H`` in ``R^{n+1}``.  All polytope work happens after the unimodular change
of coordinates ``F: H -> R^n``, ``e_i - e_{i+1} -> e_i``, which on a point
``x`` of ``H`` is just the vector of partial sums ``x_1 + ... + x_k``.
"""

from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import intlinalg
from .buildset import (
    BuildingSet,
    apply_permutation,
    components,
    elements_of,
    fmt,
    mask_of,
    popcount,
    restriction,
)
from .fan import Fan, Vector, is_smooth, ray_vector
from .fano import is_fano_criterion, overlapping


class DigraphError(ValueError):
    pass


class EmptyArrowSet(DigraphError):
    pass


class NotFullDimensional(DigraphError):
    pass


class OriginNotInterior(DigraphError):
    pass


class NotSmoothFano(DigraphError):
    pass


class UnexpectedUShape(AssertionError):
    pass


class HypothesisViolated(ValueError):
    pass


class NotFano(ValueError):
    pass


class NotConnected(ValueError):
    pass


@dataclass(frozen=True)
class DirectedGraph:
    nodes: int
    arrows: tuple[tuple[int, int], ...]

    @classmethod
    def from_arrows(cls, nodes: int, arrows: Iterable[Sequence[int]]) -> "DirectedGraph":
        seen = []
        for a in arrows:
            i, j = int(a[0]), int(a[1])
            if i == j:
                raise DigraphError(f"loop at node {i}")
            if not (1 <= i <= nodes and 1 <= j <= nodes):
                raise DigraphError(f"arrow ({i}, {j}) outside 1..{nodes}")
            if (i, j) in seen:
                raise DigraphError(f"duplicate arrow ({i}, {j})")
            seen.append((i, j))
        return cls(nodes, tuple(seen))

    def arrow_set(self) -> set[tuple[int, int]]:
        return set(self.arrows)

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data: dict) -> "DirectedGraph":
        return cls.from_arrows(data["nodes"], data["arrows"])


def rho(arrow: tuple[int, int], nodes: int) -> Vector:
    i, j = arrow
    v = [0] * nodes
    v[i - 1] += 1
    v[j - 1] -= 1
    return tuple(v)


def to_F(x: Sequence[int]) -> Vector:
    """Coordinates of ``x ∈ H`` in the basis ``e_i - e_{i+1}``."""
    out, s = [], 0
    for c in x[:-1]:
        s += c
        out.append(s)
    return tuple(out)


def from_F(y: Sequence[int]) -> Vector:
    prev = 0
    out = []
    for c in y:
        out.append(c - prev)
        prev = c
    out.append(-prev)
    return tuple(out)


# -- polytopes --------------------------------------------------------------

@dataclass(frozen=True)
class Facet:
    vertices: tuple[int, ...]
    normal: Vector
    offset: int


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points of ``H``; facets ``normal · F(x) <= offset``."""

    ambient_dim: int
    points: tuple[Vector, ...]
    vertices: tuple[Vector, ...]
    dim: int
    facets: tuple[Facet, ...]

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim - 1

    def vertex_coords(self) -> list[Vector]:
        return [to_F(v) for v in self.vertices]

    def is_vertex(self, point: Sequence[int]) -> bool:
        return tuple(point) in self.vertices


def _affine_dim(pts: Sequence[Vector]) -> int:
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return intlinalg.rank([[a - b for a, b in zip(p, base)] for p in pts[1:]])


def _hyperplane(pts: Sequence[Vector]) -> Vector | None:
    """Primitive normal of the affine hyperplane through ``n`` points of Z^n."""
    n = len(pts[0])
    base = pts[0]
    rows = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    normal = []
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows]
        normal.append((-1) ** j * intlinalg.det(minor))
    if not any(normal):
        return None
    g = 0
    for c in normal:
        g = gcd(g, c)
    return tuple(c // g for c in normal)


def lattice_hull(points: Sequence[Vector], ambient_dim: int) -> LatticePolytope:
    """Exact hull of points of ``H ∩ Z^{ambient_dim}``.

    Facets are found by testing every hyperplane spanned by ``n`` of the
    points; fine at the sizes used here (n <= 6, a few dozen points).
    """
    pts = tuple(dict.fromkeys(tuple(p) for p in points))
    coords = [to_F(p) for p in pts]
    n = ambient_dim - 1
    dim = _affine_dim(coords)
    if dim < n or n == 0:
        verts = pts if len(pts) == 1 else ()
        return LatticePolytope(ambient_dim, pts, verts, dim, ())
    found: dict[tuple[Vector, int], tuple[int, ...]] = {}
    for combo in itertools.combinations(range(len(coords)), n):
        normal = _hyperplane([coords[i] for i in combo])
        if normal is None:
            continue
        b = sum(x * y for x, y in zip(normal, coords[combo[0]]))
        vals = [sum(x * y for x, y in zip(normal, c)) for c in coords]
        if all(v <= b for v in vals):
            key = (normal, b)
        elif all(v >= b for v in vals):
            key = (tuple(-x for x in normal), -b)
        else:
            continue
        if key not in found:
            found[key] = tuple(i for i, v in enumerate(vals) if v == b)
    # a point is a vertex when the facets through it cut it out
    is_vert = []
    for i in range(len(coords)):
        normals = [k[0] for k, on in found.items() if i in on]
        is_vert.append(intlinalg.rank(normals) == n)
    index = {}
    verts = []
    for i, p in enumerate(pts):
        if is_vert[i]:
            index[i] = len(verts)
            verts.append(p)
    facets = []
    for (normal, b), on in sorted(found.items()):
        facets.append(Facet(tuple(sorted(index[i] for i in on if is_vert[i])), normal, b))
    facets.sort(key=lambda f: f.vertices)
    return LatticePolytope(ambient_dim, pts, tuple(verts), dim, tuple(facets))


def polytope_from_digraph(G: DirectedGraph) -> LatticePolytope:
    if not G.arrows:
        raise EmptyArrowSet("directed graph has no arrows")
    return lattice_hull([rho(a, G.nodes) for a in G.arrows], G.nodes)


def interior_lattice_points(P: LatticePolytope) -> list[Vector]:
    """Lattice points of ``H`` strictly inside ``P``, searched over the
    vertex bounding box."""
    lo = [min(v[k] for v in P.vertices) for k in range(P.ambient_dim)]
    hi = [max(v[k] for v in P.vertices) for k in range(P.ambient_dim)]
    out = []
    ranges = [range(lo[k], hi[k] + 1) for k in range(P.ambient_dim - 1)]
    for head in itertools.product(*ranges):
        last = -sum(head)
        if not lo[-1] <= last <= hi[-1]:
            continue
        x = head + (last,)
        y = to_F(x)
        if all(sum(a * c for a, c in zip(f.normal, y)) < f.offset for f in P.facets):
            out.append(x)
    return out


def is_smooth_fano_polytope(P: LatticePolytope) -> bool:
    """Origin is the only interior lattice point and every facet's vertices
    form a lattice basis."""
    if not P.full_dimensional:
        raise NotFullDimensional(f"polytope has dimension {P.dim} in H of dimension {P.ambient_dim - 1}")
    if any(f.offset <= 0 for f in P.facets):
        raise OriginNotInterior("origin is not an interior point")
    origin = (0,) * P.ambient_dim
    if interior_lattice_points(P) != [origin]:
        return False
    n = P.ambient_dim - 1
    coords = P.vertex_coords()
    for f in P.facets:
        if len(f.vertices) != n:
            return False
        if abs(intlinalg.det([coords[i] for i in f.vertices])) != 1:
            return False
    return True


def face_fan(P: LatticePolytope) -> Fan:
    """Fan of cones over the facets of ``P``, in F-coordinates."""
    rays = tuple(P.vertex_coords())
    cones = tuple(sorted(f.vertices for f in P.facets))
    return Fan(P.ambient_dim - 1, rays, cones)


def fan_of_digraph(G: DirectedGraph) -> Fan:
    if G.nodes == 1:
        return Fan(0, (), ((),))
    P = polytope_from_digraph(G)
    if not is_smooth_fano_polytope(P):
        raise NotSmoothFano("P_G is not a smooth Fano polytope")
    return face_fan(P)


# -- U-sets and interval renumbering ----------------------------------------

CASE_A, CASE_B, CASE_C = "A", "B", "C"


@dataclass(frozen=True)
class UClassification:
    U: tuple[int, ...]
    case: str
    I: int | None = None
    J: int | None = None
    K: int | None = None


def compute_U(B: BuildingSet) -> UClassification:
    """Members with a partner meeting them whose union is the whole ground."""
    S = B.ground
    proper = [m for m in B.members if m != S]
    U = tuple(
        I for I in proper if any(I & J and (I | J) == S for J in proper if J != I)
    )
    if not U:
        return UClassification(U, CASE_A)
    if len(U) == 2:
        I, J = U
        return UClassification(U, CASE_B, I, J)
    if len(U) == 3:
        I, J, K = U
        pairwise = all((a | b) == S for a, b in itertools.combinations(U, 2))
        if pairwise and K == S & ~(I & J):
            return UClassification(U, CASE_C, I, J, K)
    raise UnexpectedUShape("U = {" + ", ".join(map(fmt, U)) + "} fits no case")


def _chain_heights(fam: Sequence[int]) -> dict[int, int]:
    """Longest strictly increasing chain in ``fam`` starting at each member."""
    height: dict[int, int] = {}
    for I in sorted(fam, key=popcount, reverse=True):
        above = [height[J] for J in height if J != I and I & J == I]
        height[I] = 1 + max(above, default=0)
    return height


def _block_order(elements: Sequence[int], blocks: Sequence[int]) -> list[int]:
    """Order ``elements`` so each pairwise-disjoint block is consecutive;
    units are ordered by smallest element."""
    units = []
    covered = 0
    for blk in blocks:
        units.append(elements_of(blk))
        covered |= blk
    units.extend((e,) for e in elements if not covered & (1 << (e - 1)))
    units.sort(key=lambda u: u[0])
    return [e for u in units for e in u]


def _renumber(ground: Sequence[int], fam: Sequence[int]) -> list[int]:
    height = _chain_heights(fam)
    top = max(height.values(), default=0)
    if top <= 1:
        return _block_order(ground, fam)
    bottoms = [I for I in fam if height[I] == top]
    smaller = [I for I in fam if height[I] != top]
    order = _renumber(ground, smaller)
    h2 = _chain_heights(smaller)
    for J in (I for I in smaller if h2[I] == top - 1):
        slots = [p for p, e in enumerate(order) if J & (1 << (e - 1))]
        inner = [I for I in bottoms if I & J == I]
        local = _block_order(sorted(order[p] for p in slots), inner)
        for p, e in zip(slots, local):
            order[p] = e
    return order


def is_interval(positions: Iterable[int]) -> bool:
    ps = sorted(positions)
    return ps == list(range(ps[0], ps[0] + len(ps)))


def interval_renumbering(B: BuildingSet) -> dict[int, int]:
    """A bijection ``label -> 1..|S|`` making every member an interval.

    Requires intersecting members to be nested.  Recurses on the longest
    chain length of non-singleton members: strip the chain bottoms, number
    the rest, then reorder inside each new chain bottom.
    """
    fam = [m for m in B.members if popcount(m) >= 2]
    for a, b in itertools.combinations(fam, 2):
        if overlapping(a, b):
            raise HypothesisViolated(f"{fmt(a)} and {fmt(b)} intersect without nesting")
    order = _renumber(B.labels, fam)
    f = {e: p + 1 for p, e in enumerate(order)}
    for m in fam:
        assert is_interval(f[e] for e in elements_of(m)), fmt(m)
    return f


# -- Fano building set -> directed graph ------------------------------------

@dataclass(frozen=True)
class Realization:
    """A directed graph for a connected Fano building set.

    ``relabeling`` sends original labels to nodes; ``relabeled`` is the
    building set after relabeling; ``arrow_of`` maps each member of
    ``relabeled`` minus the ground to its arrow.
    """

    graph: DirectedGraph
    relabeling: dict
    relabeled: BuildingSet
    classification: UClassification
    arrow_of: dict


def decomposition_pieces(B: BuildingSet, cls: UClassification) -> set[int]:
    """``{S} ∪ U ∪ B|_{I\\J} ∪ B|_{I∩J} ∪ B|_{J\\I}``."""
    I, J = cls.I, cls.J
    out = {B.ground, *cls.U}
    for blk in (I & ~J, I & J, J & ~I):
        out.update(restriction(B, blk).members)
    return out


def realize(B: BuildingSet) -> Realization:
    if len(components(B)) != 1:
        raise NotConnected("building set is not connected")
    if not is_fano_criterion(B)[0]:
        raise NotFano("building set does not satisfy the Fano criterion")
    std, labels = B.standardized()
    size = std.size
    S = std.ground
    cls = compute_U(std)
    if size == 1:
        return Realization(DirectedGraph(1, ()), {labels[0]: 1}, std, cls, {})
    if cls.case == CASE_A:
        f = interval_renumbering(BuildingSet(S, tuple(m for m in std.members if m != S)))
    else:
        if set(std.members) != decomposition_pieces(std, cls):
            raise AssertionError("building set does not decompose along U")
        f = {}
        offset = 0
        for blk in (cls.I & ~cls.J, cls.I & cls.J, cls.J & ~cls.I):
            local = interval_renumbering(restriction(std, blk))
            for e, p in local.items():
                f[e] = offset + p
            offset += popcount(blk)
    perm = tuple(f[e] for e in range(1, size + 1))
    rel = apply_permutation(std, perm)
    n = size - 1
    skip = S
    extra = None
    if cls.case == CASE_C:
        a = popcount(cls.I & ~cls.J) + 1
        b = popcount(cls.I)
        skip_mask = mask_of(perm[e - 1] for e in elements_of(cls.K))
        extra = (skip_mask, (b + 1, a))
    arrow_of = {}
    for K in rel.members:
        if K == skip or (extra and K == extra[0]):
            continue
        ks = elements_of(K)
        i, j = ks[0], ks[-1]
        if not is_interval(ks):
            raise AssertionError(f"{fmt(K)} is not an interval after relabeling")
        arrow_of[K] = (i, j + 1) if j <= n else (i, 1)
    if extra:
        arrow_of[extra[0]] = extra[1]
    for K, arrow in arrow_of.items():
        if to_F(rho(arrow, size)) != ray_vector(K, n):
            raise AssertionError(f"arrow {arrow} does not map to e_{fmt(K)}")
    arrows = tuple(arrow_of[K] for K in rel.members if K in arrow_of)
    relabeling = {labels[e - 1]: f[e] for e in range(1, size + 1)}
    return Realization(DirectedGraph(size, arrows), relabeling, rel, cls, arrow_of)


def fano_to_digraph(B: BuildingSet) -> DirectedGraph:
    return realize(B).graph


def glue_at_node(graphs: Sequence[DirectedGraph]) -> DirectedGraph:
    """Identify node 1 of every graph; other nodes get consecutive ranges."""
    arrows = []
    base = 1
    for G in graphs:
        def move(k, base=base):
            return 1 if k == 1 else base + k - 1
        arrows.extend((move(i), move(j)) for i, j in G.arrows)
        base += G.nodes - 1
    return DirectedGraph(base, tuple(arrows))


def building_set_digraph(B: BuildingSet) -> DirectedGraph:
    """Directed graph for any Fano building set; components are glued at one node."""
    comps = components(B)
    if len(comps) == 1:
        return fano_to_digraph(B)
    if not is_fano_criterion(B)[0]:
        raise NotFano("building set does not satisfy the Fano criterion")
    return glue_at_node([fano_to_digraph(restriction(B, C)) for C in comps])


# -- fan isomorphism --------------------------------------------------------

def fans_isomorphic(f1: Fan, f2: Fan) -> list[list[int]] | None:
    """A unimodular matrix carrying ``f1`` onto ``f2``, or ``None``.

    One maximal cone of ``f1`` is sent to every ordering of every maximal
    cone of ``f2``; each candidate is checked on all rays and cones.
    """
    if f1.dim != f2.dim or len(f1.rays) != len(f2.rays) or len(f1.max_cones) != len(f2.max_cones):
        return None
    n = f1.dim
    if n == 0:
        return []
    if not (is_smooth(f1) and is_smooth(f2)):
        raise ValueError("fans_isomorphic expects smooth fans")
    if _degree_profile(f1) != _degree_profile(f2):
        return None
    anchor = f1.max_cones[0]
    A = [list(col) for col in zip(*f1.cone_vectors(anchor))]
    Ainv = intlinalg.unimodular_inverse(A)
    index2 = {r: i for i, r in enumerate(f2.rays)}
    cones2 = set(f2.max_cones)
    for tau in f2.max_cones:
        for order in itertools.permutations(tau):
            T = [list(col) for col in zip(*f2.cone_vectors(order))]
            M = intlinalg.matmul(T, Ainv)
            image = []
            for r in f1.rays:
                j = index2.get(intlinalg.matvec(M, r))
                if j is None:
                    break
                image.append(j)
            else:
                if len(set(image)) != len(image):
                    continue
                if all(tuple(sorted(image[i] for i in c)) in cones2 for c in f1.max_cones):
                    return M
    return None


def _degree_profile(f: Fan) -> list[int]:
    counts = [0] * len(f.rays)
    for c in f.max_cones:
        for i in c:
            counts[i] += 1
    return sorted(counts)
