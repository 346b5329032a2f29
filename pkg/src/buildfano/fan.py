"""Simplicial lattice fans, the fan of a building set, walls and
anticanonical intersection numbers.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import intlinalg
from .buildset import BuildingSet, elements_of, fmt, restriction
from .nested import Face, maximal_nested_sets

Vector = tuple[int, ...]


class FullSetRay(ValueError):
    pass


class DanglingWall(ValueError):
    pass


class SingularSolve(ArithmeticError):
    pass


@dataclass(frozen=True)
class Fan:
    """A pure simplicial fan given by its rays and maximal cones.

    Cones are sorted tuples of ray indices.  ``ray_members`` records, for a
    fan built from a building set, the member whose ``e_I`` each ray is.
    """

    dim: int
    rays: tuple[Vector, ...]
    max_cones: tuple[tuple[int, ...], ...]
    ray_members: tuple[int, ...] | None = field(default=None, compare=False)

    def cone_vectors(self, cone: Sequence[int]) -> list[Vector]:
        return [self.rays[i] for i in cone]

    def cones(self) -> list[tuple[int, ...]]:
        """Every face of every maximal cone (the zero cone included)."""
        seen = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                seen.update(itertools.combinations(c, k))
        return sorted(seen, key=lambda c: (len(c), c))

    def cone_of_face(self, face: Face) -> tuple[int, ...]:
        index = {m: i for i, m in enumerate(self.ray_members)}
        return tuple(sorted(index[m] for m in face))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }


@dataclass(frozen=True)
class Wall:
    """An (n-1)-cone ``tau`` with the two rays ``v``, ``v_prime`` completing it
    to maximal cones; ``v`` belongs to the lexicographically smaller one."""

    tau: tuple[int, ...]
    v: int
    v_prime: int


def ray_vector(I: int, n: int, labels: Sequence[int] | None = None) -> Vector:
    """``e_I`` in Z^n, with ``e_{n+1} = -(e_1 + ... + e_n)``.

    ``labels`` lists the ground labels in order (defaults to ``1..n+1``);
    position ``k`` plays the role of ``e_{k+1}``.
    """
    if labels is None:
        labels = tuple(range(1, n + 2))
    pos = {lab: p for p, lab in enumerate(labels)}
    elems = elements_of(I)
    if not elems or any(i not in pos for i in elems):
        raise ValueError(f"{fmt(I)} is not a nonempty subset of the ground")
    if len(elems) == n + 1:
        raise FullSetRay("e_S = 0 is not a ray")
    v = [0] * n
    for i in elems:
        p = pos[i]
        if p == n:
            v = [x - 1 for x in v]
        else:
            v[p] += 1
    return tuple(v)


def _connected_fan(B: BuildingSet) -> Fan:
    n = B.size - 1
    labels = B.labels
    members = B.nonmaximal()
    rays = tuple(ray_vector(I, n, labels) for I in members)
    index = {m: i for i, m in enumerate(members)}
    cones = sorted(tuple(sorted(index[m] for m in f)) for f in maximal_nested_sets(B))
    return Fan(n, rays, tuple(cones), members)


def build_fan(B: BuildingSet) -> Fan:
    """The fan over the nested complex; a product of component fans when
    ``B`` is disconnected (components in canonical order)."""
    comps = B.components()
    if len(comps) == 1:
        return _connected_fan(B)
    return product_fan([_connected_fan(restriction(B, C)) for C in comps])


def product_fan(parts: Sequence[Fan]) -> Fan:
    """Direct-sum fan; factor lattices are consecutive coordinate blocks."""
    dim = sum(p.dim for p in parts)
    rays: list[Vector] = []
    members: list[int] = []
    offsets = []
    off = 0
    r_off = 0
    for p in parts:
        offsets.append(r_off)
        for r in p.rays:
            rays.append((0,) * off + tuple(r) + (0,) * (dim - off - p.dim))
        if p.ray_members is not None:
            members.extend(p.ray_members)
        off += p.dim
        r_off += len(p.rays)
    cones = []
    for combo in itertools.product(*(p.max_cones for p in parts)):
        cone = []
        for o, c in zip(offsets, combo):
            cone.extend(o + i for i in c)
        cones.append(tuple(sorted(cone)))
    have_members = all(p.ray_members is not None for p in parts)
    return Fan(dim, tuple(rays), tuple(sorted(cones)), tuple(members) if have_members else None)


def cone_det(f: Fan, cone: Sequence[int]) -> int:
    return intlinalg.det(f.cone_vectors(cone))


def is_smooth(f: Fan) -> bool:
    """Every maximal cone is full-dimensional and unimodular."""
    return all(len(c) == f.dim and abs(cone_det(f, c)) == 1 for c in f.max_cones)


def _facet_incidence(f: Fan) -> dict[tuple[int, ...], list[int]]:
    inc: dict[tuple[int, ...], list[int]] = {}
    for ci, c in enumerate(f.max_cones):
        for k in range(len(c)):
            inc.setdefault(c[:k] + c[k + 1:], []).append(ci)
    return inc


def is_complete(f: Fan) -> bool:
    """Heuristic completeness test, used as a sanity oracle only.

    Requires (i) every (n-1)-cone in exactly two maximal cones, (ii) a
    connected adjacency graph of maximal cones, and (iii) every point of a
    perturbed grid in [-3, 3]^n to lie in the interior of exactly one
    maximal cone.
    """
    n = f.dim
    if n == 0:
        return f.max_cones == ((),)
    if any(len(c) != n for c in f.max_cones):
        return False
    inc = _facet_incidence(f)
    if any(len(v) != 2 for v in inc.values()):
        return False
    adj: dict[int, set[int]] = {i: set() for i in range(len(f.max_cones))}
    for a, b in inc.values():
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for y in adj[stack.pop()] - seen:
            seen.add(y)
            stack.append(y)
    if len(seen) != len(f.max_cones):
        return False
    return _grid_covered(f)


def _grid_covered(f: Fan) -> bool:
    n = f.dim
    grid = np.array(list(itertools.product(range(-3, 4), repeat=n)), dtype=np.int64)
    # generic shift keeps grid points off cone boundaries
    scale = 10_007
    shift = np.array([3 ** k for k in range(n)], dtype=np.int64)
    pts = grid * scale + shift
    hits = np.zeros(len(pts), dtype=np.int64)
    degenerate = np.zeros(len(pts), dtype=bool)
    for c in f.max_cones:
        M = [list(col) for col in zip(*f.cone_vectors(c))]
        d = intlinalg.det(M)
        if d == 0:
            return False
        adj = np.array(intlinalg.adjugate(M), dtype=np.int64)
        # coordinates of each point in the cone basis, scaled by det
        lam = pts @ adj.T * (1 if d > 0 else -1)
        hits += np.all(lam > 0, axis=1)
        degenerate |= np.all(lam >= 0, axis=1) & np.any(lam == 0, axis=1)
    good = ~degenerate
    return bool(np.all(hits[good] == 1))


def walls(f: Fan) -> list[Wall]:
    """All walls with both completions; orientation per the smaller maximal cone."""
    out = []
    for tau, owners in _facet_incidence(f).items():
        if len(owners) != 2:
            raise DanglingWall(f"cone {tau} lies in {len(owners)} maximal cones")
        a, b = sorted(owners, key=lambda i: f.max_cones[i])
        (v,) = set(f.max_cones[a]) - set(tau)
        (w,) = set(f.max_cones[b]) - set(tau)
        out.append(Wall(tau, v, w))
    return sorted(out, key=lambda w: (w.tau, w.v, w.v_prime))


def wall_coefficients(f: Fan, w: Wall) -> list[int]:
    """The integers ``a_i`` with ``v + v' + sum a_i v_i = 0``."""
    basis = f.cone_vectors(w.tau) + [f.rays[w.v]]
    try:
        coeffs = intlinalg.solve_columns(basis, f.rays[w.v_prime])
    except intlinalg.SingularMatrix as exc:
        raise SingularSolve(str(exc)) from exc
    # v' = c v + sum b_i v_i with c = -1 at a smooth wall
    if coeffs[-1] != -1 or any(x.denominator != 1 for x in coeffs):
        raise SingularSolve(f"wall {w} is not a smooth wall: {coeffs}")
    return [-int(x) for x in coeffs[:-1]]


def intersection_number(f: Fan, w: Wall) -> int:
    """Anticanonical degree ``2 + sum a_i`` of the curve of the wall."""
    return 2 + sum(wall_coefficients(f, w))


def wall_profile(f: Fan) -> list[tuple[Wall, int]]:
    return [(w, intersection_number(f, w)) for w in walls(f)]


def is_fano_by_intersection(f: Fan) -> tuple[bool, list[tuple[Wall, int]]]:
    """Fano iff every wall has positive intersection number.

    Walls of a product fan are walls of one factor times maximal cones of
    the others, with the factor's numbers, so the product is handled
    directly.
    """
    profile = wall_profile(f)
    return all(k >= 1 for _, k in profile), profile


def fano_by_intersection(B: BuildingSet) -> bool:
    return is_fano_by_intersection(build_fan(B))[0]
