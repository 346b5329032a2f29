"""Building sets on small finite ground sets.

Subsets are stored as integer bitmasks: element ``i`` (1-based label) is
bit ``i - 1``.  A :class:`BuildingSet` carries its ground set as a mask as
well, so restrictions and contractions keep the original labels and a
standard ``1..k`` relabeling is only produced on request.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MAX_GROUND = 16
MAX_CANONICAL_GROUND = 7


# -- bitmask helpers --------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for i in elements:
        if i < 1 or i > MAX_GROUND:
            raise ValueError(f"element {i} outside 1..{MAX_GROUND}")
        m |= 1 << (i - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Smallest label in a nonempty mask."""
    return (mask & -mask).bit_length()


def member_key(mask: int):
    """Canonical member order: by size, then lexicographically by elements."""
    return (popcount(mask), elements_of(mask))


def sort_members(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=member_key))


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


def symmetric_difference(x: int, y: int) -> int:
    return x ^ y


# -- diagnostics ------------------------------------------------------------

class BuildingSetError(ValueError):
    """Base class for invalid building-set input."""


class EmptyMember(BuildingSetError):
    def __init__(self):
        super().__init__("empty set is not allowed as a member")


class MemberOutsideGround(BuildingSetError):
    def __init__(self, member: int, ground: int):
        self.member = member
        super().__init__(f"member {fmt(member)} is not a subset of ground {fmt(ground)}")


class MissingSingleton(BuildingSetError):
    def __init__(self, i: int):
        self.element = i
        super().__init__(f"singleton {{{i}}} is missing")


class UnionViolation(BuildingSetError):
    def __init__(self, first: int, second: int):
        self.pair = (first, second)
        super().__init__(
            f"{fmt(first)} and {fmt(second)} intersect but their union "
            f"{fmt(first | second)} is not a member"
        )


class EmptyRestrictionTarget(BuildingSetError):
    def __init__(self):
        super().__init__("cannot restrict to the empty set")


class InvalidContractionTarget(BuildingSetError):
    def __init__(self, target: int):
        super().__init__(f"contraction target {fmt(target)} must be a nonempty proper subset")


class GroundSetTooLarge(BuildingSetError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"ground set of size {size} exceeds limit {limit}")


# -- building sets ----------------------------------------------------------

@dataclass(frozen=True)
class BuildingSet:
    """A validated building set.  Construct through :func:`validate_building_set`
    or the helpers below; the raw constructor does not check the axioms."""

    ground: int
    members: tuple[int, ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return elements_of(self.ground)

    @property
    def size(self) -> int:
        return popcount(self.ground)

    def __contains__(self, mask: int) -> bool:
        return mask in self.member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def member_set(self) -> frozenset[int]:
        return _member_set(self.members)

    def components(self) -> tuple[int, ...]:
        return components(self)

    def is_connected(self) -> bool:
        return self.components() == (self.ground,)

    def nonmaximal(self) -> tuple[int, ...]:
        """Members of B minus B_max, in canonical order."""
        top = set(self.components())
        return tuple(m for m in self.members if m not in top)

    def as_lists(self) -> list[list[int]]:
        return [list(elements_of(m)) for m in self.members]

    def standardized(self) -> tuple["BuildingSet", tuple[int, ...]]:
        """Relabel the ground onto ``1..k``.  Returns the relabeled set and
        the tuple of original labels (position ``p`` holds the label now
        called ``p + 1``)."""
        labels = self.labels
        if labels == tuple(range(1, len(labels) + 1)):
            return self, labels
        pos = {lab: p + 1 for p, lab in enumerate(labels)}
        members = sort_members(mask_of(pos[i] for i in elements_of(m)) for m in self.members)
        return BuildingSet((1 << len(labels)) - 1, members), labels

    def to_json(self) -> dict:
        labels = self.labels
        ground: object = len(labels) if labels == tuple(range(1, len(labels) + 1)) else list(labels)
        return {"ground": ground, "members": self.as_lists()}

    def __str__(self) -> str:
        return "{" + ", ".join(fmt(m) for m in self.members) + "}"


@lru_cache(maxsize=65536)
def _member_set(members: tuple[int, ...]) -> frozenset[int]:
    return frozenset(members)


def _ground_mask(ground) -> int:
    if isinstance(ground, int):
        if not 1 <= ground <= MAX_GROUND:
            raise GroundSetTooLarge(ground, MAX_GROUND)
        return (1 << ground) - 1
    m = mask_of(ground)
    if m == 0:
        raise BuildingSetError("ground set must be nonempty")
    return m


def validate_building_set(family: Iterable, ground) -> BuildingSet:
    """Check the building-set axioms and return a :class:`BuildingSet`.

    ``family`` holds masks or iterables of 1-based labels; ``ground`` is the
    ground size (labels ``1..ground``) or an explicit iterable of labels.
    The first violation in canonical member order is raised.
    """
    gmask = _ground_mask(ground)
    masks = set()
    for item in family:
        m = item if isinstance(item, int) else mask_of(item)
        if m == 0:
            raise EmptyMember()
        masks.add(m)
    members = sort_members(masks)
    for m in members:
        if m & ~gmask:
            raise MemberOutsideGround(m, gmask)
    for i in elements_of(gmask):
        if (1 << (i - 1)) not in masks:
            raise MissingSingleton(i)
    for a, b in itertools.combinations(members, 2):
        if a & b and (a | b) not in masks:
            raise UnionViolation(a, b)
    return BuildingSet(gmask, members)


def from_json(data) -> BuildingSet:
    if isinstance(data, str):
        data = json.loads(data)
    return validate_building_set([tuple(m) for m in data["members"]], data["ground"])


def closure(masks: Iterable[int]) -> frozenset[int]:
    """Close a family under unions of intersecting members."""
    fam = set(masks)
    frontier = list(fam)
    while frontier:
        new = []
        for a in frontier:
            for b in list(fam):
                if a & b:
                    u = a | b
                    if u not in fam:
                        fam.add(u)
                        new.append(u)
        frontier = new
    return frozenset(fam)


def from_generators(ground: int, extra: Iterable[Iterable[int]] = ()) -> BuildingSet:
    """Singletons on ``1..ground`` plus ``extra`` members, closed under the union axiom."""
    singles = [1 << i for i in range(ground)]
    return validate_building_set(closure(singles + [mask_of(e) for e in extra]), ground)


def components(B: BuildingSet) -> tuple[int, ...]:
    """B_max: the inclusion-maximal members, in canonical order."""
    return _components(B.members)


@lru_cache(maxsize=65536)
def _components(members: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for m in reversed(members):
        if not any(m & c == m for c in out):
            out.append(m)
    return sort_members(out)


def restrict_members(B: BuildingSet, C: int) -> tuple[int, ...]:
    return tuple(m for m in B.members if m & C == m)


def restriction(B: BuildingSet, C: int) -> BuildingSet:
    """B|_C on ground C; labels are kept as in B."""
    if C == 0:
        raise EmptyRestrictionTarget()
    if C & ~B.ground:
        raise MemberOutsideGround(C, B.ground)
    return BuildingSet(C, restrict_members(B, C))


def contraction(B: BuildingSet, C: int) -> BuildingSet:
    """C\\B = {I ⊆ S\\C nonempty : I ∈ B or C ∪ I ∈ B}, on ground S \\ C."""
    if C == 0 or C == B.ground or C & ~B.ground:
        raise InvalidContractionTarget(C)
    rest = B.ground & ~C
    mem = B.member_set
    out = set()
    for m in B.members:
        if m & C == 0:
            out.add(m)
        elif m & C == C and m != C:
            out.add(m & ~C)
    # every I with C ∪ I ∈ B arises from the member C ∪ I; every I ∈ B disjoint from C is kept
    assert all((x in mem) or ((x | C) in mem) for x in out)
    return BuildingSet(rest, sort_members(out))


def union_of(parts: Sequence[BuildingSet]) -> BuildingSet:
    """Disjoint union of building sets on disjoint grounds."""
    ground = 0
    members: list[int] = []
    for p in parts:
        if ground & p.ground:
            raise BuildingSetError("grounds are not disjoint")
        ground |= p.ground
        members.extend(p.members)
    return BuildingSet(ground, sort_members(members))


# -- graphs -----------------------------------------------------------------

@dataclass(frozen=True)
class SimpleGraph:
    nodes: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, nodes: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at node {u}")
            if not (1 <= u <= nodes and 1 <= v <= nodes):
                raise ValueError(f"edge ({u}, {v}) outside 1..{nodes}")
            es.add((min(u, v), max(u, v)))
        return cls(nodes, frozenset(es))

    def component_sizes(self) -> list[int]:
        seen: set[int] = set()
        sizes = []
        adj = {v: set() for v in range(1, self.nodes + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        for s in adj:
            if s in seen:
                continue
            stack, comp = [s], 0
            seen.add(s)
            while stack:
                x = stack.pop()
                comp += 1
                for y in adj[x] - seen:
                    seen.add(y)
                    stack.append(y)
            sizes.append(comp)
        return sizes


def graphical_building_set(G: SimpleGraph) -> BuildingSet:
    """All nonempty node sets inducing a connected subgraph."""
    nbr = [0] * (G.nodes + 1)
    for u, v in G.edges:
        nbr[u] |= 1 << (v - 1)
        nbr[v] |= 1 << (u - 1)
    members = []
    for m in range(1, 1 << G.nodes):
        reached = m & -m
        while True:
            grow = reached
            for i in elements_of(reached):
                grow |= nbr[i] & m
            if grow == reached:
                break
            reached = grow
        if reached == m:
            members.append(m)
    return BuildingSet((1 << G.nodes) - 1, sort_members(members))


# -- canonical forms --------------------------------------------------------

@lru_cache(maxsize=None)
def _mask_order(k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """All masks on 1..k in canonical member order, and the inverse rank table."""
    order = tuple(sorted(range(1, 1 << k), key=member_key))
    rank = [0] * (1 << k)
    for r, m in enumerate(order):
        rank[m] = r
    return order, tuple(rank)


@lru_cache(maxsize=None)
def _perm_tables(k: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """For every permutation of 1..k: (perm, canonical rank of the image of each mask)."""
    _, rank = _mask_order(k)
    out = []
    for perm in itertools.permutations(range(1, k + 1)):
        table = [0] * (1 << k)
        for m in range(1, 1 << k):
            low = m & -m
            i = low.bit_length()
            table[m] = table[m ^ low] | (1 << (perm[i - 1] - 1))
        out.append((perm, tuple(rank[t] for t in table)))
    return tuple(out)


def apply_permutation(B: BuildingSet, perm: Sequence[int]) -> BuildingSet:
    """Relabel a standard building set: element ``i`` becomes ``perm[i-1]``."""
    members = sort_members(mask_of(perm[i - 1] for i in elements_of(m)) for m in B.members)
    return BuildingSet(B.ground, members)


@lru_cache(maxsize=200_000)
def _canonical(k: int, members: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # comparing sorted rank tuples is the same as comparing member lists in canonical order
    best = None
    best_perm = None
    for perm, rtable in _perm_tables(k):
        key = sorted([rtable[m] for m in members])
        if best is None or key < best:
            best, best_perm = key, perm
    order, _ = _mask_order(k)
    return tuple(order[r] for r in best), best_perm


def canonical_form(B: BuildingSet) -> tuple[BuildingSet, tuple[int, ...]]:
    """Lexicographically least relabeling over all permutations of the ground.

    Returns the canonical building set on ``1..k`` and a permutation ``p``
    (tuple, ``p[i-1]`` is the new label of the i-th ground element) that
    carries ``B`` onto it.
    """
    k = B.size
    if k > MAX_CANONICAL_GROUND:
        raise GroundSetTooLarge(k, MAX_CANONICAL_GROUND)
    std, _ = B.standardized()
    members, perm = _canonical(k, std.members)
    return BuildingSet((1 << k) - 1, members), perm


def canonical_key(B: BuildingSet) -> tuple[int, tuple[int, ...]]:
    return B.size, canonical_form(B)[0].members


def isomorphic(A: BuildingSet, B: BuildingSet) -> bool:
    return canonical_key(A) == canonical_key(B)
