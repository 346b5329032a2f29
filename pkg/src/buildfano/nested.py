"""Nested sets, nested complexes and links."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .buildset import (
    BuildingSet,
    contraction,
    fmt,
    member_key,
    restriction,
    sort_members,
    union_of,
)

MAX_COMPLEX_GROUND = 10

Face = tuple[int, ...]


class NestingError(ValueError):
    """A family that is not a nested set."""


class NotInBuildingSet(NestingError):
    def __init__(self, member: int):
        self.members = (member,)
        super().__init__(f"{fmt(member)} is not a member of the building set")


class MaximalElementIncluded(NestingError):
    def __init__(self, member: int):
        self.members = (member,)
        super().__init__(f"{fmt(member)} is a maximal member")


class OverlapViolation(NestingError):
    def __init__(self, first: int, second: int):
        self.members = (first, second)
        super().__init__(f"{fmt(first)} and {fmt(second)} overlap without nesting")


class DisjointUnionViolation(NestingError):
    def __init__(self, parts: tuple[int, ...]):
        self.members = parts
        union = 0
        for p in parts:
            union |= p
        super().__init__(
            "disjoint members " + ", ".join(map(fmt, parts)) + f" have union {fmt(union)} in B"
        )


class TooLarge(ValueError):
    pass


class NotALinkableMember(ValueError):
    pass


def sort_face(face: Iterable[int]) -> Face:
    return sort_members(face)


def face_key(face: Face):
    return (len(face), [member_key(m) for m in face])


def is_nested(B: BuildingSet, N: Iterable[int]) -> Face:
    """Return ``N`` as a sorted face if it is a nested set of ``B``; raise a
    :class:`NestingError` naming the first violation otherwise."""
    face = sort_face(N)
    top = set(B.components())
    mem = B.member_set
    for m in face:
        if m not in mem:
            raise NotInBuildingSet(m)
        if m in top:
            raise MaximalElementIncluded(m)
    for a, b in itertools.combinations(face, 2):
        if a & b and (a & b) != a and (a & b) != b:
            raise OverlapViolation(a, b)
    for k in range(2, len(face) + 1):
        for parts in itertools.combinations(face, k):
            union = 0
            for p in parts:
                if union & p:
                    break
                union |= p
            else:
                if union in mem:
                    raise DisjointUnionViolation(parts)
    return face


def nested_ok(B: BuildingSet, N: Iterable[int]) -> bool:
    try:
        is_nested(B, N)
    except NestingError:
        return False
    return True


def _compatible(face: Face, x: int, mem: frozenset[int]) -> bool:
    """Whether ``face + (x,)`` stays nested, given that ``face`` is nested."""
    disjoint = []
    for y in face:
        inter = x & y
        if inter:
            if inter != x and inter != y:
                return False
        else:
            disjoint.append(y)
    # any pairwise-disjoint subfamily of `disjoint` together with x
    stack = [(x, 0)]
    while stack:
        union, start = stack.pop()
        for i in range(start, len(disjoint)):
            y = disjoint[i]
            if union & y:
                continue
            u = union | y
            if u in mem:
                return False
            stack.append((u, i + 1))
    return True


@dataclass(frozen=True)
class NestedComplex:
    building_set: BuildingSet
    faces: tuple[Face, ...]

    def by_size(self) -> dict[int, list[Face]]:
        out: dict[int, list[Face]] = {}
        for f in self.faces:
            out.setdefault(len(f), []).append(f)
        return out

    def f_vector(self) -> list[int]:
        sizes = self.by_size()
        return [len(sizes.get(k, [])) for k in range(max(sizes) + 1)]

    def vertices(self) -> tuple[int, ...]:
        return tuple(f[0] for f in self.faces if len(f) == 1)

    def __len__(self):
        return len(self.faces)


def nested_complex(B: BuildingSet) -> NestedComplex:
    """All nested sets of ``B`` by depth-first extension in canonical order."""
    if B.size > MAX_COMPLEX_GROUND:
        raise TooLarge(f"ground size {B.size} exceeds {MAX_COMPLEX_GROUND}")
    return NestedComplex(B, _faces(B.members, B.nonmaximal()))


@lru_cache(maxsize=8192)
def _faces(members: tuple[int, ...], candidates: tuple[int, ...]) -> tuple[Face, ...]:
    mem = frozenset(members)
    out: list[Face] = [()]

    def extend(face: Face, start: int):
        for i in range(start, len(candidates)):
            x = candidates[i]
            if _compatible(face, x, mem):
                new = face + (x,)
                out.append(new)
                extend(new, i + 1)

    extend((), 0)
    return tuple(sorted(out, key=face_key))


def is_maximal_face(B: BuildingSet, face: Face) -> bool:
    mem = B.member_set
    inside = set(face)
    return not any(x not in inside and _compatible(face, x, mem) for x in B.nonmaximal())


def maximal_nested_sets(B: BuildingSet) -> list[Face]:
    """Inclusion-maximal nested sets, sorted."""
    cx = nested_complex(B)
    return [f for f in cx.faces if is_maximal_face(B, f)]


def canonical_maximal_nested_set(B: BuildingSet) -> Face:
    """The lexicographically first maximal nested set: greedy in canonical order."""
    return _greedy(B.members, B.nonmaximal())


@lru_cache(maxsize=65536)
def _greedy(members: tuple[int, ...], candidates: tuple[int, ...]) -> Face:
    mem = frozenset(members)
    face: Face = ()
    for x in candidates:
        if _compatible(face, x, mem):
            face = face + (x,)
    return sort_face(face)


def expected_maximal_size(B: BuildingSet) -> int:
    return B.size - len(B.components())


# -- links ------------------------------------------------------------------

@dataclass(frozen=True)
class Link:
    """The link of ``C`` together with its image under the label map.

    ``correspondence`` sends each link vertex ``I`` to ``I \\ C`` when
    ``C ⊂ I`` and to ``I`` otherwise; ``target`` is ``B|_C ∪ (C\\B)`` on the
    same ground as ``B``.
    """

    building_set: BuildingSet
    member: int
    faces: tuple[Face, ...]
    target: BuildingSet
    correspondence: dict
    image_faces: tuple[Face, ...]
    is_isomorphism: bool


def link_target(B: BuildingSet, C: int) -> BuildingSet:
    return union_of([restriction(B, C), contraction(B, C)])


def correspond(C: int, I: int) -> int:
    return I & ~C if I & C == C else I


def pull_back(B: BuildingSet, C: int, J: int) -> int:
    """Inverse of :func:`correspond` on the vertices of the link target."""
    if J & C:
        return J
    return J | C if (J | C) in B.member_set else J


def link(B: BuildingSet, C: int) -> Link:
    if C not in B.member_set or C in B.components():
        raise NotALinkableMember(f"{fmt(C)} is not a non-maximal member")
    cx = nested_complex(B)
    faces = tuple(tuple(m for m in f if m != C) for f in cx.faces if C in f)
    faces = tuple(sorted(faces, key=face_key))
    target = link_target(B, C)
    verts = sorted({m for f in faces for m in f}, key=member_key)
    corr = {I: correspond(C, I) for I in verts}
    image = {sort_face(corr[m] for m in f) for f in faces}
    target_faces = set(nested_complex(target).faces)
    ok = (
        len(set(corr.values())) == len(corr)
        and len(image) == len(faces)
        and image == target_faces
    )
    return Link(B, C, faces, target, corr, tuple(sorted(image, key=face_key)), ok)

