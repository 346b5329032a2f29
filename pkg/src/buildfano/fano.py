"""Combinatorial Fano criterion for building sets and explicit non-Fano
witnesses.

A building set gives a Fano variety iff inside every component ``C`` any
two overlapping, incomparable members ``I1, I2`` satisfy ``I1 ∪ I2 = C``
and ``I1 ∩ I2 ∈ B``.  When this fails, :func:`find_witness_pair` runs the
inductive construction that shrinks ``|I1 △ I2|`` until the two families
``{J_k} ∪ N ∪ (B|_{J1∩J2})_max ∪ N' ∪ (B|_D)_max`` are nested, and
:func:`witness_wall` turns that into a wall of the fan whose anticanonical
degree is at most zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .buildset import (
    BuildingSet,
    components,
    contraction,
    elements_of,
    fmt,
    lowest,
    popcount,
    restriction,
)
from .fan import Fan, Wall, build_fan, intersection_number
from .nested import (
    DisjointUnionViolation,
    Face,
    NestingError,
    OverlapViolation,
    canonical_maximal_nested_set,
    is_maximal_face,
    is_nested,
    pull_back,
    sort_face,
)

UNION_NOT_COMPONENT = "UnionNotComponent"
INTERSECTION_NOT_IN_B = "IntersectionNotInB"


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class CriterionViolation:
    component: int
    pair: tuple[int, int]
    reason: str

    def __str__(self):
        a, b = self.pair
        return f"{fmt(a)}, {fmt(b)} in component {fmt(self.component)}: {self.reason}"


def overlapping(a: int, b: int) -> bool:
    """Intersecting and incomparable."""
    inter = a & b
    return bool(inter) and inter != a and inter != b


def is_fano_criterion(B: BuildingSet) -> tuple[bool, list[CriterionViolation]]:
    violations = []
    mem = B.member_set
    for C in components(B):
        local = [m for m in B.members if m & C == m]
        for a, b in itertools.combinations(local, 2):
            if not overlapping(a, b):
                continue
            if (a | b) != C:
                violations.append(CriterionViolation(C, (a, b), UNION_NOT_COMPONENT))
            elif (a & b) not in mem:
                violations.append(CriterionViolation(C, (a, b), INTERSECTION_NOT_IN_B))
    return not violations, violations


def fano_by_criterion(B: BuildingSet) -> bool:
    return is_fano_criterion(B)[0]


# -- witness pairs ----------------------------------------------------------

@dataclass(frozen=True)
class WitnessPair:
    J1: int
    J2: int
    j1: int
    j2: int
    N: Face
    N_prime: Face
    N_doubleprime: Face = ()
    trace: tuple[str, ...] = field(default=(), compare=False)

    @property
    def intersection(self) -> int:
        return self.J1 & self.J2

    @property
    def rest(self) -> int:
        """``(J1 △ J2) \\ {j1, j2}``."""
        return (self.J1 ^ self.J2) & ~(1 << (self.j1 - 1)) & ~(1 << (self.j2 - 1))


def _max_of(B: BuildingSet, C: int) -> Face:
    return components(restriction(B, C)) if C else ()


def _max_nested(B: BuildingSet, C: int) -> Face:
    return canonical_maximal_nested_set(restriction(B, C)) if C else ()


def core_family(B: BuildingSet, inter: int, rest: int, N: Face, N_prime: Face) -> tuple[int, ...]:
    """``N ∪ (B|_inter)_max ∪ N' ∪ (B|_rest)_max``."""
    return tuple(N) + _max_of(B, inter) + tuple(N_prime) + _max_of(B, rest)


def assembled(B: BuildingSet, pair: WitnessPair, k: int) -> Face:
    J = pair.J1 if k == 1 else pair.J2
    return sort_face((J,) + core_family(B, pair.intersection, pair.rest, pair.N, pair.N_prime))


def _bit(i: int) -> int:
    return 1 << (i - 1)


def find_witness_pair(
    B: BuildingSet,
    I1: int,
    I2: int,
    i1: int | None = None,
    i2: int | None = None,
) -> WitnessPair:
    """Run the inductive ``J1, J2`` construction for an overlapping pair.

    ``i1``, ``i2`` fix the first split elements; otherwise the smallest
    elements of ``I1 \\ I2`` and ``I2 \\ I1`` are used, and every later choice
    is canonical as well.  When ``I1 ∩ I2 ∉ B`` the result satisfies
    ``J1 ∩ J2 ∉ B`` or ``J1 ∪ J2 ⊊ I1 ∪ I2``.
    """
    mem = B.member_set
    if I1 not in mem or I2 not in mem or not overlapping(I1, I2):
        raise PreconditionViolated(f"{fmt(I1)}, {fmt(I2)} must be overlapping members")
    comp = next(C for C in components(B) if I1 & C)
    for i, side in ((i1, I1 & ~I2), (i2, I2 & ~I1)):
        if i is not None and not side & _bit(i):
            raise PreconditionViolated(f"{i} is not in {fmt(side)}")
    trace: list[str] = []
    J1, J2, j1, j2, N, Np = _descend(B, I1, I2, (I1 & I2) not in mem, i1, i2, trace, 0)
    pair = WitnessPair(J1, J2, j1, j2, N, Np, (), tuple(trace))
    union = J1 | J2
    if union != comp:
        pair = WitnessPair(J1, J2, j1, j2, N, Np, extension_through_link(B, union), tuple(trace))
    return pair


def extension_through_link(B: BuildingSet, C: int) -> Face:
    """``N''``: a canonical maximal nested set of the contraction ``C\\B``
    carried back to a face of ``B`` through the link correspondence."""
    M = canonical_maximal_nested_set(contraction(restriction(B, _component_of(B, C)), C))
    return sort_face(pull_back(B, C, J) for J in M)


def _component_of(B: BuildingSet, X: int) -> int:
    return next(C for C in components(B) if X & C == X)


def _descend(B, I1, I2, need_refine, i1, i2, trace, depth):
    mem = B.member_set
    inter = I1 & I2
    sym = I1 ^ I2
    if depth > popcount(B.ground):
        raise RuntimeError("witness recursion did not terminate")
    if i1 is None:
        i1 = lowest(I1 & ~I2)
    if i2 is None:
        i2 = lowest(I2 & ~I1)
    N = _max_nested(B, inter)
    if popcount(sym) == 2:
        trace.append(f"base: J1={fmt(I1)}, J2={fmt(I2)}")
        return I1, I2, i1, i2, N, ()
    rest = sym & ~_bit(i1) & ~_bit(i2)
    Np = _max_nested(B, rest)
    core = core_family(B, inter, rest, N, Np)
    bad = None
    for k, Ik in ((1, I1), (2, I2)):
        try:
            is_nested(B, (Ik,) + core)
        except NestingError as exc:
            bad = (k, Ik, exc)
            break
    if bad is None:
        trace.append(f"nested: I1={fmt(I1)}, I2={fmt(I2)}, i1={i1}, i2={i2}")
        return I1, I2, i1, i2, N, Np

    k, Ik, exc = bad
    lpart = set(Np) | set(_max_of(B, rest))
    new = [I1, I2]
    if isinstance(exc, OverlapViolation):
        (L,) = [m for m in exc.members if m != Ik]
        assert L in lpart and overlapping(Ik, L)
        new[k - 1] = Ik | L
        assert new[k - 1] in mem
        trace.append(f"case 1: I{k}={fmt(Ik)} overlaps L={fmt(L)}")
    elif isinstance(exc, DisjointUnionViolation):
        parts = exc.members
        Ls = [m for m in parts if m in lpart]
        lunion = 0
        for m in Ls:
            lunion |= m
        if Ik in parts:
            new[k - 1] = Ik | lunion
            assert new[k - 1] in mem
            trace.append(f"case 3: I{k}={fmt(Ik)} with L=" + ",".join(map(fmt, Ls)))
        else:
            # K's lie inside both I_k, so I_k meets the union K ∪ L ∈ B
            total = 0
            for m in parts:
                total |= m
            for idx, I in enumerate((I1, I2)):
                grown = I | total
                assert I & total and grown in mem and grown == I | lunion
                new[idx] = grown
            trace.append("case 2: K=" + ",".join(fmt(m) for m in parts if m not in lpart)
                         + " L=" + ",".join(map(fmt, Ls)))
    else:
        raise AssertionError(f"unexpected violation {exc}")

    P1, P2 = new
    assert (inter & ~(P1 & P2)) == 0 and (P1 & P2) != inter
    assert P1 | P2 == I1 | I2 and overlapping(P1, P2)
    if need_refine and (P1 & P2) in mem:
        if P1 != I1:
            Q1, Q2 = I1, P1 & P2
        else:
            Q1, Q2 = P1 & P2, I2
        trace.append(f"detour: {fmt(P1 & P2)} in B, continue with {fmt(Q1)}, {fmt(Q2)}")
        return _descend(B, Q1, Q2, False, None, None, trace, depth + 1)
    return _descend(B, P1, P2, need_refine, None, None, trace, depth + 1)


# -- witness walls ----------------------------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    violation: CriterionViolation
    pair: WitnessPair
    maximal_sets: tuple[Face, Face]
    tau: Face
    wall: Wall
    predicted: int
    intersection_number: int


def _oriented_wall(f: Fan, tau_face: Face, a: int, b: int) -> Wall:
    tau = f.cone_of_face(tau_face)
    (va,) = f.cone_of_face((a,))
    (vb,) = f.cone_of_face((b,))
    ca = tuple(sorted(tau + (va,)))
    cb = tuple(sorted(tau + (vb,)))
    cones = set(f.max_cones)
    if ca not in cones or cb not in cones:
        raise AssertionError("assembled wall does not bound two maximal cones")
    if cb < ca:
        va, vb = vb, va
    return Wall(tau, va, vb)


def witness_report(B: BuildingSet, f: Fan | None = None) -> WitnessReport | None:
    """Assemble a wall with nonpositive anticanonical degree, or ``None``
    when the criterion holds.  Disconnected ``B`` uses the first failing
    component, completed by canonical maximal nested sets of the others."""
    ok, violations = is_fano_criterion(B)
    if ok:
        return None
    if f is None:
        f = build_fan(B)
    viol = violations[0]
    C = viol.component
    I1, I2 = viol.pair
    pair = find_witness_pair(restriction(B, C), I1, I2)
    union = pair.J1 | pair.J2
    inter = pair.intersection
    core = core_family(B, inter, pair.rest, pair.N, pair.N_prime)
    n_max = len(_max_of(B, inter))
    if union != C:
        tau_face = sort_face((union,) + core + pair.N_doubleprime)
        predicted = 2 - n_max - 1
    else:
        assert inter not in B.member_set and n_max >= 2
        tau_face = sort_face(core)
        predicted = 2 - n_max
    others = tuple(
        m for D in components(B) if D != C for m in canonical_maximal_nested_set(restriction(B, D))
    )
    tau_face = sort_face(tau_face + others)
    maxes = (sort_face(tau_face + (pair.J1,)), sort_face(tau_face + (pair.J2,)))
    for face in maxes:
        is_nested(B, face)
        if not is_maximal_face(B, face):
            raise AssertionError("assembled nested set is not maximal")
    wall = _oriented_wall(f, tau_face, pair.J1, pair.J2)
    number = intersection_number(f, wall)
    return WitnessReport(viol, pair, maxes, tau_face, wall, predicted, number)


def witness_wall(B: BuildingSet) -> tuple[Wall, int] | None:
    rep = witness_report(B)
    return None if rep is None else (rep.wall, rep.intersection_number)


# -- wall numbers predicted on the Fano side --------------------------------

def predicted_wall_number(B: BuildingSet, f: Fan, w: Wall) -> int:
    """Degree of a wall's curve read off from the nested sets alone.

    For ``N ∪ {I1}``, ``N ∪ {I2}`` maximal: if ``I1 ∩ I2 ≠ ∅`` the value is 1
    (valid when the criterion holds); otherwise ``I1 ∪ I2`` together with
    ``I3..Ik ∈ N`` tiles the smallest ``P ∈ N ∪ B_max`` above it, giving
    ``k - 1`` if ``P ∈ N`` and ``k`` if ``P`` is a component.
    """
    members = f.ray_members
    N = [members[i] for i in w.tau]
    I1, I2 = members[w.v], members[w.v_prime]
    if I1 & I2:
        return 1
    pair = I1 | I2
    above = [X for X in N + list(components(B)) if X & pair == pair]
    P = min(above, key=popcount)
    inside = [X for X in N if X & P == X and not X & pair]
    tops = [X for X in inside if not any(X != Y and X & Y == X for Y in inside)]
    cover = pair
    for X in tops:
        cover |= X
    if cover != P:
        raise AssertionError(f"{fmt(P)} is not tiled by the wall's members")
    k = 2 + len(tops)
    return k - 1 if P in N else k


def describe_pair(pair: WitnessPair) -> dict:
    return {
        "J1": list(elements_of(pair.J1)),
        "J2": list(elements_of(pair.J2)),
        "j1": pair.j1,
        "j2": pair.j2,
        "N": [list(elements_of(m)) for m in pair.N],
        "N_prime": [list(elements_of(m)) for m in pair.N_prime],
        "N_doubleprime": [list(elements_of(m)) for m in pair.N_doubleprime],
        "trace": list(pair.trace),
    }

