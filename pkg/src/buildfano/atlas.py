"""Exhaustive small-case enumeration of building sets up to isomorphism,
Fano censuses and end-to-end checks of the directed-graph realization."""

from __future__ import annotations

import itertools
import json
import logging
import time
from dataclasses import asdict, dataclass, field

from .buildset import (
    BuildingSet,
    canonical_form,
    closure,
    from_generators,
    popcount,
    sort_members,
    union_of,
    validate_building_set,
)
from .digraph import (
    DirectedGraph,
    building_set_digraph,
    fan_of_digraph,
    fans_isomorphic,
    is_smooth_fano_polytope,
    polytope_from_digraph,
)
from .fan import build_fan, is_fano_by_intersection
from .fano import is_fano_criterion

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE = 5


class TooLarge(ValueError):
    pass


class OracleDisagreement(AssertionError):
    pass


class RealizationFailure(AssertionError):
    pass


# -- enumeration ------------------------------------------------------------

def enumerate_building_sets(n: int, connected_only: bool = False, limit: int | None = None) -> list[BuildingSet]:
    """All building sets on exactly ``{1..n}`` up to isomorphism, as canonical forms.

    Breadth-first over isomorphism classes: each class is extended by one
    extra subset and closed under the union axiom.  ``limit`` stops after
    that many classes (sampled mode for ``n = 6``).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_EXHAUSTIVE + 1 or (n > MAX_EXHAUSTIVE and limit is None):
        raise TooLarge(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE}")
    start, _ = canonical_form(from_generators(n))
    seen = {start.members: start}
    level = [start]
    full = (1 << n) - 1
    while level:
        nxt = []
        for B in level:
            mem = B.member_set
            for X in range(1, full + 1):
                if popcount(X) < 2 or X in mem:
                    continue
                C, _ = canonical_form(BuildingSet(full, sort_members(closure(mem | {X}))))
                if C.members not in seen:
                    seen[C.members] = C
                    nxt.append(C)
                    if limit is not None and len(seen) >= limit:
                        break
            if limit is not None and len(seen) >= limit:
                break
        level = nxt
        if limit is not None and len(seen) >= limit:
            break
    out = sorted(seen.values(), key=lambda B: (len(B.members), B.members))
    if connected_only:
        out = [B for B in out if B.is_connected()]
    return out


def naive_building_sets(n: int) -> list[BuildingSet]:
    """Filter every family of non-singleton subsets; an oracle for tiny n."""
    if n > 4:
        raise TooLarge("naive enumeration is limited to n <= 4")
    full = (1 << n) - 1
    singles = [1 << i for i in range(n)]
    others = [X for X in range(1, full + 1) if popcount(X) >= 2]
    seen = {}
    for bits in range(1 << len(others)):
        fam = singles + [X for k, X in enumerate(others) if bits >> k & 1]
        try:
            B = validate_building_set(fam, n)
        except ValueError:
            continue
        C, _ = canonical_form(B)
        seen[C.members] = C
    return sorted(seen.values(), key=lambda B: (len(B.members), B.members))


# -- census -----------------------------------------------------------------

@dataclass
class CensusRecord:
    building_set: BuildingSet
    connected: bool
    fano: bool
    wall_profile: list[int]
    digraph: DirectedGraph | None = None
    realized: bool | None = None

    def to_json(self) -> dict:
        return {
            "building_set": self.building_set.to_json(),
            "connected": self.connected,
            "fano": self.fano,
            "wall_profile": self.wall_profile,
            "digraph": self.digraph.to_json() if self.digraph else None,
            "realized": self.realized,
        }


@dataclass
class CensusReport:
    ground_size: int
    total: int
    connected: int
    fano: int
    connected_fano: int
    records: list[CensusRecord] = field(default_factory=list)
    seconds: float = 0.0
    note: str = ""

    def to_json(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k != "records"}
        d["records"] = [r.to_json() for r in self.records]
        return d

    def table(self) -> str:
        lines = [
            f"|S| = {self.ground_size}: {self.total} building sets, {self.connected} connected, "
            f"{self.fano} Fano ({self.connected_fano} connected Fano), {self.seconds:.2f}s",
        ]
        if self.note:
            lines.append(self.note)
        for r in self.records:
            flag = "Fano" if r.fano else "    "
            conn = "conn" if r.connected else "    "
            extra = "" if r.realized is None else ("  realized" if r.realized else "  NOT REALIZED")
            lines.append(f"  {flag} {conn} {r.building_set}  walls={r.wall_profile}{extra}")
        return "\n".join(lines)


def classify_record(B: BuildingSet) -> CensusRecord:
    """Decide Fano-ness both ways; raise :class:`OracleDisagreement` on mismatch."""
    crit, _ = is_fano_criterion(B)
    inter, profile = is_fano_by_intersection(build_fan(B))
    if crit != inter:
        raise OracleDisagreement(f"criterion={crit} intersection={inter} for {B}")
    return CensusRecord(B, B.is_connected(), crit, sorted(k for _, k in profile))


def _report(n: int, records: list[CensusRecord], t0: float, note: str = "") -> CensusReport:
    return CensusReport(
        ground_size=n,
        total=len(records),
        connected=sum(r.connected for r in records),
        fano=sum(r.fano for r in records),
        connected_fano=sum(r.fano and r.connected for r in records),
        records=records,
        seconds=time.perf_counter() - t0,
        note=note,
    )


def classify_fano(n: int, connected_only: bool = False, sample: int | None = None) -> CensusReport:
    t0 = time.perf_counter()
    forms = enumerate_building_sets(n, connected_only, limit=sample)
    records = [classify_record(B) for B in forms]
    note = f"sampled: first {len(forms)} canonical forms" if sample else ""
    return _report(n, records, t0, note)


def verify_realization(B: BuildingSet) -> tuple[DirectedGraph, bool]:
    """Digraph for a Fano building set, plus whether ``P_G`` is smooth Fano
    with face fan isomorphic to the building set's fan."""
    G = building_set_digraph(B)
    if G.nodes == 1:
        return G, build_fan(B).dim == 0
    P = polytope_from_digraph(G)
    if not is_smooth_fano_polytope(P):
        return G, False
    return G, fans_isomorphic(build_fan(B), fan_of_digraph(G)) is not None


def verify_realizations(n: int, connected_only: bool = False) -> CensusReport:
    t0 = time.perf_counter()
    records = []
    for B in enumerate_building_sets(n, connected_only):
        rec = classify_record(B)
        if rec.fano:
            G, ok = verify_realization(B)
            rec.digraph, rec.realized = G, ok
            if not ok:
                raise RealizationFailure(f"realization failed for {B}")
            records.append(rec)
    return _report(n, records, t0)


# -- threefolds -------------------------------------------------------------

def connected_fano_types(size: int) -> list[BuildingSet]:
    return [B for B in enumerate_building_sets(size, connected_only=True) if is_fano_criterion(B)[0]]


def _shift(B: BuildingSet, by: int) -> BuildingSet:
    return BuildingSet(B.ground << by, tuple(m << by for m in B.members))


def product_building_set(parts: list[BuildingSet]) -> BuildingSet:
    shifted, off = [], 0
    for p in parts:
        shifted.append(_shift(p, off))
        off += p.size
    return union_of(shifted)


def fano_building_sets_of_dim(dim: int) -> list[tuple[str, BuildingSet]]:
    """Fano building sets of a given dimension without point factors:
    products of connected Fano types whose dimensions sum to ``dim``."""
    by_dim = {d: connected_fano_types(d + 1) for d in range(1, dim + 1)}
    out = []
    for parts in _partitions(dim):
        pools = [list(enumerate(by_dim[d])) for d in parts]
        for choice in itertools.product(*pools):
            # unordered within equal dimensions
            key = [(d, i) for d, (i, _) in zip(parts, choice)]
            if key != sorted(key, reverse=True):
                continue
            B = product_building_set([b for _, b in choice])
            out.append(("x".join(str(d) for d in parts), B))
    return out


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@dataclass
class ThreefoldCensus:
    indecomposable: int
    products: int
    distinct: int
    types: list[dict]
    seconds: float

    def to_json(self) -> dict:
        return asdict(self)

    def table(self) -> str:
        lines = [
            f"{self.distinct} distinct toric Fano threefolds from building sets: "
            f"{self.indecomposable} indecomposable + {self.products} products ({self.seconds:.1f}s)"
        ]
        for t in self.types:
            lines.append(f"  {t['shape']:>6}  rays={t['rays']:<2} cones={t['cones']:<3} {t['building_set']}")
        return "\n".join(lines)


def distinct_fans(items):
    """Keep the first item of each fan-isomorphism class; items are (tag, B)."""
    kept = []
    for tag, B in items:
        f = build_fan(B)
        if not any(fans_isomorphic(f, g) is not None for _, _, g in kept):
            kept.append((tag, B, f))
    return kept


def fano_threefold_census() -> ThreefoldCensus:
    t0 = time.perf_counter()
    items = [(tag, B) for tag, B in fano_building_sets_of_dim(3) if is_fano_criterion(B)[0]]
    kept = distinct_fans(items)
    types = [
        {"shape": tag, "rays": len(f.rays), "cones": len(f.max_cones), "building_set": str(B)}
        for tag, B, f in kept
    ]
    indec = sum(1 for tag, _, _ in kept if tag == "3")
    return ThreefoldCensus(indec, len(kept) - indec, len(kept), types, time.perf_counter() - t0)


# -- digraphs that do not come from building sets ----------------------------

def search_non_building_digraphs(nodes: int, max_arrows: int | None = None, limit: int | None = None):
    """Smooth Fano ``P_G`` on ``nodes`` nodes whose fan matches no Fano
    building set of the same dimension.  Long-running; nothing is asserted
    about the outcome."""
    dim = nodes - 1
    targets = [build_fan(B) for _, B in fano_building_sets_of_dim(dim) if is_fano_criterion(B)[0]]
    pairs = [(i, j) for i in range(1, nodes + 1) for j in range(1, nodes + 1) if i != j]
    found, seen_fans = [], []
    top = len(pairs) if max_arrows is None else max_arrows
    for k in range(dim + 1, top + 1):
        for arrows in itertools.combinations(pairs, k):
            G = DirectedGraph(nodes, arrows)
            P = polytope_from_digraph(G)
            if not P.full_dimensional or any(f.offset <= 0 for f in P.facets):
                continue
            if len(P.vertices) != len(arrows) or not is_smooth_fano_polytope(P):
                continue
            f = fan_of_digraph(G)
            if any(fans_isomorphic(f, g) is not None for g in seen_fans):
                continue
            seen_fans.append(f)
            if not any(fans_isomorphic(f, t) is not None for t in targets):
                found.append(G)
                log.info("no building set for %s", arrows)
                if limit is not None and len(found) >= limit:
                    return found
    return found


def dump(obj) -> str:
    return json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj, indent=2)
