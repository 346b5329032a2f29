"""Fano building sets as directed graphs: the root polytope P_G is smooth
Fano and its face fan is the fan of the building set.

Run: python demos/04_directed_graphs.py
"""

from buildfano.buildset import elements_of, validate_building_set
from buildfano.digraph import (
    compute_U,
    fan_of_digraph,
    fans_isomorphic,
    is_smooth_fano_polytope,
    polytope_from_digraph,
    realize,
)
from buildfano.fan import build_fan

B = validate_building_set(
    [[1], [2], [3], [4], [5], [2, 3], [4, 5], [1, 2, 3], [2, 3, 4, 5], [1, 2, 3, 4, 5]], 5
)

# %% Members meeting another member with union S: here two of them.
cls = compute_U(B)
print("case", cls.case, "U =", [list(elements_of(x)) for x in cls.U])

# %% One arrow per member other than S.
R = realize(B)
print("arrows:", sorted(R.graph.arrows))

# %% The polytope of e_i - e_j over the arrows.
P = polytope_from_digraph(R.graph)
print("vertices:", len(P.vertices), "facets:", len(P.facets))
print("smooth Fano:", is_smooth_fano_polytope(P))

# %% A unimodular map between the two fans.
M = fans_isomorphic(build_fan(B), fan_of_digraph(R.graph))
print("isomorphism:", M)
