"""The nested complex of a building set and its toric fan, with the
anticanonical degree of every wall.

Run: python demos/02_nested_sets_and_fans.py
"""

from buildfano.buildset import elements_of, validate_building_set
from buildfano.fan import build_fan, is_complete, is_fano_by_intersection, is_smooth
from buildfano.nested import maximal_nested_sets, nested_complex

B = validate_building_set([[1], [2], [3], [2, 3], [1, 2, 3]], 3)

# %% Nested sets are the faces of a simplicial complex.
for face in nested_complex(B).faces:
    print("  ", [list(elements_of(x)) for x in face])

# %% Maximal nested sets become the maximal cones; e_{2,3} = e_2 + e_3.
f = build_fan(B)
print("rays:", f.rays)
print("cones:", [[f.rays[i] for i in c] for c in f.max_cones])
print("smooth:", is_smooth(f), "complete:", is_complete(f))
print("maximal nested sets:", len(maximal_nested_sets(B)))

# %% Wall degrees: v + v' + sum a_i v_i = 0 gives 2 + sum a_i.
fano, profile = is_fano_by_intersection(f)
for w, k in profile:
    print(f"   wall {[f.rays[i] for i in w.tau]}: degree {k}")
print("Fano:", fano)  # the exceptional curve has degree 1
