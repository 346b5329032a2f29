"""Building sets: validation, components, restriction, contraction and
isomorphism classes.

Run: python demos/01_building_sets.py
"""

from buildfano.buildset import (
    SimpleGraph,
    UnionViolation,
    canonical_form,
    contraction,
    graphical_building_set,
    mask_of,
    restriction,
    validate_building_set,
)

# %% A building set on {1, 2, 3}: singletons, {2,3} and the whole set.
B = validate_building_set([[1], [2], [3], [2, 3], [1, 2, 3]], 3)
print("B =", B)
print("components:", [str(restriction(B, C)) for C in B.components()])

# %% Two overlapping members force their union in.
try:
    validate_building_set([[1], [2], [3], [1, 2], [2, 3]], 3)
except UnionViolation as exc:
    print("rejected:", exc)

# %% Restriction keeps the original labels; contraction removes C.
C = mask_of([2, 3])
print("B|_{2,3} =", restriction(B, C))
print("{2,3}\\B  =", contraction(B, C))

# %% Graphs give building sets: connected induced subgraphs.
path = SimpleGraph.from_edges(3, [(1, 2), (2, 3)])
print("B(path) =", graphical_building_set(path))

# %% Relabeling does not change the canonical form.
other = validate_building_set([[1], [2], [3], [1, 2], [1, 2, 3]], 3)
print("same class:", canonical_form(B)[0] == canonical_form(other)[0])
