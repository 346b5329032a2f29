"""The combinatorial Fano test, and an explicit wall of nonpositive degree
when it fails.

Run: python demos/03_fano_criterion_and_witness.py
"""

from buildfano.buildset import elements_of, mask_of, validate_building_set
from buildfano.fano import find_witness_pair, is_fano_criterion, witness_report


def lists(face):
    return [list(elements_of(x)) for x in face]


singletons = [[i] for i in range(1, 7)]
B = validate_building_set(singletons + [
    [2, 5], [2, 3, 4], [3, 4, 5], [1, 2, 3, 4], [2, 3, 4, 5], [3, 4, 5, 6],
    [1, 2, 3, 4, 5], [2, 3, 4, 5, 6], [1, 2, 3, 4, 5, 6],
], 6)

# %% {1,2,3,4} and {3,4,5,6} overlap but {3,4} is not a member.
ok, violations = is_fano_criterion(B)
print("Fano:", ok)
for v in violations[:3]:
    print("  ", v)

# %% The inductive construction, splitting off 1 and 6 first.
pair = find_witness_pair(B, mask_of([1, 2, 3, 4]), mask_of([3, 4, 5, 6]), 1, 6)
for step in pair.trace:
    print("  ", step)
print("J1 =", lists([pair.J1])[0], "J2 =", lists([pair.J2])[0], "N =", lists(pair.N))

# %% The wall assembled from the first violation, checked on the fan.
rep = witness_report(B)
print("maximal nested sets:", [lists(m) for m in rep.maximal_sets])
print("degree:", rep.intersection_number, "(predicted", rep.predicted, ")")
