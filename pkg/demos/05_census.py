"""Small censuses: all building sets up to isomorphism, which are Fano,
and the toric Fano threefolds they produce.

Run: python demos/05_census.py
"""

from buildfano.atlas import classify_fano, fano_threefold_census

# %% Counts by ground size; both Fano tests run on every form.
for n in range(1, 5):
    rep = classify_fano(n)
    print(f"|S|={n}: {rep.total} forms, {rep.connected} connected, "
          f"{rep.fano} Fano, {rep.connected_fano} connected Fano")

# %% The nine connected Fano types on four elements.
for r in classify_fano(4, connected_only=True).records:
    if r.fano:
        print("  ", r.building_set, "walls", r.wall_profile)

# %% Threefolds, up to fan isomorphism.
print(fano_threefold_census().table())
