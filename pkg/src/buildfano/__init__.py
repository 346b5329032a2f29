"""Building sets, nested complexes, toric fans of building sets, the Fano
criterion with witness walls, and directed-graph realizations."""

from .buildset import (
    BuildingSet,
    BuildingSetError,
    canonical_form,
    contraction,
    from_generators,
    from_json,
    graphical_building_set,
    isomorphic,
    restriction,
    validate_building_set,
)
from .fan import Fan, Wall, build_fan, intersection_number, is_complete, is_fano_by_intersection, is_smooth, walls
from .fano import find_witness_pair, is_fano_criterion, witness_report, witness_wall
from .digraph import (
    DirectedGraph,
    building_set_digraph,
    fan_of_digraph,
    fans_isomorphic,
    is_smooth_fano_polytope,
    polytope_from_digraph,
)
from .nested import is_nested, link, maximal_nested_sets, nested_complex

__version__ = "0.1.0"
