from constructions.boosters import (
    booster,
    build_from_boosters,
    build_k1mod4,
    decompose_sum,
    filler_33,
    filler_43,
    k1mod4_route,
    strip_compose,
)
from constructions.ladder import (
    array_to_currents,
    build_h3,
    build_k3mod4,
    currents_to_array,
    cylinder_currents,
    mobius_currents,
)
from constructions.literals import literal_array
from constructions.shiftable import augment4, build_even_even, build_hs4, build_hs_4k, stack_diagonals, tile

__all__ = [
    "array_to_currents",
    "augment4",
    "booster",
    "build_even_even",
    "build_from_boosters",
    "build_h3",
    "build_hs4",
    "build_hs_4k",
    "build_k1mod4",
    "build_k3mod4",
    "currents_to_array",
    "cylinder_currents",
    "decompose_sum",
    "filler_33",
    "filler_43",
    "k1mod4_route",
    "literal_array",
    "mobius_currents",
    "stack_diagonals",
    "strip_compose",
    "tile",
]
