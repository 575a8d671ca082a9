from .analysis import (
    BlockSystem,
    PrimitivityResult,
    Regularity,
    SuborbitReport,
    higman_primitivity,
    is_primitive,
    is_regular,
    min_subdegree,
    minimal_block_system,
    pair_orbit,
    regularity_status,
    suborbits,
)
from .catalog import (
    affine_cube,
    affine_line,
    alternating,
    cyclic,
    dihedral,
    extended_catalog,
    frobenius20,
    klein_four,
    projective_line,
    symmetric,
    transitive_catalog,
)
from .group import PermGroup, closure_elements, group_from_generators, orbits, point_stabilizer
from .isomorphism import PermIsomorphism, are_permutation_isomorphic, permutation_isomorphism
from .perm import Permutation

__all__ = [
    "affine_cube",
    "affine_line",
    "projective_line",
    "BlockSystem",
    "PermGroup",
    "PermIsomorphism",
    "Permutation",
    "PrimitivityResult",
    "Regularity",
    "SuborbitReport",
    "alternating",
    "are_permutation_isomorphic",
    "closure_elements",
    "cyclic",
    "dihedral",
    "extended_catalog",
    "frobenius20",
    "group_from_generators",
    "higman_primitivity",
    "is_primitive",
    "is_regular",
    "klein_four",
    "min_subdegree",
    "minimal_block_system",
    "orbits",
    "pair_orbit",
    "permutation_isomorphism",
    "point_stabilizer",
    "regularity_status",
    "suborbits",
    "symmetric",
    "transitive_catalog",
]
