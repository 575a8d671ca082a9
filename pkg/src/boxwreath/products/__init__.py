from .cartesian import (
    CartesianDecomposition,
    coordinate_decomposition,
    exhaustive_cartesian_decompositions,
    find_cartesian_decompositions,
    is_cartesian,
    proper_power_shapes,
    verify_cartesian_decomposition,
)
from .wreath import (
    FibrelobeReport,
    WreathElement,
    base_group_product,
    fibre,
    fibrelobe_full_check_wr,
    product_action_permutation,
    wr_primitivity_predicate,
    wreath_imprimitive,
    wreath_order,
    wreath_product_action,
)
from .embedding import EmbeddingReport, PAEmbedding, coordinate_components, pa_embedding
