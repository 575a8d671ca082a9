from .expr import DEFAULT_BOX_RADIUS, Atom, Box, GroupExpr, Wr, WrImp, box_radii, is_finite, spine, to_text
from .pipeline import (
    ClassificationReport,
    PrimitivityReport,
    Realization,
    SdChain,
    SdStep,
    box_lobe_graph,
    build_iterated_product,
    classify,
    expr_graph,
    expr_is_regular,
    expr_primitivity,
    expr_sd,
    fibrelobe_full_check,
    primitivity_report,
    realize,
    sd_chain,
    sub_truncation,
)

__all__ = [
    "DEFAULT_BOX_RADIUS",
    "Atom",
    "Box",
    "ClassificationReport",
    "GroupExpr",
    "PrimitivityReport",
    "Realization",
    "SdChain",
    "SdStep",
    "Wr",
    "WrImp",
    "box_lobe_graph",
    "box_radii",
    "build_iterated_product",
    "classify",
    "expr_graph",
    "expr_is_regular",
    "expr_primitivity",
    "expr_sd",
    "fibrelobe_full_check",
    "is_finite",
    "primitivity_report",
    "realize",
    "sd_chain",
    "spine",
    "sub_truncation",
    "to_text",
]
