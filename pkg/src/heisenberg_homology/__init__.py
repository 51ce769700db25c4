"""Heisenberg-coefficient homology of configuration spaces on ribbon graphs."""

from .config_complex import (
    BMComplex,
    ConfigCell,
    StandardWedgeOracle,
    TrivialOracle,
    build_complex,
    enumerate_cells,
    loop_to_word,
)
from .heisenberg_core import (
    GroupRingElement,
    HeisenbergElement,
    SurfaceParams,
    check_relations,
    linearized_rep,
    parse_word,
    phi_eval,
)
from .homology_engine import (
    HomologyReport,
    Linearized,
    Scalar,
    TrivialInt,
    bm_homology,
    concentration_report,
    parse_specialization,
    smith_normal_form,
    specialize,
)
from .mcg_action import (
    HeisenbergAutomorphism,
    aut_apply,
    aut_compose,
    aut_from_twist,
    decompose_cycle,
    twist_image,
    twist_matrix,
    twisted_mul,
    verify_identities,
)
from .ribbon_graph import (
    RelativeSubgraph,
    RibbonGraph,
    parse_graph_text,
    standard_model,
    subdivide,
    surface_invariants,
    validate_relative,
)

__version__ = "0.1.0"

__all__ = [
    "BMComplex",
    "ConfigCell",
    "StandardWedgeOracle",
    "TrivialOracle",
    "build_complex",
    "enumerate_cells",
    "loop_to_word",
    "GroupRingElement",
    "HeisenbergElement",
    "SurfaceParams",
    "check_relations",
    "linearized_rep",
    "parse_word",
    "phi_eval",
    "HomologyReport",
    "Linearized",
    "Scalar",
    "TrivialInt",
    "bm_homology",
    "concentration_report",
    "parse_specialization",
    "smith_normal_form",
    "specialize",
    "HeisenbergAutomorphism",
    "aut_apply",
    "aut_compose",
    "aut_from_twist",
    "decompose_cycle",
    "twist_image",
    "twist_matrix",
    "twisted_mul",
    "verify_identities",
    "RelativeSubgraph",
    "RibbonGraph",
    "parse_graph_text",
    "standard_model",
    "subdivide",
    "surface_invariants",
    "validate_relative",
]
