"""liefusion: exact Lie-theory computations behind affine fusion rules."""

from .affine import (
    AffineWeight,
    FusionQuery,
    admissible_weights,
    closed_form_fusion,
    conformal_weight,
    generating_check,
    kac_walton_fusion,
    large_level_check,
    level_reduction_conditions,
)
from .chevalley import (
    StructureAlgebra,
    build_simply_laced,
    branch,
    dynkin_embedding_g2_f4,
    dynkin_index,
    nested_bracket,
)
from .highmod import (
    CapExceeded,
    DominantCharacter,
    ModuleRealization,
    full_character,
    hom_space_basis,
    realize_module,
    weight_multiplicity,
    weyl_dimension,
)
from .lattice import IntegralLattice, build_cocycle, intertwiner_phase, lattice_fusion
from .heisenberg import (
    ChargeSpace,
    FockSpace,
    adjoint_phase_check,
    anticommutator_check,
    braid_phase_check,
    energy_bound_probe,
    heisenberg_mode,
)
from .rootsys import (
    AlgebraId,
    RootSystem,
    Weight,
    build_root_system,
    dual_weight,
    inner_product,
    to_dominant,
)
from .tensor import (
    TensorQuery,
    g2_tensor_graph,
    rank_route_multiplicity,
    tensor_multiplicity,
    weight_space_criterion,
)
from .verify import verify_e8, verify_full

__all__ = [
    "AffineWeight",
    "AlgebraId",
    "CapExceeded",
    "ChargeSpace",
    "DominantCharacter",
    "FockSpace",
    "FusionQuery",
    "IntegralLattice",
    "ModuleRealization",
    "RootSystem",
    "StructureAlgebra",
    "TensorQuery",
    "Weight",
    "adjoint_phase_check",
    "admissible_weights",
    "anticommutator_check",
    "braid_phase_check",
    "branch",
    "build_cocycle",
    "build_root_system",
    "build_simply_laced",
    "closed_form_fusion",
    "conformal_weight",
    "dual_weight",
    "dynkin_embedding_g2_f4",
    "dynkin_index",
    "energy_bound_probe",
    "full_character",
    "g2_tensor_graph",
    "generating_check",
    "heisenberg_mode",
    "hom_space_basis",
    "inner_product",
    "intertwiner_phase",
    "kac_walton_fusion",
    "large_level_check",
    "lattice_fusion",
    "level_reduction_conditions",
    "nested_bracket",
    "rank_route_multiplicity",
    "realize_module",
    "tensor_multiplicity",
    "to_dominant",
    "verify_e8",
    "verify_full",
    "weight_multiplicity",
    "weight_space_criterion",
    "weyl_dimension",
]
