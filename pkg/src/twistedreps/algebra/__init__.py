"""Finite-dimensional algebras, modules, the tensor/Hom adjunction and Ext."""

from twistedreps.algebra.core import (
    Algebra,
    Bimodule,
    DirectSum,
    Module,
    ModuleMorphism,
    direct_sum,
    dualize,
    dualize_morphism,
    free_map,
    free_module,
    generators,
    hom_dim,
    hom_space,
    is_module_map,
    is_projective,
    kernel_module,
    quotient_module,
    submodule,
    zero_module,
)
from twistedreps.algebra.ext import (
    ExtCache,
    ExtGroup,
    ProjectiveResolution,
    ext_dim,
    ext_group,
    ext_induced_post,
    ext_induced_pre,
    ext_transport,
    functor_is_exact,
    lift_chain_map,
    projective_resolution,
)
from twistedreps.algebra.functors import (
    HomFunctor,
    HomModule,
    TensorFunctor,
    TensorProduct,
    adjoint_transpose,
    associator,
    hom_from,
    tensor_bimodules,
    tensor_over,
)
from twistedreps.algebra.library import (
    dual_numbers,
    ground_field,
    matrix_bimodule,
    product_algebra,
    residue_field_module,
    simple_top,
    truncated_polynomial,
    upper_triangular,
    vector_space,
)
