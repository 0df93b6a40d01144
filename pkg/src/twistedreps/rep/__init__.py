"""Twisted quiver representations: morphisms, (co)induction, resolutions, Ext."""

from twistedreps.rep.duality import dualize_rep, dualize_rep_morphism
from twistedreps.rep.induction import (
    AdjunctionReport,
    Coinduced,
    Induced,
    adjunction_check_shriek,
    adjunction_check_star,
    sigma_shriek,
    sigma_star,
)
from twistedreps.rep.les import (
    VARIANTS,
    LesReport,
    Node,
    available_variants,
    ext_dim_rep,
    ext_dims_rep,
    hypothesis_holds,
    les,
    preferred_variant,
    require_hypothesis,
)
from twistedreps.rep.pathalg import TwistedPathAlgebra, yoneda_ext_dims
from twistedreps.rep.representation import (
    DirectSumRep,
    RepMorphism,
    Representation,
    cokernel,
    direct_sum_rep,
    exactness_failures,
    hom_rep,
    hom_rep_dim,
    hom_rep_matrix,
    is_epi,
    is_exact_at,
    is_mono,
    kernel,
    morphism_from_vector,
    validate,
    zero_rep,
)
from twistedreps.rep.resolutions import (
    ResolutionReport,
    standard_coresolution,
    standard_resolution,
)
from twistedreps.rep.sampling import (
    WitnessReport,
    ext_dims_any,
    injective_module,
    injectivity_test,
    projectivity_test,
    random_module,
    random_morphism,
    random_rep,
    sample_family,
    top_module,
)
