"""Exact commutative-algebra kernel for finite rings and idealization-style
ring extensions, with a registry of executable structural checks."""

from .ideals import (
    Ideal,
    all_ideals,
    annihilator,
    colon,
    decompose_into_local,
    ideal,
    ideal_product,
    ideal_sum,
    intersect,
    inverse_finite,
    is_bezout,
    is_local,
    is_von_neumann_regular,
    maximal_ideal,
    maximal_ideals,
    minimal_generators,
    v_closure_finite,
    v_finite_witness_finite,
)
from .modules import (
    FiniteModule,
    ModuleMap,
    Submodule,
    TrivialExtension,
    free_module,
    image,
    kernel,
    quotient_module,
    residue_field_power,
    submodule_generated,
    trivial_extension,
)
from .resolve import (
    PdResult,
    Presentation,
    is_projective_cyclic,
    minimal_syzygy,
    presentation,
    projective_dimension_up_to,
    weak_nd_check_finite,
)
from .rings import (
    BudgetExceeded,
    FiniteRing,
    RingElement,
    is_regular,
    is_unit,
    make_product,
    make_quotient_poly,
    make_zmod,
    verify_ring_axioms,
)

__all__ = [name for name in dir() if not name.startswith("_")]
