"""flowrel: an exact finite-semigroup laboratory for the proximal, distal,
almost-periodic, strongly-proximal and weakly-distal relation families,
together with symbolic reconstructions of classical example systems."""

from .finflow import (
    FactorMap,
    FiniteFlow,
    FlowParseError,
    LeftIdeal,
    MonoidTooLarge,
    NotAFactorMap,
    TransMonoid,
    close,
    equivalent_idempotents,
    fixed_point_set,
    format_flow,
    ideal_structure,
    idempotents,
    induced_theta,
    minimal_left_ideals,
    parse_flow,
)
from .relations import (
    FlowAnalysis,
    NotAnIcer,
    PairRelation,
    analyze_flow,
    check_factor_theorems,
    check_product_theorems,
    check_unique_ideal_equiv,
    distal_rel,
    idempotent_section_check,
    is_minimal_flow,
    omega,
    product_flow,
    proximal,
    quotient_by_icer,
    strongly_proximal,
    weakly_distal_rel,
)
from .proxsets import (
    i_proximal_partition,
    is_proximal_set,
    max_strongly_proximal_sets,
    minimal_ideal_collapse,
)

__version__ = "0.1.0"
