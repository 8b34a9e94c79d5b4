"""Diagram categories and their sandwich semigroups, computed exactly."""

from .partition import (
    TAGS,
    Partition,
    PartitionStats,
    compose,
    from_json,
    from_text,
    identity,
    in_category,
    involution,
    is_planar,
    make_partition,
    pp_to_tl,
    product_rank,
    statistics,
)
from .counting import (
    admissible_ranks,
    dclass_profile,
    homset_cardinality,
    kappa,
    kappa_join,
    kappa_join_recurrence,
    seq,
)
from .homset import (
    CatGreenClasses,
    HomSet,
    cat_green_classes,
    cat_leq,
    cat_leq_tagged,
    enumerate_homset,
)
from .engine import (
    EggboxStructure,
    FiniteSemigroup,
    GreenStructure,
    closure,
    eggbox,
    eggbox_dot,
    exact_idempotent_rank,
    exact_rank,
    green_structure,
    idempotent_closure,
    idempotents,
    is_mi_dominated,
    isomorphic,
    mid_identities,
    natural_order_below,
    regularity_preserving,
)
from .sandwich import (
    PSets,
    SandwichContext,
    analyze_report,
    ideal,
    ideal_idempotent_status,
    idempotent_generated,
    inverse_sets,
    make_context,
    maximal_j_classes,
    minimal_ideal,
    p_sets,
    psi,
    reg_green,
    reg_semigroup,
    sandwich_eggbox,
    sandwich_green,
    sandwich_leq,
    sandwich_oracle,
    star_product,
)
from .brauer import (
    BrauerParams,
    canonical_sigma,
    e_gen_ranks,
    ideal_rank,
    idempotent_count,
    iso_equivalent,
    normalize_sigma,
    reg_profile,
    reg_rank,
    reg_size,
    sandwich_rank,
    verify_suite,
)

__all__ = [name for name in dir() if not name.startswith("_")]
