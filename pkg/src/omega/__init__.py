"""Exact integer homology of real-root multiplicity pattern posets."""

__version__ = "0.1.0"

from .patterns import (
    Pattern,
    PatternParseError,
    compositions,
    elementary_successors,
    insert_at,
    merge_at,
    order_leq,
    sort_key,
)
from .posets import (
    ClosedPoset,
    PosetError,
    PosetSpec,
    build_poset,
    check_lambda,
    closure,
    enumerate_patterns,
    is_closed,
    is_profinite,
    lift_poset,
    maximal_elements,
)
from .sparse import SparseMatrix
from .complexes import (
    Chain,
    GradedComplex,
    boundary_chain,
    build_full_complex,
    build_quotient_complex,
    build_sub_complex,
    dualize_complex,
    verify_complex,
)
from .homology import (
    EntryGrowthError,
    HomologyGroup,
    HomologyTable,
    SNF,
    class_order,
    complex_homology,
    smith_normal_form,
)
from .invariants import (
    EulerNumber,
    StabilityQuantities,
    bouquet_check,
    codimension_report,
    complement_cohomology,
    complement_homology,
    euler_discrepancy,
    euler_number,
    stability_quantities,
    stabilization_report,
    sub_homology,
)
from .characteristic import (
    ThetaDatum,
    VassilievElement,
    arnold_crosscheck,
    chain_1221,
    pair_with_theta,
    theta_chain,
    theta_dual_class,
    vassiliev_mul,
)
