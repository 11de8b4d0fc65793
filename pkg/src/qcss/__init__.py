"""Quasi-complementary sequence sets from quaternary families and almost
difference sets: construction, exact correlation verification, and
asymptotic tightness tables.
"""

from .analysis import (
    ConstructionParams,
    TableRecord,
    asymptotic_rho,
    bound_rho,
    construction_params,
    sweep,
    table_rows,
    tables_to_csv,
)
from .binpoly import (
    PRIMITIVE_POLYS,
    is_irreducible_binary,
    is_primitive_binary,
    m_sequence,
    primitive_polynomial,
)
from .correlation import (
    CorrelationReport,
    PhaseSequence,
    QcssMatrix,
    QcssSet,
    build_qcss,
    classify_tightness,
    correlation_tensor,
    matrix_correlation,
    per_shift_maxima,
    periodic_correlation,
    phase_transform,
    report_per_shift_csv,
    report_to_json,
    roots_table,
    tightness,
    tolerances,
    welch_lower_bound,
)
from .diffsets import (
    CANONICAL_PATTERN,
    CosetPattern,
    CyclicSubset,
    ExpSumProfile,
    SetClassification,
    classify_set,
    coset_union,
    difference_function,
    exp_sum_bound,
    exp_sum_profile,
    find_canonical_pattern,
    legendre_ds,
    lift_ads_to_z4f,
    singer_ds,
)
from .errors import ConstructionError, ResourceCapError
from .z4 import (
    FamilyA,
    build_family_a,
    family_alpha_max,
    family_from_json,
    family_to_json,
    graeffe_lift,
    run_z4_recurrence,
    subset_l,
    z4_correlation,
    z4_poly_divides,
)

__version__ = "0.1.0"
