"""Exact-arithmetic reduction and counting for Bianchi groups.

The package reduces points of upper half-space (and positive definite
binary Hermitian forms) into the standard fundamental domain of the group
of determinant-one matrices over the integers of Q(sqrt(-d)), producing
exactly verified height certificates, and counts group elements of bounded
height.
"""

from .counting import (
    CountRow,
    CountTable,
    GrowthFit,
    SandwichReport,
    build_table,
    count_bounded_elements,
    count_column_dominant,
    count_principal_points,
    fit_growth,
    iter_bounded_elements,
    lift,
    max_height_sq_within,
    sandwich_check,
)
from .fundamental import (
    DenominatorWitness,
    above_hemispheres,
    denominator_candidates,
    fundamental_interior,
    hemispheres_interior,
    in_fundamental_domain,
    in_polygon,
    max_polygon_norm_sq,
    minimal_denominator,
    polygon_interior,
)
from .geometry import GroupElem, Point, ProjPoint
from .hermitian import (
    FieldForm,
    FormReduction,
    HermitianForm,
    act,
    is_reduced,
    point_complexity_bound,
    reduce_form,
)
from .reduction import (
    BRANCH_ALREADY_IN_F,
    BRANCH_GENERAL,
    BRANCH_UNIT_COLUMN,
    ReductionCertificate,
    certificate_bound,
    intricacy_bound_sq,
    maximize_height,
    reduce_point,
    sharpness_witness,
    translate_to_polygon,
)
from .ring import (
    AlgInt,
    FieldElem,
    RingContext,
    SurdValue,
    context,
    covering_radius_sq,
    ideal_norm,
    is_coprime,
    is_principal,
    is_squarefree,
    iter_disk,
    round_to_lattice,
    sign_with_sqrt,
    solve_bezout,
    solve_bezout_bounded,
    units,
)

__version__ = "0.1.0"
