"""Composition algebra of rational functions, deck groups and cofibred products.

Exact computations over Q and its finite extensions for the functional
equation ``A ∘ X = B ∘ Y``: subfields generated by rational maps, deck
transformation groups, equivariance, and Böttcher coordinates.
"""

__version__ = "0.1.0"

from .algebra import QQ, Poly, cyclotomic_field, extension_field, field_make  # noqa: E402
from .boettcher import (  # noqa: E402
    TransitionGroup,
    TruncatedSeries,
    boettcher_solve,
    commute_check,
    series_compose,
    series_invert,
    transition_group,
)
from .families import chebyshev  # noqa: E402
from .lattice import (  # noqa: E402
    compositum,
    good_solution_certify,
    intersection_via_groups,
    left_membership,
    minimal_intersection_decide,
    right_factor_test,
    solve_AX_eq_BY,
)
from .moebius import (  # noqa: E402
    MoebiusGroup,
    MoebiusMap,
    classify_group,
    element_order,
    group_closure,
    moebius_apply,
    moebius_compose,
    moebius_inverse,
    quotient_map,
    standardize_cyclic,
)
from .parse import parse_field, parse_ratfun  # noqa: E402
from .ratfun import (  # noqa: E402
    INF,
    RatFun,
    compose,
    critical_data,
    fiber_polynomial,
    multiplicity_at,
    ratfun_normalize,
)
from .theorems import (  # noqa: E402
    abhyankar_check,
    deck_group,
    equivariance_solve,
    equivariant_normal_form,
    galois_pair_check,
    is_galois,
    multiplicity_obstruction,
    semiconjugacy_check,
    so2_verify,
    subgroup_factorization,
    theorem1_check,
    theorem2_recognize,
    theorem5_obstruction,
    theorem8_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
