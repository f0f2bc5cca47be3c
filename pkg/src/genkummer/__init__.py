"""Generalized Kummer quotients: singularity enumeration and integral lattices."""

from .exact_core import (
    Inertia,
    IntegerMatrix,
    determinant,
    smith_normal_form,
    symmetric_inertia,
)
from .groups import (
    CATALOG,
    FiniteGroupTable,
    StabilizerClass,
    build_group,
    conjugacy_classes,
    cyclic_subgroup_classes,
    fixed_cosets,
    stabilizer_classes,
)
from .enumerator import (
    ConstraintReport,
    SingularityConfiguration,
    SingularityType,
    SINGULARITY_TYPES,
    check_constraints,
    enumerate_configurations,
    euler_residual,
    lefschetz_number,
    lefschetz_residuals,
    picard_lower_bound,
    rank_sum,
    verify_proposition3,
)
from .lattice import (
    IntegralLattice,
    MorrisonClass,
    MorrisonVerdict,
    compare_invariants,
    direct_sum,
    discriminant,
    discriminant_group,
    find_hyperbolic_summand,
    is_even,
    is_isometric_definite,
    make_standard,
    morrison_classify,
    short_vectors,
    transcendental_consistency,
    twist,
)

__version__ = "0.1.0"
