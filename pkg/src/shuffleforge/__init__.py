"""Exact symbolic toolkit for cyclic-kernel shuffle algebras.

Sparse Laurent-polynomial arithmetic over exact rationals, the symmetrized
star product with pole and wheel conditions, interval-scaling limits and
membership predicates, the named commuting generator families, and the
partition-indexed specialization maps, behind a FastAPI service with a thin
command-line client.
"""

__version__ = "0.1.0"

from .polyring import (
    BinomialForm,
    LaurentPoly,
    Param,
    RatFunc,
    VarId,
    X,
    Y,
    Y2,
    cross_multiply_equal,
    exact_divide,
)
from .shuffle import (
    AlgebraConfig,
    ShuffleElement,
    monomial_generator,
    normalize_to_pole_form,
    omega,
    star,
    tot_deg,
    wheel_check,
)
from .limits import (
    Interval,
    LimitResult,
    interval_degree_vector,
    limit_infinity,
    limit_zero,
    membership_A,
    scaled,
    slope_zero_membership,
)
from .subalg import (
    GeneratorSpec,
    SpanProbe,
    build_element,
    commutator,
    commutes,
    dim_R,
    gen_F_k,
    gen_F_k_mu,
    gen_Gamma0,
    gen_K_m,
    gen_L_k,
    product_basis,
    rank_of_span,
)
from .gordon import PartitionL, Q_L, enumerate_partitions, phi_L, phi_lambda

__all__ = [
    "AlgebraConfig",
    "BinomialForm",
    "GeneratorSpec",
    "Interval",
    "LaurentPoly",
    "LimitResult",
    "Param",
    "PartitionL",
    "Q_L",
    "RatFunc",
    "ShuffleElement",
    "SpanProbe",
    "VarId",
    "X",
    "Y",
    "Y2",
    "build_element",
    "commutator",
    "commutes",
    "cross_multiply_equal",
    "dim_R",
    "enumerate_partitions",
    "exact_divide",
    "gen_F_k",
    "gen_F_k_mu",
    "gen_Gamma0",
    "gen_K_m",
    "gen_L_k",
    "interval_degree_vector",
    "limit_infinity",
    "limit_zero",
    "membership_A",
    "monomial_generator",
    "normalize_to_pole_form",
    "omega",
    "phi_L",
    "phi_lambda",
    "product_basis",
    "rank_of_span",
    "scaled",
    "slope_zero_membership",
    "star",
    "tot_deg",
    "wheel_check",
]
