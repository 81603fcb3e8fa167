"""Exact commutative algebra for Serre intersection multiplicities.

Polynomials over QQ and prime fields, Groebner bases, free resolutions and
Tor, Hilbert-Samuel multiplicities, tangent cones, reduction to the
diagonal and point blowups.
"""

from ._engine import step_budget
from .blowup import (
    BlowupChart,
    blowup_chi,
    chart,
    corollary_d_check,
    fulton_verify,
    ramification_check,
    strict_transform,
    vbar_locus,
)
from .diagonal import (
    TensorModel,
    build_tensor_model,
    case1_degeneration_check,
    completed_tor,
    diagonal_decompose,
    dimension_bound_check,
    r_flatness_check,
)
from .errors import (
    AssertionFailed,
    BudgetExhausted,
    ChiwbError,
    CoefficientError,
    InfiniteLength,
    NoStabilization,
    NotModuleFinite,
    ParseError,
    PreconditionError,
    ResidualSupport,
    RingMismatch,
    SupportNotAtOrigin,
    SupportNotFinite,
)
from .field import FF, QQ, Field
from .groebner import (
    GroebnerBasis,
    Ideal,
    groebner,
    hilbert_series,
    ideal_ops,
    intersection,
    krull_dimension,
    local_dimension,
    quotient,
    saturation,
    support_at_origin,
    tangent_cone,
)
from .hilbert import HilbertSeries
from .homology import (
    FreeComplex,
    PresentedModule,
    chi,
    flat_base_change_check,
    free_resolution,
    k_dimension,
    koszul_complex,
    koszul_euler,
    koszul_homology,
    syzygies,
    tor,
    tor_length,
)
from .multiplicity import hs_length, hs_multiplicity, point_multiplicity, transversality_check
from .parse import parse_polynomial, parse_session
from .poly import MonomialOrder, Polynomial, RingContext, lowest_form, ring, substitute

__version__ = "0.1.0"
