"""Exact additive decomposition and integrability in primitive
differential towers over Q(x)."""

from .decomp import (
    Decomposition,
    InFieldIntegral,
    add_decomp_in_field,
    integrate_in_field,
    is_remainder,
    solve_constant_combination,
)
from .elem import (
    NO,
    UNDECIDED,
    YES,
    ElementaryVerdict,
    elementary_integrability,
    recognize_log_derivative_combo,
)
from .embed import (
    AssociatedMatrix,
    Embedding,
    SignificantData,
    apply_homomorphism,
    associated_matrix,
    embed_well_generated,
    is_well_generated,
    normalize_tower,
    significant_data,
)
from .errors import (
    ExprSyntaxError,
    HeadMonomialNotOne,
    HigherGeneratorPresent,
    InternalVerificationError,
    NotLogarithmic,
    NotProper,
    NotSimple,
    PreconditionCLIMI,
    TowerDecompError,
    TowerNotSPrimitive,
    UnknownName,
    ZeroArgument,
)
from .exprio import (
    parse_expression,
    parse_tower_file,
    render_expression,
    render_latex,
    render_tower_file,
)
from .hermite import hermite_reduce_proper, hermitian_part
from .matryoshka import (
    EQUAL,
    EQUAL_KEY,
    HIGHER,
    LOWER,
    HeadData,
    OrderKey,
    compare_order,
    head_data,
    is_simple,
    order_key,
    project,
)
from .tower import (
    FormalProduct,
    Generator,
    Tower,
    TowerBuilder,
    TowerElement,
    ValidationResult,
    differentiate,
    log_derivative,
    normalize_generators,
    validate_s_primitive,
)

__version__ = "1.0.0"

__all__ = [
    "Decomposition",
    "InFieldIntegral",
    "add_decomp_in_field",
    "integrate_in_field",
    "is_remainder",
    "solve_constant_combination",
    "NO",
    "UNDECIDED",
    "YES",
    "ElementaryVerdict",
    "elementary_integrability",
    "recognize_log_derivative_combo",
    "AssociatedMatrix",
    "Embedding",
    "SignificantData",
    "apply_homomorphism",
    "associated_matrix",
    "embed_well_generated",
    "is_well_generated",
    "normalize_tower",
    "significant_data",
    "ExprSyntaxError",
    "HeadMonomialNotOne",
    "HigherGeneratorPresent",
    "InternalVerificationError",
    "NotLogarithmic",
    "NotProper",
    "NotSimple",
    "PreconditionCLIMI",
    "TowerDecompError",
    "TowerNotSPrimitive",
    "UnknownName",
    "ZeroArgument",
    "parse_expression",
    "parse_tower_file",
    "render_expression",
    "render_latex",
    "render_tower_file",
    "hermite_reduce_proper",
    "hermitian_part",
    "HeadData",
    "OrderKey",
    "compare_order",
    "EQUAL",
    "EQUAL_KEY",
    "HIGHER",
    "LOWER",
    "head_data",
    "is_simple",
    "order_key",
    "project",
    "FormalProduct",
    "Generator",
    "Tower",
    "TowerBuilder",
    "TowerElement",
    "ValidationResult",
    "differentiate",
    "log_derivative",
    "normalize_generators",
    "validate_s_primitive",
]
