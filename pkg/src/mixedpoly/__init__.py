"""Exact arithmetic for higher-order and mixed-type special polynomial
families: truncated series engine, identity verification, p-adic integral
approximants, and a generating-function expression language.
"""

__version__ = "0.1.0"

from .series import (
    CompositionError,
    DivisionError,
    Rat,
    SeriesError,
    TSeries,
    TruncationError,
    XPoly,
    binomial_x,
    exp_xt,
    expm1,
    falling_factorial,
    geom2,
    log1p,
)
from .families import (
    FamilyKind,
    FamilySpec,
    PolyTable,
    family_gf,
    family_kernel,
    family_number,
    family_numbers,
    family_oracle,
    family_poly,
    poly_table,
    stirling1,
    stirling2,
)
from .mixed import (
    IDENTITY_IDS,
    IdentityInstance,
    IdentityReport,
    MixedKind,
    MixedSpec,
    Variant,
    adjudicate_variant,
    mixed_gf,
    mixed_poly,
    mixed_poly_table,
    render_report,
    verify_identity,
)
from .padic import (
    BinomialBasis,
    BudgetExceededError,
    IntegralKind,
    PAdicContext,
    ValuationTrace,
    convergence_trace,
    finite_integral,
    multifold_integral,
    shift_residual,
    vp,
)
from .dsl import (
    DslError,
    LexError,
    ParseError,
    SemanticError,
    SemanticReason,
    eval_series,
    eval_text,
    parse,
    parse_text,
    render,
    tokenize,
)

__all__ = [
    "__version__",
    # series
    "CompositionError",
    "DivisionError",
    "Rat",
    "SeriesError",
    "TSeries",
    "TruncationError",
    "XPoly",
    "binomial_x",
    "exp_xt",
    "expm1",
    "falling_factorial",
    "geom2",
    "log1p",
    # families
    "FamilyKind",
    "FamilySpec",
    "PolyTable",
    "family_gf",
    "family_kernel",
    "family_number",
    "family_numbers",
    "family_oracle",
    "family_poly",
    "poly_table",
    "stirling1",
    "stirling2",
    # mixed
    "IDENTITY_IDS",
    "IdentityInstance",
    "IdentityReport",
    "MixedKind",
    "MixedSpec",
    "Variant",
    "adjudicate_variant",
    "mixed_gf",
    "mixed_poly",
    "mixed_poly_table",
    "render_report",
    "verify_identity",
    # padic
    "BinomialBasis",
    "BudgetExceededError",
    "IntegralKind",
    "PAdicContext",
    "ValuationTrace",
    "convergence_trace",
    "finite_integral",
    "multifold_integral",
    "shift_residual",
    "vp",
    # dsl
    "DslError",
    "LexError",
    "ParseError",
    "SemanticError",
    "SemanticReason",
    "eval_series",
    "eval_text",
    "parse",
    "parse_text",
    "render",
    "tokenize",
]
