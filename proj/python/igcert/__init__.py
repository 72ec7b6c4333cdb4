"""Rank-r idempotent structure of M_n(F_q): enumeration, product tables,
connectivity certificates and the presentation collapse to GL_r(F_q)."""

from ._core import (
    BudgetError,
    Field,
    closure,
    counts,
    enumerate,
    gaussian_binomial,
    gl_order,
    idempotent_count,
    lambda_components,
    make_field,
    matmul,
    presentation,
    rank,
    rees,
    rre,
    strong,
    verify_theorem,
)

__all__ = [
    "BudgetError",
    "Field",
    "closure",
    "counts",
    "enumerate",
    "gaussian_binomial",
    "gl_order",
    "idempotent_count",
    "lambda_components",
    "make_field",
    "matmul",
    "presentation",
    "rank",
    "rees",
    "rre",
    "strong",
    "verify_theorem",
]
