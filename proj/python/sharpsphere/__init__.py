"""Sharp interpolation inequalities on the sphere, reduced to the ultraspherical operator on (-1, 1)."""

from ._sharpsphere import (
    Basis,
    ConstantInput,
    DegreeOverflow,
    DimensionMismatch,
    DomainError,
    EmptyWindow,
    Error,
    PositivityError,
    StepSizeError,
    SymmetryError,
    alpha_improved,
    critical_exponents,
    discriminant,
    discriminant_exact,
    eigenvalue,
    entropy_F,
    figure_curves,
    find_beta,
    fisher_form,
    fisher_I,
    hypercontractivity_run,
    improved_constant,
    logsob_ratio,
    minimize,
    normalization_constant,
    onofri_deficit,
    perturbation_sharpness,
    pointwise_h,
    quadrature_rule,
    quotient_qp,
    run_cli,
    run_heat_flow,
    two_sharp,
    two_star,
)

__all__ = [name for name in dir() if not name.startswith("_")]
