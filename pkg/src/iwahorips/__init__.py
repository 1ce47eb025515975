"""Exact p-adic principal series for the pro-p Iwahori subgroup of GL(n).

Scalars (Q_p and unramified extensions), truncated Tate algebras, the
ordered one-parameter factorization of the group, the globally analytic
principal-series action, the Verma-module irreducibility criterion,
Weyl-orbit transport, and base change to unramified extensions.
"""

from .padic import (
    PadicScalar,
    UnramifiedField,
    UnramifiedScalar,
    PadicError,
    PrecisionExhausted,
    DivergenceError,
    DomainError,
    val,
    norm_L,
    trace_L,
    power_char,
)
from .series import Role, TateSeries, Variable, VariableSet, unipotent_variables
from .group import IwahoriMatrix, OneParamFactor, lazard_order, factorize, split_uq0, ordered_product
from .actions import (
    Character,
    PSVector,
    Symbolic,
    SYMBOLIC,
    act_diag,
    act_group,
    act_lower,
    act_upper,
    check_analytic,
    decay_report,
    xz_decompose,
)
from .verma import (
    RootDatum,
    Weight,
    congruence_filter,
    is_irreducible,
    kostant_multiplicity,
    lie_diag,
    lie_lower,
    lie_upper,
    mu_of,
    phi_weight_rank,
    torus_eigenvalue,
)
from .weyl import (
    WeylElement,
    act_weyl,
    bruhat_components,
    chi_w,
    conjugate_root,
)
from .basechange import (
    ResScalarsContext,
    TensorModel,
    full_bc,
    holomorphic_bc,
    restrict_scalars,
)

__all__ = [
    "PadicScalar",
    "UnramifiedField",
    "UnramifiedScalar",
    "PadicError",
    "PrecisionExhausted",
    "DivergenceError",
    "DomainError",
    "val",
    "norm_L",
    "trace_L",
    "power_char",
    "Role",
    "TateSeries",
    "Variable",
    "VariableSet",
    "unipotent_variables",
    "IwahoriMatrix",
    "OneParamFactor",
    "lazard_order",
    "factorize",
    "split_uq0",
    "ordered_product",
    "Character",
    "PSVector",
    "Symbolic",
    "SYMBOLIC",
    "act_diag",
    "act_group",
    "act_lower",
    "act_upper",
    "check_analytic",
    "decay_report",
    "xz_decompose",
    "RootDatum",
    "Weight",
    "congruence_filter",
    "is_irreducible",
    "kostant_multiplicity",
    "lie_diag",
    "lie_lower",
    "lie_upper",
    "mu_of",
    "phi_weight_rank",
    "torus_eigenvalue",
    "WeylElement",
    "act_weyl",
    "bruhat_components",
    "chi_w",
    "conjugate_root",
    "ResScalarsContext",
    "TensorModel",
    "full_bc",
    "holomorphic_bc",
    "restrict_scalars",
]

__version__ = "0.1.0"
