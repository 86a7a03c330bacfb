//! Hodge integrals with a single lambda class: extraction from simple
//! Hurwitz numbers, the operators `L = exp(l)`, and the finite equations on
//! the graded generating series.

mod elsv;
mod equations;
mod ops;
mod pde;

pub use elsv::{
    chvar_elsv, chvar_elsv_caps, chvar_elsv_substitution, elsv_chvar_coefficient, elsv_fit, elsv_normalized,
    elsv_prefactor, h_st_simple, hodge_bracket, hodge_component, hodge_genus, hodge_series, hurwitz_to_hodge,
    multisets, source_caps, transformed_h_st, u_to_z, ElsvFit, HodgeBracket,
};
pub use equations::{
    conjugate_symbol, conjugated_equation, derivative_transform_elsv, derivative_transform_elsv_check,
    displayed_checks, displayed_equations, kp_bar, kp_hat, DisplayedCheck, DisplayedEquation,
};
pub use ops::{
    a_coeff, build_big_l, build_small_l, ck_conjecture_check, exp_l_check, ACoeffTable, AlphaTable, CkRow,
    Orientation, ZOperator, CK_SEQUENCE,
};
pub use pde::{cross_route_check, CrossCheck, PdeSolver};
