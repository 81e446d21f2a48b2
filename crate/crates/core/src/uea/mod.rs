//! The A∞-structure of `U(L)` on `Sym(L)`, morphism transfer and checkers.

pub mod checks;
pub mod morphisms;
pub mod pbw;
pub mod products;

pub use checks::{
    alt_bracket_check, closed_form_m2_check, coproduct_strictness_check, involution_check,
    pbw_compare, truncation_agreement_check,
};
pub use morphisms::{check_u_morphism, CompositionHomotopy, UMorphism};
pub use products::{
    compute_products, stasheff_check, AInftyStructure, Caps, Outcome, ProductEntry,
};
