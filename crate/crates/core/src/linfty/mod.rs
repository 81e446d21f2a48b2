//! L∞-algebras, their CE coalgebras, morphisms and modules.

pub mod algebra;
pub mod ce;

pub use algebra::LInftyAlgebra;
pub use ce::{ce_coalgebra, check_linfty, coderivation, CECoalgebra, Counterexample};
pub mod complete_intersection;
pub mod module;
pub mod morphism;

pub use module::{check_module, LInftyModule};
pub use morphism::{check_morphism, compose_morphisms, LInftyMorphism};
