//! Exact rational graded linear algebra.

pub mod complex;
pub mod koszul;
pub mod lincomb;
pub mod map;
pub mod modular;
pub mod scalar;
pub mod words;

pub use complex::{homology_dims, FiniteComplex};
pub use koszul::{koszul_sign, perm_sign, sort_with_sign};
pub use lincomb::LinComb;
pub use map::{GradedLinearMap, HasDegree};
pub use scalar::Scalar;
pub use words::{
    monomials, monomials_up_to, suspend, symmetrize, BasisWord, Degrees, GenId, Monomial,
    ShiftedVector, WordKind,
};
