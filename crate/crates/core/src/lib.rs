//! Exact computation of the A∞ universal enveloping algebra `U(L)` of a
//! finite-dimensional L∞-algebra `L`.
//!
//! The A∞ products on `Sym(L)` are obtained by homological perturbation over
//! the bar construction of the cobar construction `ΩC(L)`, starting from a
//! contraction of `ΩSym_c(sL)` onto `Sym(L)` whose homotopy is assembled from
//! equivariant contracting homotopies of permutahedra.
//!
//! Module map:
//! - [`exactlin`]: rationals, sparse combinations, Koszul signs, finite complexes.
//! - [`linfty`]: L∞-algebras, the Chevalley–Eilenberg coalgebra, morphisms, modules.
//! - [`permutahedra`]: `C_*(P_n)`, its symmetries, the homotopies `H_n`, `Θ` and `h_V`.
//! - [`tableaux`]: standard tableaux, the complexes `C_T` and dimension bookkeeping.
//! - [`hpt`]: cobar/bar builders and the basic perturbation lemma.
//! - [`uea`]: the products `m_n` and checkers for their structural properties.
//! - [`bgg`]: twisting cochains, twisted tensor products and module functors.

pub mod bgg;
pub mod error;
pub mod exactlin;
pub mod exec;
pub mod fixtures;
pub mod hpt;
pub mod io;
pub mod linfty;
pub mod permutahedra;
pub mod tableaux;
pub mod uea;

pub use error::{Error, Result};
pub use exactlin::{LinComb, Scalar};
