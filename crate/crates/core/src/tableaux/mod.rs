//! Standard tableaux, the complexes `C_T` and the decomposition of
//! `ΩSym_c(sV)` into `C_T ⊗ S^T(V)`.

pub mod complex;
pub mod decomposition;
pub mod schur;
pub mod shape;

pub use complex::TComplex;
pub use decomposition::{
    check_embedding, cobar_profile, decomposition_dims, DecompositionRecord, EmbeddingReport,
    ProfileRow,
};
pub use schur::{e_t_rank, schur_dimension, GradedDim};
pub use shape::{
    all_standard_tableaux, bijection_count, column_semistandard, descents, partitions,
    standard_tableaux, BijectionCount, ColumnSemistandard, DescentData, StandardTableau, Subset,
};
