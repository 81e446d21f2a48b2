//! The permutahedra `P_n`: cellular chains, symmetries, the equivariant
//! contraction and the homotopy `h_V` on the cobar construction.

pub mod face;

pub use face::{
    act, all_faces, boundary, enumerate_faces, nu, OrderedPartition, PermutahedronChain,
};
pub mod contraction;
pub mod theta;

pub use contraction::{
    build_contraction, verify_permutahedron, EquivariantContraction, FaceComplex,
    PermutahedronReport,
};
pub use theta::{check_hv_contraction, check_hv_functoriality, Contractions};
