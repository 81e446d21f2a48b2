//! Twisted cochains, twisted tensor products and the module functors
//! between L∞-modules over `L` and A∞-modules over `U(L)`.

pub mod twisting;

pub use twisting::{module_from_twisting, module_twisting, rho_hat, Operator, Twisting};
pub mod tau;

pub use tau::{canonical_tau, check_algebra_map, check_coalgebra_map, TwistedCochain};
pub mod twisted;

pub use twisted::{twisted_tensor, twisted_tensor_acyclicity, AcyclicityReport, TwistedComplex};
pub mod functors;

pub use functors::{
    check_a_infinity_module, functor_f, functor_f_twisting, functor_g, functor_g_twisting,
    regular_module, roundtrip_check, AModule, Direction, RoundTrip,
};
pub mod comparison;

pub use comparison::{omega_comparison, OmegaComparison};
