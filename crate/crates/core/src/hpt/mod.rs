pub mod bar;
pub mod cobar;
pub mod lift;
pub mod perturbation;

pub use bar::{BarElem, BarPart, BarWord, SymBarElem, SymBarWord};
pub use cobar::{cobar_words, CobarElem, CobarPart, CobarWord};
pub use lift::{
    check_abelian_transfer, check_two_step_perturbation, transfer_perturbation, TensorLift,
};
pub use perturbation::{check_contraction, Contraction, Perturbation, Perturbed};
