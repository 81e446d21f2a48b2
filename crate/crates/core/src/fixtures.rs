//! Small algebras used by the test suites and bundled with the CLI.

use crate::exactlin::scalar::{int, one};
use crate::exactlin::LinComb;
use crate::linfty::complete_intersection::{from_complete_intersection, polynomial, Normalization};
use crate::linfty::{LInftyAlgebra, LInftyMorphism};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Abelian on `x1, …, xn`, all in degree 0.
pub fn abelian(n: usize) -> LInftyAlgebra {
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    LInftyAlgebra::abelian(names, vec![0; n]).expect("valid generators")
}

/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
pub fn sl2() -> LInftyAlgebra {
    let mut l =
        LInftyAlgebra::abelian(names(&["e", "f", "h"]), vec![0, 0, 0]).expect("valid generators");
    l.set_bracket(&[0, 1], LinComb::basis(2))
        .expect("valid bracket");
    l.set_bracket(&[2, 0], LinComb::term(0, int(2)))
        .expect("valid bracket");
    l.set_bracket(&[2, 1], LinComb::term(1, int(-2)))
        .expect("valid bracket");
    l
}

/// `[x,y] = z` with `z` central.
pub fn heisenberg() -> LInftyAlgebra {
    let mut l =
        LInftyAlgebra::abelian(names(&["x", "y", "z"]), vec![0, 0, 0]).expect("valid generators");
    l.set_bracket(&[0, 1], LinComb::basis(2))
        .expect("valid bracket");
    l
}

/// Abelian on odd generators `a1, …, ak` of degree 1. Every bracket of an
/// odd-concentrated algebra lands in even degree, so there is nothing else.
pub fn odd(k: usize) -> LInftyAlgebra {
    let names = (1..=k).map(|i| format!("a{i}")).collect();
    LInftyAlgebra::abelian(names, vec![1; k]).expect("valid generators")
}

/// `x, y, z` in degree 0 and `w` in degree −1 with `l_3(x,y,z) = w` only.
pub fn l3_only() -> LInftyAlgebra {
    let mut l = LInftyAlgebra::abelian(names(&["x", "y", "z", "w"]), vec![0, 0, 0, -1])
        .expect("valid generators");
    l.set_bracket(&[0, 1, 2], LinComb::basis(3))
        .expect("valid bracket");
    l
}

/// The algebra of the single cubic `W = x³`.
pub fn cubic() -> LInftyAlgebra {
    let vars = names(&["x"]);
    let w = polynomial(&vars, &[(names(&["x", "x", "x"]), one())]).expect("valid polynomial");
    from_complete_intersection(&vars, &[w], Normalization::default())
        .expect("valid complete intersection")
}

/// `a` odd, `b` even with `l_1(a) = b`, `l_2(a,a) = 3b`.
pub fn mixed() -> LInftyAlgebra {
    let mut l = LInftyAlgebra::abelian(names(&["a", "b"]), vec![1, 2]).expect("valid generators");
    l.set_bracket(&[0], LinComb::basis(1))
        .expect("valid bracket");
    l.set_bracket(&[0, 0], LinComb::term(1, int(3)))
        .expect("valid bracket");
    l
}

/// Abelian algebras `L = ⟨x,y⟩ → M = ⟨u,v,w⟩ → N = ⟨p,q,r,t⟩` with
/// non-strict `φ` (`φ_2(x,y) = w`) and `ψ` (`ψ_2(u,v) = r`, `ψ_2(u,w) = t`).
pub fn morphism_chain() -> (LInftyMorphism, LInftyMorphism) {
    let l = LInftyAlgebra::abelian(names(&["x", "y"]), vec![0, 0]).expect("valid generators");
    let m =
        LInftyAlgebra::abelian(names(&["u", "v", "w"]), vec![0, 0, -1]).expect("valid generators");
    let n = LInftyAlgebra::abelian(names(&["p", "q", "r", "t"]), vec![0, 0, -1, -2])
        .expect("valid generators");
    let mut phi =
        LInftyMorphism::strict(&l, &m, &[LinComb::basis(0), LinComb::basis(1)]).expect("valid map");
    phi.set_phi(&[0, 1], LinComb::basis(2))
        .expect("valid component");
    let ids: Vec<LinComb<u16>> = (0..3).map(LinComb::basis).collect();
    let mut psi = LInftyMorphism::strict(&m, &n, &ids).expect("valid map");
    psi.set_phi(&[0, 1], LinComb::basis(2))
        .expect("valid component");
    psi.set_phi(&[0, 2], LinComb::basis(3))
        .expect("valid component");
    (phi, psi)
}
