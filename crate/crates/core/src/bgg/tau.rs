//! The canonical twisting cochain `τ: C(L) → L → U(L)` and the coalgebra
//! maps it induces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::scalar;
use crate::exactlin::{monomials_up_to, LinComb, Monomial};
use crate::hpt::bar::{bar_total_differential, BarElem, BarWord};
use crate::hpt::cobar::CobarWord;
use crate::hpt::{Contraction, SymBarElem, SymBarWord};
use crate::linfty::{coderivation, LInftyAlgebra};
use crate::uea::products::{bar_counterexample, counterexample, Outcome};
use crate::uea::AInftyStructure;

use super::twisting::reduced_splits;

/// `τ` tabulated on `C(L)` up to a weight: `sv ↦ v` on weight one, zero
/// elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCochain {
    pub weight: usize,
    pub table: BTreeMap<Monomial, LinComb<Monomial>>,
}

impl TwistedCochain {
    pub fn apply(&self, c: &Monomial) -> LinComb<Monomial> {
        self.table.get(c).cloned().unwrap_or_default()
    }

    /// `sτ d_C = Σ_{i≥1} b_i (sτ)^{⊗i} Δ̄^{(i)}` on every monomial within
    /// the weight, the bar form of `τd_C + d_Aτ = Σ_{i≥2} μ_i τ^{⊗i} Δ^{(i)}`.
    pub fn check(&self, a: &AInftyStructure) -> Result<Outcome> {
        let l = a.algebra();
        let caps = a.caps();
        if self.weight > caps.weight_cap || self.weight > caps.arity_cap {
            return Err(Error::Range(format!(
                "weight {} exceeds the product caps",
                self.weight
            )));
        }
        for c in monomials_up_to(l.sdegrees(), self.weight) {
            let mut diff = LinComb::new();
            for (k, x) in coderivation(l, &c).iter() {
                diff.add_scaled(&self.apply(k), x);
            }
            for i in 1..=c.weight() {
                for (blocks, e) in reduced_splits(l.sdegrees(), &c, i) {
                    let images: Vec<LinComb<Monomial>> =
                        blocks.iter().map(|b| self.apply(b)).collect();
                    for (xs, x) in expand(&images) {
                        diff.add_scaled(&a.bar_component(&xs)?, &-(x * &e));
                    }
                }
            }
            if !diff.is_zero() {
                return Ok(Err(counterexample(l, &[c], &diff)));
            }
        }
        Ok(Ok(()))
    }
}

/// All tensor products of basis terms of the factors.
fn expand(images: &[LinComb<Monomial>]) -> Vec<(Vec<Monomial>, scalar::Scalar)> {
    let mut out = vec![(Vec::new(), scalar::one())];
    for img in images {
        let mut next = Vec::new();
        for (w, c) in &out {
            for (m, x) in img.iter() {
                let mut v: Vec<Monomial> = w.clone();
                v.push(m.clone());
                next.push((v, c * x));
            }
        }
        out = next;
    }
    out
}

pub fn canonical_tau(l: &LInftyAlgebra, weight: usize) -> TwistedCochain {
    let table = (0..l.dim() as u16)
        .map(|g| (Monomial::single(g), LinComb::basis(Monomial::single(g))))
        .collect();
    TwistedCochain { weight, table }
}

/// `Φ_τ = Σ_k (sτ)^{⊗k} Δ̄^{(k)}: C(L) → BU(L)`; only the splitting into
/// single letters survives.
pub fn phi_tau(l: &LInftyAlgebra, c: &Monomial) -> SymBarElem {
    reduced_splits(l.sdegrees(), c, c.weight())
        .into_iter()
        .map(|(blocks, e)| (SymBarWord(blocks), e))
        .collect()
}

/// The canonical coalgebra map `ι: C(L) → BΩC(L)`, `Σ_k [c_(1) | … | c_(k)]`.
pub fn iota_c(l: &LInftyAlgebra, c: &Monomial) -> BarElem {
    let mut out = LinComb::new();
    for k in 1..=c.weight() {
        for (blocks, e) in reduced_splits(l.sdegrees(), c, k) {
            out.add_term(
                BarWord(blocks.into_iter().map(CobarWord::letter).collect()),
                e,
            );
        }
    }
    out
}

fn coderivation_apply<K: Ord + Clone>(
    l: &LInftyAlgebra,
    c: &Monomial,
    f: impl Fn(&Monomial) -> LinComb<K>,
) -> LinComb<K> {
    coderivation(l, c).apply(f)
}

/// `δ_B Φ_τ = Φ_τ d_C` up to `weight`.
pub fn check_coalgebra_map(a: &AInftyStructure, weight: usize) -> Result<Outcome> {
    let l = a.algebra();
    for c in monomials_up_to(l.sdegrees(), weight) {
        let phi = phi_tau(l, &c);
        let mut diff = a.bar_differential_vec(&phi)?;
        diff -= &coderivation_apply(l, &c, |k| phi_tau(l, k));
        if !diff.is_zero() {
            return Ok(Err(bar_counterexample(l, &SymBarWord(vec![c]), &diff)));
        }
    }
    Ok(Ok(()))
}

/// `ι` is a chain map and `F_L ι = Φ_τ` up to `weight`: the algebra map
/// `ΩC(L) → U(L)` extending `τ` commutes with the differentials.
pub fn check_algebra_map(a: &AInftyStructure, weight: usize) -> Result<Outcome> {
    let l = a.algebra();
    for c in monomials_up_to(l.sdegrees(), weight) {
        let iota = iota_c(l, &c);
        let mut chain = iota.apply(|w| bar_total_differential(l, w));
        chain -= &coderivation_apply(l, &c, |k| iota_c(l, k));
        if !chain.is_zero() {
            return Err(Error::Internal(format!(
                "ι is not a chain map on {:?}",
                l.word_names(c.letters())
            )));
        }
        let mut diff = a.transfer().f_vec(&iota)?;
        diff -= &phi_tau(l, &c);
        if !diff.is_zero() {
            return Ok(Err(bar_counterexample(l, &SymBarWord(vec![c]), &diff)));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::uea::Caps;

    fn structure(l: &LInftyAlgebra, arity: usize, weight: usize) -> AInftyStructure {
        AInftyStructure::new(l, Caps::new(arity, weight).unwrap()).unwrap()
    }

    #[test]
    fn sl2_equation_to_weight_four() {
        let l = fixtures::sl2();
        let a = structure(&l, 4, 4);
        assert_eq!(canonical_tau(&l, 4).check(&a).unwrap(), Ok(()));
        assert_eq!(check_coalgebra_map(&a, 3).unwrap(), Ok(()));
        assert_eq!(check_algebra_map(&a, 3).unwrap(), Ok(()));
    }

    #[test]
    fn other_algebras() {
        for l in [
            fixtures::abelian(2),
            fixtures::heisenberg(),
            fixtures::odd(2),
            fixtures::l3_only(),
            fixtures::mixed(),
        ] {
            let a = structure(&l, 3, 3);
            assert_eq!(canonical_tau(&l, 3).check(&a).unwrap(), Ok(()));
            assert_eq!(check_coalgebra_map(&a, 3).unwrap(), Ok(()));
            assert_eq!(check_algebra_map(&a, 3).unwrap(), Ok(()));
        }
    }

    #[test]
    fn weight_one_sides_vanish() {
        let l = fixtures::sl2();
        let a = structure(&l, 2, 2);
        let tau = canonical_tau(&l, 1);
        for g in 0..3 {
            let c = Monomial::single(g);
            assert!(coderivation(&l, &c).is_zero());
            assert_eq!(phi_tau(&l, &c), LinComb::basis(SymBarWord(vec![c.clone()])));
            assert!(a.bar_differential(&SymBarWord(vec![c])).unwrap().is_zero());
        }
        assert_eq!(tau.check(&a).unwrap(), Ok(()));
    }

    #[test]
    fn a_wrong_product_is_detected() {
        let l = fixtures::sl2();
        let a = structure(&l, 2, 2);
        let e = Monomial::single(0);
        let f = Monomial::single(1);
        let mut bad = a.product(&[e.clone(), f.clone()]).unwrap();
        bad.add_term(Monomial::single(2), scalar::one());
        a.override_product(&[e, f], bad);
        assert!(canonical_tau(&l, 2).check(&a).unwrap().is_err());
    }
}
