//! The Chevalley–Eilenberg coalgebra `C(L) = Sym_c(sL)` and its differential.

use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::LInftyAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::scalar;
use crate::exactlin::words::monomials_up_to;
use crate::exactlin::{GenId, LinComb, Monomial};
use crate::exec;

/// Applies the coderivation with components `c_k`, restricted to arities
/// accepted by `keep`, to a sorted monomial.
///
/// `δ(x) = Σ_{I ≠ ∅} ε(I, J) c_{|I|}(x_I) · x_J`.
pub fn coderivation_filtered(
    l: &LInftyAlgebra,
    x: &Monomial,
    keep: impl Fn(usize) -> bool,
) -> LinComb<Monomial> {
    let degs = l.sdegrees();
    let mut out = LinComb::new();
    if l.is_abelian() {
        return out;
    }
    for (left, right, sign) in x.unshuffles(degs) {
        if left.weight() == 0 || !keep(left.weight()) {
            continue;
        }
        let Some(c) = l.component(&left) else {
            continue;
        };
        for (g, coeff) in c.iter() {
            if let Some((m, s2)) = Monomial::single(*g).mul(&right, degs) {
                out.add_term(m, coeff * scalar::int((sign * s2) as i64));
            }
        }
    }
    out
}

pub fn coderivation(l: &LInftyAlgebra, x: &Monomial) -> LinComb<Monomial> {
    coderivation_filtered(l, x, |_| true)
}

pub fn coderivation_vec(l: &LInftyAlgebra, v: &LinComb<Monomial>) -> LinComb<Monomial> {
    v.apply(|m| coderivation(l, m))
}

/// Weight-truncated CE coalgebra with its differential materialized on the basis.
#[derive(Clone, Debug)]
pub struct CECoalgebra {
    pub owner: LInftyAlgebra,
    pub weight_cap: usize,
    pub basis: Vec<Monomial>,
    pub differential: BTreeMap<Monomial, LinComb<Monomial>>,
}

pub fn ce_coalgebra(l: &LInftyAlgebra, weight_cap: usize) -> Result<CECoalgebra> {
    if weight_cap == 0 {
        return Err(Error::Range("weight cap must be at least 1".into()));
    }
    let basis = monomials_up_to(l.sdegrees(), weight_cap);
    let images = exec::map(&basis, |m| coderivation(l, m));
    let differential = basis
        .iter()
        .cloned()
        .zip(images)
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(CECoalgebra {
        owner: l.clone(),
        weight_cap,
        basis,
        differential,
    })
}

impl CECoalgebra {
    pub fn apply(&self, m: &Monomial) -> LinComb<Monomial> {
        match self.differential.get(m) {
            Some(v) => v.clone(),
            None if m.weight() <= self.weight_cap => LinComb::new(),
            None => coderivation(&self.owner, m),
        }
    }
}

/// A basis word on which a square-zero identity fails, with its nonzero image.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub word: Vec<String>,
    pub image: Vec<(String, Vec<String>)>,
}

impl Counterexample {
    pub fn from_monomial<K: Ord + Clone>(
        l: &LInftyAlgebra,
        word: &[GenId],
        image: &LinComb<K>,
        render: impl Fn(&K) -> Vec<String>,
    ) -> Self {
        Counterexample {
            word: l
                .word_names(word)
                .into_iter()
                .map(|n| format!("s{n}"))
                .collect(),
            image: image
                .iter()
                .map(|(k, c)| (scalar::format(c), render(k)))
                .collect(),
        }
    }
}

/// Checks `δ_C² = 0` on every monomial of weight `≤ weight_cap`.
pub fn check_linfty(
    l: &LInftyAlgebra,
    weight_cap: usize,
) -> std::result::Result<(), Counterexample> {
    let basis = monomials_up_to(l.sdegrees(), weight_cap);
    let bad = exec::find_first(&basis, |m| {
        let dd = coderivation_vec(l, &coderivation(l, m));
        (!dd.is_zero()).then(|| (m.clone(), dd))
    });
    match bad {
        None => Ok(()),
        Some((m, dd)) => Err(Counterexample::from_monomial(
            l,
            m.letters(),
            &dd,
            |k: &Monomial| {
                l.word_names(k.letters())
                    .into_iter()
                    .map(|n| format!("s{n}"))
                    .collect()
            },
        )),
    }
}
