//! The twisted tensor product `C(L) ⊗_τ U(L)`, truncated by total weight.
//!
//! A basis element `(c, a)` stands for `c ⊗ sa`, `a` a monomial of `Sym(L)`
//! including the unit, and the differential is
//! `D(c ⊗ sa) = δ_C c ⊗ sa + Σ_s (−1)^{|c_0|} c_0 ⊗ b_s(sτc_1, …, sτc_{s−1}, sa)`
//! summed over `Δ^{(s)} c = c_0 ⊗ c_1 ⊗ … ⊗ c_{s−1}` with `c_1, …` of
//! weight one. The grading used is `|c| + |a|`, one more than the degree of
//! `c ⊗ sa`. Total weight never increases, so each truncation is a
//! subcomplex.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{homology_dims, monomials, FiniteComplex, LinComb, Monomial};
use crate::linfty::{coderivation, LInftyAlgebra};
use crate::uea::{AInftyStructure, Caps};

use super::twisting::reduced_splits;

pub type TwistedKey = (Monomial, Monomial);

/// `b_s` on `sx_1, …, sx_{s−1}, sa` with the strict unit allowed as `a`:
/// `b_2(sx, s1) = (−1)^{|x|} sx`, and `b_s` with a unit input vanishes
/// otherwise.
pub fn bar_with_unit(
    a: &AInftyStructure,
    xs: &[Monomial],
    last: &Monomial,
) -> Result<LinComb<Monomial>> {
    if last.weight() > 0 {
        let mut inputs = xs.to_vec();
        inputs.push(last.clone());
        return a.bar_component(&inputs);
    }
    if xs.len() == 1 {
        let x = &xs[0];
        return Ok(LinComb::term(
            x.clone(),
            scalar::sign(x.degree(a.algebra().degrees()) as i64),
        ));
    }
    Ok(LinComb::new())
}

#[derive(Clone, Debug)]
pub struct TwistedComplex {
    /// Largest total weight kept.
    pub truncation: usize,
    pub basis: Vec<(TwistedKey, i32)>,
    pub differential: BTreeMap<TwistedKey, LinComb<TwistedKey>>,
}

impl TwistedComplex {
    pub fn finite_complex(&self) -> Result<FiniteComplex> {
        FiniteComplex::from_basis(&self.basis, |k| {
            self.differential.get(k).cloned().unwrap_or_default()
        })
    }

    /// Whether the differential preserves total weight, so that the full
    /// complex is the direct sum of the weight pieces.
    pub fn weight_graded(&self) -> bool {
        self.differential.iter().all(|((c, a), img)| {
            img.keys()
                .all(|(c2, a2)| c2.weight() + a2.weight() == c.weight() + a.weight())
        })
    }

    pub fn homology(&self) -> Result<BTreeMap<i32, usize>> {
        Ok(homology_dims(&self.finite_complex()?)
            .into_iter()
            .filter(|&(_, d)| d > 0)
            .collect())
    }
}

/// `D` on one basis element.
pub fn twisted_differential(
    a: &AInftyStructure,
    c: &Monomial,
    u: &Monomial,
) -> Result<LinComb<TwistedKey>> {
    let l = a.algebra();
    let sdeg = l.sdegrees();
    let mut out: LinComb<TwistedKey> = coderivation(l, c)
        .iter()
        .map(|(k, x)| ((k.clone(), u.clone()), x.clone()))
        .collect();
    for (c0, rest, e) in c.unshuffles(sdeg) {
        let s = scalar::int(e as i64) * scalar::sign(c0.degree(sdeg) as i64);
        for (blocks, f) in reduced_splits(sdeg, &rest, rest.weight()) {
            let coeff: Scalar = &s * f;
            for (v, x) in bar_with_unit(a, &blocks, u)?.iter() {
                out.add_term((c0.clone(), v.clone()), x * &coeff);
            }
        }
    }
    Ok(out)
}

/// The span of `c ⊗ sa` with `wt(c) + wt(a) ≤ weight`.
pub fn twisted_tensor(a: &AInftyStructure, weight: usize) -> Result<TwistedComplex> {
    let l = a.algebra();
    let mut basis = Vec::new();
    for wc in 0..=weight {
        for c in monomials(l.sdegrees(), wc) {
            for wa in 0..=weight - wc {
                for u in monomials(l.degrees(), wa) {
                    let d = c.degree(l.sdegrees()) + u.degree(l.degrees());
                    basis.push(((c.clone(), u), d));
                }
            }
        }
    }
    let mut differential = BTreeMap::new();
    for ((c, u), _) in &basis {
        differential.insert((c.clone(), u.clone()), twisted_differential(a, c, u)?);
    }
    Ok(TwistedComplex {
        truncation: weight,
        basis,
        differential,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    /// Truncation window: total weight `≤ weight`.
    pub weight: usize,
    pub dimension: usize,
    /// True when the differential preserves total weight, making the
    /// truncation a direct summand and the statement exact up to `weight`.
    pub exact: bool,
    pub homology: BTreeMap<i32, usize>,
}

impl AcyclicityReport {
    pub fn is_k(&self) -> bool {
        self.homology == [(0, 1)].into_iter().collect()
    }
}

/// Homology of `C(L) ⊗_τ U(L)` up to total weight `weight`.
pub fn twisted_tensor_acyclicity(l: &LInftyAlgebra, weight: usize) -> Result<AcyclicityReport> {
    let a = AInftyStructure::new(l, Caps::new(weight.max(1), weight.max(1))?)?;
    let t = twisted_tensor(&a, weight)?;
    Ok(AcyclicityReport {
        weight,
        dimension: t.basis.len(),
        exact: t.weight_graded(),
        homology: t.homology()?,
    })
}
