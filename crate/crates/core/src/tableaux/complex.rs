//! The complex `C_T` spanned by `T_J`, `J ⊆ J_T`, and its contraction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::scalar;
use crate::exactlin::{homology_dims, FiniteComplex, LinComb};
use crate::hpt::perturbation::{check_contraction, Contraction};

use super::shape::{subsets, StandardTableau, Subset};

/// `#X(J, j)` with `X(J, j) = {i | 1 ≤ i ≤ j−1, i ∉ J}`.
pub fn x_count(j: &Subset, jj: usize) -> usize {
    (1..jj).filter(|i| !j.contains(i)).count()
}

/// `C_T`, with `T_J` of degree `−#J`.
#[derive(Clone, Debug)]
pub struct TComplex {
    pub tableau: StandardTableau,
    pub j_t: Subset,
}

impl TComplex {
    pub fn new(t: &StandardTableau) -> Self {
        TComplex {
            tableau: t.clone(),
            j_t: t.descents(),
        }
    }

    pub fn basis(&self) -> Vec<(Subset, i32)> {
        subsets(&self.j_t)
            .into_iter()
            .map(|j| (j.clone(), -(j.len() as i32)))
            .collect()
    }

    /// `dim (C_T)_{−p}`.
    pub fn dim(&self, p: usize) -> usize {
        binomial(self.j_t.len(), p)
    }

    fn check(&self, j: &Subset) -> Result<()> {
        if !j.is_subset(&self.j_t) {
            return Err(Error::Invalid(format!(
                "{j:?} is not contained in J_T = {:?}",
                self.j_t
            )));
        }
        Ok(())
    }

    /// `∂T_J = Σ_{j∈J} (−1)^{#X(J,j)} T_{J∖j}`.
    pub fn boundary(&self, j: &Subset) -> Result<LinComb<Subset>> {
        self.check(j)?;
        Ok(boundary_unchecked(j))
    }

    /// `h_T(T_J) = (1/#J_T) Σ_{j∈J_T∖J} (−1)^{#X(J,j)} T_{J∪j}`; zero when
    /// `J_T = ∅`.
    pub fn homotopy(&self, j: &Subset) -> Result<LinComb<Subset>> {
        self.check(j)?;
        let mut out = LinComb::new();
        if self.j_t.is_empty() {
            return Ok(out);
        }
        let w = scalar::ratio(1, self.j_t.len() as i64);
        for &x in self.j_t.difference(j) {
            let mut k = j.clone();
            k.insert(x);
            out.add_term(k, scalar::sign(x_count(j, x) as i64) * &w);
        }
        Ok(out)
    }

    pub fn finite_complex(&self) -> Result<FiniteComplex> {
        FiniteComplex::from_basis(&self.basis(), boundary_unchecked)
    }

    pub fn homology(&self) -> Result<BTreeMap<i32, usize>> {
        Ok(homology_dims(&self.finite_complex()?)
            .into_iter()
            .filter(|&(_, d)| d > 0)
            .collect())
    }

    /// The first failing contraction identity of `(f, g, h_T)` onto the
    /// homology, if any.
    pub fn check_contraction(&self) -> Result<Option<String>> {
        let bigs: Vec<Subset> = self.basis().into_iter().map(|(j, _)| j).collect();
        let smalls: Vec<()> = if self.j_t.is_empty() {
            vec![()]
        } else {
            Vec::new()
        };
        check_contraction(self, &bigs, &smalls)
    }
}

fn boundary_unchecked(j: &Subset) -> LinComb<Subset> {
    let mut out = LinComb::new();
    for &x in j {
        let mut k = j.clone();
        k.remove(&x);
        out.add_term(k, scalar::sign(x_count(j, x) as i64));
    }
    out
}

/// Onto `k` in degree 0 when `J_T = ∅`, onto zero otherwise.
impl Contraction for TComplex {
    type Big = Subset;
    type Small = ();

    fn d_big(&self, x: &Subset) -> LinComb<Subset> {
        boundary_unchecked(x)
    }

    fn d_small(&self, _: &()) -> Result<LinComb<()>> {
        Ok(LinComb::new())
    }

    fn f(&self, x: &Subset) -> Result<LinComb<()>> {
        Ok(if self.j_t.is_empty() && x.is_empty() {
            LinComb::basis(())
        } else {
            LinComb::new()
        })
    }

    fn g(&self, _: &()) -> Result<LinComb<Subset>> {
        if !self.j_t.is_empty() {
            return Err(Error::Invalid("C_T is acyclic".into()));
        }
        Ok(LinComb::basis(Subset::new()))
    }

    fn h(&self, x: &Subset) -> Result<LinComb<Subset>> {
        self.homotopy(x)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
