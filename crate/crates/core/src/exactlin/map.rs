//! Sparse column-major graded linear maps.

use std::collections::BTreeMap;

use super::lincomb::LinComb;
use super::scalar;
use crate::error::{Error, Result};

/// A basis key that knows its own cohomological degree.
pub trait HasDegree {
    fn degree(&self) -> i32;
}

/// A named basis element with an explicit degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    pub id: u32,
    pub deg: i32,
}

impl HasDegree for Elem {
    fn degree(&self) -> i32 {
        self.deg
    }
}

impl<A: HasDegree, B: HasDegree> HasDegree for (A, B) {
    fn degree(&self) -> i32 {
        self.0.degree() + self.1.degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap<K1: Ord, K2: Ord> {
    pub degree: i32,
    pub columns: BTreeMap<K1, LinComb<K2>>,
}

impl<K1, K2> GradedLinearMap<K1, K2>
where
    K1: Ord + Clone + HasDegree,
    K2: Ord + Clone + HasDegree,
{
    /// Builds a map, checking that every column lands in degree `source + degree`.
    pub fn new(degree: i32, columns: BTreeMap<K1, LinComb<K2>>) -> Result<Self> {
        for (k, col) in &columns {
            if let Some(bad) = col.keys().find(|w| w.degree() != k.degree() + degree) {
                return Err(Error::Invalid(format!(
                    "column of degree {} has an entry of degree {} for a map of degree {degree}",
                    k.degree(),
                    bad.degree()
                )));
            }
        }
        let columns = columns.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(GradedLinearMap { degree, columns })
    }

    pub fn apply_basis(&self, k: &K1) -> LinComb<K2> {
        self.columns.get(k).cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &LinComb<K1>) -> LinComb<K2> {
        v.apply(|k| self.apply_basis(k))
    }

    /// `self ∘ other`, materializing only reachable columns.
    pub fn compose<K0: Ord + Clone + HasDegree>(
        &self,
        other: &GradedLinearMap<K0, K1>,
    ) -> GradedLinearMap<K0, K2> {
        let columns = other
            .columns
            .iter()
            .map(|(k, col)| (k.clone(), self.apply(col)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        GradedLinearMap {
            degree: self.degree + other.degree,
            columns,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Invalid("adding maps of different degrees".into()));
        }
        let mut columns = self.columns.clone();
        for (k, col) in &other.columns {
            *columns.entry(k.clone()).or_default() += col;
        }
        columns.retain(|_, c| !c.is_zero());
        Ok(GradedLinearMap {
            degree: self.degree,
            columns,
        })
    }

    pub fn scaled(&self, c: &scalar::Scalar) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|(k, col)| (k.clone(), col.scaled(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        GradedLinearMap {
            degree: self.degree,
            columns,
        }
    }
}

/// `(f ⊗ g)(a ⊗ b) = (-1)^{|g||a|} f(a) ⊗ g(b)` on every pair of columns.
pub fn tensor_map<A, B, C, D>(
    f: &GradedLinearMap<A, C>,
    g: &GradedLinearMap<B, D>,
) -> GradedLinearMap<(A, B), (C, D)>
where
    A: Ord + Clone + HasDegree,
    B: Ord + Clone + HasDegree,
    C: Ord + Clone + HasDegree,
    D: Ord + Clone + HasDegree,
{
    let mut columns = BTreeMap::new();
    for (a, fa) in &f.columns {
        let sign = scalar::sign((g.degree * a.degree()) as i64);
        for (b, gb) in &g.columns {
            let mut col = LinComb::new();
            for (c, x) in fa.iter() {
                for (d, y) in gb.iter() {
                    col.add_term((c.clone(), d.clone()), x * y * &sign);
                }
            }
            if !col.is_zero() {
                columns.insert((a.clone(), b.clone()), col);
            }
        }
    }
    GradedLinearMap {
        degree: f.degree + g.degree,
        columns,
    }
}

pub fn identity<K: Ord + Clone + HasDegree>(basis: &[K]) -> GradedLinearMap<K, K> {
    GradedLinearMap {
        degree: 0,
        columns: basis
            .iter()
            .map(|k| (k.clone(), LinComb::basis(k.clone())))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(id: u32, deg: i32) -> Elem {
        Elem { id, deg }
    }

    fn basis() -> Vec<Elem> {
        vec![e(0, 0), e(1, 0), e(2, 1), e(3, 1), e(4, 2)]
    }

    /// Random map of the given degree on `basis()` from a coefficient table.
    fn map_from(deg: i32, coeffs: &[i64]) -> GradedLinearMap<Elem, Elem> {
        let b = basis();
        let mut columns = BTreeMap::new();
        let mut idx = 0;
        for src in &b {
            let mut col = LinComb::new();
            for dst in &b {
                if dst.deg == src.deg + deg {
                    col.add_term(dst.clone(), scalar::int(coeffs[idx % coeffs.len()]));
                    idx += 1;
                }
            }
            columns.insert(src.clone(), col);
        }
        GradedLinearMap::new(deg, columns).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        let id = identity(&basis());
        let t = tensor_map(&id, &id);
        let pairs: Vec<(Elem, Elem)> = basis()
            .iter()
            .flat_map(|a| basis().into_iter().map(move |b| (a.clone(), b)))
            .collect();
        assert_eq!(t, identity(&pairs));
    }

    #[test]
    fn koszul_sign_on_odd_column() {
        let id = identity(&basis());
        let g = map_from(1, &[1]);
        let t = tensor_map(&id, &g);
        let col = t.apply_basis(&(e(2, 1), e(0, 0)));
        assert!(col.iter().all(|(_, c)| *c == scalar::int(-1)));
        assert!(!col.is_zero());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let mut columns = BTreeMap::new();
        columns.insert(e(0, 0), LinComb::basis(e(1, 0)));
        assert!(GradedLinearMap::new(1, columns).is_err());
    }

    proptest! {
        #[test]
        fn interchange_law(
            c1 in proptest::collection::vec(-2i64..3, 1..6),
            c2 in proptest::collection::vec(-2i64..3, 1..6),
            c3 in proptest::collection::vec(-2i64..3, 1..6),
            c4 in proptest::collection::vec(-2i64..3, 1..6),
            degs in proptest::collection::vec(-1i32..2, 4),
        ) {
            let (f, g, f2, g2) = (map_from(degs[0], &c1), map_from(degs[1], &c2), map_from(degs[2], &c3), map_from(degs[3], &c4));
            let lhs = tensor_map(&f, &g).compose(&tensor_map(&f2, &g2));
            let rhs = tensor_map(&f.compose(&f2), &g.compose(&g2)).scaled(&scalar::sign((g.degree * f2.degree) as i64));
            // direct expansion oracle on every basis pair
            for a in basis() {
                for b in basis() {
                    let k = (a.clone(), b.clone());
                    prop_assert_eq!(lhs.apply_basis(&k), rhs.apply_basis(&k));
                }
            }
        }
    }
}
