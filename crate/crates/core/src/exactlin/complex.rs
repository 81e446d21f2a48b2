//! Finite cochain complexes and exact homology.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num::{BigInt, Integer, One, Signed, Zero};

use super::lincomb::LinComb;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::exec;

/// Sparse column with rational entries, indexed by row.
pub type SparseColumn = Vec<(usize, Scalar)>;

/// A finite complex: a basis per degree and `d: C^k → C^{k+1}` stored by columns.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub dims: BTreeMap<i32, usize>,
    /// `differential[k][j]` is the image of basis vector `j` of `C^k` in `C^{k+1}`.
    pub differential: BTreeMap<i32, Vec<SparseColumn>>,
}

impl FiniteComplex {
    /// Builds the complex spanned by `basis`, with `d` given on basis keys.
    /// Fails if `d` leaves the span, does not have degree +1, or `d∘d ≠ 0`.
    pub fn from_basis<K, F>(basis: &[(K, i32)], d: F) -> Result<Self>
    where
        K: Ord + Clone + Hash + Sync + Send,
        F: Fn(&K) -> LinComb<K> + Sync + Send,
    {
        let mut index: HashMap<&K, (i32, usize)> = HashMap::new();
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for (k, deg) in basis {
            let slot = dims.entry(*deg).or_default();
            index.insert(k, (*deg, *slot));
            *slot += 1;
        }
        let images = exec::map(basis, |(k, _)| d(k));
        let mut differential: BTreeMap<i32, Vec<SparseColumn>> = dims
            .iter()
            .map(|(&deg, &n)| (deg, vec![Vec::new(); n]))
            .collect();
        for ((k, deg), img) in basis.iter().zip(&images) {
            let (_, j) = index[k];
            let mut col = Vec::with_capacity(img.len());
            for (t, c) in img.iter() {
                let &(tdeg, i) = index
                    .get(t)
                    .ok_or_else(|| Error::Invalid("differential leaves the given basis".into()))?;
                if tdeg != deg + 1 {
                    return Err(Error::Invalid(format!(
                        "differential maps degree {deg} to {tdeg}"
                    )));
                }
                col.push((i, c.clone()));
            }
            differential.get_mut(deg).unwrap()[j] = col;
        }
        let c = FiniteComplex { dims, differential };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        for (&deg, cols) in &self.differential {
            let Some(next) = self.differential.get(&(deg + 1)) else {
                continue;
            };
            for (j, col) in cols.iter().enumerate() {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (i, c) in col {
                    for (r, x) in &next[*i] {
                        *acc.entry(*r).or_insert_with(Scalar::zero) += c * x;
                    }
                }
                if acc.values().any(|x| !x.is_zero()) {
                    return Err(Error::NotAComplex(format!(
                        "d∘d ≠ 0 on basis vector {j} of degree {deg}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rank_of(&self, deg: i32) -> usize {
        self.differential
            .get(&deg)
            .map(|cols| rank(cols))
            .unwrap_or(0)
    }
}

/// `dim ker − dim im` in every degree that carries a basis.
pub fn homology_dims(c: &FiniteComplex) -> BTreeMap<i32, usize> {
    let degrees: Vec<i32> = c.dims.keys().copied().collect();
    let ranks: BTreeMap<i32, usize> = degrees
        .iter()
        .copied()
        .zip(exec::map(&degrees, |&d| c.rank_of(d)))
        .collect();
    c.dims
        .iter()
        .map(|(&deg, &n)| {
            let out = ranks.get(&deg).copied().unwrap_or(0);
            let inc = ranks.get(&(deg - 1)).copied().unwrap_or(0);
            (deg, n - out - inc)
        })
        .collect()
}

fn to_integer_row(col: &SparseColumn) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, c) in col {
        lcm = lcm.lcm(c.denom());
    }
    let mut row: Vec<(usize, BigInt)> = col
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();
    row.sort_by_key(|(i, _)| *i);
    normalize(&mut row);
    row
}

fn normalize(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank of a set of sparse vectors via fraction-free elimination.
pub fn rank(cols: &[SparseColumn]) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
    for col in cols {
        let mut v = to_integer_row(col);
        while let Some(&(lead, _)) = v.first() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    let a = &p[0].1;
                    let b = v[0].1.clone();
                    v = combine(&v, a, p, &b);
                    normalize(&mut v);
                }
            }
        }
    }
    pivots.len()
}

/// `a·v − b·p`, dropping zeros; both inputs sorted by index.
fn combine(
    v: &[(usize, BigInt)],
    a: &BigInt,
    p: &[(usize, BigInt)],
    b: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let (idx, val) = match (v.get(i), p.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, &x.1 * a - &y.1 * b)
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                (x.0, &x.1 * a)
            }
            (Some(x), None) => {
                i += 1;
                (x.0, &x.1 * a)
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, -(&y.1 * b))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    if let Some(first) = out.first() {
        if first.1.is_negative() {
            for (_, x) in out.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::{int, ratio};
    use proptest::prelude::*;

    /// Dense Gaussian elimination over Q, independent of the sparse path.
    fn dense_rank(rows: usize, cols: &[SparseColumn]) -> usize {
        let mut m: Vec<Vec<Scalar>> = cols
            .iter()
            .map(|c| {
                let mut r = vec![Scalar::zero(); rows];
                for (i, x) in c {
                    r[*i] += x;
                }
                r
            })
            .collect();
        let mut rank = 0;
        for col in 0..rows {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[rank][col];
                    for k in 0..rows {
                        let t = &m[rank][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn zero_differential_gives_component_dims() {
        let basis = vec![("a", 0), ("b", 0), ("c", 1)];
        let c = FiniteComplex::from_basis(&basis, |_| LinComb::new()).unwrap();
        let h = homology_dims(&c);
        assert_eq!(h[&0], 2);
        assert_eq!(h[&1], 1);
    }

    #[test]
    fn identity_two_term_complex_is_acyclic() {
        let basis = vec![("a", 0), ("b", 1)];
        let c = FiniteComplex::from_basis(&basis, |k| {
            if *k == "a" {
                LinComb::basis("b")
            } else {
                LinComb::new()
            }
        })
        .unwrap();
        assert!(homology_dims(&c).values().all(|&d| d == 0));
    }

    #[test]
    fn rejects_non_complex() {
        let basis = vec![("a", 0), ("b", 1), ("c", 2)];
        let r = FiniteComplex::from_basis(&basis, |k| match *k {
            "a" => LinComb::basis("b"),
            "b" => LinComb::basis("c"),
            _ => LinComb::new(),
        });
        assert!(matches!(r, Err(Error::NotAComplex(_))));
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(
            rows in 1usize..12,
            entries in proptest::collection::vec((0usize..12, 0usize..12, -3i64..4, 1i64..4), 0..60),
        ) {
            let ncols = 12;
            let mut cols: Vec<SparseColumn> = vec![Vec::new(); ncols];
            for (c, r, p, q) in entries {
                if r < rows {
                    cols[c].push((r, ratio(p, q)));
                }
            }
            // merge duplicate rows inside a column
            let cols: Vec<SparseColumn> = cols.into_iter().map(|c| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (r, x) in c { *acc.entry(r).or_insert_with(|| int(0)) += x; }
                acc.into_iter().collect()
            }).collect();
            prop_assert_eq!(rank(&cols), dense_rank(rows, &cols));
        }

        #[test]
        fn homology_matches_dense_oracle(
            n0 in 1usize..6, n1 in 1usize..8,
            entries in proptest::collection::vec((0usize..6, 0usize..8, -2i64..3), 0..30),
        ) {
            // random complex C^0 -> C^1 -> C^2 with d1∘d0 = 0 by construction:
            // C^2 = C^1 / nothing, d1 = 0
            let mut basis: Vec<((u8, usize), i32)> = (0..n0).map(|i| ((0, i), 0)).collect();
            basis.extend((0..n1).map(|i| ((1, i), 1)));
            let map: Vec<Vec<(usize, i64)>> = (0..n0).map(|i| entries.iter().filter(|e| e.0 == i && e.1 < n1).map(|e| (e.1, e.2)).collect()).collect();
            let c = FiniteComplex::from_basis(&basis, |k| {
                if k.0 == 0 { map[k.1].iter().map(|&(j, x)| ((1u8, j), int(x))).collect() } else { LinComb::new() }
            }).unwrap();
            let cols: Vec<SparseColumn> = map.iter().map(|v| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for &(j, x) in v { *acc.entry(j).or_insert_with(|| int(0)) += int(x); }
                acc.into_iter().collect()
            }).collect();
            let r = dense_rank(n1, &cols);
            let h = homology_dims(&c);
            prop_assert_eq!(h[&0], n0 - r);
            prop_assert_eq!(h[&1], n1 - r);
        }
    }
}
