//! Dimension bookkeeping for `ΩSym_c(sV) ≅ k ⊕ ⊕_T C_T ⊗ S^T(V)` and the
//! explicit embedding `T_J ⊗ u ↦ (1/m(J)!) π_J(u σ_{m(J_T)})`.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::exactlin::complex::rank;
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::LinComb;
use crate::exec;
use crate::hpt::cobar::{cobar_differential_vec, cobar_words, CobarElem, CobarPart};
use crate::linfty::LInftyAlgebra;
use crate::permutahedra::face::OrderedPartition;
use crate::permutahedra::theta::theta;

use super::complex::{binomial, x_count, TComplex};
use super::schur::{
    act_elem, block_stabilizer, schur_basis, schur_dimension, to_columns, GradedDim, TensorElem,
};
use super::shape::{all_standard_tableaux, block_sizes, subsets, zeta, StandardTableau, Subset};

/// One cobar length `n − p` of the rank-`n` part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub p: usize,
    pub length: usize,
    /// `Σ_T dim (C_T)_{−p} · dim S^T(V)`.
    pub tableaux: usize,
    /// Cobar words of rank `n` and length `n − p`.
    pub cobar: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRecord {
    pub n: usize,
    pub dim: GradedDim,
    pub rows: Vec<ProfileRow>,
}

impl DecompositionRecord {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(|r| r.tableaux == r.cobar)
    }
}

/// Counts of rank-`n` cobar words of `ΩSym_c(sV)` by length.
pub fn cobar_profile(n: usize, dim: GradedDim) -> BTreeMap<usize, usize> {
    let sdeg = dim.degrees().suspended();
    let mut out = BTreeMap::new();
    for w in cobar_words(&sdeg, n) {
        if w.rank() == n {
            *out.entry(w.len()).or_insert(0) += 1;
        }
    }
    out
}

pub fn decomposition_dims(n: usize, dim: GradedDim) -> DecompositionRecord {
    let cobar = cobar_profile(n, dim);
    let tableaux = all_standard_tableaux(n);
    let per_t: Vec<(usize, usize)> = exec::map(&tableaux, |t| {
        (t.descents().len(), schur_dimension(&t.shape(), dim))
    });
    let rows = (0..n)
        .map(|p| ProfileRow {
            p,
            length: n - p,
            tableaux: per_t.iter().map(|&(k, s)| binomial(k, p) * s).sum(),
            cobar: cobar.get(&(n - p)).copied().unwrap_or(0),
        })
        .collect();
    DecompositionRecord { n, dim, rows }
}

/// The average `σ_m` over the Young subgroup of the blocks of `ζ_J`.
fn young_average(n: usize, j: &Subset) -> Vec<(Vec<usize>, Scalar)> {
    let z = zeta(n, j);
    let k = z.last().copied().unwrap_or(0);
    let blocks: Vec<Vec<usize>> = (1..=k)
        .map(|b| (0..n).filter(|&i| z[i] == b).collect())
        .collect();
    let group = block_stabilizer(n, &blocks);
    let w = scalar::ratio(1, group.len() as i64);
    group.into_iter().map(|p| (p, w.clone())).collect()
}

/// The image of `T_J ⊗ u` in `ΩSym_c(sV)`; `π_J` is `Θ(− ⊗ ψ_{m(J)})`.
pub fn embed(
    v: &LInftyAlgebra,
    t: &StandardTableau,
    j: &Subset,
    u: &TensorElem,
) -> Result<CobarElem> {
    let n = t.n();
    let averaged = act_elem(v.degrees(), u, &young_average(n, &t.descents()));
    let sizes = block_sizes(n, j);
    let norm = sizes
        .iter()
        .fold(scalar::one(), |acc, &m| acc / scalar::factorial(m));
    let face = OrderedPartition::standard(&sizes);
    let mut out = LinComb::new();
    for (w, c) in averaged.iter() {
        out.add_scaled(&theta(v, w, &face)?, &(c * &norm));
    }
    Ok(out)
}

/// Results of materializing the embedding at rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub n: usize,
    pub dim: GradedDim,
    /// Rank of the images of `T_J ⊗ u` over all `T`, `J` and a basis of each `S^T(V)`.
    pub rank: usize,
    /// `Σ_T dim C_T · dim S^T(V)`.
    pub expected: usize,
    /// Dimension of the rank-`n` part of `ΩSym_c(sV)`.
    pub cobar_dim: usize,
    /// Per `(T, J)` rescaling making the embedding commute with the
    /// differentials, or `None` where no scalar works. The differential on
    /// `S^T(V) ⊗ C_T` is `u ⊗ T_J ↦ (−1)^{|u|} u ⊗ ∂T_J`.
    pub scalars: Vec<(StandardTableau, Subset, Option<String>)>,
}

impl EmbeddingReport {
    pub fn injective(&self) -> bool {
        self.rank == self.expected
    }

    pub fn chain_map(&self) -> bool {
        self.scalars.iter().all(|(_, _, s)| s.is_some())
    }
}

/// `λ` with `λ·a = b`, if one exists.
fn proportion(a: &[CobarElem], b: &[CobarElem]) -> Option<Scalar> {
    let mut lambda: Option<Scalar> = None;
    for (x, y) in a.iter().zip(b) {
        if let Some((k, c)) = x.iter().next() {
            let l = y.coeff(k) / c;
            match &lambda {
                None => lambda = Some(l),
                Some(m) if *m != l => return None,
                _ => {}
            }
        }
    }
    let l = lambda.unwrap_or_else(scalar::one);
    if l.is_zero() {
        return None;
    }
    a.iter()
        .zip(b)
        .all(|(x, y)| x.scaled(&l) == *y)
        .then_some(l)
}

/// The embedding is compared against `u ⊗ T_J ↦ (−1)^{|u|} u ⊗ ∂T_J`, the
/// tableau factor sitting to the right of `u`.
fn tableau_scalars(
    v: &LInftyAlgebra,
    dim: GradedDim,
    t: &StandardTableau,
) -> Result<(Vec<CobarElem>, Vec<(Subset, Option<Scalar>)>)> {
    let basis = schur_basis(t, dim);
    let parity: Vec<Scalar> = basis
        .iter()
        .map(|u| {
            u.keys().next().map_or(scalar::one(), |w| {
                scalar::sign(v.degrees().word_degree(w) as i64)
            })
        })
        .collect();
    let c = TComplex::new(t);
    let mut images: BTreeMap<Subset, Vec<CobarElem>> = BTreeMap::new();
    let mut lambdas: BTreeMap<Subset, Option<Scalar>> = BTreeMap::new();
    let mut all = Vec::new();
    for j in subsets(&c.j_t) {
        let img: Vec<CobarElem> = basis
            .iter()
            .map(|u| embed(v, t, &j, u))
            .collect::<Result<_>>()?;
        let lambda = if j.is_empty() {
            Some(scalar::one())
        } else {
            let lhs: Vec<CobarElem> = img
                .iter()
                .map(|x| cobar_differential_vec(v, x, CobarPart::Linear))
                .collect();
            let mut rhs: Vec<CobarElem> = vec![LinComb::new(); basis.len()];
            let mut known = true;
            for &x in &j {
                let mut k = j.clone();
                k.remove(&x);
                match &lambdas[&k] {
                    Some(l) => {
                        let s = scalar::sign(x_count(&j, x) as i64) * l;
                        for ((r, y), e) in rhs.iter_mut().zip(&images[&k]).zip(&parity) {
                            r.add_scaled(y, &(&s * e));
                        }
                    }
                    None => known = false,
                }
            }
            if known {
                proportion(&lhs, &rhs).map(|l| scalar::one() / l)
            } else {
                None
            }
        };
        all.extend(img.iter().map(|x| match &lambda {
            Some(l) => x.scaled(l),
            None => x.clone(),
        }));
        images.insert(j.clone(), img);
        lambdas.insert(j, lambda);
    }
    Ok((all, lambdas.into_iter().collect()))
}

pub fn check_embedding(n: usize, dim: GradedDim) -> Result<EmbeddingReport> {
    let v = dim.algebra();
    let tableaux = all_standard_tableaux(n);
    let per_t = exec::map(&tableaux, |t| tableau_scalars(&v, dim, t));
    let mut images = Vec::new();
    let mut scalars = Vec::new();
    for (t, r) in tableaux.iter().zip(per_t) {
        let (img, lambdas) = r?;
        images.extend(img);
        for (j, l) in lambdas {
            scalars.push((t.clone(), j, l.map(|x| scalar::format(&x))));
        }
    }
    let expected = tableaux
        .iter()
        .map(|t| (1usize << t.descents().len()) * schur_dimension(&t.shape(), dim))
        .sum();
    let cobar_dim = cobar_profile(n, dim).values().sum();
    Ok(EmbeddingReport {
        n,
        dim,
        rank: rank(&to_columns(&images)),
        expected,
        cobar_dim,
        scalars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one() {
        for dim in [
            GradedDim::new(2, 0),
            GradedDim::new(1, 1),
            GradedDim::new(0, 3),
        ] {
            let r = decomposition_dims(1, dim);
            assert_eq!(
                r.rows,
                vec![ProfileRow {
                    p: 0,
                    length: 1,
                    tableaux: dim.total(),
                    cobar: dim.total()
                }]
            );
        }
    }

    #[test]
    fn rank_two_even() {
        let r = decomposition_dims(2, GradedDim::new(2, 0));
        // length 1: s^{-1}Sym^2(sV) with sV odd is Λ^2 V; length 2: V ⊗ V
        assert_eq!(r.rows[0].cobar, 4);
        assert_eq!(r.rows[1].cobar, 1);
        assert!(r.matches());
    }

    #[test]
    fn profiles_match() {
        for dim in [
            GradedDim::new(2, 0),
            GradedDim::new(1, 1),
            GradedDim::new(0, 2),
            GradedDim::new(2, 1),
        ] {
            for n in 1..=4 {
                let r = decomposition_dims(n, dim);
                assert!(r.matches(), "{r:?}");
            }
        }
    }

    #[test]
    fn embedding_is_an_isomorphism() {
        for dim in [GradedDim::new(2, 0), GradedDim::new(1, 1)] {
            for n in 1..=4 {
                let r = check_embedding(n, dim).unwrap();
                assert!(r.injective(), "{r:?}");
                assert_eq!(r.expected, r.cobar_dim);
                assert!(r.chain_map(), "{r:?}");
                // the corrections are signs
                assert!(r
                    .scalars
                    .iter()
                    .all(|(_, _, s)| matches!(s.as_deref(), Some("1") | Some("-1"))));
            }
        }
    }
}
