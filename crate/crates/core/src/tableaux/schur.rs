//! Schur complexes `S^T(V) = V^{⊗n} e_T` with `e_T = c_T r_T^-`.
//!
//! `Σ_n` acts on `V^{⊗n}` as on `(sV)^{⊗n}` transported along `s^{⊗n}`:
//! the Koszul sign of the letters times the sign of the permutation. For
//! `V` even this makes the row tableau give `Sym^n V` and the column
//! tableau `Λ^n V`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactlin::complex::{rank, SparseColumn};
use crate::exactlin::koszul::{koszul_sign, perm_sign, permutations};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{Degrees, GenId, LinComb};
use crate::linfty::LInftyAlgebra;

use super::shape::StandardTableau;

/// Graded dimension of `V`: `even` generators in degree 0, then `odd` in
/// degree 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    pub even: usize,
    pub odd: usize,
}

impl GradedDim {
    pub fn new(even: usize, odd: usize) -> Self {
        GradedDim { even, odd }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    pub fn degrees(&self) -> Degrees {
        Degrees(
            (0..self.total())
                .map(|i| if i < self.even { 0 } else { 1 })
                .collect(),
        )
    }

    /// `V` as an L∞-algebra with no brackets.
    pub fn algebra(&self) -> LInftyAlgebra {
        let names = (1..=self.total()).map(|i| format!("v{i}")).collect();
        LInftyAlgebra::abelian(names, self.degrees().0).expect("valid generators")
    }
}

pub type TensorElem = LinComb<Vec<GenId>>;

/// `w · σ = (−1)^σ ε w_{σ(1)} ⊗ … ⊗ w_{σ(n)}`, `ε` the Koszul sign.
pub fn act(degs: &Degrees, word: &[GenId], perm: &[usize]) -> (i8, Vec<GenId>) {
    let d: Vec<i32> = word.iter().map(|&g| degs.deg(g)).collect();
    let s = koszul_sign(perm, &d).expect("valid permutation") * perm_sign(perm);
    (s, perm.iter().map(|&i| word[i]).collect())
}

/// A formal combination of permutations of `0..n` in one-line notation.
pub type GroupElem = Vec<(Vec<usize>, Scalar)>;

pub fn act_elem(degs: &Degrees, x: &TensorElem, g: &GroupElem) -> TensorElem {
    let mut out = LinComb::new();
    for (w, c) in x.iter() {
        for (p, e) in g {
            let (s, v) = act(degs, w, p);
            out.add_term(v, c * e * scalar::int(s as i64));
        }
    }
    out
}

/// Permutations preserving each of the given blocks of positions.
pub fn block_stabilizer(n: usize, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<usize>>()];
    for b in blocks {
        let mut next = Vec::new();
        for sigma in &out {
            for p in permutations(b.len()) {
                let mut s = sigma.clone();
                for (i, &pi) in p.iter().enumerate() {
                    s[b[i]] = b[pi];
                }
                next.push(s);
            }
        }
        out = next;
    }
    out
}

fn zero_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter()
        .map(|s| s.iter().map(|v| v - 1).collect())
        .collect()
}

/// `c_T = Σ_{σ∈C_T} σ`.
pub fn column_symmetrizer(t: &StandardTableau) -> GroupElem {
    block_stabilizer(t.n(), &zero_based(&t.columns()))
        .into_iter()
        .map(|p| (p, scalar::one()))
        .collect()
}

/// `r_T^- = Σ_{σ∈R_T} (−1)^σ σ`.
pub fn row_antisymmetrizer(t: &StandardTableau) -> GroupElem {
    block_stabilizer(t.n(), &zero_based(t.rows()))
        .into_iter()
        .map(|p| {
            let s = scalar::int(perm_sign(&p) as i64);
            (p, s)
        })
        .collect()
}

/// `w e_T = (w c_T) r_T^-`.
pub fn apply_e_t(degs: &Degrees, t: &StandardTableau, x: &TensorElem) -> TensorElem {
    act_elem(
        degs,
        &act_elem(degs, x, &column_symmetrizer(t)),
        &row_antisymmetrizer(t),
    )
}

/// All words of length `n` over `dim` letters, lexicographically.
pub fn words(dim: usize, n: usize) -> Vec<Vec<GenId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<GenId>| (0..dim as GenId).map(move |g| [w.clone(), vec![g]].concat()))
            .collect();
    }
    out
}

/// Images `w e_T` of all basis words.
pub fn e_t_images(t: &StandardTableau, dim: GradedDim) -> Vec<TensorElem> {
    let degs = dim.degrees();
    words(dim.total(), t.n())
        .iter()
        .map(|w| apply_e_t(&degs, t, &LinComb::basis(w.clone())))
        .collect()
}

/// Sparse columns of a family of vectors over a common index.
pub fn to_columns<K: Ord + Clone + std::hash::Hash>(vs: &[LinComb<K>]) -> Vec<SparseColumn> {
    let mut index: HashMap<K, usize> = HashMap::new();
    vs.iter()
        .map(|v| {
            v.iter()
                .map(|(k, c)| {
                    let n = index.len();
                    (*index.entry(k.clone()).or_insert(n), c.clone())
                })
                .collect()
        })
        .collect()
}

/// Rank of `e_T` acting on `V^{⊗n}`.
pub fn e_t_rank(t: &StandardTableau, dim: GradedDim) -> usize {
    rank(&to_columns(&e_t_images(t, dim)))
}

/// A basis of `S^T(V)` chosen greedily among the `w e_T`.
pub fn schur_basis(t: &StandardTableau, dim: GradedDim) -> Vec<TensorElem> {
    let mut chosen: Vec<TensorElem> = Vec::new();
    let mut r = 0;
    for v in e_t_images(t, dim) {
        if v.is_zero() {
            continue;
        }
        chosen.push(v);
        let next = rank(&to_columns(&chosen));
        if next > r {
            r = next;
        } else {
            chosen.pop();
        }
    }
    chosen
}

/// Number of fillings of `shape` by letters of `V`, weakly increasing along
/// rows and columns, where an even letter may repeat along a row but not a
/// column and an odd letter the reverse.
pub fn filling_count(shape: &[usize], dim: GradedDim) -> usize {
    let n: usize = shape.iter().sum();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let odd = |x: usize| x >= dim.even;
    let mut count = 0;
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    fn go(
        i: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        total: usize,
        odd: &dyn Fn(usize) -> bool,
        count: &mut usize,
    ) {
        if i == cells.len() {
            *count += 1;
            return;
        }
        let (r, c) = cells[i];
        for x in 0..total {
            if c > 0 {
                let left = grid[r][c - 1];
                if x < left || (x == left && odd(x)) {
                    continue;
                }
            }
            if r > 0 {
                let up = grid[r - 1][c];
                if x < up || (x == up && !odd(x)) {
                    continue;
                }
            }
            grid[r][c] = x;
            go(i + 1, cells, grid, total, odd, count);
        }
    }
    if n == 0 {
        return 1;
    }
    go(0, &cells, &mut grid, dim.total(), &odd, &mut count);
    count
}

/// `dim S^T(V)`; depends only on the shape.
pub fn schur_dimension(shape: &[usize], dim: GradedDim) -> usize {
    filling_count(shape, dim)
}

/// Compares [`schur_dimension`] with the rank of `e_T` for every standard
/// tableau with `n` cells.
pub fn rank_oracle_agrees(n: usize, dim: GradedDim) -> Result<bool> {
    for t in super::shape::all_standard_tableaux(n) {
        if e_t_rank(&t, dim) != schur_dimension(&t.shape(), dim) {
            return Ok(false);
        }
    }
    Ok(true)
}
