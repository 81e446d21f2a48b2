//! The `Σ_n × Z₂`-equivariant contraction of `C_*(P_n)` onto `k`.
//!
//! Faces are taken orthonormal; the action of `Σ_n × Z₂` is by signed
//! permutations of faces, hence orthogonal. The homotopy is the Hodge one,
//! `H = ∂* Δ⁺` with `Δ = ∂∂* + ∂*∂`, which commutes with every orthogonal
//! chain automorphism and satisfies the side conditions by construction.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num::bigint::BigInt;
use num::{One, Zero};
use serde::Serialize;

use super::face::{
    act_chain, all_faces, boundary, boundary_chain, compositions, nu_chain, OrderedPartition,
    PermutahedronChain,
};
use crate::error::{Error, Result};
use crate::exactlin::complex::{homology_dims, FiniteComplex};
use crate::exactlin::modular::{solve_integer_system, SparseRows};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::LinComb;
use crate::exec;

/// `C_*(P_n)` with faces indexed per degree.
#[derive(Clone, Debug)]
pub struct FaceComplex {
    pub n: usize,
    pub faces: BTreeMap<i32, Vec<OrderedPartition>>,
    index: HashMap<OrderedPartition, usize>,
    /// `down[p][j]`: boundary of face `j` of degree `p`, as `(row in degree p + 1, ±1)`.
    down: BTreeMap<i32, Vec<Vec<(usize, i8)>>>,
}

impl FaceComplex {
    pub fn new(n: usize) -> Result<Self> {
        let mut faces: BTreeMap<i32, Vec<OrderedPartition>> = BTreeMap::new();
        for f in all_faces(n)? {
            faces.entry(f.degree()).or_default().push(f);
        }
        let mut index = HashMap::new();
        for fs in faces.values() {
            for (i, f) in fs.iter().enumerate() {
                index.insert(f.clone(), i);
            }
        }
        let mut down = BTreeMap::new();
        for (&p, fs) in &faces {
            let cols = fs
                .iter()
                .map(|f| {
                    boundary(f)
                        .iter()
                        .map(|(g, c)| (index[g], if c.is_one() { 1i8 } else { -1i8 }))
                        .collect()
                })
                .collect();
            down.insert(p, cols);
        }
        Ok(FaceComplex {
            n,
            faces,
            index,
            down,
        })
    }

    fn dim(&self, p: i32) -> usize {
        self.faces.get(&p).map_or(0, |v| v.len())
    }

    /// `∂*: C^{p+1} → C^p`.
    fn apply_dt(&self, p: i32, x: &[Scalar]) -> Vec<Scalar> {
        let mut y = vec![Scalar::zero(); self.dim(p)];
        if let Some(cols) = self.down.get(&p) {
            for (j, col) in cols.iter().enumerate() {
                let mut acc = Scalar::zero();
                for &(i, s) in col {
                    if s > 0 {
                        acc += &x[i];
                    } else {
                        acc -= &x[i];
                    }
                }
                y[j] = acc;
            }
        }
        y
    }

    /// `Δ_p = ∂∂* + ∂*∂` on degree `p`, as integer rows.
    fn laplacian_rows(&self, p: i32) -> SparseRows {
        let n = self.dim(p);
        let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); n];
        if let Some(cols) = self.down.get(&(p - 1)) {
            for col in cols {
                for &(i, si) in col {
                    for &(j, sj) in col {
                        *rows[i].entry(j).or_insert(0) += (si * sj) as i64;
                    }
                }
            }
        }
        if let Some(cols) = self.down.get(&p) {
            let mut by_row: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.dim(p + 1)];
            for (j, col) in cols.iter().enumerate() {
                for &(r, s) in col {
                    by_row[r].push((j, s));
                }
            }
            for entries in &by_row {
                for &(i, si) in entries {
                    for &(j, sj) in entries {
                        *rows[i].entry(j).or_insert(0) += (si * sj) as i64;
                    }
                }
            }
        }
        rows.into_iter()
            .map(|r| r.into_iter().filter(|&(_, x)| x != 0).collect())
            .collect()
    }

    /// `Δ_p y = f`, or `Δ_0 y = f − (1/n!) Σ vertices` for a vertex `f`,
    /// with `y` orthogonal to the kernel.
    fn solve_laplacian(&self, f: &OrderedPartition) -> Result<Vec<Scalar>> {
        let p = f.degree();
        let i = self.index[f];
        let rows = self.laplacian_rows(p);
        if p == 0 {
            let fact = scalar::factorial(self.n).to_integer();
            let b: Vec<BigInt> = (0..self.dim(0))
                .map(|k| if k == i { &fact - 1 } else { BigInt::from(-1) })
                .collect();
            let scale = Scalar::from_integer(fact);
            Ok(solve_integer_system(&rows, &b)?
                .into_iter()
                .map(|t| t / &scale)
                .collect())
        } else {
            let b: Vec<BigInt> = (0..self.dim(p))
                .map(|k| BigInt::from((k == i) as i64))
                .collect();
            solve_integer_system(&rows, &b)
        }
    }

    fn to_chain(&self, p: i32, v: &[Scalar]) -> PermutahedronChain {
        let faces = &self.faces[&p];
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (faces[i].clone(), x.clone()))
            .collect()
    }

    /// The Hodge homotopy on one face, by a direct solve.
    pub fn hodge_homotopy(&self, f: &OrderedPartition) -> Result<PermutahedronChain> {
        let p = f.degree();
        if self.dim(p - 1) == 0 {
            return Ok(LinComb::new());
        }
        let y = self.solve_laplacian(f)?;
        Ok(self.to_chain(p - 1, &self.apply_dt(p - 1, &y)))
    }

    pub fn finite_complex(&self) -> Result<FiniteComplex> {
        let basis: Vec<(OrderedPartition, i32)> = self
            .faces
            .values()
            .flatten()
            .map(|f| (f.clone(), f.degree()))
            .collect();
        FiniteComplex::from_basis(&basis, boundary)
    }
}

/// `(𝓕_n, 𝓖_n, 𝓗_n)`; `𝓗_n` is stored on the faces `ψ_m` and transported
/// to other faces by the `Σ_n` action.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantContraction {
    pub n: usize,
    pub on_standard: BTreeMap<Vec<usize>, PermutahedronChain>,
}

impl EquivariantContraction {
    fn compute(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Range("n must be positive".into()));
        }
        let cx = FaceComplex::new(n)?;
        let comps = compositions(n);
        let hs = exec::map(&comps, |m| {
            cx.hodge_homotopy(&OrderedPartition::standard(m))
        });
        let mut on_standard = BTreeMap::new();
        for (m, h) in comps.into_iter().zip(hs) {
            on_standard.insert(m, h?);
        }
        Ok(EquivariantContraction { n, on_standard })
    }

    /// `𝓕_n`: the sum of the vertex coefficients.
    pub fn f(&self, c: &PermutahedronChain) -> Scalar {
        c.iter()
            .filter(|(f, _)| f.is_vertex())
            .map(|(_, x)| x.clone())
            .sum()
    }

    /// `𝓖_n(1)`: the average of all vertices.
    pub fn g(&self) -> PermutahedronChain {
        let w = Scalar::one() / scalar::factorial(self.n);
        all_faces(self.n)
            .expect("n is valid")
            .into_iter()
            .filter(|f| f.is_vertex())
            .map(|f| (f, w.clone()))
            .collect()
    }

    /// `𝓗_n` on the face `ψ_m`.
    pub fn on_composition(&self, m: &[usize]) -> &PermutahedronChain {
        &self.on_standard[m]
    }

    pub fn h(&self, f: &OrderedPartition) -> PermutahedronChain {
        act_chain(&f.from_standard(), &self.on_standard[&f.sizes()])
    }

    pub fn h_chain(&self, c: &PermutahedronChain) -> PermutahedronChain {
        c.apply(|f| self.h(f))
    }

    /// A deliberately broken copy with `𝓗_n(top) = c · top`.
    pub fn with_top_defect(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.on_standard.insert(
            vec![self.n],
            LinComb::term(OrderedPartition::top(self.n as u8), c.clone()),
        );
        out
    }
}

fn cache() -> &'static RwLock<BTreeMap<usize, Arc<EquivariantContraction>>> {
    static CACHE: OnceLock<RwLock<BTreeMap<usize, Arc<EquivariantContraction>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(BTreeMap::new()))
}

/// Memoized per `n`.
pub fn build_contraction(n: usize) -> Result<Arc<EquivariantContraction>> {
    if let Some(c) = cache().read().expect("cache lock").get(&n) {
        return Ok(c.clone());
    }
    let c = Arc::new(EquivariantContraction::compute(n)?);
    let mut w = cache().write().expect("cache lock");
    Ok(w.entry(n).or_insert(c).clone())
}

/// Outcome of the exhaustive checks on `P_n`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PermutahedronReport {
    pub n: usize,
    pub faces_by_blocks: BTreeMap<usize, usize>,
    pub total_faces: usize,
    /// Homology dimensions keyed by degree `0, -1, …`.
    pub homology: Vec<usize>,
    pub boundary_squares_to_zero: bool,
    pub actions_are_chain_maps: bool,
    pub actions_commute: bool,
    pub contraction_identities: bool,
    pub side_conditions: bool,
    pub equivariance: bool,
    pub matches_direct_solve: bool,
    pub top_cell_vanishes: bool,
}

impl PermutahedronReport {
    pub fn all_pass(&self) -> bool {
        self.boundary_squares_to_zero
            && self.actions_are_chain_maps
            && self.actions_commute
            && self.contraction_identities
            && self.side_conditions
            && self.equivariance
            && self.matches_direct_solve
            && self.top_cell_vanishes
            && self.homology.first() == Some(&1)
            && self.homology.iter().skip(1).all(|&h| h == 0)
    }
}

fn transpositions(n: usize) -> Vec<Vec<u8>> {
    (1..n)
        .map(|i| {
            let mut s: Vec<u8> = (1..=n as u8).collect();
            s.swap(i - 1, i);
            s
        })
        .collect()
}

/// Runs every check on `P_n`. With `direct_solves`, the transported homotopy
/// is compared against an independent solve on every face.
pub fn verify_permutahedron(n: usize, direct_solves: bool) -> Result<PermutahedronReport> {
    let cx = FaceComplex::new(n)?;
    let faces: Vec<OrderedPartition> = cx.faces.values().rev().flatten().cloned().collect();
    let mut faces_by_blocks = BTreeMap::new();
    for f in &faces {
        *faces_by_blocks.entry(f.d()).or_insert(0) += 1;
    }
    let dims = homology_dims(&cx.finite_complex()?);
    let homology: Vec<usize> = (0..n as i32)
        .map(|k| dims.get(&-k).copied().unwrap_or(0))
        .collect();
    let con = build_contraction(n)?;
    let gens = transpositions(n);
    let g = con.g();
    let one = Scalar::one();

    let per_face = exec::map(&faces, |f| {
        let c = LinComb::basis(f.clone());
        let df = boundary(f);
        let sq = boundary_chain(&df).is_zero();
        let mut chain_maps = nu_chain(&df) == boundary_chain(&nu_chain(&c));
        let mut commute = true;
        let mut equiv = true;
        let hf = con.h(f);
        for s in &gens {
            let sc = act_chain(s, &c);
            chain_maps &= act_chain(s, &df) == boundary_chain(&sc);
            commute &= nu_chain(&sc) == act_chain(s, &nu_chain(&c));
            equiv &= con.h_chain(&sc) == act_chain(s, &hf);
        }
        equiv &= con.h_chain(&nu_chain(&c)) == nu_chain(&hf);
        [sq, chain_maps, commute, equiv]
    });
    let mut acc = [true; 4];
    for r in per_face {
        for i in 0..4 {
            acc[i] &= r[i];
        }
    }
    // With equivariance on every face, the identities on one face per orbit
    // imply them everywhere.
    let reps: Vec<OrderedPartition> = compositions(n)
        .iter()
        .map(|m| OrderedPartition::standard(m))
        .collect();
    let per_rep = exec::map(&reps, |f| {
        let c = LinComb::basis(f.clone());
        let hf = con.h(f);
        let mut lhs = c.clone();
        lhs.add_scaled(&g, &-con.f(&c));
        let ident = lhs == boundary_chain(&hf) + con.h_chain(&boundary(f));
        let side = con.f(&hf).is_zero() && con.h_chain(&hf).is_zero();
        [ident, side]
    });
    let mut rep_acc = [true; 2];
    for r in per_rep {
        rep_acc[0] &= r[0];
        rep_acc[1] &= r[1];
    }
    let mut direct = true;
    if direct_solves {
        for ok in exec::map(&faces, |f| cx.hodge_homotopy(f).map(|h| h == con.h(f))) {
            direct &= ok?;
        }
    }
    let side_g = con.h_chain(&g).is_zero() && con.f(&g) == one;
    let top_cell_vanishes = con.h(&OrderedPartition::top(n as u8)).is_zero();
    Ok(PermutahedronReport {
        n,
        total_faces: faces.len(),
        faces_by_blocks,
        homology,
        boundary_squares_to_zero: acc[0],
        actions_are_chain_maps: acc[1],
        actions_commute: acc[2],
        contraction_identities: rep_acc[0],
        side_conditions: rep_acc[1] && side_g,
        equivariance: acc[3],
        matches_direct_solve: direct,
        top_cell_vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_and_n2() {
        let c1 = build_contraction(1).unwrap();
        assert!(c1.h(&OrderedPartition::top(1)).is_zero());
        let c2 = build_contraction(2).unwrap();
        let v12 = OrderedPartition::standard(&[1, 1]);
        let v21 = OrderedPartition::new(2, vec![vec![2], vec![1]]).unwrap();
        let diff = c2.h(&v12) - c2.h(&v21);
        // the edge is ∂-dual to [2|1] − [1|2]
        assert_eq!(
            diff,
            LinComb::term(OrderedPartition::top(2), scalar::int(-1))
        );
        assert!(verify_permutahedron(2, true).unwrap().all_pass());
    }

    #[test]
    fn small_n_all_checks() {
        for n in 1..=4 {
            let r = verify_permutahedron(n, true).unwrap();
            assert!(r.all_pass(), "{r:?}");
        }
        let r = verify_permutahedron(4, false).unwrap();
        assert_eq!(
            r.faces_by_blocks,
            BTreeMap::from([(1, 1), (2, 14), (3, 36), (4, 24)])
        );
        assert_eq!(r.homology, vec![1, 0, 0, 0]);
    }

    #[test]
    fn defect_is_detected_only_on_top() {
        let c = build_contraction(3).unwrap();
        let bad = c.with_top_defect(&scalar::ratio(1, 2));
        assert!(!bad.h(&OrderedPartition::top(3)).is_zero());
        assert_eq!(
            bad.h(&OrderedPartition::standard(&[1, 2])),
            c.h(&OrderedPartition::standard(&[1, 2]))
        );
    }
}
