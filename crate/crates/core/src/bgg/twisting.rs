//! Twisting maps `κ: C → End(sM)` of degree +1 on a coalgebra `C`, with
//! `κ(1) = d_{sM}`, and the twisted differential
//! `D(c ⊗ sm) = δ_C c ⊗ sm + Σ (−1)^{|c'|} c' ⊗ κ(c'')(sm)` on `C ⊗ sM`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{monomials_up_to, Degrees, GenId, LinComb, Monomial};
use crate::hpt::cobar::CobarWord;
use crate::linfty::{coderivation, LInftyAlgebra, LInftyModule};

/// A linear map on `sM`, stored as the images of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator(pub Vec<LinComb<GenId>>);

impl Operator {
    pub fn zero(dim: usize) -> Self {
        Operator(vec![LinComb::new(); dim])
    }

    pub fn identity(dim: usize) -> Self {
        Operator((0..dim as GenId).map(LinComb::basis).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, v: &LinComb<GenId>) -> LinComb<GenId> {
        v.apply(|&g| self.0[g as usize].clone())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        Operator(other.0.iter().map(|v| self.apply(v)).collect())
    }

    pub fn add_scaled(&mut self, other: &Operator, c: &Scalar) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_scaled(b, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }
}

/// Coalgebra bases carrying the data needed by a twisting map.
pub trait CoalgebraBasis: Ord + Clone {
    fn counit() -> Self;
    fn is_counit(&self) -> bool;
}

impl CoalgebraBasis for Monomial {
    fn counit() -> Self {
        Monomial::unit()
    }
    fn is_counit(&self) -> bool {
        self.weight() == 0
    }
}

impl CoalgebraBasis for crate::hpt::SymBarWord {
    fn counit() -> Self {
        Self::default()
    }
    fn is_counit(&self) -> bool {
        self.is_empty()
    }
}

/// A table of `κ` on the basis words of a truncation of `C`. The counit
/// word maps to the differential of `sM`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twisting<K: CoalgebraBasis> {
    pub names: Vec<String>,
    /// Degrees in `sM`.
    pub sdegrees: Degrees,
    pub table: BTreeMap<K, Operator>,
}

impl<K: CoalgebraBasis + std::fmt::Debug> Twisting<K> {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn differential(&self) -> Operator {
        self.table
            .get(&K::counit())
            .cloned()
            .unwrap_or_else(|| Operator::zero(self.dim()))
    }

    pub fn get(&self, k: &K) -> Result<&Operator> {
        self.table
            .get(k)
            .ok_or_else(|| Error::Range(format!("twisting map not tabulated on {k:?}")))
    }

    /// `κ` extended linearly.
    pub fn get_vec(&self, x: &LinComb<K>) -> Result<Operator> {
        let mut out = Operator::zero(self.dim());
        for (k, c) in x.iter() {
            out.add_scaled(self.get(k)?, c);
        }
        Ok(out)
    }

    /// `D(c ⊗ sm)` given the differential and the full coproduct of `C`
    /// (counit terms included) on basis words.
    pub fn twisted_differential(
        &self,
        c: &K,
        m: GenId,
        delta: impl Fn(&K) -> Result<LinComb<K>>,
        coproduct: impl Fn(&K) -> Vec<(K, K, Scalar)>,
        degree: impl Fn(&K) -> i32,
    ) -> Result<LinComb<(K, GenId)>> {
        let mut out: LinComb<(K, GenId)> = delta(c)?
            .iter()
            .map(|(k, x)| ((k.clone(), m), x.clone()))
            .collect();
        let sm = LinComb::basis(m);
        for (left, right, e) in coproduct(c) {
            let img = self.get(&right)?.apply(&sm);
            let s = e * scalar::sign(degree(&left) as i64);
            for (n, x) in img.iter() {
                out.add_term((left.clone(), *n), x * &s);
            }
        }
        Ok(out)
    }

    /// `D²` on every tabulated word of the given basis, returning the first
    /// nonzero image.
    pub fn square_defect(
        &self,
        basis: &[K],
        delta: impl Fn(&K) -> Result<LinComb<K>> + Copy,
        coproduct: impl Fn(&K) -> Vec<(K, K, Scalar)> + Copy,
        degree: impl Fn(&K) -> i32 + Copy,
    ) -> Result<Option<(K, GenId, LinComb<(K, GenId)>)>> {
        for c in basis {
            for m in 0..self.dim() as GenId {
                let once = self.twisted_differential(c, m, delta, coproduct, degree)?;
                let mut twice = LinComb::new();
                for ((k, n), x) in once.iter() {
                    twice.add_scaled(
                        &self.twisted_differential(k, *n, delta, coproduct, degree)?,
                        x,
                    );
                }
                if !twice.is_zero() {
                    return Ok(Some((c.clone(), m, twice)));
                }
            }
        }
        Ok(None)
    }
}

/// `Δ c = Σ ε c_I ⊗ c_J` on `Sym_c(sL)`, counit terms included.
pub fn ce_coproduct(sdeg: &Degrees, c: &Monomial) -> Vec<(Monomial, Monomial, Scalar)> {
    c.unshuffles(sdeg)
        .into_iter()
        .map(|(a, b, e)| (a, b, scalar::int(e as i64)))
        .collect()
}

/// Splits `c` into `k` nonempty ordered blocks with the Koszul signs of
/// `Δ̄^{(k)}`.
pub fn reduced_splits(sdeg: &Degrees, c: &Monomial, k: usize) -> Vec<(Vec<Monomial>, Scalar)> {
    if k == 0 {
        return if c.weight() == 0 {
            vec![(Vec::new(), scalar::one())]
        } else {
            Vec::new()
        };
    }
    if k == 1 {
        return if c.weight() == 0 {
            Vec::new()
        } else {
            vec![(vec![c.clone()], scalar::one())]
        };
    }
    let mut out = Vec::new();
    for (a, b, e) in c.unshuffles(sdeg) {
        if a.weight() == 0 || b.weight() < k - 1 {
            continue;
        }
        for (mut rest, f) in reduced_splits(sdeg, &b, k - 1) {
            rest.insert(0, a.clone());
            out.push((rest, f * scalar::int(e as i64)));
        }
    }
    out
}

/// The twisting map `ρ: C(L) → End(sM)` of an L∞-module: `ρ(c)(sm)` is the
/// `sM`-component of the Chevalley–Eilenberg differential of `L ⋉ M` on
/// `c · sm`.
pub fn module_twisting(m: &LInftyModule, weight_cap: usize) -> Result<Twisting<Monomial>> {
    let semi = m.semidirect();
    let off = m.offset();
    let sdeg_semi = semi.sdegrees();
    let dim = m.dim();
    let mut table = BTreeMap::new();
    for c in
        std::iter::once(Monomial::unit()).chain(monomials_up_to(m.owner.sdegrees(), weight_cap))
    {
        let mut op = Operator::zero(dim);
        for g in 0..dim as GenId {
            let (word, e) = c
                .mul(&Monomial::single(g + off), sdeg_semi)
                .ok_or_else(|| Error::Internal("module letter repeated".into()))?;
            let e = scalar::int(e as i64);
            for (k, x) in coderivation(semi, &word).iter() {
                if k.weight() == 1 && k.letters()[0] >= off {
                    op.0[g as usize].add_term(k.letters()[0] - off, x * &e);
                }
            }
        }
        table.insert(c, op);
    }
    Ok(Twisting {
        names: m.names().to_vec(),
        sdegrees: Degrees(m.degrees().iter().map(|d| d - 1).collect()),
        table,
    })
}

/// Rebuilds an L∞-module over `owner` from a twisting map on `C(L)`.
pub fn module_from_twisting(
    owner: &LInftyAlgebra,
    rho: &Twisting<Monomial>,
) -> Result<LInftyModule> {
    let degrees = rho.sdegrees.0.iter().map(|d| d + 1).collect();
    let m = LInftyModule::new(owner, rho.names.clone(), degrees)?;
    let off = m.offset();
    let mut semi = m.semidirect().clone();
    let sdeg = semi.sdegrees().clone();
    for (c, op) in &rho.table {
        for (g, img) in op.0.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let (word, e) = c
                .mul(&Monomial::single(g as GenId + off), &sdeg)
                .ok_or_else(|| Error::Internal("module letter repeated".into()))?;
            let value: LinComb<GenId> = img
                .iter()
                .map(|(h, x)| (h + off, x * scalar::int(e as i64)))
                .collect();
            semi.set_component(word, value)?;
        }
    }
    LInftyModule::from_semidirect(owner, semi)
}

/// `ρ̂(s⁻¹c_1 ⊗ … ⊗ s⁻¹c_r) = ρ(c_1) ∘ … ∘ ρ(c_r)`, the algebra map
/// `ΩC(L) → End(sM)` extending `ρ` restricted to `C̄(L)`.
pub fn rho_hat(rho: &Twisting<Monomial>, word: &CobarWord) -> Result<Operator> {
    let mut out = Operator::identity(rho.dim());
    for c in &word.0 {
        out = out.compose(rho.get(c)?);
    }
    Ok(out)
}

/// `D` on `C(L) ⊗ sM` for a twisting map on `C(L)`.
pub fn ce_twisted_differential(
    l: &LInftyAlgebra,
    rho: &Twisting<Monomial>,
    c: &Monomial,
    m: GenId,
) -> Result<LinComb<(Monomial, GenId)>> {
    let sdeg = l.sdegrees();
    rho.twisted_differential(
        c,
        m,
        |k| Ok(coderivation(l, k)),
        |k| ce_coproduct(sdeg, k),
        |k| k.degree(sdeg),
    )
}

/// Renders a failing `D²` for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareDefect {
    pub word: Vec<String>,
    pub module_input: String,
    pub terms: usize,
}

/// `D² = 0` on `C(L) ⊗ sM` up to `weight_cap`.
pub fn check_ce_twisting(
    l: &LInftyAlgebra,
    rho: &Twisting<Monomial>,
    weight_cap: usize,
) -> Result<Option<SquareDefect>> {
    let sdeg = l.sdegrees();
    let basis: Vec<Monomial> = rho
        .table
        .keys()
        .filter(|c| c.weight() <= weight_cap)
        .cloned()
        .collect();
    let bad = rho.square_defect(
        &basis,
        |k| Ok(coderivation(l, k)),
        |k| ce_coproduct(sdeg, k),
        |k| k.degree(sdeg),
    )?;
    Ok(bad.map(|(c, m, v)| SquareDefect {
        word: l
            .word_names(c.letters())
            .into_iter()
            .map(|n| format!("s{n}"))
            .collect(),
        module_input: format!("s{}", rho.names[m as usize]),
        terms: v.len(),
    }))
}
