//! The A∞-products `m_n` on `Sym(L)`, read off from the perturbed bar
//! differential of `BU(L)`.

use std::collections::HashMap;
use std::sync::{Mutex, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{Degrees, LinComb, Monomial};
use crate::exec;
use crate::hpt::bar::{extend_coderivation, sym_bar_words};
use crate::hpt::{Contraction, Perturbed, SymBarElem, SymBarWord, TensorLift};
use crate::linfty::{check_linfty, Counterexample, LInftyAlgebra};
use crate::permutahedra::theta::Contractions;

/// Limits on the arity `n` and the total input weight of the tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub arity_cap: usize,
    pub weight_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            arity_cap: 4,
            weight_cap: 6,
        }
    }
}

impl Caps {
    pub fn new(arity_cap: usize, weight_cap: usize) -> Result<Self> {
        if arity_cap == 0 || weight_cap == 0 {
            return Err(Error::Range("caps must be positive".into()));
        }
        Ok(Caps {
            arity_cap,
            weight_cap,
        })
    }
}

/// `(−1)^n (−1)^{Σ (n−i)|x_i|}`: converts between `b_n` and `m_n`.
pub fn bar_sign(inputs: &[Monomial], degs: &Degrees) -> Scalar {
    let n = inputs.len() as i64;
    let e: i64 = inputs
        .iter()
        .enumerate()
        .map(|(i, x)| (n - 1 - i as i64) * x.degree(degs) as i64)
        .sum();
    scalar::sign(n + e)
}

pub type Outcome = std::result::Result<(), Counterexample>;

pub fn render_monomial(l: &LInftyAlgebra, m: &Monomial) -> String {
    if m.weight() == 0 {
        return "1".into();
    }
    l.word_names(m.letters()).join("*")
}

pub fn render_word(l: &LInftyAlgebra, xs: &[Monomial]) -> Vec<String> {
    xs.iter().map(|m| render_monomial(l, m)).collect()
}

/// A failure on the input word `xs` with the offending element.
pub fn counterexample(
    l: &LInftyAlgebra,
    xs: &[Monomial],
    image: &LinComb<Monomial>,
) -> Counterexample {
    Counterexample {
        word: render_word(l, xs),
        image: image
            .iter()
            .map(|(k, c)| (scalar::format(c), vec![render_monomial(l, k)]))
            .collect(),
    }
}

pub fn bar_counterexample(l: &LInftyAlgebra, w: &SymBarWord, image: &SymBarElem) -> Counterexample {
    Counterexample {
        word: render_word(l, &w.0),
        image: image
            .iter()
            .map(|(k, c)| (scalar::format(c), render_word(l, &k.0)))
            .collect(),
    }
}

/// `U(L)`: the perturbed contraction of `BΩC(L)` onto `BU(L)` together with
/// memoized product tables.
pub struct AInftyStructure {
    caps: Caps,
    transfer: Perturbed<'static, TensorLift>,
    cache: RwLock<HashMap<Vec<Monomial>, LinComb<Monomial>>>,
}

/// One row of an exported product table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductEntry {
    pub arity: usize,
    pub inputs: Vec<Vec<String>>,
    pub output: Vec<OutputTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputTerm {
    pub coeff: String,
    pub monomial: Vec<String>,
}

impl AInftyStructure {
    pub fn new(l: &LInftyAlgebra, caps: Caps) -> Result<Self> {
        Self::with_contractions(l, caps, Contractions::standard())
    }

    pub fn with_contractions(l: &LInftyAlgebra, caps: Caps, cs: Contractions) -> Result<Self> {
        Caps::new(caps.arity_cap, caps.weight_cap)?;
        if let Err(ce) = check_linfty(l, caps.weight_cap.max(3)) {
            return Err(Error::Invalid(format!(
                "not an L∞-algebra: δ² ≠ 0 on {:?}",
                ce.word
            )));
        }
        Ok(AInftyStructure {
            caps,
            transfer: TensorLift::new(l, cs).into_perturbed(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &LInftyAlgebra {
        self.transfer.base.algebra()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// The perturbed contraction `(F_L, G_L, H_L)` with `d_{U(L)}`.
    pub fn transfer(&self) -> &Perturbed<'static, TensorLift> {
        &self.transfer
    }

    fn check_caps(&self, xs: &[Monomial]) -> Result<()> {
        if xs.is_empty() || xs.len() > self.caps.arity_cap {
            return Err(Error::Range(format!(
                "arity {} outside 1..={}",
                xs.len(),
                self.caps.arity_cap
            )));
        }
        if xs.iter().any(|m| m.weight() == 0) {
            return Err(Error::Invalid("products take reduced inputs".into()));
        }
        let w: usize = xs.iter().map(|m| m.weight()).sum();
        if w > self.caps.weight_cap {
            return Err(Error::Range(format!(
                "input weight {w} exceeds {}",
                self.caps.weight_cap
            )));
        }
        Ok(())
    }

    /// `m_n(x_1, …, x_n)` on basis monomials.
    pub fn product(&self, xs: &[Monomial]) -> Result<LinComb<Monomial>> {
        self.check_caps(xs)?;
        if let Some(v) = self.cache.read().expect("cache lock").get(xs) {
            return Ok(v.clone());
        }
        let degs = self.algebra().degrees();
        let d = self.transfer.d_small(&SymBarWord(xs.to_vec()))?;
        let sign = bar_sign(xs, degs);
        let mut out = LinComb::new();
        for (w, c) in d.iter() {
            if w.len() == 1 {
                out.add_term(w.0[0].clone(), c * &sign);
            }
        }
        let want: i32 = xs.iter().map(|m| m.degree(degs)).sum::<i32>() + 2 - xs.len() as i32;
        if let Some(m) = out
            .keys()
            .find(|m| m.weight() == 0 || m.degree(degs) != want)
        {
            return Err(Error::Internal(format!(
                "m_{} produced {:?} of the wrong degree",
                xs.len(),
                m
            )));
        }
        self.cache
            .write()
            .expect("cache lock")
            .insert(xs.to_vec(), out.clone());
        Ok(out)
    }

    /// `m_n` extended multilinearly. All inputs are homogeneous of degree
    /// `0` as maps, so no Koszul signs appear.
    pub fn product_elems(&self, xs: &[LinComb<Monomial>]) -> Result<LinComb<Monomial>> {
        let mut terms: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), scalar::one())];
        for x in xs {
            let mut next = Vec::new();
            for (w, c) in &terms {
                for (m, e) in x.iter() {
                    let mut v = w.clone();
                    v.push(m.clone());
                    next.push((v, c * e));
                }
            }
            terms = next;
        }
        let mut out = LinComb::new();
        for (w, c) in terms {
            out.add_scaled(&self.product(&w)?, &c);
        }
        Ok(out)
    }

    /// Replaces one table entry (for mutation tests).
    pub fn override_product(&self, xs: &[Monomial], value: LinComb<Monomial>) {
        self.cache
            .write()
            .expect("cache lock")
            .insert(xs.to_vec(), value);
    }

    /// All basis inputs of arity `n` within the caps.
    pub fn basis_inputs(&self, n: usize) -> Vec<Vec<Monomial>> {
        sym_bar_words(self.algebra().degrees(), self.caps.weight_cap, n)
            .into_iter()
            .filter(|w| w.len() == n)
            .map(|w| w.0)
            .collect()
    }

    /// `m_n` on every basis input within the caps, computed in parallel.
    pub fn table(&self, n: usize) -> Result<Vec<(Vec<Monomial>, LinComb<Monomial>)>> {
        let inputs = self.basis_inputs(n);
        let outs = exec::map(&inputs, |xs| self.product(xs));
        inputs
            .into_iter()
            .zip(outs)
            .map(|(xs, o)| o.map(|v| (xs, v)))
            .collect()
    }

    /// The nonzero entries of the table of `m_n`, rendered for export.
    pub fn export(&self, n: usize) -> Result<Vec<ProductEntry>> {
        let l = self.algebra();
        Ok(self
            .table(n)?
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(xs, v)| ProductEntry {
                arity: n,
                inputs: xs.iter().map(|m| l.word_names(m.letters())).collect(),
                output: v
                    .iter()
                    .map(|(m, c)| OutputTerm {
                        coeff: scalar::format(c),
                        monomial: l.word_names(m.letters()),
                    })
                    .collect(),
            })
            .collect())
    }

    /// `b_n = (−1)^n s m_n (s^{⊗n})^{-1}` on basis letters.
    pub fn bar_component(&self, xs: &[Monomial]) -> Result<LinComb<Monomial>> {
        let p = self.product(xs)?;
        Ok(p.scaled(&bar_sign(xs, self.algebra().degrees())))
    }

    /// `δ_B` on `T_c(s U(L)‾)` assembled from the tables as a coderivation.
    pub fn bar_differential(&self, w: &SymBarWord) -> Result<SymBarElem> {
        let degs = self.algebra().degrees();
        let err = Mutex::new(None);
        let out = extend_coderivation(
            w,
            |m| m.degree(degs) - 1,
            self.caps.arity_cap,
            |xs| {
                self.bar_component(xs).unwrap_or_else(|e| {
                    err.lock().expect("error slot").get_or_insert(e);
                    LinComb::new()
                })
            },
        );
        match err.into_inner().expect("error slot") {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    pub fn bar_differential_vec(&self, x: &SymBarElem) -> Result<SymBarElem> {
        x.try_apply(|w| self.bar_differential(w))
    }
}

/// Builds `U(L)` and fills every table within the caps.
pub fn compute_products(l: &LInftyAlgebra, caps: Caps) -> Result<AInftyStructure> {
    let a = AInftyStructure::new(l, caps)?;
    for n in 1..=caps.arity_cap {
        a.table(n)?;
    }
    Ok(a)
}

/// `δ_B² = 0` on every bar word within the caps.
pub fn stasheff_check(a: &AInftyStructure) -> Result<Outcome> {
    let words = sym_bar_words(
        a.algebra().degrees(),
        a.caps().weight_cap,
        a.caps().arity_cap,
    );
    let found = exec::map(&words, |w| -> Result<Option<SymBarElem>> {
        let dd = a.bar_differential_vec(&a.bar_differential(w)?)?;
        Ok((!dd.is_zero()).then_some(dd))
    });
    for (w, r) in words.iter().zip(found) {
        if let Some(dd) = r? {
            return Ok(Err(bar_counterexample(a.algebra(), w, &dd)));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::{int, ratio};
    use crate::fixtures;

    fn mono(g: &[u16]) -> Monomial {
        Monomial(g.iter().copied().collect())
    }

    fn product_of(l: &LInftyAlgebra, a: &Monomial, b: &Monomial) -> LinComb<Monomial> {
        match a.mul(b, l.degrees()) {
            Some((m, s)) => LinComb::term(m, int(s as i64)),
            None => LinComb::new(),
        }
    }

    #[test]
    fn abelian_products_are_the_symmetric_algebra() {
        for l in [fixtures::abelian(2), fixtures::odd(2)] {
            let a = AInftyStructure::new(&l, Caps::new(3, 4).unwrap()).unwrap();
            for (xs, v) in a.table(2).unwrap() {
                assert_eq!(v, product_of(&l, &xs[0], &xs[1]), "{xs:?}");
            }
            for (xs, v) in a.table(3).unwrap() {
                assert!(v.is_zero(), "{xs:?}");
            }
            for (xs, v) in a.table(1).unwrap() {
                assert!(v.is_zero(), "{xs:?}");
            }
        }
    }

    #[test]
    fn sl2_m2_on_generators() {
        let l = fixtures::sl2();
        let a = AInftyStructure::new(&l, Caps::new(2, 2).unwrap()).unwrap();
        let (e, f, h) = (mono(&[0]), mono(&[1]), mono(&[2]));
        let mut want = LinComb::basis(mono(&[0, 1]));
        want.add_term(h.clone(), ratio(1, 2));
        assert_eq!(a.product(&[e.clone(), f.clone()]).unwrap(), want);
        let mut diff = a.product(&[e.clone(), f.clone()]).unwrap();
        diff -= &a.product(&[f, e]).unwrap();
        assert_eq!(diff, LinComb::basis(h));
    }

    #[test]
    fn m1_is_the_extension_of_l1() {
        let l = fixtures::mixed();
        let a = AInftyStructure::new(&l, Caps::new(1, 3).unwrap()).unwrap();
        for (xs, v) in a.table(1).unwrap() {
            assert_eq!(
                v,
                crate::permutahedra::theta::sym_differential(&l, &xs[0]),
                "{xs:?}"
            );
        }
    }

    #[test]
    fn stasheff_small() {
        for l in [
            fixtures::abelian(2),
            fixtures::heisenberg(),
            fixtures::mixed(),
        ] {
            let a = AInftyStructure::new(&l, Caps::new(3, 3).unwrap()).unwrap();
            assert_eq!(stasheff_check(&a).unwrap(), Ok(()), "{:?}", l.names());
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let l = fixtures::sl2();
        let a = AInftyStructure::new(&l, Caps::new(3, 3).unwrap()).unwrap();
        let (e, f) = (mono(&[0]), mono(&[1]));
        let mut bad = a.product(&[e.clone(), f.clone()]).unwrap();
        bad.add_term(mono(&[2]), int(1));
        a.override_product(&[e, f], bad);
        assert!(stasheff_check(&a).unwrap().is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let a = AInftyStructure::new(&fixtures::sl2(), Caps::new(2, 2).unwrap()).unwrap();
        assert!(a.product(&[mono(&[0]), mono(&[0]), mono(&[1])]).is_err());
        assert!(a.product(&[mono(&[0, 0]), mono(&[1])]).is_err());
        assert!(a.product(&[Monomial::unit(), mono(&[1])]).is_err());
    }

    #[test]
    fn export_is_deterministic() {
        let l = fixtures::heisenberg();
        let a = AInftyStructure::new(&l, Caps::new(2, 2).unwrap()).unwrap();
        let b = AInftyStructure::new(&l, Caps::new(2, 2).unwrap()).unwrap();
        let ja = serde_json::to_string(&a.export(2).unwrap()).unwrap();
        assert_eq!(ja, serde_json::to_string(&b.export(2).unwrap()).unwrap());
        assert!(ja.contains("\"1/2\""));
    }
}
