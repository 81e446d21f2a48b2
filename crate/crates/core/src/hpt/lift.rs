//! The contraction `(F°, G°, H°)` of `T_c(s A(L)‾)` onto `T_c(s Sym(L)‾)`
//! lifted from `(f_L, g_L, h_L)` on single letters.

use std::collections::HashMap;
use std::sync::RwLock;

use super::bar::{
    bar_differential, bar_words, sym_bar_differential, sym_bar_words, BarPart, BarWord, SymBarWord,
};
use super::cobar::{cobar_words, CobarElem, CobarWord};
use super::perturbation::{Contraction, Perturbation, Perturbed};
use crate::error::{Error, Result};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{LinComb, Monomial};
use crate::linfty::LInftyAlgebra;
use crate::permutahedra::theta::{homotopy_hv, inclusion_gv, projection_fv, Contractions};

pub struct TensorLift {
    l: LInftyAlgebra,
    v: LInftyAlgebra,
    contractions: Contractions,
    h_cache: RwLock<HashMap<CobarWord, CobarElem>>,
}

/// Tensor product of per-letter images, no signs (all factors degree 0).
fn tensor_product<K: Ord + Clone>(images: Vec<LinComb<K>>) -> LinComb<Vec<K>> {
    let mut out = LinComb::basis(Vec::new());
    for img in images {
        let mut next = LinComb::new();
        for (a, x) in out.iter() {
            for (b, y) in img.iter() {
                let mut v = a.clone();
                v.push(b.clone());
                next.add_term(v, x * y);
            }
        }
        out = next;
    }
    out
}

impl TensorLift {
    pub fn new(l: &LInftyAlgebra, contractions: Contractions) -> Self {
        TensorLift {
            l: l.clone(),
            v: l.truncated(1),
            contractions,
            h_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &LInftyAlgebra {
        &self.l
    }

    /// `h_L` on one cobar word, memoized.
    pub fn h_letter(&self, a: &CobarWord) -> Result<CobarElem> {
        if let Some(v) = self.h_cache.read().expect("cache lock").get(a) {
            return Ok(v.clone());
        }
        let v = homotopy_hv(&self.v, a, &self.contractions)?;
        self.h_cache
            .write()
            .expect("cache lock")
            .insert(a.clone(), v.clone());
        Ok(v)
    }

    fn gf_letter(&self, a: &CobarWord) -> CobarElem {
        projection_fv(&self.v, a).apply(|m| inclusion_gv(&self.v, m))
    }

    /// The perturbation `t_μ + t_L` with witness rank + length.
    pub fn perturbation(&self) -> Perturbation<'static, BarWord> {
        transfer_perturbation(&self.l, true, true)
    }

    /// The contraction of `BΩC(L)` onto `BU(L)`.
    pub fn perturbed(&self) -> Perturbed<'static, &TensorLift> {
        Perturbed::new(self, self.perturbation())
    }

    pub fn into_perturbed(self) -> Perturbed<'static, TensorLift> {
        let t = self.perturbation();
        Perturbed::new(self, t)
    }
}

/// The product part `t_μ` and/or the bracket part `t_L` of the bar
/// differential of `BΩC(L)`, with witness rank + length.
pub fn transfer_perturbation(
    l: &LInftyAlgebra,
    product: bool,
    brackets: bool,
) -> Perturbation<'static, BarWord> {
    let l = l.clone();
    Perturbation::new(
        move |w: &BarWord| {
            let mut out = LinComb::new();
            if product {
                out += bar_differential(&l, w, BarPart::Product);
            }
            if brackets {
                out += bar_differential(&l, w, BarPart::Brackets);
            }
            out
        },
        |w: &BarWord| w.rank() + w.len(),
    )
}

impl Contraction for TensorLift {
    type Big = BarWord;
    type Small = SymBarWord;

    fn d_big(&self, x: &BarWord) -> LinComb<BarWord> {
        bar_differential(&self.l, x, BarPart::Linear)
    }

    fn d_small(&self, y: &SymBarWord) -> Result<LinComb<SymBarWord>> {
        Ok(sym_bar_differential(&self.v, y, false))
    }

    fn f(&self, x: &BarWord) -> Result<LinComb<SymBarWord>> {
        let imgs: Vec<LinComb<Monomial>> = x.0.iter().map(|a| projection_fv(&self.v, a)).collect();
        Ok(tensor_product(imgs)
            .into_terms()
            .map(|(v, c)| (SymBarWord(v), c))
            .collect())
    }

    fn g(&self, y: &SymBarWord) -> Result<LinComb<BarWord>> {
        let imgs: Vec<CobarElem> = y.0.iter().map(|m| inclusion_gv(&self.v, m)).collect();
        Ok(tensor_product(imgs)
            .into_terms()
            .map(|(v, c)| (BarWord(v), c))
            .collect())
    }

    /// `Σ_t (g′f′)^{⊗(t−1)} ⊗ h′ ⊗ 1`, `h′(sa) = −s h(a)`.
    fn h(&self, x: &BarWord) -> Result<LinComb<BarWord>> {
        let sdeg = self.l.sdegrees();
        let mut out = LinComb::new();
        let mut prefix: LinComb<Vec<CobarWord>> = LinComb::basis(Vec::new());
        let mut prefix_deg = 0i64;
        for (t, a) in x.0.iter().enumerate() {
            let ha = self.h_letter(a)?;
            if !ha.is_zero() && !prefix.is_zero() {
                let sign: Scalar = -scalar::sign(prefix_deg);
                for (p, c) in prefix.iter() {
                    for (b, e) in ha.iter() {
                        let mut v = p.clone();
                        v.push(b.clone());
                        v.extend_from_slice(&x.0[t + 1..]);
                        out.add_term(BarWord(v), c * e * &sign);
                    }
                }
            }
            let gf = self.gf_letter(a);
            let mut next = LinComb::new();
            for (p, c) in prefix.iter() {
                for (b, e) in gf.iter() {
                    let mut v = p.clone();
                    v.push(b.clone());
                    next.add_term(v, c * e);
                }
            }
            prefix = next;
            prefix_deg += (a.degree(sdeg) - 1) as i64;
        }
        Ok(out)
    }
}

/// Perturbing by `t_μ` and then by `t_L` gives the same transferred
/// differential and contraction as perturbing by `t_μ + t_L` at once, on bar
/// words of rank `≤ rank`.
pub fn check_two_step_perturbation(l: &LInftyAlgebra, rank: usize) -> Result<Option<String>> {
    let lift = TensorLift::new(l, Contractions::standard());
    let both = lift.perturbed();
    let first = Perturbed::new(&lift, transfer_perturbation(l, true, false));
    let second = Perturbed::new(&first, transfer_perturbation(l, false, true));
    for y in sym_bar_words(l.degrees(), rank, rank) {
        if both.d_small(&y)? != second.d_small(&y)? || both.g(&y)? != second.g(&y)? {
            return Ok(Some(format!("transferred d or G differs on {y:?}")));
        }
    }
    let letters = cobar_words(l.sdegrees(), rank);
    for w in bar_words(&letters, rank, rank) {
        if both.f(&w)? != second.f(&w)? || both.h(&w)? != second.h(&w)? {
            return Ok(Some(format!("transferred F or H differs on {w:?}")));
        }
    }
    Ok(None)
}

/// For `L` with no brackets beyond `l_1`, the transferred differential is the
/// bar differential of the graded commutative algebra `Sym(L)`, on bar words
/// of weight `≤ rank`.
pub fn check_abelian_transfer(l: &LInftyAlgebra, rank: usize) -> Result<Option<String>> {
    if l.max_arity() > 1 {
        return Err(Error::Invalid("only l_1 may be nonzero".into()));
    }
    let lift = TensorLift::new(l, Contractions::standard());
    let p = lift.perturbed();
    for y in sym_bar_words(l.degrees(), rank, rank) {
        if p.d_small(&y)? != sym_bar_differential(l, &y, true) {
            return Ok(Some(format!("transferred differential differs on {y:?}")));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpt::bar::{deconcatenate_vec, tensor_apply};
    use crate::hpt::perturbation::check_contraction;

    fn mixed() -> LInftyAlgebra {
        let mut l = LInftyAlgebra::abelian(vec!["a".into(), "b".into()], vec![1, 2]).unwrap();
        l.set_bracket(&[0], LinComb::basis(1)).unwrap();
        l.set_bracket(&[0, 0], LinComb::term(1, scalar::int(3)))
            .unwrap();
        l
    }

    fn sl2() -> LInftyAlgebra {
        let mut l = LInftyAlgebra::abelian(vec!["e".into(), "f".into(), "h".into()], vec![0, 0, 0])
            .unwrap();
        l.set_bracket(&[0, 1], LinComb::basis(2)).unwrap();
        l.set_bracket(&[2, 0], LinComb::term(0, scalar::int(2)))
            .unwrap();
        l.set_bracket(&[2, 1], LinComb::term(1, scalar::int(-2)))
            .unwrap();
        l
    }

    #[test]
    fn lifted_contraction_identities() {
        for l in [mixed(), sl2()] {
            let lift = TensorLift::new(&l, Contractions::standard());
            let letters = cobar_words(l.sdegrees(), 3);
            let bigs = bar_words(&letters, 3, 3);
            let smalls = sym_bar_words(l.degrees(), 3, 3);
            assert_eq!(check_contraction(&lift, &bigs, &smalls).unwrap(), None);
        }
    }

    #[test]
    fn coalgebra_homotopy_condition() {
        let l = mixed();
        let lift = TensorLift::new(&l, Contractions::standard());
        let sd = l.sdegrees().clone();
        let deg = |w: &BarWord| w.degree(&sd);
        let id = |w: &BarWord| LinComb::basis(w.clone());
        let h = |w: &BarWord| lift.h(w).unwrap();
        let gf = |w: &BarWord| lift.g_vec(&lift.f(w).unwrap()).unwrap();
        let letters = cobar_words(&sd, 3);
        for w in bar_words(&letters, 3, 3) {
            let lhs = deconcatenate_vec(&h(&w));
            let split = deconcatenate_vec(&LinComb::basis(w.clone()));
            let mut rhs = tensor_apply(&split, deg, 0, h, id);
            rhs += tensor_apply(&split, deg, -1, gf, h);
            assert_eq!(lhs, rhs, "{w:?}");
        }
    }

    #[test]
    fn degree_bookkeeping() {
        let l = sl2();
        let lift = TensorLift::new(&l, Contractions::standard());
        let letters = cobar_words(l.sdegrees(), 3);
        for w in bar_words(&letters, 3, 2) {
            for (u, _) in lift.h(&w).unwrap().iter() {
                assert_eq!(u.geometric_degree(), w.geometric_degree() + 1);
            }
            for part in [BarPart::Product, BarPart::Brackets] {
                for (u, _) in bar_differential(&l, &w, part).iter() {
                    let drop = w.geometric_degree() as i64 - u.geometric_degree() as i64;
                    match part {
                        BarPart::Product => assert_eq!(drop, 0),
                        _ => assert!(drop >= 1),
                    }
                }
            }
            if w.len() == 1 && w.geometric_degree() > 0 {
                assert!(lift.f(&w).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn perturbed_contraction_identities() {
        for (l, rank) in [(mixed(), 3), (sl2(), 3)] {
            let lift = TensorLift::new(&l, Contractions::standard());
            let p = lift.perturbed();
            let letters = cobar_words(l.sdegrees(), rank);
            let bigs = bar_words(&letters, rank, rank);
            let smalls = sym_bar_words(l.degrees(), rank, rank);
            assert_eq!(check_contraction(&p, &bigs, &smalls).unwrap(), None);
            for y in &smalls {
                assert!(
                    p.d_small_vec(&p.d_small(y).unwrap()).unwrap().is_zero(),
                    "{y:?}"
                );
            }
        }
    }

    #[test]
    fn perturbing_in_two_steps_agrees() {
        assert_eq!(check_two_step_perturbation(&sl2(), 3).unwrap(), None);
        assert_eq!(check_two_step_perturbation(&mixed(), 3).unwrap(), None);
    }

    #[test]
    fn abelian_transfer_is_the_commutative_bar() {
        let mut with_d = LInftyAlgebra::abelian(vec!["a".into(), "b".into()], vec![0, 1]).unwrap();
        with_d.set_bracket(&[0], LinComb::basis(1)).unwrap();
        let plain = LInftyAlgebra::abelian(vec!["x".into(), "y".into(), "p".into()], vec![0, 0, 1])
            .unwrap();
        for l in [with_d, plain] {
            assert_eq!(check_abelian_transfer(&l, 4).unwrap(), None);
        }
        assert!(check_abelian_transfer(&sl2(), 2).is_err());
    }
}
