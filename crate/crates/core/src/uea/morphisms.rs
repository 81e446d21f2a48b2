//! `U(φ) = F_M BΩ(φ) G_L` and the composition homotopy
//! `H(φ,ψ) = F_N BΩ(ψ) H_M BΩ(φ) G_L`.

use crate::error::{Error, Result};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{Degrees, LinComb, Monomial};
use crate::exec;
use crate::hpt::bar::{deconcatenate_vec, sym_bar_words, tensor_apply};
use crate::hpt::{BarElem, BarWord, Contraction, SymBarElem, SymBarWord};
use crate::linfty::{compose_morphisms, LInftyMorphism};
use crate::permutahedra::theta::cobar_functor;

use super::checks::sym_linear;
use super::products::{bar_counterexample, counterexample, AInftyStructure, Outcome};

/// `BΩ(φ)`: `ΩC(φ)` on every letter; letterwise maps of degree 0 carry no signs.
pub fn bar_cobar_functor(phi: &LInftyMorphism, w: &BarWord) -> BarElem {
    let mut out: LinComb<Vec<_>> = LinComb::basis(Vec::new());
    for a in &w.0 {
        let img = cobar_functor(phi, a);
        let mut next = LinComb::new();
        for (p, c) in out.iter() {
            for (b, e) in img.iter() {
                let mut v = p.clone();
                v.push(b.clone());
                next.add_term(v, c * e);
            }
        }
        out = next;
    }
    out.into_terms().map(|(v, c)| (BarWord(v), c)).collect()
}

fn bar_cobar_functor_vec(phi: &LInftyMorphism, x: &BarElem) -> BarElem {
    x.apply(|w| bar_cobar_functor(phi, w))
}

/// `(−1)^{Σ (i−k)|x_k|}`: the sign of `(s^{⊗i})^{-1}`.
fn desuspension(xs: &[Monomial], degs: &Degrees) -> Scalar {
    let i = xs.len() as i64;
    scalar::sign(
        xs.iter()
            .enumerate()
            .map(|(k, x)| (i - 1 - k as i64) * x.degree(degs) as i64)
            .sum(),
    )
}

fn check_pair(
    source: &AInftyStructure,
    target: &AInftyStructure,
    phi: &LInftyMorphism,
) -> Result<()> {
    if source.algebra() != &phi.source || target.algebra() != &phi.target {
        return Err(Error::Invalid(
            "morphism does not match the given algebras".into(),
        ));
    }
    Ok(())
}

/// The A∞-morphism `U(φ): U(L) → U(M)`.
pub struct UMorphism<'a> {
    pub source: &'a AInftyStructure,
    pub target: &'a AInftyStructure,
    pub phi: LInftyMorphism,
}

impl<'a> UMorphism<'a> {
    pub fn new(
        source: &'a AInftyStructure,
        target: &'a AInftyStructure,
        phi: &LInftyMorphism,
    ) -> Result<Self> {
        check_pair(source, target, phi)?;
        Ok(UMorphism {
            source,
            target,
            phi: phi.clone(),
        })
    }

    /// The full coalgebra map `BU(L) → BU(M)` on one word.
    pub fn bar_map(&self, y: &SymBarWord) -> Result<SymBarElem> {
        let g = self.source.transfer().g(y)?;
        self.target
            .transfer()
            .f_vec(&bar_cobar_functor_vec(&self.phi, &g))
    }

    pub fn bar_map_vec(&self, y: &SymBarElem) -> Result<SymBarElem> {
        y.try_apply(|w| self.bar_map(w))
    }

    /// `U(φ)_i(x_1, …, x_i)`, with `U(φ)_i = s^{-1} F_i s^{⊗i}`.
    pub fn component(&self, xs: &[Monomial]) -> Result<LinComb<Monomial>> {
        let full = self.bar_map(&SymBarWord(xs.to_vec()))?;
        let sign = desuspension(xs, self.source.algebra().degrees());
        Ok(full
            .iter()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w.0[0].clone(), c * &sign))
            .collect())
    }
}

fn words_within_caps(a: &AInftyStructure) -> Vec<SymBarWord> {
    sym_bar_words(
        a.algebra().degrees(),
        a.caps().weight_cap,
        a.caps().arity_cap,
    )
}

/// `U(φ)` commutes with the bar differentials and with deconcatenation.
pub fn check_u_morphism(u: &UMorphism) -> Result<Outcome> {
    let (s, t) = (u.source, u.target);
    let degs = t.algebra().degrees().clone();
    let words = words_within_caps(s);
    let results = exec::map(&words, |y| -> Result<Option<SymBarElem>> {
        let uy = u.bar_map(y)?;
        let lhs = t.transfer().d_small_vec(&uy)?;
        let rhs = u.bar_map_vec(&s.transfer().d_small(y)?)?;
        if lhs != rhs {
            return Ok(Some(lhs - rhs));
        }
        let split = deconcatenate_vec(&LinComb::basis(y.clone()));
        let ev = |w: &SymBarWord| u.bar_map(w).unwrap_or_default();
        let rhs = tensor_apply(&split, |w| w.degree(&degs), 0, ev, ev);
        let lhs = deconcatenate_vec(&uy);
        Ok((lhs != rhs).then(|| uy))
    });
    for (y, r) in words.iter().zip(results) {
        if let Some(bad) = r? {
            return Ok(Err(bar_counterexample(s.algebra(), y, &bad)));
        }
    }
    Ok(Ok(()))
}

/// `U(φ)_1 = Sym(φ_1)` on every monomial within the weight cap.
pub fn first_component_check(u: &UMorphism) -> Result<Outcome> {
    let l = u.source.algebra();
    let images: Vec<_> = (0..l.dim() as u16).map(|g| u.phi.phi(&[g])).collect();
    for m in crate::exactlin::monomials_up_to(l.degrees(), u.source.caps().weight_cap) {
        if m.weight() == 0 {
            continue;
        }
        let got = u.component(std::slice::from_ref(&m))?;
        let want = sym_linear(&images, u.target.algebra(), &m);
        if got != want {
            return Ok(Err(counterexample(l, &[m], &(got - want))));
        }
    }
    Ok(Ok(()))
}

/// `U(φ)_i = 0` for `2 ≤ i ≤ arity_cap`.
pub fn higher_components_vanish(u: &UMorphism) -> Result<Outcome> {
    for y in words_within_caps(u.source) {
        if y.len() < 2 {
            continue;
        }
        let c = u.component(&y.0)?;
        if !c.is_zero() {
            return Ok(Err(counterexample(u.source.algebra(), &y.0, &c)));
        }
    }
    Ok(Ok(()))
}

/// `H(φ,ψ): BU(L) → BU(N)`.
pub struct CompositionHomotopy<'a> {
    pub l: &'a AInftyStructure,
    pub m: &'a AInftyStructure,
    pub n: &'a AInftyStructure,
    pub phi: LInftyMorphism,
    pub psi: LInftyMorphism,
}

impl<'a> CompositionHomotopy<'a> {
    pub fn new(
        l: &'a AInftyStructure,
        m: &'a AInftyStructure,
        n: &'a AInftyStructure,
        phi: &LInftyMorphism,
        psi: &LInftyMorphism,
    ) -> Result<Self> {
        check_pair(l, m, phi)?;
        check_pair(m, n, psi)?;
        Ok(CompositionHomotopy {
            l,
            m,
            n,
            phi: phi.clone(),
            psi: psi.clone(),
        })
    }

    pub fn apply(&self, y: &SymBarWord) -> Result<SymBarElem> {
        let g = self.l.transfer().g(y)?;
        let x = self
            .m
            .transfer()
            .h_vec(&bar_cobar_functor_vec(&self.phi, &g))?;
        self.n
            .transfer()
            .f_vec(&bar_cobar_functor_vec(&self.psi, &x))
    }

    pub fn apply_vec(&self, y: &SymBarElem) -> Result<SymBarElem> {
        y.try_apply(|w| self.apply(w))
    }

    /// `U(ψ∘φ) − U(ψ)∘U(φ) = d H + H d` on every bar word within the caps of
    /// the source.
    pub fn check(&self) -> Result<Outcome> {
        let comp = compose_morphisms(&self.psi, &self.phi)?;
        let u_comp = UMorphism::new(self.l, self.n, &comp)?;
        let u_phi = UMorphism::new(self.l, self.m, &self.phi)?;
        let u_psi = UMorphism::new(self.m, self.n, &self.psi)?;
        let words = words_within_caps(self.l);
        let results = exec::map(&words, |y| -> Result<Option<SymBarElem>> {
            let mut lhs = u_comp.bar_map(y)?;
            lhs -= &u_psi.bar_map_vec(&u_phi.bar_map(y)?)?;
            let mut rhs = self.n.transfer().d_small_vec(&self.apply(y)?)?;
            rhs += self.apply_vec(&self.l.transfer().d_small(y)?)?;
            Ok((lhs != rhs).then(|| lhs - rhs))
        });
        for (y, r) in words.iter().zip(results) {
            if let Some(bad) = r? {
                return Ok(Err(bar_counterexample(self.l.algebra(), y, &bad)));
            }
        }
        Ok(Ok(()))
    }

    /// `H(φ,ψ)` on every bar word within the caps, or the first nonzero value.
    pub fn vanishes(&self) -> Result<Outcome> {
        for y in words_within_caps(self.l) {
            let h = self.apply(&y)?;
            if !h.is_zero() {
                return Ok(Err(bar_counterexample(self.l.algebra(), &y, &h)));
            }
        }
        Ok(Ok(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;
    use crate::fixtures;
    use crate::linfty::LInftyAlgebra;
    use crate::uea::Caps;

    fn odd_pair() -> (LInftyAlgebra, LInftyMorphism, LInftyMorphism) {
        let l = fixtures::odd(2);
        let mut phi = LInftyMorphism::identity(&l);
        phi.set_phi(&[0, 0], LinComb::basis(1)).unwrap();
        let mut psi = LInftyMorphism::identity(&l);
        psi.set_phi(&[0, 1], LinComb::term(0, int(3))).unwrap();
        (l, phi, psi)
    }

    #[test]
    fn identity_is_identity() {
        let l = fixtures::sl2();
        let a = AInftyStructure::new(&l, Caps::new(2, 3).unwrap()).unwrap();
        let u = UMorphism::new(&a, &a, &LInftyMorphism::identity(&l)).unwrap();
        for y in words_within_caps(&a) {
            assert_eq!(u.bar_map(&y).unwrap(), LinComb::basis(y.clone()), "{y:?}");
        }
    }

    #[test]
    fn strict_abelianization() {
        let h = fixtures::heisenberg();
        let ab = fixtures::abelian(2);
        let p = LInftyMorphism::strict(
            &h,
            &ab,
            &[LinComb::basis(0), LinComb::basis(1), LinComb::new()],
        )
        .unwrap();
        let caps = Caps::new(3, 3).unwrap();
        let (a, b) = (
            AInftyStructure::new(&h, caps).unwrap(),
            AInftyStructure::new(&ab, caps).unwrap(),
        );
        let u = UMorphism::new(&a, &b, &p).unwrap();
        assert_eq!(first_component_check(&u).unwrap(), Ok(()));
        assert_eq!(higher_components_vanish(&u).unwrap(), Ok(()));
        assert_eq!(check_u_morphism(&u).unwrap(), Ok(()));
    }

    #[test]
    fn non_strict_morphism() {
        let (l, phi, _) = odd_pair();
        let a = AInftyStructure::new(&l, Caps::new(3, 4).unwrap()).unwrap();
        let u = UMorphism::new(&a, &a, &phi).unwrap();
        assert_eq!(first_component_check(&u).unwrap(), Ok(()));
        assert_eq!(check_u_morphism(&u).unwrap(), Ok(()));
        assert!(higher_components_vanish(&u).unwrap().is_err());
    }

    #[test]
    fn composition_homotopy_identity() {
        let (l, phi, psi) = odd_pair();
        let a = AInftyStructure::new(&l, Caps::new(3, 4).unwrap()).unwrap();
        let h = CompositionHomotopy::new(&a, &a, &a, &phi, &psi).unwrap();
        assert_eq!(h.check().unwrap(), Ok(()));
        let id = LInftyMorphism::identity(&l);
        for (f, g) in [(&phi, &id), (&id, &psi)] {
            let h = CompositionHomotopy::new(&a, &a, &a, f, g).unwrap();
            assert_eq!(h.vanishes().unwrap(), Ok(()));
            assert_eq!(h.check().unwrap(), Ok(()));
        }
        let (phi, psi) = fixtures::morphism_chain();
        let caps = Caps::new(3, 4).unwrap();
        let l = AInftyStructure::new(&phi.source, caps).unwrap();
        let m = AInftyStructure::new(&phi.target, caps).unwrap();
        let n = AInftyStructure::new(&psi.target, caps).unwrap();
        let h = CompositionHomotopy::new(&l, &m, &n, &phi, &psi).unwrap();
        assert!(h.vanishes().unwrap().is_err());
        assert_eq!(h.check().unwrap(), Ok(()));
    }
}
