//! L∞-morphisms as morphisms of CE coalgebras.

use std::collections::BTreeMap;

use super::algebra::{desuspension_sign, LInftyAlgebra};
use super::ce::{coderivation, coderivation_vec, Counterexample};
use crate::error::{Error, Result};
use crate::exactlin::koszul::koszul_sign;
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::words::monomials_up_to;
use crate::exactlin::{GenId, LinComb, Monomial};
use crate::exec;

/// An L∞-morphism `L → L'`, stored as the corestricted coalgebra components
/// `ϕ_i: Sym^i(sL) → sL'` (degree 0). The bracket-level maps are
/// `ϕ_i = s φ_i (s^{⊗i})^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LInftyMorphism {
    pub source: LInftyAlgebra,
    pub target: LInftyAlgebra,
    comps: BTreeMap<Monomial, LinComb<GenId>>,
}

/// Set partitions of `{0, …, k-1}` with blocks ordered by their minima.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, k, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, k, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::new(), &mut out);
    out
}

impl LInftyMorphism {
    pub fn zero(source: &LInftyAlgebra, target: &LInftyAlgebra) -> Self {
        LInftyMorphism {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(l: &LInftyAlgebra) -> Self {
        let mut m = Self::zero(l, l);
        for g in 0..l.dim() as GenId {
            m.comps.insert(Monomial::single(g), LinComb::basis(g));
        }
        m
    }

    /// A strict morphism from the images of the generators under `φ_1`.
    pub fn strict(
        source: &LInftyAlgebra,
        target: &LInftyAlgebra,
        images: &[LinComb<GenId>],
    ) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::LengthMismatch {
                expected: source.dim(),
                got: images.len(),
            });
        }
        let mut m = Self::zero(source, target);
        for (g, v) in images.iter().enumerate() {
            m.set_phi(&[g as GenId], v.clone())?;
        }
        Ok(m)
    }

    pub fn components(&self) -> &BTreeMap<Monomial, LinComb<GenId>> {
        &self.comps
    }

    pub fn max_arity(&self) -> usize {
        self.comps.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        self.max_arity() <= 1
    }

    /// Sets `φ_i(v_1, …, v_i)`; other orderings follow by graded antisymmetry.
    pub fn set_phi(&mut self, inputs: &[GenId], value: LinComb<GenId>) -> Result<()> {
        if inputs.is_empty() {
            return Err(Error::Invalid(
                "morphism components need at least one input".into(),
            ));
        }
        let sd = self.source.sdegrees();
        if let Some(g) = inputs.iter().find(|&&g| g as usize >= self.source.dim()) {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
        if let Some(g) = value.keys().find(|&&g| g as usize >= self.target.dim()) {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
        let Some((mono, sort_sign)) = Monomial::from_letters(inputs, sd) else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Invalid(
                "component vanishes by graded antisymmetry".into(),
            ));
        };
        let want = self.source.degrees().word_degree(inputs) + 1 - inputs.len() as i32;
        if value.keys().any(|&g| self.target.degrees().deg(g) != want) {
            return Err(Error::Invalid(format!(
                "φ_{} output has the wrong degree",
                inputs.len()
            )));
        }
        let degs: Vec<i32> = inputs
            .iter()
            .map(|&g| self.source.degrees().deg(g))
            .collect();
        let c = scalar::sign(desuspension_sign(&degs)) * scalar::int(sort_sign as i64);
        if value.is_zero() {
            self.comps.remove(&mono);
        } else {
            self.comps.insert(mono, value.scaled(&c));
        }
        Ok(())
    }

    /// `φ_i(v_1, …, v_i)` for arbitrary inputs.
    pub fn phi(&self, inputs: &[GenId]) -> LinComb<GenId> {
        let Some((mono, sort_sign)) = Monomial::from_letters(inputs, self.source.sdegrees()) else {
            return LinComb::new();
        };
        let Some(v) = self.comps.get(&mono) else {
            return LinComb::new();
        };
        let degs: Vec<i32> = inputs
            .iter()
            .map(|&g| self.source.degrees().deg(g))
            .collect();
        v.scaled(&(scalar::sign(desuspension_sign(&degs)) * scalar::int(sort_sign as i64)))
    }

    /// The component on a sorted monomial of `Sym(sL)`.
    pub fn component(&self, m: &Monomial) -> LinComb<GenId> {
        self.comps.get(m).cloned().unwrap_or_default()
    }

    /// The induced coalgebra map `C(L) → C(L')` on a monomial:
    /// a sum over set partitions of the letters, one component per block.
    pub fn coalgebra_map(&self, x: &Monomial) -> LinComb<Monomial> {
        let sd = self.source.sdegrees();
        let td = self.target.sdegrees();
        let letters = x.letters();
        let degs: Vec<i32> = letters.iter().map(|&g| sd.deg(g)).collect();
        let mut out = LinComb::new();
        if letters.is_empty() {
            out.add_term(Monomial::unit(), scalar::one());
            return out;
        }
        for part in set_partitions(letters.len()) {
            let perm: Vec<usize> = part.iter().flatten().copied().collect();
            let sign = koszul_sign(&perm, &degs).expect("permutation of positions");
            let mut acc: LinComb<Monomial> =
                LinComb::term(Monomial::unit(), scalar::int(sign as i64));
            for block in &part {
                let sub = Monomial(block.iter().map(|&i| letters[i]).collect());
                let Some(img) = self.comps.get(&sub) else {
                    acc = LinComb::new();
                    break;
                };
                let mut next = LinComb::new();
                for (m, c) in acc.iter() {
                    for (g, d) in img.iter() {
                        if let Some((p, s)) = m.mul(&Monomial::single(*g), td) {
                            next.add_term(p, c * d * scalar::int(s as i64));
                        }
                    }
                }
                acc = next;
                if acc.is_zero() {
                    break;
                }
            }
            out += acc;
        }
        out
    }

    pub fn coalgebra_map_vec(&self, v: &LinComb<Monomial>) -> LinComb<Monomial> {
        v.apply(|m| self.coalgebra_map(m))
    }

    fn check_degrees(&self) -> Result<()> {
        for (m, v) in &self.comps {
            let want = m.degree(self.source.sdegrees());
            if v.keys().any(|&g| self.target.sdegrees().deg(g) != want) {
                return Err(Error::Invalid(
                    "morphism component is not of degree 0".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Checks `Φ δ = δ' Φ` on every monomial of weight `≤ weight_cap`.
pub fn check_morphism(
    phi: &LInftyMorphism,
    weight_cap: usize,
) -> std::result::Result<(), Counterexample> {
    if let Err(e) = phi.check_degrees() {
        return Err(Counterexample {
            word: vec![],
            image: vec![("error".into(), vec![e.to_string()])],
        });
    }
    let basis = monomials_up_to(phi.source.sdegrees(), weight_cap);
    let bad = exec::find_first(&basis, |m| {
        let lhs = phi.coalgebra_map_vec(&coderivation(&phi.source, m));
        let rhs = coderivation_vec(&phi.target, &phi.coalgebra_map(m));
        let diff = lhs - rhs;
        (!diff.is_zero()).then(|| (m.clone(), diff))
    });
    match bad {
        None => Ok(()),
        Some((m, diff)) => Err(Counterexample::from_monomial(
            &phi.source,
            m.letters(),
            &diff,
            |k: &Monomial| {
                phi.target
                    .word_names(k.letters())
                    .into_iter()
                    .map(|n| format!("s{n}"))
                    .collect()
            },
        )),
    }
}

/// `ψ ∘ φ`, read off by corestricting the composite coalgebra map.
pub fn compose_morphisms(psi: &LInftyMorphism, phi: &LInftyMorphism) -> Result<LInftyMorphism> {
    if phi.target != psi.source {
        return Err(Error::Invalid("morphisms are not composable".into()));
    }
    let mut out = LInftyMorphism::zero(&phi.source, &psi.target);
    let max = phi.max_arity() * psi.max_arity();
    let basis = monomials_up_to(phi.source.sdegrees(), max);
    let images = exec::map(&basis, |m| {
        let full = psi.coalgebra_map_vec(&phi.coalgebra_map(m));
        let mut lin: LinComb<GenId> = LinComb::new();
        for (k, c) in full.iter() {
            if k.weight() == 1 {
                lin.add_term(k.letters()[0], c.clone());
            }
        }
        lin
    });
    for (m, v) in basis.into_iter().zip(images) {
        if !v.is_zero() {
            out.comps.insert(m, v);
        }
    }
    Ok(out)
}

/// Applies a scalar to every component (used by mutation tests).
pub fn scale_component(phi: &mut LInftyMorphism, m: &Monomial, c: &Scalar) {
    if let Some(v) = phi.comps.get_mut(m) {
        *v = v.scaled(c);
    }
    phi.comps.retain(|_, v| !v.is_zero());
}
