//! L∞-algebras stored through the components `c_k` of their CE coderivation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{Degrees, GenId, LinComb, Monomial};

/// A finite-dimensional L∞-algebra.
///
/// The brackets are kept as the components `c_k: Sym^k(sL) → sL` on sorted
/// monomials, related to `l_k` by `c_k = (-1)^k s l_k (s^{⊗k})^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LInftyAlgebra {
    names: Vec<String>,
    degrees: Degrees,
    sdegrees: Degrees,
    coder: BTreeMap<Monomial, LinComb<GenId>>,
}

/// Sign of `(s^{⊗k})^{-1}` on `sv_1 ⊗ … ⊗ sv_k`: `(-1)^{Σ (k-i)|v_i|}`.
pub fn desuspension_sign(degs: &[i32]) -> i64 {
    let k = degs.len() as i64;
    degs.iter()
        .enumerate()
        .map(|(i, d)| (k - 1 - i as i64) * *d as i64)
        .sum()
}

impl LInftyAlgebra {
    /// The abelian algebra on the given generators.
    pub fn abelian(names: Vec<String>, degrees: Vec<i32>) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::LengthMismatch {
                expected: names.len(),
                got: degrees.len(),
            });
        }
        if names.len() > GenId::MAX as usize {
            return Err(Error::Range("too many generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate generator `{n}`")));
            }
        }
        let degrees = Degrees(degrees);
        let sdegrees = degrees.suspended();
        Ok(LInftyAlgebra {
            names,
            degrees,
            sdegrees,
            coder: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.names[g as usize]
    }

    pub fn id_of(&self, name: &str) -> Result<GenId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as GenId)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Degrees of `L`.
    pub fn degrees(&self) -> &Degrees {
        &self.degrees
    }

    /// Degrees of `sL`.
    pub fn sdegrees(&self) -> &Degrees {
        &self.sdegrees
    }

    pub fn components(&self) -> &BTreeMap<Monomial, LinComb<GenId>> {
        &self.coder
    }

    /// `c_k` on a sorted monomial of `Sym(sL)`.
    pub fn component(&self, m: &Monomial) -> Option<&LinComb<GenId>> {
        self.coder.get(m)
    }

    pub fn max_arity(&self) -> usize {
        self.coder.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    pub fn is_abelian(&self) -> bool {
        self.coder.is_empty()
    }

    /// No brackets of arity three or more.
    pub fn is_dg_lie(&self) -> bool {
        self.max_arity() <= 2
    }

    /// Sets `c_k` on a sorted monomial directly. The value lies in `sL`.
    pub fn set_component(&mut self, m: Monomial, value: LinComb<GenId>) -> Result<()> {
        if m.weight() == 0 {
            return Err(Error::Invalid("no curvature term allowed".into()));
        }
        self.check_ids(m.letters())?;
        self.check_ids(&value.keys().copied().collect::<Vec<_>>())?;
        let want = m.degree(&self.sdegrees) + 1;
        if let Some(g) = value.keys().find(|g| self.sdegrees.deg(**g) != want) {
            return Err(Error::Invalid(format!(
                "component on {:?} has output `{}` of the wrong degree",
                self.word_names(m.letters()),
                self.name(*g)
            )));
        }
        if value.is_zero() {
            self.coder.remove(&m);
        } else {
            self.coder.insert(m, value);
        }
        Ok(())
    }

    /// Sets `l_k(v_1, …, v_k)` for the given (not necessarily sorted) inputs;
    /// the other orderings follow by graded antisymmetry.
    pub fn set_bracket(&mut self, inputs: &[GenId], value: LinComb<GenId>) -> Result<()> {
        self.check_ids(inputs)?;
        let Some((mono, sort_sign)) = Monomial::from_letters(inputs, &self.sdegrees) else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Invalid(format!(
                "bracket on {:?} vanishes by graded antisymmetry",
                self.word_names(inputs)
            )));
        };
        let want = self.degrees.word_degree(inputs) + 2 - inputs.len() as i32;
        if let Some(g) = value.keys().find(|g| self.degrees.deg(**g) != want) {
            return Err(Error::Invalid(format!(
                "bracket on {:?} has output `{}` of degree {}, expected {want}",
                self.word_names(inputs),
                self.name(*g),
                self.degrees.deg(*g)
            )));
        }
        let degs: Vec<i32> = inputs.iter().map(|&g| self.degrees.deg(g)).collect();
        let e = inputs.len() as i64 + desuspension_sign(&degs);
        let c = scalar::sign(e) * scalar::int(sort_sign as i64);
        self.set_component(mono, value.scaled(&c))
    }

    /// `l_k(v_1, …, v_k)` for arbitrary inputs.
    pub fn bracket(&self, inputs: &[GenId]) -> LinComb<GenId> {
        let Some((mono, sort_sign)) = Monomial::from_letters(inputs, &self.sdegrees) else {
            return LinComb::new();
        };
        let Some(c) = self.coder.get(&mono) else {
            return LinComb::new();
        };
        let degs: Vec<i32> = inputs.iter().map(|&g| self.degrees.deg(g)).collect();
        let e = inputs.len() as i64 + desuspension_sign(&degs);
        c.scaled(&(scalar::sign(e) * scalar::int(sort_sign as i64)))
    }

    /// `c_k` evaluated on a tensor word of `sL` letters.
    pub fn component_on_word(&self, letters: &[GenId]) -> LinComb<GenId> {
        let Some((mono, sign)) = Monomial::from_letters(letters, &self.sdegrees) else {
            return LinComb::new();
        };
        match self.coder.get(&mono) {
            Some(c) => c.scaled(&scalar::int(sign as i64)),
            None => LinComb::new(),
        }
    }

    /// Keeps only the brackets of arity `≤ k`.
    pub fn truncated(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.coder.retain(|m, _| m.weight() <= k);
        out
    }

    /// Keeps only the brackets whose arity satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = self.clone();
        out.coder.retain(|m, _| keep(m.weight()));
        out
    }

    /// `L ⊕ L'` with the generators of `other` renamed by `suffix` when they clash.
    pub fn direct_sum(&self, other: &LInftyAlgebra, suffix: &str) -> Result<Self> {
        let mut names = self.names.clone();
        for n in &other.names {
            names.push(if self.names.contains(n) {
                format!("{n}{suffix}")
            } else {
                n.clone()
            });
        }
        let mut degrees = self.degrees.0.clone();
        degrees.extend_from_slice(&other.degrees.0);
        let mut out = LInftyAlgebra::abelian(names, degrees)?;
        out.coder = self.coder.clone();
        let off = self.dim() as GenId;
        for (m, v) in &other.coder {
            let mono = Monomial(m.letters().iter().map(|g| g + off).collect());
            let val: LinComb<GenId> = v.iter().map(|(g, c)| (g + off, c.clone())).collect();
            out.coder.insert(mono, val);
        }
        Ok(out)
    }

    /// Appends generators without brackets; returns the id of the first one.
    pub(crate) fn extend_generators(&mut self, names: &[String], degrees: &[i32]) -> Result<GenId> {
        let first = self.dim() as GenId;
        for (n, d) in names.iter().zip(degrees) {
            if self.names.contains(n) {
                return Err(Error::Invalid(format!("duplicate generator `{n}`")));
            }
            self.names.push(n.clone());
            self.degrees.0.push(*d);
        }
        self.sdegrees = self.degrees.suspended();
        Ok(first)
    }

    pub fn word_names(&self, letters: &[GenId]) -> Vec<String> {
        letters
            .iter()
            .map(|&g| {
                self.names
                    .get(g as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("#{g}"))
            })
            .collect()
    }

    fn check_ids(&self, ids: &[GenId]) -> Result<()> {
        match ids.iter().find(|&&g| g as usize >= self.dim()) {
            Some(g) => Err(Error::UnknownGenerator(format!("#{g}"))),
            None => Ok(()),
        }
    }

    /// Parses a linear combination of generator names.
    pub fn element(&self, terms: &[(&str, Scalar)]) -> Result<LinComb<GenId>> {
        let mut v = LinComb::new();
        for (n, c) in terms {
            v.add_term(self.id_of(n)?, c.clone());
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn bracket_roundtrip_and_antisymmetry() {
        let mut l = LInftyAlgebra::abelian(names(&["e", "f", "h"]), vec![0, 0, 0]).unwrap();
        l.set_bracket(&[0, 1], LinComb::basis(2)).unwrap();
        assert_eq!(l.bracket(&[0, 1]), LinComb::basis(2));
        assert_eq!(l.bracket(&[1, 0]), -LinComb::basis(2));
        assert!(l.bracket(&[0, 0]).is_zero());
    }

    #[test]
    fn odd_symmetric_bracket() {
        // odd x: l_2(x, x) may be nonzero and is symmetric
        let mut l = LInftyAlgebra::abelian(names(&["x", "y"]), vec![1, 2]).unwrap();
        l.set_bracket(&[0, 0], LinComb::basis(1)).unwrap();
        assert_eq!(l.bracket(&[0, 0]), LinComb::basis(1));
        let err = LInftyAlgebra::abelian(names(&["a", "b"]), vec![0, 0])
            .unwrap()
            .set_bracket(&[0, 0], LinComb::basis(1));
        assert!(err.is_err());
    }

    #[test]
    fn degree_checked() {
        let mut l = LInftyAlgebra::abelian(names(&["a", "b"]), vec![0, 1]).unwrap();
        assert!(l.set_bracket(&[0, 1], LinComb::basis(0)).is_err());
        assert!(l.set_bracket(&[0, 1], LinComb::basis(1)).is_ok());
        assert!(l.set_bracket(&[0, 1], LinComb::term(1, int(0))).is_ok());
    }

    #[test]
    fn component_sign_for_c1() {
        // c_1 = -s l_1 s^{-1}
        let mut l = LInftyAlgebra::abelian(names(&["a", "b"]), vec![0, 1]).unwrap();
        l.set_bracket(&[0], LinComb::basis(1)).unwrap();
        assert_eq!(l.component_on_word(&[0]), -LinComb::basis(1));
    }
}
