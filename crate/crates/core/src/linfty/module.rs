//! L∞-modules, realized through the semidirect product `L ⋉ M`.

use super::algebra::LInftyAlgebra;
use super::ce::{check_linfty, Counterexample};
use crate::error::{Error, Result};
use crate::exactlin::{GenId, LinComb};

/// An L∞-module `M` over `L`. The action maps `L^{⊗k} ⊗ M → M` are the
/// brackets of `L ⋉ M` with exactly one input from `M`; module generators get
/// the ids following those of `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct LInftyModule {
    pub owner: LInftyAlgebra,
    semidirect: LInftyAlgebra,
}

impl LInftyModule {
    /// The module with zero action.
    pub fn new(owner: &LInftyAlgebra, names: Vec<String>, degrees: Vec<i32>) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::LengthMismatch {
                expected: names.len(),
                got: degrees.len(),
            });
        }
        let mut semidirect = owner.clone();
        semidirect.extend_generators(&names, &degrees)?;
        Ok(LInftyModule {
            owner: owner.clone(),
            semidirect,
        })
    }

    /// `k` in degree 0 with the zero action.
    pub fn trivial(owner: &LInftyAlgebra) -> Result<Self> {
        Self::new(owner, vec!["1".into()], vec![0])
    }

    /// `L` acting on a copy of itself through all brackets with one module slot.
    pub fn adjoint(owner: &LInftyAlgebra) -> Result<Self> {
        let names = owner.names().iter().map(|n| format!("{n}'")).collect();
        let mut m = Self::new(owner, names, owner.degrees().0.clone())?;
        for mono in owner.components().keys() {
            let letters = mono.letters();
            for (pos, &g) in letters.iter().enumerate() {
                if pos > 0 && letters[pos - 1] == g {
                    continue;
                }
                let mut rest = letters.to_vec();
                rest.remove(pos);
                let mut word = rest.clone();
                word.push(g);
                m.set_action(&rest, g, owner.bracket(&word))?;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.semidirect.dim() - self.owner.dim()
    }

    pub fn offset(&self) -> GenId {
        self.owner.dim() as GenId
    }

    pub fn names(&self) -> &[String] {
        &self.semidirect.names()[self.owner.dim()..]
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.semidirect.degrees().0[self.owner.dim()..].to_vec()
    }

    pub fn semidirect(&self) -> &LInftyAlgebra {
        &self.semidirect
    }

    pub fn id_of(&self, name: &str) -> Result<GenId> {
        let id = self.semidirect.id_of(name)?;
        if id < self.offset() {
            return Err(Error::UnknownGenerator(name.to_string()));
        }
        Ok(id - self.offset())
    }

    /// Sets the action of `x_1, …, x_k` (ids in `L`) on the module generator `m`.
    pub fn set_action(&mut self, inputs: &[GenId], m: GenId, value: LinComb<GenId>) -> Result<()> {
        let off = self.offset();
        if inputs.iter().any(|&g| g >= off) || m as usize >= self.dim() {
            return Err(Error::UnknownGenerator("action index out of range".into()));
        }
        let mut word = inputs.to_vec();
        word.push(m + off);
        let v: LinComb<GenId> = value.iter().map(|(h, c)| (h + off, c.clone())).collect();
        self.semidirect.set_bracket(&word, v)
    }

    /// The action `l_{k+1}(x_1, …, x_k, m)` with values in `M`.
    pub fn action(&self, inputs: &[GenId], m: GenId) -> LinComb<GenId> {
        let off = self.offset();
        let mut word = inputs.to_vec();
        word.push(m + off);
        self.semidirect
            .bracket(&word)
            .iter()
            .map(|(h, c)| (h - off, c.clone()))
            .collect()
    }

    /// Rebuilds a module from the brackets of a semidirect product.
    pub fn from_semidirect(owner: &LInftyAlgebra, semidirect: LInftyAlgebra) -> Result<Self> {
        let off = owner.dim() as GenId;
        for (mono, value) in semidirect.components() {
            let in_m = mono.letters().iter().filter(|&&g| g >= off).count();
            let ok = match in_m {
                0 => owner.component(mono) == Some(value),
                1 => value.keys().all(|&g| g >= off),
                _ => false,
            };
            if !ok {
                return Err(Error::Invalid(
                    "not a semidirect product with an abelian module".into(),
                ));
            }
        }
        Ok(LInftyModule {
            owner: owner.clone(),
            semidirect,
        })
    }
}

/// Checks the module identities (`δ² = 0` on `C(L ⋉ M)`) up to `weight_cap`.
pub fn check_module(
    m: &LInftyModule,
    weight_cap: usize,
) -> std::result::Result<(), Counterexample> {
    check_linfty(m.semidirect(), weight_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;

    fn sl2() -> LInftyAlgebra {
        let mut l = LInftyAlgebra::abelian(vec!["e".into(), "f".into(), "h".into()], vec![0, 0, 0])
            .unwrap();
        l.set_bracket(&[0, 1], LinComb::basis(2)).unwrap();
        l.set_bracket(&[2, 0], LinComb::term(0, int(2))).unwrap();
        l.set_bracket(&[2, 1], LinComb::term(1, int(-2))).unwrap();
        l
    }

    #[test]
    fn adjoint_action_matches_bracket() {
        let l = sl2();
        let m = LInftyModule::adjoint(&l).unwrap();
        assert_eq!(m.action(&[0], 1), LinComb::basis(2));
        assert_eq!(m.action(&[2], 0), LinComb::term(0, int(2)));
        assert_eq!(m.action(&[1], 0), -LinComb::basis(2));
        assert!(check_module(&m, 3).is_ok());
    }

    #[test]
    fn trivial_and_broken_modules() {
        let l = sl2();
        assert!(check_module(&LInftyModule::trivial(&l).unwrap(), 3).is_ok());
        let mut m = LInftyModule::adjoint(&l).unwrap();
        m.set_action(&[2], 0, LinComb::term(0, int(3))).unwrap();
        assert!(check_module(&m, 3).is_err());
    }
}
