//! The L∞-algebra attached to polynomials `W_1, …, W_m` without linear terms.
//!
//! `L = s^{-1}V^∨ ⊕ U` with `U` spanned by degree 2 symbols `z_i`. On
//! `C(L) = Sym(V^∨ ⊕ sU)` the differential is `Σ_i W_i(∂) · sz_i`.

use std::collections::BTreeMap;

use super::algebra::LInftyAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{GenId, Monomial};

/// How `W_i` acts on `Sym(V^∨)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// `x^β` acts as the plain partial derivative `∂^β`.
    #[default]
    Derivatives,
    /// `x^β` acts as the divided-power derivative `∂^β / β!`.
    DividedPowers,
}

/// A polynomial as a map from exponent vectors to coefficients.
pub type Polynomial = BTreeMap<Vec<u32>, Scalar>;

/// Parses `(variables with multiplicity, coefficient)` terms into a polynomial.
pub fn polynomial(vars: &[String], terms: &[(Vec<String>, Scalar)]) -> Result<Polynomial> {
    let mut p = Polynomial::new();
    for (mono, c) in terms {
        let mut e = vec![0u32; vars.len()];
        for v in mono {
            let i = vars
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::UnknownGenerator(v.clone()))?;
            e[i] += 1;
        }
        let slot = p.entry(e).or_insert_with(scalar::zero);
        *slot += c;
    }
    p.retain(|_, c| !num::Zero::is_zero(c));
    Ok(p)
}

pub fn from_complete_intersection(
    vars: &[String],
    ws: &[Polynomial],
    norm: Normalization,
) -> Result<LInftyAlgebra> {
    let r = vars.len();
    let mut names: Vec<String> = vars.iter().map(|v| format!("{v}*")).collect();
    let mut degrees = vec![1; r];
    for i in 0..ws.len() {
        names.push(format!("z{}", i + 1));
        degrees.push(2);
    }
    let mut l = LInftyAlgebra::abelian(names, degrees)?;
    for (i, w) in ws.iter().enumerate() {
        let z = (r + i) as GenId;
        for (e, c) in w {
            if e.len() != r {
                return Err(Error::LengthMismatch {
                    expected: r,
                    got: e.len(),
                });
            }
            let total: u32 = e.iter().sum();
            if total <= 1 {
                return Err(Error::Invalid(format!(
                    "W_{} has a constant or linear term",
                    i + 1
                )));
            }
            let letters: Vec<GenId> = e
                .iter()
                .enumerate()
                .flat_map(|(a, &k)| std::iter::repeat_n(a as GenId, k as usize))
                .collect();
            let factor = match norm {
                Normalization::Derivatives => {
                    e.iter().map(|&k| scalar::factorial(k as usize)).product()
                }
                Normalization::DividedPowers => scalar::one(),
            };
            let mono = Monomial(letters.into_iter().collect());
            let mut value = l.component(&mono).cloned().unwrap_or_default();
            value.add_term(z, c * factor);
            l.set_component(mono, value)?;
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;
    use crate::exactlin::LinComb;
    use crate::linfty::ce::{check_linfty, coderivation};

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn poly(vs: &[String], terms: &[(&[&str], i64)]) -> Polynomial {
        let t: Vec<(Vec<String>, Scalar)> = terms
            .iter()
            .map(|(m, c)| (m.iter().map(|s| s.to_string()).collect(), int(*c)))
            .collect();
        polynomial(vs, &t).unwrap()
    }

    #[test]
    fn square_gives_only_l2() {
        let v = vars(&["x"]);
        let l = from_complete_intersection(
            &v,
            &[poly(&v, &[(&["x", "x"], 1)])],
            Normalization::Derivatives,
        )
        .unwrap();
        assert_eq!(l.max_arity(), 2);
        assert_eq!(l.bracket(&[0, 0]), LinComb::term(1, int(-2)));
        assert!(check_linfty(&l, 5).is_ok());
        // δ(ξ^3) = 6 ξ · sz
        let d = coderivation(&l, &Monomial(smallvec::smallvec![0, 0, 0]));
        assert_eq!(
            d,
            LinComb::term(Monomial(smallvec::smallvec![0, 1]), int(6))
        );
    }

    #[test]
    fn cube_gives_only_l3() {
        let v = vars(&["x"]);
        for norm in [Normalization::Derivatives, Normalization::DividedPowers] {
            let l = from_complete_intersection(&v, &[poly(&v, &[(&["x", "x", "x"], 1)])], norm)
                .unwrap();
            assert_eq!(l.components().len(), 1);
            assert_eq!(l.max_arity(), 3);
            assert!(check_linfty(&l, 6).is_ok());
        }
    }

    #[test]
    fn any_w_gives_square_zero() {
        let v = vars(&["x", "y"]);
        let w1 = poly(&v, &[(&["x", "y"], 1), (&["y", "y", "y"], 2)]);
        let w2 = poly(&v, &[(&["x", "x"], 3), (&["x", "y", "y"], -1)]);
        let l = from_complete_intersection(&v, &[w1, w2], Normalization::Derivatives).unwrap();
        assert!(check_linfty(&l, 5).is_ok());
        assert!(
            from_complete_intersection(&v, &[], Normalization::Derivatives)
                .unwrap()
                .is_abelian()
        );
    }

    #[test]
    fn linear_terms_rejected() {
        let v = vars(&["x"]);
        let w = poly(&v, &[(&["x"], 1), (&["x", "x"], 1)]);
        assert!(from_complete_intersection(&v, &[w], Normalization::Derivatives).is_err());
    }
}
