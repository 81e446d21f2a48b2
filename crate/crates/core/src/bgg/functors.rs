//! The functors `𝒢: Mod(L) → Mod_∞(U(L))` and `ℱ: Mod_∞(U(L)) → Mod(L)`.
//!
//! An A∞-module over `U(L)` is a twisting map `κ: BU(L) → End(sM)` with
//! `κ(∅) = d`, i.e. `D² = 0` on `BU(L) ⊗ sM`. `𝒢` composes `ρ̂` with the
//! universal twisting cochain `[sω] ↦ ω` and `G_L`; `ℱ` composes `κ` with
//! `F_L` and the canonical map `C(L) → BΩC(L)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::scalar;
use crate::exactlin::{monomials, monomials_up_to, Degrees, GenId, Monomial};
use crate::exec;
use crate::hpt::bar::{deconcatenate, sym_bar_words};
use crate::hpt::{Contraction, SymBarWord};
use crate::linfty::{LInftyAlgebra, LInftyModule};
use crate::uea::products::render_word;
use crate::uea::AInftyStructure;

use super::tau::iota_c;
use super::twisted::bar_with_unit;
use super::twisting::{
    module_from_twisting, module_twisting, rho_hat, Operator, SquareDefect, Twisting,
};

/// An A∞-module over `U(L)`, tabulated on a truncation of `BU(L)`.
pub type AModule = Twisting<SymBarWord>;

/// The empty word and all words of weight `≤ weight` and length `≤ len`.
pub fn bu_basis(l: &LInftyAlgebra, weight: usize, len: usize) -> Vec<SymBarWord> {
    let mut out = vec![SymBarWord::default()];
    out.extend(sym_bar_words(l.degrees(), weight, len));
    out
}

/// `κ = ρ̂ ∘ π_1 ∘ G_L` on words of weight `≤ weight_cap`.
pub fn functor_g_twisting(a: &AInftyStructure, rho: &Twisting<Monomial>) -> Result<AModule> {
    let l = a.algebra();
    let w = a.caps().weight_cap;
    let words = bu_basis(l, w, w);
    let ops = exec::map(&words, |word| -> Result<Operator> {
        if word.is_empty() {
            return Ok(rho.differential());
        }
        let mut op = Operator::zero(rho.dim());
        for (b, c) in a.transfer().g(word)?.iter() {
            if b.len() == 1 {
                op.add_scaled(&rho_hat(rho, &b.0[0])?, c);
            }
        }
        Ok(op)
    });
    let table = words
        .into_iter()
        .zip(ops)
        .map(|(k, o)| o.map(|o| (k, o)))
        .collect::<Result<_>>()?;
    Ok(Twisting {
        names: rho.names.clone(),
        sdegrees: rho.sdegrees.clone(),
        table,
    })
}

pub fn functor_g(a: &AInftyStructure, m: &LInftyModule) -> Result<AModule> {
    if m.owner != *a.algebra() {
        return Err(Error::Invalid("module over a different algebra".into()));
    }
    if let Err(ce) = crate::linfty::check_module(m, a.caps().weight_cap + 1) {
        return Err(Error::Invalid(format!(
            "not an L∞-module: δ² ≠ 0 on {:?}",
            ce.word
        )));
    }
    functor_g_twisting(a, &module_twisting(m, a.caps().weight_cap)?)
}

/// `ρ = κ ∘ F_L ∘ ι` on `C(L)` up to `weight`.
pub fn functor_f_twisting(
    a: &AInftyStructure,
    kappa: &AModule,
    weight: usize,
) -> Result<Twisting<Monomial>> {
    let l = a.algebra();
    let cs = monomials_up_to(l.sdegrees(), weight);
    let ops = exec::map(&cs, |c| -> Result<Operator> {
        kappa.get_vec(&a.transfer().f_vec(&iota_c(l, c))?)
    });
    let mut table = BTreeMap::new();
    table.insert(Monomial::unit(), kappa.differential());
    for (c, o) in cs.into_iter().zip(ops) {
        table.insert(c, o?);
    }
    Ok(Twisting {
        names: kappa.names.clone(),
        sdegrees: kappa.sdegrees.clone(),
        table,
    })
}

pub fn functor_f(a: &AInftyStructure, kappa: &AModule, weight: usize) -> Result<LInftyModule> {
    module_from_twisting(a.algebra(), &functor_f_twisting(a, kappa, weight)?)
}

/// `D² = 0` on `BU(L) ⊗ sM` for words within the caps.
pub fn check_a_infinity_module(
    a: &AInftyStructure,
    kappa: &AModule,
) -> Result<Option<SquareDefect>> {
    let l = a.algebra();
    let degs = l.degrees();
    let caps = a.caps();
    let basis: Vec<SymBarWord> = kappa
        .table
        .keys()
        .filter(|w| w.len() <= caps.arity_cap && w.weight() <= caps.weight_cap)
        .cloned()
        .collect();
    let bad = kappa.square_defect(
        &basis,
        |w| a.bar_differential(w),
        |w| {
            deconcatenate(w)
                .into_iter()
                .map(|(x, y)| (x, y, scalar::one()))
                .collect()
        },
        |w| w.degree(degs),
    )?;
    Ok(bad.map(|(w, m, v)| SquareDefect {
        word: render_word(l, &w.0),
        module_input: format!("s{}", kappa.names[m as usize]),
        terms: v.len(),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `ℱ𝒢 = id` on L∞-modules.
    FG,
    /// `𝒢ℱ = id` on the A∞-modules `𝒢(M)`.
    GF,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub direction: Direction,
    pub compared: usize,
    /// The first word whose action differs.
    pub mismatch: Option<Vec<String>>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn first_mismatch<K: Ord + Clone>(
    want: &BTreeMap<K, Operator>,
    got: &BTreeMap<K, Operator>,
    keys: &[K],
) -> Option<K> {
    keys.iter().find(|k| want.get(*k) != got.get(*k)).cloned()
}

/// Compares the round trip with the identity within the caps.
pub fn roundtrip_check(
    a: &AInftyStructure,
    m: &LInftyModule,
    direction: Direction,
) -> Result<RoundTrip> {
    let l = a.algebra();
    let caps = a.caps();
    let w = caps.weight_cap;
    let rho = module_twisting(m, w)?;
    let kappa = functor_g(a, m)?;
    let back = functor_f_twisting(a, &kappa, w)?;
    match direction {
        Direction::FG => {
            let keys: Vec<Monomial> = rho.table.keys().cloned().collect();
            let bad = first_mismatch(&rho.table, &back.table, &keys);
            Ok(RoundTrip {
                direction,
                compared: keys.len(),
                mismatch: bad.map(|c| {
                    l.word_names(c.letters())
                        .into_iter()
                        .map(|n| format!("s{n}"))
                        .collect()
                }),
            })
        }
        Direction::GF => {
            let again = functor_g_twisting(a, &back)?;
            let keys: Vec<SymBarWord> = kappa
                .table
                .keys()
                .filter(|k| k.len() <= caps.arity_cap)
                .cloned()
                .collect();
            let bad = first_mismatch(&kappa.table, &again.table, &keys);
            Ok(RoundTrip {
                direction,
                compared: keys.len(),
                mismatch: bad.map(|k| render_word(l, &k.0)),
            })
        }
    }
}

/// `U(L)` as a module over itself, `κ([sx_1|…|sx_k])(sa) = b_{k+1}(sx_1, …, sx_k, sa)`.
/// Needs `Sym(L)` finite, i.e. `L` odd-concentrated; words have weight
/// `≤ weight_cap − dim L` so every product stays within the caps.
pub fn regular_module(a: &AInftyStructure) -> Result<AModule> {
    let l = a.algebra();
    let degs = l.degrees();
    if (0..l.dim() as GenId).any(|g| !degs.odd(g)) {
        return Err(Error::Invalid(
            "U(L) is finite only for odd-concentrated L".into(),
        ));
    }
    let caps = a.caps();
    let window = caps.weight_cap.checked_sub(l.dim()).ok_or_else(|| {
        Error::Range(format!(
            "weight cap {} below dim L = {}",
            caps.weight_cap,
            l.dim()
        ))
    })?;
    let basis: Vec<Monomial> = (0..=l.dim()).flat_map(|k| monomials(degs, k)).collect();
    let index: BTreeMap<&Monomial, GenId> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i as GenId))
        .collect();
    let mut table = BTreeMap::new();
    for w in bu_basis(l, window, caps.arity_cap.saturating_sub(1)) {
        let mut op = Operator::zero(basis.len());
        for (i, u) in basis.iter().enumerate() {
            for (v, c) in bar_with_unit(a, &w.0, u)?.iter() {
                op.0[i].add_term(index[v], c.clone());
            }
        }
        table.insert(w, op);
    }
    Ok(Twisting {
        names: basis
            .iter()
            .map(|m| format!("u({})", crate::uea::products::render_monomial(l, m)))
            .collect(),
        sdegrees: Degrees(basis.iter().map(|m| m.degree(degs) - 1).collect()),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linfty::check_module;
    use crate::permutahedra::contraction::build_contraction;
    use crate::permutahedra::theta::Contractions;
    use crate::uea::Caps;

    fn structure(l: &LInftyAlgebra, arity: usize, weight: usize) -> AInftyStructure {
        AInftyStructure::new(l, Caps::new(arity, weight).unwrap()).unwrap()
    }

    #[test]
    fn trivial_module() {
        for l in [fixtures::abelian(2), fixtures::sl2()] {
            let a = structure(&l, 3, 3);
            let m = LInftyModule::trivial(&l).unwrap();
            let kappa = functor_g(&a, &m).unwrap();
            assert!(kappa.table.values().all(|o| o.is_zero()));
            assert_eq!(check_a_infinity_module(&a, &kappa).unwrap(), None);
            let back = functor_f(&a, &kappa, 3).unwrap();
            assert!(module_twisting(&back, 3)
                .unwrap()
                .table
                .values()
                .all(|o| o.is_zero()));
            for d in [Direction::FG, Direction::GF] {
                assert!(roundtrip_check(&a, &m, d).unwrap().passed());
            }
        }
    }

    #[test]
    fn weight_one_action_is_the_bracket() {
        let l = fixtures::sl2();
        let a = structure(&l, 2, 2);
        let m = LInftyModule::adjoint(&l).unwrap();
        let kappa = functor_g(&a, &m).unwrap();
        let rho = module_twisting(&m, 1).unwrap();
        for g in 0..3 {
            let v = Monomial::single(g);
            let got = kappa.get(&SymBarWord(vec![v.clone()])).unwrap();
            assert_eq!(got, rho.get(&v).unwrap());
            assert!(!got.is_zero());
        }
    }

    #[test]
    fn adjoint_sl2_is_an_a_infinity_module() {
        let l = fixtures::sl2();
        let a = structure(&l, 3, 3);
        let kappa = functor_g(&a, &LInftyModule::adjoint(&l).unwrap()).unwrap();
        assert_eq!(check_a_infinity_module(&a, &kappa).unwrap(), None);
        // a corrupted action is caught
        let mut bad = kappa.clone();
        let key = SymBarWord(vec![Monomial::single(0)]);
        bad.table.insert(key, Operator::identity(3));
        assert!(check_a_infinity_module(&a, &bad).unwrap().is_some());
    }

    #[test]
    fn round_trips_small_caps() {
        for l in [fixtures::sl2(), fixtures::heisenberg(), fixtures::l3_only()] {
            let a = structure(&l, 3, 3);
            let m = LInftyModule::adjoint(&l).unwrap();
            for d in [Direction::FG, Direction::GF] {
                let r = roundtrip_check(&a, &m, d).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn top_defect_breaks_fg() {
        let l = fixtures::sl2();
        let c = build_contraction(2)
            .unwrap()
            .with_top_defect(&scalar::one());
        let cs = Contractions::standard().with_override(c);
        let a = AInftyStructure::with_contractions(&l, Caps::new(3, 3).unwrap(), cs).unwrap();
        let m = LInftyModule::adjoint(&l).unwrap();
        assert!(!roundtrip_check(&a, &m, Direction::FG).unwrap().passed());
    }

    #[test]
    fn regular_module_of_odd_algebras() {
        for k in 1..=2 {
            let l = fixtures::odd(k);
            let a = structure(&l, 4, k + 3);
            let kappa = regular_module(&a).unwrap();
            assert_eq!(kappa.dim(), 1 << k);
            assert_eq!(check_a_infinity_module(&a, &kappa).unwrap(), None);
            let m = functor_f(&a, &kappa, 3).unwrap();
            assert_eq!(check_module(&m, 4), Ok(()));
            // only the weight-one part acts, by multiplication
            let rho = module_twisting(&m, 3).unwrap();
            for (c, op) in &rho.table {
                assert_eq!(op.is_zero(), c.weight() != 1, "{c:?}");
            }
            // 𝒢ℱ is the identity on it as well
            let a3 = structure(&l, 4, 3);
            let again =
                functor_g_twisting(&a3, &functor_f_twisting(&a, &kappa, 3).unwrap()).unwrap();
            for (w, op) in &again.table {
                assert_eq!(kappa.get(w).unwrap(), op, "{w:?}");
            }
        }
        assert!(regular_module(&structure(&fixtures::sl2(), 3, 4)).is_err());
    }
}
