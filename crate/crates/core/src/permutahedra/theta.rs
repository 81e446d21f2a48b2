//! The isomorphism `Θ: ⊕_n V^{⊗n} ⊗_{Σ_n} C_*(P_n) → ΩSym_c(sV)` and the
//! contraction `(f_V, g_V, h_V)` of `ΩSym_c(sV)` onto `Sym(V)` it induces.
//!
//! `V` is a complex, given as an abelian L∞-algebra whose only component is
//! the differential; its generators are the letters of words over `V`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use super::contraction::{build_contraction, EquivariantContraction};
use super::face::OrderedPartition;
use crate::error::{Error, Result};
use crate::exactlin::koszul::{koszul_sign, permutations};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{monomials, GenId, LinComb, Monomial};
use crate::hpt::cobar::{
    cobar_differential, cobar_differential_vec, cobar_words, iota_vec, CobarElem, CobarPart,
    CobarWord,
};
use crate::linfty::ce::coderivation_vec;
use crate::linfty::{coderivation, LInftyAlgebra, LInftyMorphism};

/// An element of `V^{⊗n}`.
pub type TensorElem = LinComb<Vec<GenId>>;
/// An element of `Sym(V)`.
pub type SymElem = LinComb<Monomial>;

fn check_complex(v: &LInftyAlgebra) -> Result<()> {
    if v.max_arity() > 1 {
        return Err(Error::Invalid(
            "V must be a complex: only l_1 is allowed".into(),
        ));
    }
    Ok(())
}

/// `Θ(w ⊗ f)` for a word `w` over `V` and a face `f` of `P_n`.
pub fn theta(v: &LInftyAlgebra, word: &[GenId], f: &OrderedPartition) -> Result<CobarElem> {
    let n = f.n as usize;
    if word.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: word.len(),
        });
    }
    let degs = v.degrees();
    let sdeg = v.sdegrees();
    let perm: Vec<usize> = f.from_standard().iter().map(|&x| x as usize - 1).collect();
    let wdeg: Vec<i32> = word.iter().map(|&g| degs.deg(g)).collect();
    let total: i64 = wdeg.iter().map(|&d| d as i64).sum();
    // the (−1)^{d−1} factor tracks the sign of ω_2
    let mut e = (n - f.d()) as i64 * total + f.d() as i64 - 1;
    if koszul_sign(&perm, &wdeg)? < 0 {
        e += 1;
    }
    let u: Vec<GenId> = perm.iter().map(|&i| word[i]).collect();
    let mut letters = Vec::with_capacity(f.d());
    let mut start = 0usize;
    let mut earlier = 0i64;
    let mut sign = 1i8;
    for m in f.sizes() {
        let block = &u[start..start + m];
        e += (1 - m as i64) * earlier;
        for (i, &g) in block.iter().enumerate() {
            e += (m - 1 - i) as i64 * degs.deg(g) as i64;
        }
        let Some((mono, s)) = Monomial::from_letters(block, sdeg) else {
            return Ok(LinComb::new());
        };
        sign *= s;
        letters.push(mono);
        earlier += block.iter().map(|&g| degs.deg(g) as i64).sum::<i64>();
        start += m;
    }
    let c = scalar::sign(e) * scalar::int(sign as i64);
    Ok(LinComb::term(CobarWord(letters), c))
}

/// `Θ` extended linearly over a chain.
pub fn theta_chain(
    v: &LInftyAlgebra,
    word: &[GenId],
    c: &LinComb<OrderedPartition>,
) -> Result<CobarElem> {
    let mut out = LinComb::new();
    for (f, x) in c.iter() {
        out.add_scaled(&theta(v, word, f)?, x);
    }
    Ok(out)
}

/// A preimage `ε · (w ⊗ ψ_m)` of a cobar word under `Θ`, with `w` the
/// concatenated letters and `m` the letter weights.
pub fn theta_inverse(
    v: &LInftyAlgebra,
    word: &CobarWord,
) -> Result<(Scalar, Vec<GenId>, OrderedPartition)> {
    let w: Vec<GenId> = word
        .0
        .iter()
        .flat_map(|m| m.letters().iter().copied())
        .collect();
    let f = OrderedPartition::standard(&word.sizes());
    let img = theta(v, &w, &f)?;
    let c = img.coeff(word);
    if c.is_zero() {
        return Err(Error::Internal(
            "cobar word is not hit by its standard preimage".into(),
        ));
    }
    Ok((scalar::one() / c, w, f))
}

/// `(w_1 ⊗ … ⊗ w_n) · σ = ± w_{σ(1)} ⊗ … ⊗ w_{σ(n)}`, `σ` with values `1..=n`.
pub fn right_act(v: &LInftyAlgebra, word: &[GenId], sigma: &[u8]) -> Result<(i8, Vec<GenId>)> {
    let perm: Vec<usize> = sigma.iter().map(|&x| x as usize - 1).collect();
    let degs: Vec<i32> = word.iter().map(|&g| v.degrees().deg(g)).collect();
    let s = koszul_sign(&perm, &degs)?;
    Ok((s, perm.iter().map(|&i| word[i]).collect()))
}

/// The tensor differential on `V^{⊗n}`.
pub fn tensor_differential(v: &LInftyAlgebra, word: &[GenId]) -> TensorElem {
    let mut out = LinComb::new();
    let mut prefix = 0i64;
    for (i, &g) in word.iter().enumerate() {
        for (h, c) in v.bracket(&[g]).iter() {
            let mut w = word.to_vec();
            w[i] = *h;
            out.add_term(w, c * scalar::sign(prefix));
        }
        prefix += v.degrees().deg(g) as i64;
    }
    out
}

/// The differential of `Sym(V)` induced by `d_V`.
pub fn sym_differential(v: &LInftyAlgebra, m: &Monomial) -> SymElem {
    tensor_differential(v, m.letters())
        .iter()
        .filter_map(|(w, c)| {
            Monomial::from_letters(w, v.degrees())
                .map(|(mono, s)| (mono, c * scalar::int(s as i64)))
        })
        .collect()
}

/// The contractions `(𝓕_n, 𝓖_n, 𝓗_n)` used for each rank, defaulting to the
/// memoized standard ones.
#[derive(Clone, Debug, Default)]
pub struct Contractions {
    overrides: BTreeMap<usize, Arc<EquivariantContraction>>,
}

impl Contractions {
    pub fn standard() -> Self {
        Self::default()
    }

    pub fn with_override(mut self, c: EquivariantContraction) -> Self {
        self.overrides.insert(c.n, Arc::new(c));
        self
    }

    pub fn get(&self, n: usize) -> Result<Arc<EquivariantContraction>> {
        match self.overrides.get(&n) {
            Some(c) => Ok(c.clone()),
            None => build_contraction(n),
        }
    }
}

/// `h_V = 0 ⊕ ⊕_n (1 ⊗ 𝓗_n)` on one cobar word, with the Koszul sign of
/// `𝓗_n` passing `w`.
pub fn homotopy_hv(v: &LInftyAlgebra, word: &CobarWord, cs: &Contractions) -> Result<CobarElem> {
    check_complex(v)?;
    if word.is_empty() {
        return Ok(LinComb::new());
    }
    let (eps, w, f) = theta_inverse(v, word)?;
    let con = cs.get(f.n as usize)?;
    let h = con.on_composition(&f.sizes());
    let koszul = scalar::sign(v.degrees().word_degree(&w) as i64);
    Ok(theta_chain(v, &w, h)?.scaled(&(eps * koszul)))
}

pub fn homotopy_hv_vec(v: &LInftyAlgebra, x: &CobarElem, cs: &Contractions) -> Result<CobarElem> {
    x.try_apply(|w| homotopy_hv(v, w, cs))
}

/// `f_V`: kills letters of weight `≥ 2`, multiplies the rest in `Sym(V)`.
pub fn projection_fv(v: &LInftyAlgebra, word: &CobarWord) -> SymElem {
    if word.0.iter().any(|m| m.weight() != 1) {
        return LinComb::new();
    }
    let letters: Vec<GenId> = word.0.iter().map(|m| m.letters()[0]).collect();
    match Monomial::from_letters(&letters, v.degrees()) {
        Some((m, s)) => LinComb::term(m, scalar::int(s as i64)),
        None => LinComb::new(),
    }
}

pub fn projection_fv_vec(v: &LInftyAlgebra, x: &CobarElem) -> SymElem {
    x.apply(|w| projection_fv(v, w))
}

/// `g_V`: a monomial goes to the average of its signed orderings, each a
/// word of one-letter elements.
pub fn inclusion_gv(v: &LInftyAlgebra, m: &Monomial) -> CobarElem {
    let n = m.weight();
    let letters = m.letters();
    let degs: Vec<i32> = letters.iter().map(|&g| v.degrees().deg(g)).collect();
    let w = scalar::one() / scalar::factorial(n);
    let mut out = LinComb::new();
    for p in permutations(n) {
        let s = koszul_sign(&p, &degs).expect("valid permutation");
        let word = CobarWord(p.iter().map(|&i| Monomial::single(letters[i])).collect());
        out.add_term(word, &w * scalar::int(s as i64));
    }
    out
}

pub fn inclusion_gv_vec(v: &LInftyAlgebra, x: &SymElem) -> CobarElem {
    x.apply(|m| inclusion_gv(v, m))
}

/// `A(φ) = ΩC(φ)`, letterwise.
pub fn cobar_functor(phi: &LInftyMorphism, word: &CobarWord) -> CobarElem {
    let mut out = LinComb::basis(CobarWord::unit());
    for m in &word.0 {
        let img: CobarElem = phi
            .coalgebra_map(m)
            .iter()
            .map(|(k, c)| (CobarWord::letter(k.clone()), c.clone()))
            .collect();
        let mut next = LinComb::new();
        for (a, x) in out.iter() {
            for (b, y) in img.iter() {
                next.add_term(a.concat(b), x * y);
            }
        }
        out = next;
    }
    out
}

pub fn cobar_functor_vec(phi: &LInftyMorphism, x: &CobarElem) -> CobarElem {
    x.apply(|w| cobar_functor(phi, w))
}

/// Checks `f_V g_V = 1`, `1 − g_V f_V = d h_V + h_V d`, the side conditions,
/// that `g_V` is a chain map and that `h_V` commutes with the involution `ι`,
/// on all cobar words of rank `≤ max_rank`.
pub fn check_hv_contraction(
    v: &LInftyAlgebra,
    cs: &Contractions,
    max_rank: usize,
) -> Result<std::result::Result<(), String>> {
    check_complex(v)?;
    let d = |x: &CobarElem| cobar_differential_vec(v, x, CobarPart::Full);
    let h = |x: &CobarElem| homotopy_hv_vec(v, x, cs);
    let names = |w: &CobarWord| -> Vec<Vec<String>> {
        w.0.iter().map(|m| v.word_names(m.letters())).collect()
    };
    for word in cobar_words(v.sdegrees(), max_rank) {
        let x = LinComb::basis(word.clone());
        let mut lhs = x.clone();
        lhs -= &inclusion_gv_vec(v, &projection_fv(v, &word));
        let hx = h(&x)?;
        let mut rhs = d(&hx);
        rhs += &h(&cobar_differential(v, &word, CobarPart::Full))?;
        if lhs != rhs {
            return Ok(Err(format!(
                "homotopy identity fails on {:?}",
                names(&word)
            )));
        }
        if !projection_fv_vec(v, &hx).is_zero() || !h(&hx)?.is_zero() {
            return Ok(Err(format!("side condition fails on {:?}", names(&word))));
        }
        if h(&iota_vec(&x, v.sdegrees()))? != iota_vec(&hx, v.sdegrees()) {
            return Ok(Err(format!(
                "h does not commute with iota on {:?}",
                names(&word)
            )));
        }
    }
    for n in 0..=max_rank {
        for m in monomials(v.degrees(), n) {
            let g = inclusion_gv(v, &m);
            if projection_fv_vec(v, &g) != LinComb::basis(m.clone()) || !h(&g)?.is_zero() {
                return Ok(Err(format!(
                    "f g = 1 or h g = 0 fails on {:?}",
                    v.word_names(m.letters())
                )));
            }
            if d(&g) != inclusion_gv_vec(v, &sym_differential(v, &m)) {
                return Ok(Err(format!(
                    "g is not a chain map on {:?}",
                    v.word_names(m.letters())
                )));
            }
        }
    }
    Ok(Ok(()))
}

/// `ΩC(φ) h_V = h_W ΩC(φ)` for a chain map `φ: V → W`, on cobar words of
/// rank `≤ max_rank`.
pub fn check_hv_functoriality(
    phi: &LInftyMorphism,
    cs: &Contractions,
    max_rank: usize,
) -> Result<std::result::Result<(), String>> {
    check_complex(&phi.source)?;
    check_complex(&phi.target)?;
    if !phi.is_strict() {
        return Err(Error::Invalid(
            "a chain map has only a linear component".into(),
        ));
    }
    for g in 0..phi.source.dim() as GenId {
        let x = Monomial::single(g);
        let lhs = phi.coalgebra_map_vec(&coderivation(&phi.source, &x));
        let rhs = coderivation_vec(&phi.target, &phi.coalgebra_map(&x));
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "not a chain map on `{}`",
                phi.source.name(g)
            )));
        }
    }
    for word in cobar_words(phi.source.sdegrees(), max_rank) {
        let x = LinComb::basis(word.clone());
        let a = cobar_functor_vec(phi, &homotopy_hv_vec(&phi.source, &x, cs)?);
        let b = homotopy_hv_vec(&phi.target, &cobar_functor(phi, &word), cs)?;
        if a != b {
            let names: Vec<Vec<String>> = word
                .0
                .iter()
                .map(|m| phi.source.word_names(m.letters()))
                .collect();
            return Ok(Err(format!("h_W commutes with ΩC(φ) fails on {names:?}")));
        }
    }
    Ok(Ok(()))
}
