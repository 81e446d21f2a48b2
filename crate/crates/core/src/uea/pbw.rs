//! The classical enveloping algebra of a DG Lie algebra on its PBW basis,
//! with products computed by straightening.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::exactlin::koszul::{koszul_sign, permutations};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{GenId, LinComb, Monomial};
use crate::linfty::LInftyAlgebra;

/// A word in the generators; normal words are weakly increasing with no
/// repeated odd letter.
pub type Word = Vec<GenId>;

pub struct Classical {
    l: LInftyAlgebra,
    memo: RwLock<HashMap<Word, LinComb<Word>>>,
}

impl Classical {
    pub fn new(l: &LInftyAlgebra) -> Result<Self> {
        if !l.is_dg_lie() {
            return Err(Error::Invalid(
                "the classical enveloping needs a DG Lie algebra".into(),
            ));
        }
        Ok(Classical {
            l: l.clone(),
            memo: RwLock::new(HashMap::new()),
        })
    }

    fn deg(&self, g: GenId) -> i32 {
        self.l.degrees().deg(g)
    }

    /// Rewrites `…ab…` with `a > b` as `±…ba… + …[a,b]…` and `…aa…` with
    /// `a` odd as `½ …[a,a]…` until only normal words remain.
    pub fn normal_form(&self, w: &[GenId]) -> LinComb<Word> {
        if let Some(v) = self.memo.read().expect("memo lock").get(w) {
            return v.clone();
        }
        let pos = w
            .windows(2)
            .position(|p| p[0] > p[1] || (p[0] == p[1] && self.deg(p[0]) % 2 != 0));
        let out = match pos {
            None => LinComb::basis(w.to_vec()),
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut out = LinComb::new();
                let splice = |mid: &[GenId]| -> Word {
                    let mut v = w[..i].to_vec();
                    v.extend_from_slice(mid);
                    v.extend_from_slice(&w[i + 2..]);
                    v
                };
                let half = if a == b {
                    scalar::ratio(1, 2)
                } else {
                    scalar::one()
                };
                if a != b {
                    let s = scalar::sign(self.deg(a) as i64 * self.deg(b) as i64);
                    out.add_scaled(&self.normal_form(&splice(&[b, a])), &s);
                }
                for (g, c) in self.l.bracket(&[a, b]).iter() {
                    out.add_scaled(&self.normal_form(&splice(&[*g])), &(c * &half));
                }
                out
            }
        };
        self.memo
            .write()
            .expect("memo lock")
            .insert(w.to_vec(), out.clone());
        out
    }

    pub fn normalize(&self, x: &LinComb<Word>) -> LinComb<Word> {
        x.apply(|w| self.normal_form(w))
    }

    pub fn multiply(&self, x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
        let mut out = LinComb::new();
        for (a, c) in x.iter() {
            for (b, e) in y.iter() {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_scaled(&self.normal_form(&w), &(c * e));
            }
        }
        out
    }

    /// `l_1` extended as a derivation.
    pub fn differential(&self, x: &LinComb<Word>) -> LinComb<Word> {
        let mut out = LinComb::new();
        for (w, c) in x.iter() {
            let mut before = 0i64;
            for (i, &g) in w.iter().enumerate() {
                let s = scalar::sign(before);
                for (h, e) in self.l.bracket(&[g]).iter() {
                    let mut v = w.clone();
                    v[i] = *h;
                    out.add_scaled(&self.normal_form(&v), &(c * e * &s));
                }
                before += self.deg(g) as i64;
            }
        }
        out
    }

    /// Symmetrization `Sym(L) → U^cl(L)`, in normal form.
    pub fn symmetrize(&self, m: &Monomial) -> LinComb<Word> {
        let letters = m.letters();
        let degs: Vec<i32> = letters.iter().map(|&g| self.deg(g)).collect();
        let w: Scalar = scalar::one() / scalar::factorial(letters.len());
        let mut out = LinComb::new();
        for p in permutations(letters.len()) {
            let s = koszul_sign(&p, &degs).expect("valid permutation");
            let word: Word = p.iter().map(|&i| letters[i]).collect();
            out.add_scaled(&self.normal_form(&word), &(&w * scalar::int(s as i64)));
        }
        out
    }

    pub fn symmetrize_vec(&self, x: &LinComb<Monomial>) -> LinComb<Word> {
        x.apply(|m| self.symmetrize(m))
    }
}
