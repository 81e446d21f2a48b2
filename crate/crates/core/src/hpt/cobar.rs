//! The cobar construction `ΩC(L) = T(s^{-1} C̄(L))`.
//!
//! A cobar word is a list of letters `s^{-1}m`, each `m` a nonempty monomial
//! of `Sym(sL)`. The differential is `δ_Ω = ω_1 + ω_2` with
//! `ω_1(s^{-1}c) = -s^{-1}δ_C c` and `ω_2(s^{-1}c) = -Σ (-1)^{|c'|} s^{-1}c' ⊗ s^{-1}c''`.

use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::{monomials_up_to, Degrees, LinComb, Monomial};
use crate::linfty::ce::coderivation_filtered;
use crate::linfty::LInftyAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CobarWord(pub Vec<Monomial>);

pub type CobarElem = LinComb<CobarWord>;

impl CobarWord {
    pub fn unit() -> Self {
        CobarWord(Vec::new())
    }

    pub fn letter(m: Monomial) -> Self {
        CobarWord(vec![m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `L` factors.
    pub fn rank(&self) -> usize {
        self.0.iter().map(|m| m.weight()).sum()
    }

    /// `Σ (weight − 1)` over letters.
    pub fn geometric_degree(&self) -> usize {
        self.0.iter().map(|m| m.weight() - 1).sum()
    }

    pub fn degree(&self, sdeg: &Degrees) -> i32 {
        self.0.iter().map(|m| letter_degree(m, sdeg)).sum()
    }

    pub fn concat(&self, other: &CobarWord) -> CobarWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CobarWord(v)
    }

    /// The composition `(m_1, …, m_d)` of letter weights.
    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(|m| m.weight()).collect()
    }
}

/// `|s^{-1}m| = |m| + 1`.
pub fn letter_degree(m: &Monomial, sdeg: &Degrees) -> i32 {
    m.degree(sdeg) + 1
}

/// Concatenation product, bilinearly.
pub fn multiply(a: &CobarElem, b: &CobarElem) -> CobarElem {
    let mut out = LinComb::new();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            out.add_term(x.concat(y), c * d);
        }
    }
    out
}

/// Extends an operator of odd degree on letters (returning words) as a
/// derivation of the concatenation product.
pub fn derivation(
    word: &CobarWord,
    sdeg: &Degrees,
    on_letter: impl Fn(&Monomial) -> CobarElem,
) -> CobarElem {
    let mut out = LinComb::new();
    let mut prefix_deg = 0i64;
    for (i, m) in word.0.iter().enumerate() {
        let img = on_letter(m);
        if !img.is_zero() {
            let sign = scalar::sign(prefix_deg);
            for (w, c) in img.iter() {
                let mut letters = Vec::with_capacity(word.len() + w.len());
                letters.extend_from_slice(&word.0[..i]);
                letters.extend_from_slice(&w.0);
                letters.extend_from_slice(&word.0[i + 1..]);
                out.add_term(CobarWord(letters), c * &sign);
            }
        }
        prefix_deg += letter_degree(m, sdeg) as i64;
    }
    out
}

/// `ω_1` restricted to the components `c_k` with `keep(k)`, on one letter.
pub fn omega1_letter(l: &LInftyAlgebra, m: &Monomial, keep: impl Fn(usize) -> bool) -> CobarElem {
    coderivation_filtered(l, m, keep)
        .iter()
        .map(|(k, c)| (CobarWord::letter(k.clone()), -c.clone()))
        .collect()
}

/// `ω_2 = (s^{⊗2})^{-1} Δ̄ s` on one letter; note `(s^{⊗2})^{-1} = −s^{-1} ⊗ s^{-1}`.
pub fn omega2_letter(sdeg: &Degrees, m: &Monomial) -> CobarElem {
    let mut out = LinComb::new();
    for (a, b, sign) in m.unshuffles(sdeg) {
        if a.weight() == 0 || b.weight() == 0 {
            continue;
        }
        let e = a.degree(sdeg) as i64 + 1;
        out.add_term(
            CobarWord(vec![a, b]),
            scalar::sign(e) * scalar::int(sign as i64),
        );
    }
    out
}

/// Which parts of the cobar differential to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CobarPart {
    /// `ω_1` from `c_1` plus `ω_2`: the unperturbed differential.
    Linear,
    /// `ω_1` from `c_k`, `k ≥ 2`.
    Brackets,
    /// Everything.
    Full,
}

pub fn cobar_differential(l: &LInftyAlgebra, word: &CobarWord, part: CobarPart) -> CobarElem {
    let sdeg = l.sdegrees();
    derivation(word, sdeg, |m| match part {
        CobarPart::Linear => {
            let mut v = omega1_letter(l, m, |k| k == 1);
            v += omega2_letter(sdeg, m);
            v
        }
        CobarPart::Brackets => omega1_letter(l, m, |k| k >= 2),
        CobarPart::Full => {
            let mut v = omega1_letter(l, m, |_| true);
            v += omega2_letter(sdeg, m);
            v
        }
    })
}

pub fn cobar_differential_vec(l: &LInftyAlgebra, v: &CobarElem, part: CobarPart) -> CobarElem {
    v.apply(|w| cobar_differential(l, w, part))
}

/// The anti-involution acting by `-1` on letters: reversal with Koszul sign.
pub fn iota(word: &CobarWord, sdeg: &Degrees) -> (Scalar, CobarWord) {
    let degs: Vec<i32> = word.0.iter().map(|m| letter_degree(m, sdeg)).collect();
    let mut odd_pairs = 0i64;
    for i in 0..degs.len() {
        for j in i + 1..degs.len() {
            odd_pairs += (degs[i] & 1 & degs[j]) as i64;
        }
    }
    let mut rev = word.0.clone();
    rev.reverse();
    (scalar::sign(word.len() as i64 + odd_pairs), CobarWord(rev))
}

pub fn iota_vec(v: &CobarElem, sdeg: &Degrees) -> CobarElem {
    v.apply(|w| {
        let (s, r) = iota(w, sdeg);
        LinComb::term(r, s)
    })
}

/// Shuffle coproduct `Δ_Ω`, letters primitive.
pub fn shuffle_coproduct(word: &CobarWord, sdeg: &Degrees) -> LinComb<(CobarWord, CobarWord)> {
    let r = word.len();
    let degs: Vec<i32> = word.0.iter().map(|m| letter_degree(m, sdeg)).collect();
    let mut out = LinComb::new();
    for mask in 0u32..(1u32 << r) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut e = 0i64;
        let mut odd_right = 0i64;
        for i in 0..r {
            if mask & (1 << i) != 0 {
                if degs[i] & 1 == 1 {
                    e += odd_right;
                }
                left.push(word.0[i].clone());
            } else {
                if degs[i] & 1 == 1 {
                    odd_right += 1;
                }
                right.push(word.0[i].clone());
            }
        }
        out.add_term((CobarWord(left), CobarWord(right)), scalar::sign(e));
    }
    out
}

/// All cobar words of total rank `≤ max_rank`.
pub fn cobar_words(sdeg: &Degrees, max_rank: usize) -> Vec<CobarWord> {
    let letters = monomials_up_to(sdeg, max_rank);
    let mut out = vec![CobarWord::unit()];
    let mut frontier = vec![CobarWord::unit()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for m in &letters {
                if w.rank() + m.weight() <= max_rank {
                    let mut v = w.0.clone();
                    v.push(m.clone());
                    next.push(CobarWord(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
