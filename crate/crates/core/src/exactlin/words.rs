//! Generators, tensor and graded-symmetric words, suspension bookkeeping.

use smallvec::SmallVec;

use super::koszul::{koszul_sign, permutations, sort_with_sign};
use super::lincomb::LinComb;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

pub type GenId = u16;

/// Cohomological degrees of a basis, indexed by generator id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Degrees(pub Vec<i32>);

impl Degrees {
    #[inline]
    pub fn deg(&self, g: GenId) -> i32 {
        self.0[g as usize]
    }

    #[inline]
    pub fn odd(&self, g: GenId) -> bool {
        self.0[g as usize] & 1 != 0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Degrees of `sV`: suspension lowers every degree by one.
    pub fn suspended(&self) -> Degrees {
        Degrees(self.0.iter().map(|d| d - 1).collect())
    }

    pub fn word_degree(&self, letters: &[GenId]) -> i32 {
        letters.iter().map(|&g| self.deg(g)).sum()
    }
}

/// A canonical graded-symmetric monomial: letters sorted by id.
///
/// The empty monomial is the unit of `Sym`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub SmallVec<[GenId; 6]>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn single(g: GenId) -> Self {
        Monomial(smallvec::smallvec![g])
    }

    /// Canonicalizes an arbitrary letter sequence. Returns `None` for the zero
    /// word (a repeated odd letter), else the sorted monomial and the Koszul
    /// sign of the sort.
    pub fn from_letters(letters: &[GenId], degs: &Degrees) -> Option<(Monomial, i8)> {
        let mut v: SmallVec<[GenId; 6]> = SmallVec::from_slice(letters);
        let sign = sort_with_sign(&mut v, |&g| degs.odd(g));
        if v.windows(2).any(|w| w[0] == w[1] && degs.odd(w[0])) {
            return None;
        }
        Some((Monomial(v), sign))
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn degree(&self, degs: &Degrees) -> i32 {
        degs.word_degree(&self.0)
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Monomial, degs: &Degrees) -> Option<(Monomial, i8)> {
        let mut letters: SmallVec<[GenId; 6]> = self.0.clone();
        letters.extend_from_slice(&other.0);
        Monomial::from_letters(&letters, degs)
    }

    /// Unshuffle coproduct over positions: every subset `I` of positions gives
    /// `ε · x_I ⊗ x_J`. Includes the two counit terms.
    pub fn unshuffles(&self, degs: &Degrees) -> Vec<(Monomial, Monomial, i8)> {
        let k = self.0.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1u32 << k) {
            let mut left = SmallVec::new();
            let mut right = SmallVec::new();
            let mut sign = 1i8;
            let mut odd_right = 0u32;
            for (i, &g) in self.0.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    if degs.odd(g) && odd_right % 2 == 1 {
                        sign = -sign;
                    }
                    left.push(g);
                } else {
                    if degs.odd(g) {
                        odd_right += 1;
                    }
                    right.push(g);
                }
            }
            out.push((Monomial(left), Monomial(right), sign));
        }
        out
    }
}

/// All monomials of the given weight, in lexicographic order.
pub fn monomials(degs: &Degrees, weight: usize) -> Vec<Monomial> {
    fn rec(
        degs: &Degrees,
        start: GenId,
        left: usize,
        cur: &mut SmallVec<[GenId; 6]>,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        for g in start..degs.len() as GenId {
            cur.push(g);
            let next = if degs.odd(g) { g + 1 } else { g };
            rec(degs, next, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degs, 0, weight, &mut SmallVec::new(), &mut out);
    out
}

/// Monomials of weight `1..=max_weight`, ordered by weight then lexicographically.
pub fn monomials_up_to(degs: &Degrees, max_weight: usize) -> Vec<Monomial> {
    (1..=max_weight).flat_map(|w| monomials(degs, w)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordKind {
    Tensor,
    Symmetric,
}

/// A basis word of `V^{⊗n}` or of `Sym^n(V)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisWord {
    pub kind: WordKind,
    pub letters: Vec<GenId>,
}

impl BasisWord {
    pub fn tensor(letters: Vec<GenId>) -> Self {
        BasisWord {
            kind: WordKind::Tensor,
            letters,
        }
    }

    /// Builds a symmetric word, returning it with the sign normalization that
    /// relates the given letter order to the stored sorted order.
    pub fn symmetric(letters: &[GenId], degs: &Degrees) -> Result<(BasisWord, i8)> {
        let (m, sign) = Monomial::from_letters(letters, degs)
            .ok_or_else(|| Error::Invalid(format!("repeated odd letter in {letters:?}")))?;
        Ok((
            BasisWord {
                kind: WordKind::Symmetric,
                letters: m.0.to_vec(),
            },
            sign,
        ))
    }

    pub fn degree(&self, degs: &Degrees) -> i32 {
        degs.word_degree(&self.letters)
    }
}

/// Graded symmetrization `(1/k!) Σ_σ ε(σ) w·σ` of a tensor word.
pub fn symmetrize(word: &BasisWord, degs: &Degrees) -> Result<LinComb<BasisWord>> {
    if word.kind != WordKind::Tensor {
        return Err(Error::Invalid("symmetrize expects a tensor word".into()));
    }
    let k = word.letters.len();
    let letter_degs: Vec<i32> = word.letters.iter().map(|&g| degs.deg(g)).collect();
    let norm = scalar::factorial(k);
    let mut out = LinComb::new();
    for perm in permutations(k) {
        let s = koszul_sign(&perm, &letter_degs)?;
        let letters = perm.iter().map(|&p| word.letters[p]).collect();
        out.add_term(BasisWord::tensor(letters), scalar::int(s as i64) / &norm);
    }
    Ok(out)
}

/// An element of `s^shift(V^{⊗n})`, stored through its desuspended body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedVector {
    pub shift: i32,
    pub body: LinComb<BasisWord>,
}

impl ShiftedVector {
    pub fn new(body: LinComb<BasisWord>) -> Self {
        ShiftedVector { shift: 0, body }
    }

    /// Degree of a homogeneous element (`None` if zero or inhomogeneous).
    pub fn degree(&self, degs: &Degrees) -> Option<i32> {
        let mut it = self.body.keys().map(|w| w.degree(degs) - self.shift);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Applies a differential of the body through the suspension:
    /// `d(s^k x) = (-1)^k s^k(dx)`.
    pub fn apply_differential(
        &self,
        d: impl Fn(&LinComb<BasisWord>) -> LinComb<BasisWord>,
    ) -> ShiftedVector {
        ShiftedVector {
            shift: self.shift,
            body: d(&self.body).scaled(&scalar::sign(self.shift as i64)),
        }
    }
}

/// Applies `s^shift` (shift = 1 is `s`, shift = -1 is `s⁻¹`).
pub fn suspend(v: &ShiftedVector, shift: i32) -> ShiftedVector {
    ShiftedVector {
        shift: v.shift + shift,
        body: v.body.clone(),
    }
}

pub fn to_scalar(sign: i8) -> Scalar {
    scalar::int(sign as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degs(v: &[i32]) -> Degrees {
        Degrees(v.to_vec())
    }

    #[test]
    fn monomial_counts() {
        // two even, one odd: weight 2 has 3 + 2 = 5 monomials
        let d = degs(&[0, 2, 1]);
        assert_eq!(monomials(&d, 2).len(), 5);
        assert_eq!(monomials(&degs(&[1, 1]), 3).len(), 0);
        assert_eq!(monomials(&degs(&[0]), 4).len(), 1);
        assert_eq!(monomials_up_to(&d, 2).len(), 8);
    }

    #[test]
    fn symmetrize_examples() {
        let d = degs(&[0, 0, 1]);
        let single = symmetrize(&BasisWord::tensor(vec![0]), &d).unwrap();
        assert_eq!(single, LinComb::basis(BasisWord::tensor(vec![0])));
        let ab = symmetrize(&BasisWord::tensor(vec![0, 1]), &d).unwrap();
        assert_eq!(
            ab.coeff(&BasisWord::tensor(vec![0, 1])),
            scalar::ratio(1, 2)
        );
        assert_eq!(
            ab.coeff(&BasisWord::tensor(vec![1, 0])),
            scalar::ratio(1, 2)
        );
        assert!(symmetrize(&BasisWord::tensor(vec![2, 2]), &d)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn symmetrize_is_idempotent() {
        let d = degs(&[0, 1, 1, 2]);
        for w in [vec![0, 1, 2], vec![1, 2, 3], vec![3, 1, 1], vec![0, 0, 2]] {
            let once = symmetrize(&BasisWord::tensor(w), &d).unwrap();
            let twice = once.try_apply(|k| symmetrize(k, &d)).unwrap();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn symmetric_word_rejects_repeated_odd() {
        let d = degs(&[1, 0]);
        assert!(BasisWord::symmetric(&[0, 0], &d).is_err());
        let (w, s) = BasisWord::symmetric(&[1, 1, 0], &d).unwrap();
        assert_eq!(w.letters, vec![0, 1, 1]);
        assert_eq!(s, 1);
    }

    #[test]
    fn suspension_bookkeeping() {
        let d = degs(&[1]);
        let v = ShiftedVector::new(LinComb::basis(BasisWord::tensor(vec![0])));
        let sv = suspend(&v, 1);
        assert_eq!(sv.degree(&d), Some(0));
        assert_eq!(suspend(&sv, -1), v);
        // a differential that doubles every word
        let dv = |x: &LinComb<BasisWord>| x.scaled(&scalar::int(2));
        let lhs = sv.apply_differential(dv);
        let rhs = suspend(&v.apply_differential(dv), 1);
        assert_eq!(lhs.body, -rhs.body);
    }

    #[test]
    fn unshuffle_counts_and_signs() {
        let d = degs(&[1, 1]);
        let m = Monomial(smallvec::smallvec![0, 1]);
        let terms = m.unshuffles(&d);
        assert_eq!(terms.len(), 4);
        // x1 x2 -> x2 ⊗ x1 picks up the odd-odd swap
        let t = terms
            .iter()
            .find(|(l, _, _)| l.0.as_slice() == [1])
            .unwrap();
        assert_eq!(t.2, -1);
    }
}
