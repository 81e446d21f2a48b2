//! Tensor coalgebras `T_c(sX)` with coderivation differentials: the bar
//! construction `BΩC(L)` over cobar words and `T_c(s Sym^{≥1}(L))` over
//! monomials.

use crate::exactlin::scalar;
use crate::exactlin::{Degrees, LinComb, Monomial};

use super::cobar::{cobar_differential, CobarPart, CobarWord};
use crate::linfty::LInftyAlgebra;

/// A word `[sa_1 | … | sa_n]` of `BΩC(L)`, each `a_i` a nonempty cobar word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BarWord(pub Vec<CobarWord>);

pub type BarElem = LinComb<BarWord>;

/// A word `[sx_1 | … | sx_n]` of `T_c(s Sym^{≥1}(L))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymBarWord(pub Vec<Monomial>);

pub type SymBarElem = LinComb<SymBarWord>;

/// Shared bookkeeping for tensor words.
pub trait TensorWord: Ord + Clone {
    type Letter: Ord + Clone;
    fn letters(&self) -> &[Self::Letter];
    fn from_letters(v: Vec<Self::Letter>) -> Self;
}

impl TensorWord for BarWord {
    type Letter = CobarWord;
    fn letters(&self) -> &[CobarWord] {
        &self.0
    }
    fn from_letters(v: Vec<CobarWord>) -> Self {
        BarWord(v)
    }
}

impl TensorWord for SymBarWord {
    type Letter = Monomial;
    fn letters(&self) -> &[Monomial] {
        &self.0
    }
    fn from_letters(v: Vec<Monomial>) -> Self {
        SymBarWord(v)
    }
}

impl BarWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|a| a.rank()).sum()
    }

    pub fn geometric_degree(&self) -> usize {
        self.0.iter().map(|a| a.geometric_degree()).sum()
    }

    /// `Σ (|a_i| − 1)`.
    pub fn degree(&self, sdeg: &Degrees) -> i32 {
        self.0.iter().map(|a| a.degree(sdeg) - 1).sum()
    }
}

impl SymBarWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|m| m.weight()).sum()
    }

    /// `Σ (|x_i| − 1)`, `|x|` the degree in `Sym(L)`.
    pub fn degree(&self, degs: &Degrees) -> i32 {
        self.0.iter().map(|m| m.degree(degs) - 1).sum()
    }
}

/// Extends components `b_k` on `k` consecutive letters as a coderivation:
/// `Σ ± x_1 … x_{i-1} b_k(x_i … x_{i+k-1}) x_{i+k} …`, the sign being
/// `(-1)^{|sx_1| + … + |sx_{i-1}|}`.
pub fn extend_coderivation<W: TensorWord>(
    word: &W,
    sdeg: impl Fn(&W::Letter) -> i32,
    max_arity: usize,
    b: impl Fn(&[W::Letter]) -> LinComb<W::Letter>,
) -> LinComb<W> {
    let xs = word.letters();
    let mut out = LinComb::new();
    let mut prefix = 0i64;
    for i in 0..xs.len() {
        for k in 1..=max_arity.min(xs.len() - i) {
            let img = b(&xs[i..i + k]);
            if img.is_zero() {
                continue;
            }
            let s = scalar::sign(prefix);
            for (y, c) in img.iter() {
                let mut v = Vec::with_capacity(xs.len() - k + 1);
                v.extend_from_slice(&xs[..i]);
                v.push(y.clone());
                v.extend_from_slice(&xs[i + k..]);
                out.add_term(W::from_letters(v), c * &s);
            }
        }
        prefix += sdeg(&xs[i]) as i64;
    }
    out
}

/// Deconcatenation `Δ_B`, including the two terms with an empty side.
pub fn deconcatenate<W: TensorWord>(word: &W) -> Vec<(W, W)> {
    let xs = word.letters();
    (0..=xs.len())
        .map(|i| {
            (
                W::from_letters(xs[..i].to_vec()),
                W::from_letters(xs[i..].to_vec()),
            )
        })
        .collect()
}

pub fn deconcatenate_vec<W: TensorWord>(x: &LinComb<W>) -> LinComb<(W, W)> {
    x.apply(|w| {
        deconcatenate(w)
            .into_iter()
            .map(|p| (p, scalar::one()))
            .collect()
    })
}

/// `(A ⊗ B)(x ⊗ y) = (-1)^{|B||x|} A x ⊗ B y` on a tensor of words.
pub fn tensor_apply<W: TensorWord, V: TensorWord>(
    x: &LinComb<(W, W)>,
    deg: impl Fn(&W) -> i32,
    b_degree: i32,
    a: impl Fn(&W) -> LinComb<V>,
    b: impl Fn(&W) -> LinComb<V>,
) -> LinComb<(V, V)> {
    let mut out = LinComb::new();
    for ((l, r), c) in x.iter() {
        let al = a(l);
        if al.is_zero() {
            continue;
        }
        let br = b(r);
        let s = scalar::sign(b_degree as i64 * deg(l) as i64);
        for (p, x1) in al.iter() {
            for (q, x2) in br.iter() {
                out.add_term((p.clone(), q.clone()), c * x1 * x2 * &s);
            }
        }
    }
    out
}

/// Which part of the bar differential on `BΩC(L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarPart {
    /// `δ°`: letterwise, from `ω_1(c_1) + ω_2`.
    Linear,
    /// `t_μ`: concatenation of adjacent letters.
    Product,
    /// `t_L`: letterwise, from `ω_1(c_{≥2})`.
    Brackets,
}

/// `b_1(sa) = −s δ a`, `b_2(sa ⊗ sb) = (-1)^{|a|} s(ab)`.
pub fn bar_differential(l: &LInftyAlgebra, word: &BarWord, part: BarPart) -> BarElem {
    let sdeg = l.sdegrees();
    let letter_sdeg = |a: &CobarWord| a.degree(sdeg) - 1;
    match part {
        BarPart::Linear | BarPart::Brackets => {
            let cp = if part == BarPart::Linear {
                CobarPart::Linear
            } else {
                CobarPart::Brackets
            };
            extend_coderivation(word, letter_sdeg, 1, |xs| {
                cobar_differential(l, &xs[0], cp).scaled(&-scalar::one())
            })
        }
        BarPart::Product => extend_coderivation(word, letter_sdeg, 2, |xs| {
            if xs.len() != 2 {
                return LinComb::new();
            }
            LinComb::term(
                xs[0].concat(&xs[1]),
                scalar::sign(xs[0].degree(sdeg) as i64),
            )
        }),
    }
}

pub fn bar_differential_vec(l: &LInftyAlgebra, x: &BarElem, part: BarPart) -> BarElem {
    x.apply(|w| bar_differential(l, w, part))
}

/// The full differential `δ° + t_μ + t_L` of `BΩC(L)`.
pub fn bar_total_differential(l: &LInftyAlgebra, word: &BarWord) -> BarElem {
    let mut out = bar_differential(l, word, BarPart::Linear);
    out += bar_differential(l, word, BarPart::Product);
    out += bar_differential(l, word, BarPart::Brackets);
    out
}

/// All bar words with total rank `≤ max_rank` and length `≤ max_len`, over
/// cobar words of the given letters.
pub fn bar_words(letters: &[CobarWord], max_rank: usize, max_len: usize) -> Vec<BarWord> {
    let letters: Vec<&CobarWord> = letters
        .iter()
        .filter(|a| !a.is_empty() && a.rank() <= max_rank)
        .collect();
    let mut out = Vec::new();
    let mut frontier = vec![(BarWord::default(), 0usize)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, r) in &frontier {
            for a in &letters {
                if r + a.rank() <= max_rank {
                    let mut v = w.0.clone();
                    v.push((*a).clone());
                    next.push((BarWord(v), r + a.rank()));
                }
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        frontier = next;
    }
    out
}

/// All words of `T_c(s Sym^{≥1})` with total weight `≤ max_weight` and length
/// `≤ max_len`.
pub fn sym_bar_words(degs: &Degrees, max_weight: usize, max_len: usize) -> Vec<SymBarWord> {
    let letters = crate::exactlin::monomials_up_to(degs, max_weight);
    let mut out = Vec::new();
    let mut frontier = vec![(SymBarWord::default(), 0usize)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, r) in &frontier {
            for m in &letters {
                if r + m.weight() <= max_weight {
                    let mut v = w.0.clone();
                    v.push(m.clone());
                    next.push((SymBarWord(v), r + m.weight()));
                }
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        frontier = next;
    }
    out
}

/// The bar differential of the graded commutative algebra `Sym(V)` with
/// differential induced by `l_1`: `m_1` and the symmetric product only.
pub fn sym_bar_differential(
    v: &LInftyAlgebra,
    word: &SymBarWord,
    with_product: bool,
) -> SymBarElem {
    let degs = v.degrees();
    let arity = if with_product { 2 } else { 1 };
    extend_coderivation(
        word,
        |m| m.degree(degs) - 1,
        arity,
        |xs| {
            if xs.len() == 1 {
                crate::permutahedra::theta::sym_differential(v, &xs[0]).scaled(&-scalar::one())
            } else {
                match xs[0].mul(&xs[1], degs) {
                    Some((m, s)) => LinComb::term(
                        m,
                        scalar::sign(xs[0].degree(degs) as i64) * scalar::int(s as i64),
                    ),
                    None => LinComb::new(),
                }
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::GenId;
    use crate::hpt::cobar::cobar_words;

    fn sl2() -> LInftyAlgebra {
        let mut l = LInftyAlgebra::abelian(vec!["e".into(), "f".into(), "h".into()], vec![0, 0, 0])
            .unwrap();
        l.set_bracket(&[0, 1], LinComb::basis(2)).unwrap();
        l.set_bracket(&[2, 0], LinComb::term(0, scalar::int(2)))
            .unwrap();
        l.set_bracket(&[2, 1], LinComb::term(1, scalar::int(-2)))
            .unwrap();
        l
    }

    fn mixed() -> LInftyAlgebra {
        let mut l = LInftyAlgebra::abelian(vec!["a".into(), "b".into()], vec![1, 2]).unwrap();
        l.set_bracket(&[0], LinComb::basis(1)).unwrap();
        l.set_bracket(&[0, 0], LinComb::term(1, scalar::int(3)))
            .unwrap();
        l
    }

    #[test]
    fn total_differential_squares_to_zero() {
        for (l, rank) in [(sl2(), 3), (mixed(), 4)] {
            let letters = cobar_words(l.sdegrees(), rank);
            for w in bar_words(&letters, rank, rank) {
                let d = bar_total_differential(&l, &w);
                let dd = d.apply(|x| bar_total_differential(&l, x));
                assert!(dd.is_zero(), "{w:?}");
            }
        }
    }

    #[test]
    fn abelian_has_no_bracket_part() {
        let l = LInftyAlgebra::abelian(vec!["x".into()], vec![0]).unwrap();
        let letters = cobar_words(l.sdegrees(), 3);
        for w in bar_words(&letters, 3, 2) {
            assert!(bar_differential(&l, &w, BarPart::Brackets).is_zero());
        }
    }

    #[test]
    fn perturbations_are_coderivations() {
        let l = mixed();
        let sd = l.sdegrees().clone();
        let deg = |w: &BarWord| w.degree(&sd);
        let letters = cobar_words(&sd, 3);
        for w in bar_words(&letters, 3, 3) {
            for part in [BarPart::Linear, BarPart::Product, BarPart::Brackets] {
                let t = |x: &BarWord| bar_differential(&l, x, part);
                let lhs = deconcatenate_vec(&bar_differential(&l, &w, part));
                let split = deconcatenate_vec(&LinComb::basis(w.clone()));
                let mut rhs = tensor_apply(&split, deg, 0, t, |x| LinComb::basis(x.clone()));
                rhs += tensor_apply(&split, deg, 1, |x| LinComb::basis(x.clone()), t);
                assert_eq!(lhs, rhs, "{w:?} {part:?}");
            }
        }
    }

    #[test]
    fn sym_bar_squares_to_zero() {
        let mut v = LInftyAlgebra::abelian(vec!["a".into(), "b".into(), "c".into()], vec![0, 1, 1])
            .unwrap();
        v.set_bracket(&[0 as GenId], LinComb::basis(1)).unwrap();
        for w in sym_bar_words(v.degrees(), 4, 4) {
            let d = sym_bar_differential(&v, &w, true);
            assert!(
                d.apply(|x| sym_bar_differential(&v, x, true)).is_zero(),
                "{w:?}"
            );
        }
    }
}
