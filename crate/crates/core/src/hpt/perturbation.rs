//! Contractions and the basic perturbation lemma.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::exactlin::scalar;
use crate::exactlin::LinComb;

/// A contraction `(F, G, H)` of a big complex `N` onto a small one `M`.
pub trait Contraction: Sync {
    type Big: Ord + Clone + Hash + Send + Sync;
    type Small: Ord + Clone + Hash + Send + Sync;

    fn d_big(&self, x: &Self::Big) -> LinComb<Self::Big>;
    fn d_small(&self, y: &Self::Small) -> Result<LinComb<Self::Small>>;
    fn f(&self, x: &Self::Big) -> Result<LinComb<Self::Small>>;
    fn g(&self, y: &Self::Small) -> Result<LinComb<Self::Big>>;
    fn h(&self, x: &Self::Big) -> Result<LinComb<Self::Big>>;

    fn d_big_vec(&self, x: &LinComb<Self::Big>) -> LinComb<Self::Big> {
        x.apply(|w| self.d_big(w))
    }
    fn d_small_vec(&self, y: &LinComb<Self::Small>) -> Result<LinComb<Self::Small>> {
        y.try_apply(|w| self.d_small(w))
    }
    fn f_vec(&self, x: &LinComb<Self::Big>) -> Result<LinComb<Self::Small>> {
        x.try_apply(|w| self.f(w))
    }
    fn g_vec(&self, y: &LinComb<Self::Small>) -> Result<LinComb<Self::Big>> {
        y.try_apply(|w| self.g(w))
    }
    fn h_vec(&self, x: &LinComb<Self::Big>) -> Result<LinComb<Self::Big>> {
        x.try_apply(|w| self.h(w))
    }
}

/// The first identity that fails, if any, on the given basis elements.
pub fn check_contraction<C: Contraction>(
    c: &C,
    bigs: &[C::Big],
    smalls: &[C::Small],
) -> Result<Option<String>> {
    for y in smalls {
        let gy = c.g(y)?;
        if c.f_vec(&gy)? != LinComb::basis(y.clone()) {
            return Ok(Some("FG = 1".into()));
        }
        if !c.h_vec(&gy)?.is_zero() {
            return Ok(Some("HG = 0".into()));
        }
        if c.d_big_vec(&gy) != c.g_vec(&c.d_small(y)?)? {
            return Ok(Some("G is a chain map".into()));
        }
    }
    for x in bigs {
        let b = LinComb::basis(x.clone());
        let hx = c.h(x)?;
        let mut lhs = b.clone();
        lhs -= &c.g_vec(&c.f(x)?)?;
        let mut rhs = c.d_big_vec(&hx);
        rhs += c.h_vec(&c.d_big(x))?;
        if lhs != rhs {
            return Ok(Some("1 − GF = dH + Hd".into()));
        }
        if !c.f_vec(&hx)?.is_zero() {
            return Ok(Some("FH = 0".into()));
        }
        if !c.h_vec(&hx)?.is_zero() {
            return Ok(Some("HH = 0".into()));
        }
        if c.f_vec(&c.d_big(x))? != c.d_small_vec(&c.f(x)?)? {
            return Ok(Some("F is a chain map".into()));
        }
    }
    Ok(None)
}

/// A perturbation `t` of the big differential with a nilpotency witness:
/// a grading that every application of `t` strictly lowers while `H`
/// preserves it.
pub struct Perturbation<'a, B: Ord + Clone> {
    t: Box<dyn Fn(&B) -> LinComb<B> + Send + Sync + 'a>,
    witness: Box<dyn Fn(&B) -> usize + Send + Sync + 'a>,
}

impl<'a, B: Ord + Clone> Perturbation<'a, B> {
    pub fn new(
        t: impl Fn(&B) -> LinComb<B> + Send + Sync + 'a,
        witness: impl Fn(&B) -> usize + Send + Sync + 'a,
    ) -> Self {
        Perturbation {
            t: Box::new(t),
            witness: Box::new(witness),
        }
    }

    pub fn apply(&self, x: &B) -> LinComb<B> {
        (self.t)(x)
    }

    pub fn witness(&self, x: &B) -> usize {
        (self.witness)(x)
    }
}

/// `(F_t, G_t, H_t)` and `(d_M)_t` from the basic perturbation lemma, with
/// `X = t − tHt + tHtHt − …` evaluated input by input and memoized.
pub struct Perturbed<'a, C: Contraction> {
    pub base: C,
    pub t: Perturbation<'a, C::Big>,
    x_cache: RwLock<HashMap<C::Big, LinComb<C::Big>>>,
}

impl<'a, C: Contraction> Perturbed<'a, C> {
    pub fn new(base: C, t: Perturbation<'a, C::Big>) -> Self {
        Perturbed {
            base,
            t,
            x_cache: RwLock::new(HashMap::new()),
        }
    }

    /// `X` on one basis element; fails if the series outlives the witness.
    pub fn x(&self, w: &C::Big) -> Result<LinComb<C::Big>> {
        if let Some(v) = self.x_cache.read().expect("cache lock").get(w) {
            return Ok(v.clone());
        }
        let budget = self.t.witness(w);
        let mut z = self.t.apply(w);
        let mut acc = z.clone();
        let mut steps = 0;
        while !z.is_zero() {
            steps += 1;
            if steps > budget {
                return Err(Error::NilpotencyBudget { budget });
            }
            let hz = self.base.h_vec(&z)?;
            z = hz.apply(|u| self.t.apply(u)).scaled(&-scalar::one());
            acc += &z;
        }
        self.x_cache
            .write()
            .expect("cache lock")
            .insert(w.clone(), acc.clone());
        Ok(acc)
    }

    pub fn x_vec(&self, v: &LinComb<C::Big>) -> Result<LinComb<C::Big>> {
        v.try_apply(|w| self.x(w))
    }
}

impl<C: Contraction> Contraction for Perturbed<'_, C> {
    type Big = C::Big;
    type Small = C::Small;

    fn d_big(&self, x: &Self::Big) -> LinComb<Self::Big> {
        let mut out = self.base.d_big(x);
        out += self.t.apply(x);
        out
    }

    fn d_small(&self, y: &Self::Small) -> Result<LinComb<Self::Small>> {
        let mut out = self.base.d_small(y)?;
        out += self.base.f_vec(&self.x_vec(&self.base.g(y)?)?)?;
        Ok(out)
    }

    fn f(&self, x: &Self::Big) -> Result<LinComb<Self::Small>> {
        let mut out = self.base.f(x)?;
        out -= &self.base.f_vec(&self.x_vec(&self.base.h(x)?)?)?;
        Ok(out)
    }

    fn g(&self, y: &Self::Small) -> Result<LinComb<Self::Big>> {
        let gy = self.base.g(y)?;
        let mut out = gy.clone();
        out -= &self.base.h_vec(&self.x_vec(&gy)?)?;
        Ok(out)
    }

    fn h(&self, x: &Self::Big) -> Result<LinComb<Self::Big>> {
        let hx = self.base.h(x)?;
        let mut out = hx.clone();
        out -= &self.base.h_vec(&self.x_vec(&hx)?)?;
        Ok(out)
    }
}

impl<C: Contraction> Contraction for &C {
    type Big = C::Big;
    type Small = C::Small;

    fn d_big(&self, x: &Self::Big) -> LinComb<Self::Big> {
        (*self).d_big(x)
    }
    fn d_small(&self, y: &Self::Small) -> Result<LinComb<Self::Small>> {
        (*self).d_small(y)
    }
    fn f(&self, x: &Self::Big) -> Result<LinComb<Self::Small>> {
        (*self).f(x)
    }
    fn g(&self, y: &Self::Small) -> Result<LinComb<Self::Big>> {
        (*self).g(y)
    }
    fn h(&self, x: &Self::Big) -> Result<LinComb<Self::Big>> {
        (*self).h(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;

    /// `N = span(a, b, c)` with `d a = b`, contracted onto `M = span(c)`.
    struct Toy;

    impl Contraction for Toy {
        type Big = char;
        type Small = char;
        fn d_big(&self, x: &char) -> LinComb<char> {
            if *x == 'a' {
                LinComb::basis('b')
            } else {
                LinComb::new()
            }
        }
        fn d_small(&self, _: &char) -> Result<LinComb<char>> {
            Ok(LinComb::new())
        }
        fn f(&self, x: &char) -> Result<LinComb<char>> {
            Ok(if *x == 'c' {
                LinComb::basis('c')
            } else {
                LinComb::new()
            })
        }
        fn g(&self, y: &char) -> Result<LinComb<char>> {
            Ok(LinComb::basis(*y))
        }
        fn h(&self, x: &char) -> Result<LinComb<char>> {
            Ok(if *x == 'b' {
                LinComb::basis('a')
            } else {
                LinComb::new()
            })
        }
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let p = Perturbed::new(Toy, Perturbation::new(|_: &char| LinComb::new(), |_| 0));
        assert_eq!(
            check_contraction(&p, &['a', 'b', 'c'], &['c']).unwrap(),
            None
        );
        assert!(p.d_small(&'c').unwrap().is_zero());
        assert_eq!(p.h(&'b').unwrap(), LinComb::basis('a'));
    }

    #[test]
    fn perturbed_toy() {
        // t c = 2b: the small differential stays zero and c is corrected.
        let t = |x: &char| {
            if *x == 'c' {
                LinComb::term('b', int(2))
            } else {
                LinComb::new()
            }
        };
        let p = Perturbed::new(Toy, Perturbation::new(t, |x| (*x == 'c') as usize));
        assert_eq!(
            check_contraction(&p, &['a', 'b', 'c'], &['c']).unwrap(),
            None
        );
        assert_eq!(
            p.g(&'c').unwrap(),
            LinComb::basis('c') - LinComb::term('a', int(2))
        );
    }

    #[test]
    fn budget_is_enforced() {
        // t b = b with H b = a, t a = b: never nilpotent.
        let t = |x: &char| {
            if *x == 'a' {
                LinComb::basis('b')
            } else {
                LinComb::new()
            }
        };
        let p = Perturbed::new(Toy, Perturbation::new(t, |_| 3));
        assert!(matches!(p.x(&'a'), Err(Error::NilpotencyBudget { .. })));
    }
}
