//! Checkers for the structural properties of `U(L)`.

use crate::error::{Error, Result};
use crate::exactlin::koszul::{koszul_sign, perm_sign, permutations};
use crate::exactlin::scalar;
use crate::exactlin::{GenId, LinComb, Monomial};
use crate::exec;
use crate::linfty::{check_linfty, LInftyAlgebra, LInftyMorphism};

use super::pbw::{Classical, Word};
use super::products::{counterexample, AInftyStructure, Caps, Outcome};

fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Outcome> + Sync + Send,
) -> Result<Outcome> {
    for r in exec::map(items, f) {
        match r? {
            Ok(()) => {}
            bad => return Ok(bad),
        }
    }
    Ok(Ok(()))
}

/// Normal words are sorted, so this is a relabelling.
fn word_to_monomials(x: &LinComb<Word>) -> LinComb<Monomial> {
    x.iter()
        .map(|(w, c)| (Monomial(w.iter().copied().collect()), c.clone()))
        .collect()
}

/// `m_{n≥3} = 0` and symmetrization carries `m_1`, `m_2` to the classical
/// differential and product, for all inputs of total weight `≤ weight_cap`.
pub fn pbw_compare(l: &LInftyAlgebra, weight_cap: usize) -> Result<Outcome> {
    let u = Classical::new(l)?;
    let a = AInftyStructure::new(l, Caps::new(3.min(weight_cap), weight_cap)?)?;
    for n in 1..=a.caps().arity_cap {
        let inputs = a.basis_inputs(n);
        let bad = first_failure(&inputs, |xs| {
            let m = a.product(xs)?;
            let (lhs, rhs) = match n {
                1 => (u.symmetrize_vec(&m), u.differential(&u.symmetrize(&xs[0]))),
                2 => (
                    u.symmetrize_vec(&m),
                    u.multiply(&u.symmetrize(&xs[0]), &u.symmetrize(&xs[1])),
                ),
                _ => (u.symmetrize_vec(&m), LinComb::new()),
            };
            if lhs == rhs {
                return Ok(Ok(()));
            }
            Ok(Err(counterexample(l, xs, &word_to_monomials(&(lhs - rhs)))))
        })?;
        if bad.is_err() {
            return Ok(bad);
        }
    }
    Ok(Ok(()))
}

/// `m_2(v,u) = v∗u + ½ l_2(v,u)` on generators.
pub fn closed_form_m2_check(a: &AInftyStructure) -> Result<Outcome> {
    let l = a.algebra();
    let gens: Vec<GenId> = (0..l.dim() as GenId).collect();
    for &v in &gens {
        for &w in &gens {
            let (x, y) = (Monomial::single(v), Monomial::single(w));
            let mut want: LinComb<Monomial> = match x.mul(&y, l.degrees()) {
                Some((m, s)) => LinComb::term(m, scalar::int(s as i64)),
                None => LinComb::new(),
            };
            for (g, c) in l.bracket(&[v, w]).iter() {
                want.add_term(Monomial::single(*g), c * scalar::ratio(1, 2));
            }
            let got = a.product(&[x.clone(), y.clone()])?;
            if got != want {
                return Ok(Err(counterexample(l, &[x, y], &(got - want))));
            }
        }
    }
    Ok(Ok(()))
}

/// All `k`-tuples of generators.
fn generator_tuples(dim: usize, k: usize) -> Vec<Vec<GenId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<GenId>| {
                (0..dim as GenId).map(move |g| {
                    let mut v = t.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out
}

/// `m_n(Alt(v_1 ⊗ … ⊗ v_n)) = l_n(v_1, …, v_n)` on all generator tuples.
pub fn alt_bracket_check(a: &AInftyStructure, n: usize) -> Result<Outcome> {
    let l = a.algebra();
    let tuples = generator_tuples(l.dim(), n);
    let perms = permutations(n);
    first_failure(&tuples, |t| {
        let degs: Vec<i32> = t.iter().map(|&g| l.degrees().deg(g)).collect();
        let mut lhs = LinComb::new();
        for p in &perms {
            let chi = perm_sign(p) * koszul_sign(p, &degs)?;
            let xs: Vec<Monomial> = p.iter().map(|&i| Monomial::single(t[i])).collect();
            lhs.add_scaled(&a.product(&xs)?, &scalar::int(chi as i64));
        }
        let rhs: LinComb<Monomial> = l
            .bracket(t)
            .iter()
            .map(|(g, c)| (Monomial::single(*g), c.clone()))
            .collect();
        if lhs == rhs {
            Ok(Ok(()))
        } else {
            let xs: Vec<Monomial> = t.iter().map(|&g| Monomial::single(g)).collect();
            Ok(Err(counterexample(l, &xs, &(lhs - rhs))))
        }
    })
}

fn iota(x: &LinComb<Monomial>) -> LinComb<Monomial> {
    x.iter()
        .map(|(m, c)| (m.clone(), c * scalar::sign(m.weight() as i64)))
        .collect()
}

/// `ι` is a strict morphism `U(L) → U(L)^op`:
/// `m_n ∘ ι^{⊗n} = ε_n ι ∘ m_n ∘ ω_n` on all basis inputs within the caps,
/// with `ω_n` the reversal with its Koszul sign and `ε_n = (−1)^{(n−1)(n−2)/2}`.
///
/// `U(L)^op` has bar differential `ω̂ δ_B ω̂` (Koszul reversal on `T(sU)`)
/// transported along `x ↦ −x`, which makes `m_2^op(x,y) = ±m_2(y,x)` the
/// usual opposite product. Without `ε_n` the identity would contradict
/// `m_3(Alt(v_1 ⊗ v_2 ⊗ v_3)) = l_3(v_1, v_2, v_3)`.
pub fn involution_check(a: &AInftyStructure, n: usize) -> Result<Outcome> {
    let l = a.algebra();
    let degs = l.degrees();
    let inputs = a.basis_inputs(n);
    let rev: Vec<usize> = (0..n).rev().collect();
    first_failure(&inputs, |xs| {
        let e: usize = xs.iter().map(|m| m.weight()).sum();
        let lhs = a.product(xs)?.scaled(&scalar::sign(e as i64));
        let xdeg: Vec<i32> = xs.iter().map(|m| m.degree(degs)).collect();
        let s = koszul_sign(&rev, &xdeg)?;
        let ys: Vec<Monomial> = rev.iter().map(|&i| xs[i].clone()).collect();
        let eps = ((n - 1) * n.saturating_sub(2) / 2) as i64;
        let rhs = iota(&a.product(&ys)?).scaled(&(scalar::int(s as i64) * scalar::sign(eps)));
        if lhs == rhs {
            Ok(Ok(()))
        } else {
            Ok(Err(counterexample(l, xs, &(lhs - rhs))))
        }
    })
}

/// `Sym(φ_1)` for a linear map `φ_1` of degree 0 given on generators.
pub fn sym_linear(
    images: &[LinComb<GenId>],
    target: &LInftyAlgebra,
    m: &Monomial,
) -> LinComb<Monomial> {
    let mut out = LinComb::basis(Monomial::unit());
    for &g in m.letters() {
        let mut next = LinComb::new();
        for (p, c) in out.iter() {
            for (h, e) in images[g as usize].iter() {
                if let Some((q, s)) = p.mul(&Monomial::single(*h), target.degrees()) {
                    next.add_term(q, c * e * scalar::int(s as i64));
                }
            }
        }
        out = next;
    }
    out
}

/// The diagonal `L → L ⊕ L` on generators.
pub fn diagonal(l: &LInftyAlgebra) -> Result<(LInftyAlgebra, Vec<LinComb<GenId>>)> {
    let ll = l.direct_sum(l, "'")?;
    let d = l.dim() as GenId;
    let images = (0..d)
        .map(|g| LinComb::basis(g) + LinComb::basis(g + d))
        .collect();
    Ok((ll, images))
}

/// `Δ ∘ m_n = m_n^{L⊕L} ∘ Δ^{⊗n}` with `Δ = Sym` of the diagonal.
pub fn coproduct_strictness_check(a: &AInftyStructure, n: usize) -> Result<Outcome> {
    let l = a.algebra();
    let (ll, images) = diagonal(l)?;
    let b = AInftyStructure::new(&ll, a.caps())?;
    let delta = |m: &Monomial| sym_linear(&images, &ll, m);
    let inputs = a.basis_inputs(n);
    first_failure(&inputs, |xs| {
        let lhs = a.product(xs)?.apply(delta);
        let dx: Vec<LinComb<Monomial>> = xs.iter().map(delta).collect();
        let rhs = b.product_elems(&dx)?;
        if lhs == rhs {
            Ok(Ok(()))
        } else {
            Ok(Err(counterexample(&ll, xs, &(lhs - rhs))))
        }
    })
}

/// `Δ` on weight-one elements is primitive.
pub fn diagonal_is_primitive(l: &LInftyAlgebra) -> Result<bool> {
    let (ll, images) = diagonal(l)?;
    let phi = LInftyMorphism::strict(l, &ll, &images)?;
    Ok(phi.is_strict() && (0..l.dim() as GenId).all(|g| images[g as usize].len() == 2))
}

/// `m_1` and `m_2` of `L` agree with those of its 2-truncation.
pub fn truncation_agreement_check(l: &LInftyAlgebra, caps: Caps) -> Result<Outcome> {
    let t = l.truncated(2);
    if check_linfty(&t, caps.weight_cap.max(3)).is_err() {
        return Err(Error::Invalid(
            "the 2-truncation is not a DG Lie algebra".into(),
        ));
    }
    let caps = Caps::new(2.min(caps.arity_cap), caps.weight_cap)?;
    let a = AInftyStructure::new(l, caps)?;
    let b = AInftyStructure::new(&t, caps)?;
    for n in 1..=caps.arity_cap {
        let inputs = a.basis_inputs(n);
        let bad = first_failure(&inputs, |xs| {
            let d = a.product(xs)? - b.product(xs)?;
            Ok(if d.is_zero() {
                Ok(())
            } else {
                Err(counterexample(l, xs, &d))
            })
        })?;
        if bad.is_err() {
            return Ok(bad);
        }
    }
    Ok(Ok(()))
}
