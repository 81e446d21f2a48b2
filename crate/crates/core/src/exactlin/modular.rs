//! Sparse integer systems `A x = b` solved modulo word-size primes by
//! Wiedemann's method, recombined by CRT and rational reconstruction, then
//! checked exactly. The solution found is the one in the Krylov space of `b`.

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::exec;

/// Sparse integer matrix, by rows.
pub type SparseRows = Vec<Vec<(usize, i64)>>;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes below `2^31`, descending.
fn primes(count: usize, skip: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = (1u64 << 31) - 1;
    let mut seen = 0;
    while out.len() < count {
        if is_prime(p) {
            if seen >= skip {
                out.push(p);
            }
            seen += 1;
        }
        p -= 2;
    }
    out
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

fn matvec(a: &[Vec<(usize, u64)>], x: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|row| {
            let acc: u128 = row.iter().map(|&(j, v)| v as u128 * x[j] as u128).sum();
            (acc % p as u128) as u64
        })
        .collect()
}

/// Wiedemann: the minimal polynomial `g` of the projected Krylov sequence of
/// `b` gives `y = -g_0^{-1} Σ_{j ≥ 1} g_j A^{j-1} b`. `None` if this prime or
/// projection is unlucky.
fn solve_mod(a: &SparseRows, b: &[BigInt], p: u64, seed: u64) -> Option<Vec<u64>> {
    let n = b.len();
    let am: Vec<Vec<(usize, u64)>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(j, v)| (j, v.rem_euclid(p as i64) as u64))
                .collect()
        })
        .collect();
    let bm: Vec<u64> = b.iter().map(|x| reduce(x, p)).collect();
    if bm.iter().all(|&x| x == 0) {
        return Some(vec![0; n]);
    }
    let mut rng = StdRng::seed_from_u64(seed ^ p);
    let u: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
    let dot = |v: &[u64]| -> u64 {
        (u.iter()
            .zip(v)
            .map(|(&x, &y)| x as u128 * y as u128)
            .sum::<u128>()
            % p as u128) as u64
    };

    // Berlekamp–Massey, fed one term at a time.
    let mut seq: Vec<u64> = Vec::new();
    let mut c: Vec<u64> = vec![1];
    let mut prev: Vec<u64> = vec![1];
    let (mut len, mut shift, mut last_disc) = (0usize, 1usize, 1u64);
    let mut v = bm.clone();
    while seq.len() < 2 * n + 32 {
        seq.push(dot(&v));
        v = matvec(&am, &v, p);
        let i = seq.len() - 1;
        let mut disc = seq[i] as u128;
        for k in 1..=len {
            disc += c.get(k).copied().unwrap_or(0) as u128 * seq[i - k] as u128 % p as u128;
        }
        let disc = (disc % p as u128) as u64;
        if disc == 0 {
            shift += 1;
        } else {
            let coef = disc * pow_mod(last_disc, p - 2, p) % p;
            let old = c.clone();
            if c.len() < prev.len() + shift {
                c.resize(prev.len() + shift, 0);
            }
            for (k, &q) in prev.iter().enumerate() {
                c[k + shift] = (c[k + shift] + p - coef * q % p) % p;
            }
            if 2 * len <= i {
                len = i + 1 - len;
                prev = old;
                last_disc = disc;
                shift = 1;
            } else {
                shift += 1;
            }
        }
        if seq.len() >= 2 * len + 24 {
            break;
        }
    }
    c.resize(len + 1, 0);
    // g(x) = Σ c_{len - j} x^j
    let g: Vec<u64> = (0..=len).map(|j| c[len - j]).collect();
    if g[0] == 0 {
        return None;
    }
    let mut y = vec![0u64; n];
    for j in (1..=len).rev() {
        let ay = matvec(&am, &y, p);
        for i in 0..n {
            y[i] = (ay[i] + g[j] * bm[i]) % p;
        }
    }
    let scale = (p - pow_mod(g[0], p - 2, p)) % p;
    for x in &mut y {
        *x = *x * scale % p;
    }
    (matvec(&am, &y, p) == bm).then_some(y)
}

/// `r/t ≡ u (mod modulus)` with `|r|, t ≤ sqrt(modulus / 2)`.
fn reconstruct(u: &BigInt, modulus: &BigInt) -> Option<Scalar> {
    let bound = (modulus >> 1u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Scalar::new(r1, t1))
}

fn check(a: &SparseRows, b: &[BigInt], x: &[Scalar]) -> bool {
    a.iter().zip(b).all(|(row, bi)| {
        let s: Scalar = row.iter().map(|&(j, v)| &x[j] * BigInt::from(v)).sum();
        s == Scalar::from_integer(bi.clone())
    })
}

/// Exact rational solution of `A x = b` lying in the Krylov space of `b`.
/// Requires `b` to be in the range of `A` restricted to that space.
pub fn solve_integer_system(a: &SparseRows, b: &[BigInt]) -> Result<Vec<Scalar>> {
    let n = b.len();
    if a.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: a.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); n];
    let mut used = 0;
    let mut batch = 4;
    let mut singular = 0;
    while used < 512 {
        let ps = primes(batch, used);
        used += batch;
        let sols = exec::map(&ps, |&p| solve_mod(a, b, p, 0x5eed));
        for (p, s) in ps.into_iter().zip(sols) {
            let Some(s) = s else {
                singular += 1;
                continue;
            };
            let pb = BigInt::from(p);
            let inv = BigInt::from(pow_mod(reduce(&modulus, p), p - 2, p));
            for (r, &si) in residues.iter_mut().zip(&s) {
                let diff = (BigInt::from(si) - reduce(r, p) as i64).mod_floor(&pb);
                let k = (diff * &inv).mod_floor(&pb);
                *r += &modulus * k;
            }
            modulus *= pb;
        }
        if singular > 8 {
            return Err(Error::Invalid("no Krylov solution".into()));
        }
        let cand: Option<Vec<Scalar>> = residues.iter().map(|u| reconstruct(u, &modulus)).collect();
        if let Some(x) = cand {
            if check(a, b, &x) {
                return Ok(x);
            }
        }
        batch *= 2;
    }
    Err(Error::Internal(
        "rational reconstruction did not converge".into(),
    ))
}
