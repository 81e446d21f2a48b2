//! Koszul signs for permutations of graded letters.

use crate::error::{Error, Result};

fn check_perm(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Sign acquired by rearranging graded letters `x_0 ⊗ … ⊗ x_{n-1}` into
/// `x_{perm[0]} ⊗ … ⊗ x_{perm[n-1]}`: each transposition of two odd letters
/// contributes `-1`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<i8> {
    if perm.len() != degrees.len() {
        return Err(Error::LengthMismatch {
            expected: degrees.len(),
            got: perm.len(),
        });
    }
    check_perm(perm)?;
    let mut odd_inversions = 0usize;
    for j in 0..perm.len() {
        if degrees[perm[j]] & 1 == 0 {
            continue;
        }
        for k in j + 1..perm.len() {
            if perm[j] > perm[k] && degrees[perm[k]] & 1 != 0 {
                odd_inversions += 1;
            }
        }
    }
    Ok(if odd_inversions % 2 == 0 { 1 } else { -1 })
}

/// Plain sign of a permutation in one-line notation.
pub fn perm_sign(perm: &[usize]) -> i8 {
    let mut inv = 0usize;
    for j in 0..perm.len() {
        for k in j + 1..perm.len() {
            if perm[j] > perm[k] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Stable sort returning the Koszul sign of the sorting permutation.
pub fn sort_with_sign<T: Ord>(items: &mut [T], odd: impl Fn(&T) -> bool) -> i8 {
    let mut sign = 1i8;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1] > items[j] {
            if odd(&items[j - 1]) && odd(&items[j]) {
                sign = -sign;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_signs() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[1, 3, 5]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), -1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 2]).unwrap(), 1);
        assert!(koszul_sign(&[1, 0], &[1]).is_err());
        assert!(koszul_sign(&[0, 0], &[1, 1]).is_err());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }

    fn compose(tau: &[usize], sigma: &[usize]) -> Vec<usize> {
        sigma.iter().map(|&s| tau[s]).collect()
    }

    proptest! {
        #[test]
        fn cocycle_on_sigma3(degrees in proptest::collection::vec(-3i32..4, 3)) {
            for sigma in permutations(3) {
                for tau in permutations(3) {
                    let moved: Vec<i32> = tau.iter().map(|&t| degrees[t]).collect();
                    let lhs = koszul_sign(&compose(&tau, &sigma), &degrees).unwrap();
                    let rhs = koszul_sign(&sigma, &moved).unwrap() * koszul_sign(&tau, &degrees).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }

        #[test]
        fn sort_sign_matches_koszul(degrees in proptest::collection::vec(0i32..3, 0..6)) {
            let mut items: Vec<(i32, usize)> = degrees.iter().enumerate().map(|(i, _)| (-(i as i32), i)).collect();
            let s = sort_with_sign(&mut items, |&(_, i)| degrees[i] & 1 == 1);
            let perm: Vec<usize> = items.iter().map(|&(_, i)| i).collect();
            prop_assert_eq!(s, koszul_sign(&perm, &degrees).unwrap());
        }
    }
}
