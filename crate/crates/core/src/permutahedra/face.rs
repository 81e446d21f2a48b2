//! Faces of the permutahedron as ordered set partitions, with the cellular
//! differential, the `Σ_n` action and the involution `ν_n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::scalar::{self, Scalar};
use crate::exactlin::LinComb;

/// An ordered partition `[ψ_1 | … | ψ_d]` of `{1, …, n}`; every block is
/// stored increasing, which fixes the orientation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderedPartition {
    pub n: u8,
    pub blocks: Vec<Vec<u8>>,
}

pub type PermutahedronChain = LinComb<OrderedPartition>;

impl OrderedPartition {
    /// Sorts each block and checks that the blocks partition `{1, …, n}`.
    pub fn new(n: u8, mut blocks: Vec<Vec<u8>>) -> Result<Self> {
        let mut seen = vec![false; n as usize + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n || seen[x as usize] {
                    return Err(Error::Invalid(format!("{x} is out of range or repeated")));
                }
                seen[x as usize] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Invalid("blocks do not cover {1..n}".into()));
        }
        Ok(OrderedPartition { n, blocks })
    }

    pub fn d(&self) -> usize {
        self.blocks.len()
    }

    /// Cohomological degree `-(n - d)`.
    pub fn degree(&self) -> i32 {
        self.blocks.len() as i32 - self.n as i32
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// The top cell `[1 … n]`.
    pub fn top(n: u8) -> Self {
        OrderedPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// `ψ_m = [1 … m_1 | m_1 + 1 … | …]` for a composition `m` of `n`.
    pub fn standard(m: &[usize]) -> Self {
        let mut blocks = Vec::with_capacity(m.len());
        let mut next = 1u8;
        for &k in m {
            blocks.push((next..next + k as u8).collect());
            next += k as u8;
        }
        OrderedPartition {
            n: next - 1,
            blocks,
        }
    }

    /// The permutation (one-line, values `1..=n`) carrying `ψ_m` to this face.
    pub fn from_standard(&self) -> Vec<u8> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn is_vertex(&self) -> bool {
        self.blocks.len() == self.n as usize
    }
}

/// All ordered partitions of `{1..n}` with `d` blocks, sorted.
pub fn enumerate_faces(n: usize, d: usize) -> Result<Vec<OrderedPartition>> {
    if n == 0 || d == 0 || d > n || n > 12 {
        return Err(Error::Range(format!(
            "need 1 ≤ d ≤ n ≤ 12, got n = {n}, d = {d}"
        )));
    }
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    loop {
        let mut used = vec![false; d];
        for &a in &assign {
            used[a] = true;
        }
        if used.iter().all(|&u| u) {
            let mut blocks = vec![Vec::new(); d];
            for (i, &a) in assign.iter().enumerate() {
                blocks[a].push(i as u8 + 1);
            }
            out.push(OrderedPartition { n: n as u8, blocks });
        }
        let mut i = 0;
        while i < n {
            assign[i] += 1;
            if assign[i] < d {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// All faces of `P_n`, by increasing number of blocks.
pub fn all_faces(n: usize) -> Result<Vec<OrderedPartition>> {
    let mut out = Vec::new();
    for d in 1..=n {
        out.extend(enumerate_faces(n, d)?);
    }
    Ok(out)
}

/// Compositions of `n` (ordered lists of positive parts), lexicographic.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The cellular differential, splitting one block into `[M | ψ_k ∖ M]`.
pub fn boundary(f: &OrderedPartition) -> PermutahedronChain {
    let mut out = LinComb::new();
    let mut before = 0usize;
    for (k, block) in f.blocks.iter().enumerate() {
        let m = block.len();
        for mask in 1u32..(1u32 << m) - 1 {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut inversions = 0usize;
            for (i, &x) in block.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(x);
                    inversions += right.len();
                } else {
                    right.push(x);
                }
            }
            let e = before + k + left.len() + inversions;
            let mut blocks = Vec::with_capacity(f.d() + 1);
            blocks.extend_from_slice(&f.blocks[..k]);
            blocks.push(left);
            blocks.push(right);
            blocks.extend_from_slice(&f.blocks[k + 1..]);
            out.add_term(OrderedPartition { n: f.n, blocks }, scalar::sign(e as i64));
        }
        before += m;
    }
    out
}

pub fn boundary_chain(c: &PermutahedronChain) -> PermutahedronChain {
    c.apply(boundary)
}

/// Sign of the permutation sorting `v` (distinct entries).
fn sort_sign(v: &[u8]) -> i64 {
    let mut inv = 0i64;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// `σ · f` for `σ` in one-line notation with values `1..=n`.
pub fn act(sigma: &[u8], f: &OrderedPartition) -> Result<(Scalar, OrderedPartition)> {
    if sigma.len() != f.n as usize {
        return Err(Error::LengthMismatch {
            expected: f.n as usize,
            got: sigma.len(),
        });
    }
    let mut e = 0i64;
    let mut blocks = Vec::with_capacity(f.d());
    for b in &f.blocks {
        let img: Vec<u8> = b.iter().map(|&x| sigma[x as usize - 1]).collect();
        e += sort_sign(&img);
        let mut s = img;
        s.sort_unstable();
        blocks.push(s);
    }
    Ok((scalar::sign(e), OrderedPartition { n: f.n, blocks }))
}

pub fn act_chain(sigma: &[u8], c: &PermutahedronChain) -> PermutahedronChain {
    c.apply(|f| {
        let (s, g) = act(sigma, f).expect("permutation of matching size");
        LinComb::term(g, s)
    })
}

/// The involution `ν_n`: reversed blocks with sign
/// `-(-1)^{n(d-1) + (d-1)(d-2)/2 + Σ_{i<j} m_i m_j}`.
pub fn nu(f: &OrderedPartition) -> (Scalar, OrderedPartition) {
    let n = f.n as i64;
    let d = f.d() as i64;
    let sizes = f.sizes();
    let mut cross = 0i64;
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            cross += (sizes[i] * sizes[j]) as i64;
        }
    }
    let e = 1 + n * (d - 1) + (d - 1) * (d - 2) / 2 + cross;
    let mut blocks = f.blocks.clone();
    blocks.reverse();
    (scalar::sign(e), OrderedPartition { n: f.n, blocks })
}

pub fn nu_chain(c: &PermutahedronChain) -> PermutahedronChain {
    c.apply(|f| {
        let (s, g) = nu(f);
        LinComb::term(g, s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::koszul::permutations;

    fn face(n: u8, b: &[&[u8]]) -> OrderedPartition {
        OrderedPartition::new(n, b.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    /// `d! S(n, d)` by the Stirling recurrence.
    fn ordered_partition_count(n: usize, d: usize) -> usize {
        let mut s = vec![vec![0usize; n + 1]; n + 1];
        s[0][0] = 1;
        for i in 1..=n {
            for k in 1..=i {
                s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1];
            }
        }
        (1..=d).product::<usize>() * s[n][d]
    }

    #[test]
    fn face_counts() {
        assert_eq!(enumerate_faces(1, 1).unwrap(), vec![face(1, &[&[1]])]);
        let totals: Vec<usize> = (1..=5).map(|n| all_faces(n).unwrap().len()).collect();
        assert_eq!(totals, vec![1, 3, 13, 75, 541]);
        for n in 1..=5 {
            for d in 1..=n {
                assert_eq!(
                    enumerate_faces(n, d).unwrap().len(),
                    ordered_partition_count(n, d)
                );
            }
        }
        assert_eq!(
            enumerate_faces(3, 1).unwrap(),
            vec![OrderedPartition::top(3)]
        );
        assert!(enumerate_faces(3, 4).is_err());
    }

    #[test]
    fn boundary_examples() {
        assert!(boundary(&face(2, &[&[1], &[2]])).is_zero());
        let d = boundary(&face(2, &[&[1, 2]]));
        let want = LinComb::term(face(2, &[&[1], &[2]]), scalar::int(-1))
            + LinComb::basis(face(2, &[&[2], &[1]]));
        assert_eq!(d, want);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for n in 1..=5 {
            for f in all_faces(n).unwrap() {
                assert!(boundary_chain(&boundary(&f)).is_zero(), "{f:?}");
            }
        }
    }

    #[test]
    fn action_examples_and_multiplicativity() {
        let (s, g) = act(&[2, 1], &face(2, &[&[1], &[2]])).unwrap();
        assert_eq!((s, g), (scalar::one(), face(2, &[&[2], &[1]])));
        let (s, g) = act(&[2, 1], &face(2, &[&[1, 2]])).unwrap();
        assert_eq!((s, g), (-scalar::one(), face(2, &[&[1, 2]])));
        let perms: Vec<Vec<u8>> = permutations(3)
            .into_iter()
            .map(|p| p.into_iter().map(|x| x as u8 + 1).collect())
            .collect();
        for f in all_faces(3).unwrap() {
            let c = LinComb::basis(f.clone());
            for s in &perms {
                for t in &perms {
                    let st: Vec<u8> = t.iter().map(|&x| s[x as usize - 1]).collect();
                    assert_eq!(act_chain(&st, &c), act_chain(s, &act_chain(t, &c)));
                }
                assert_eq!(
                    boundary_chain(&act_chain(s, &c)),
                    act_chain(s, &boundary(&f))
                );
                assert_eq!(nu_chain(&act_chain(s, &c)), act_chain(s, &nu_chain(&c)));
            }
        }
    }

    #[test]
    fn nu_examples_and_properties() {
        assert_eq!(
            nu(&face(2, &[&[1], &[2]])),
            (scalar::one(), face(2, &[&[2], &[1]]))
        );
        assert_eq!(
            nu(&face(2, &[&[1, 2]])),
            (-scalar::one(), face(2, &[&[1, 2]]))
        );
        for f in all_faces(4).unwrap() {
            let c = LinComb::basis(f.clone());
            assert_eq!(nu_chain(&nu_chain(&c)), c);
            assert_eq!(nu_chain(&boundary(&f)), boundary_chain(&nu_chain(&c)));
        }
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(
            OrderedPartition::standard(&[2, 1]),
            face(3, &[&[1, 2], &[3]])
        );
        let f = face(4, &[&[2, 4], &[1], &[3]]);
        let (s, g) = act(&f.from_standard(), &OrderedPartition::standard(&f.sizes())).unwrap();
        assert_eq!((s, g), (scalar::one(), f));
    }
}
