//! Partitions, standard tableaux, descent sets and column-semistandard
//! tableaux.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `{1, …, n−1}`.
pub type Subset = BTreeSet<usize>;

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn check_shape(shape: &[usize]) -> Result<()> {
    if shape.iter().any(|&r| r == 0) || shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(format!("{shape:?} is not a partition")));
    }
    Ok(())
}

fn shape_of(rows: &[Vec<usize>]) -> Vec<usize> {
    rows.iter().map(|r| r.len()).collect()
}

fn columns_of(rows: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let width = rows.first().map_or(0, |r| r.len());
    (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c).copied()).collect())
        .collect()
}

/// A bijective filling of a Young diagram by `1..=n`, increasing along
/// rows and down columns. Serialized as its rows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl TryFrom<Vec<Vec<usize>>> for StandardTableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        StandardTableau::new(rows)
    }
}

impl From<StandardTableau> for Vec<Vec<usize>> {
    fn from(t: StandardTableau) -> Self {
        t.rows
    }
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        check_shape(&shape_of(&rows))?;
        let n: usize = rows.iter().map(|r| r.len()).sum();
        let mut seen = vec![false; n + 1];
        for &v in rows.iter().flatten() {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Invalid(format!(
                    "{rows:?} is not a bijection onto 1..={n}"
                )));
            }
            seen[v] = true;
        }
        let increasing = |xs: &[usize]| xs.windows(2).all(|w| w[0] < w[1]);
        if !rows.iter().all(|r| increasing(r)) || !columns_of(&rows).iter().all(|c| increasing(c)) {
            return Err(Error::Invalid(format!("{rows:?} is not standard")));
        }
        Ok(StandardTableau { rows })
    }

    pub fn row_tableau(n: usize) -> Self {
        StandardTableau {
            rows: vec![(1..=n).collect()],
        }
    }

    pub fn column_tableau(n: usize) -> Self {
        StandardTableau {
            rows: (1..=n).map(|v| vec![v]).collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        columns_of(&self.rows)
    }

    pub fn shape(&self) -> Vec<usize> {
        shape_of(&self.rows)
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Row index of the cell holding `v`.
    pub fn row_of(&self, v: usize) -> usize {
        self.rows
            .iter()
            .position(|r| r.contains(&v))
            .expect("value in tableau")
    }

    /// `i ∈ J_T` iff `i` sits in a strictly higher row than `i + 1`.
    pub fn descents(&self) -> Subset {
        (1..self.n())
            .filter(|&i| self.row_of(i) < self.row_of(i + 1))
            .collect()
    }

    /// `T_J = ζ_J ∘ T` for `J ⊆ J_T`.
    pub fn t_j(&self, j: &Subset) -> Result<ColumnSemistandard> {
        if !j.is_subset(&self.descents()) {
            return Err(Error::Invalid(format!(
                "{j:?} is not contained in the descent set"
            )));
        }
        let zeta = zeta(self.n(), j);
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| zeta[v - 1]).collect())
            .collect();
        Ok(ColumnSemistandard { rows })
    }
}

/// The weakly increasing surjection `ζ_J: {1..n} → {1..n−#J}` gluing `i`
/// to `i + 1` exactly for `i ∈ J`, as a lookup table.
pub fn zeta(n: usize, j: &Subset) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let mut cur = 0usize;
    for i in 1..=n {
        if i == 1 || !j.contains(&(i - 1)) {
            cur += 1;
        }
        out.push(cur);
    }
    out
}

/// Block sizes `m(J)` of `ζ_J`.
pub fn block_sizes(n: usize, j: &Subset) -> Vec<usize> {
    let z = zeta(n, j);
    let k = z.last().copied().unwrap_or(0);
    (1..=k)
        .map(|b| z.iter().filter(|&&x| x == b).count())
        .collect()
}

/// The descent set of a tableau with its owner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentData {
    pub tableau: StandardTableau,
    pub set: Subset,
}

pub fn descents(t: &StandardTableau) -> DescentData {
    DescentData {
        tableau: t.clone(),
        set: t.descents(),
    }
}

/// Standard tableaux of the given shape, in lexicographic order of rows.
pub fn standard_tableaux(shape: &[usize]) -> Result<Vec<StandardTableau>> {
    check_shape(shape)?;
    let n: usize = shape.iter().sum();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
    fn place(
        v: usize,
        n: usize,
        shape: &[usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if v > n {
            out.push(StandardTableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(v);
                place(v + 1, n, shape, rows, out);
                rows[r].pop();
            }
        }
    }
    place(1, n, shape, &mut rows, &mut out);
    out.sort();
    Ok(out)
}

/// All standard tableaux with `n` cells.
pub fn all_standard_tableaux(n: usize) -> Vec<StandardTableau> {
    partitions(n)
        .iter()
        .flat_map(|p| standard_tableaux(p).expect("partition"))
        .collect()
}

/// A surjective filling onto `1..=k`, strictly increasing along rows and
/// weakly down columns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColumnSemistandard {
    rows: Vec<Vec<usize>>,
}

impl ColumnSemistandard {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        check_shape(&shape_of(&rows))?;
        let k = rows.iter().flatten().copied().max().unwrap_or(0);
        let values: BTreeSet<usize> = rows.iter().flatten().copied().collect();
        if values != (1..=k).collect() {
            return Err(Error::Invalid(format!(
                "{rows:?} is not surjective onto 1..={k}"
            )));
        }
        let strict = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let weak = columns_of(&rows)
            .iter()
            .all(|c| c.windows(2).all(|w| w[0] <= w[1]));
        if !strict || !weak {
            return Err(Error::Invalid(format!(
                "{rows:?} is not column-semistandard"
            )));
        }
        Ok(ColumnSemistandard { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// The unique `(T, J)` with `T_J = self`: cells are numbered by value,
    /// ties broken from the top row down.
    pub fn decompose(&self) -> Result<(StandardTableau, Subset)> {
        let mut cells: Vec<(usize, usize, usize)> = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                cells.push((v, r, c));
            }
        }
        cells.sort();
        let mut rows: Vec<Vec<usize>> = self.rows.iter().map(|r| vec![0; r.len()]).collect();
        let mut j = Subset::new();
        for (i, &(v, r, c)) in cells.iter().enumerate() {
            rows[r][c] = i + 1;
            if i > 0 && cells[i - 1].0 == v {
                j.insert(i);
            }
        }
        Ok((StandardTableau::new(rows)?, j))
    }
}

/// Every column-semistandard surjection of the given shape, by brute force
/// over all fillings.
pub fn column_semistandard(shape: &[usize]) -> Result<Vec<ColumnSemistandard>> {
    check_shape(shape)?;
    let n: usize = shape.iter().sum();
    let mut out = Vec::new();
    for k in 1..=n {
        let mut filling = vec![1usize; n];
        loop {
            let mut rows = Vec::with_capacity(shape.len());
            let mut start = 0;
            for &len in shape {
                rows.push(filling[start..start + len].to_vec());
                start += len;
            }
            if let Ok(u) = ColumnSemistandard::new(rows) {
                if u.rows.iter().flatten().copied().max() == Some(k) {
                    out.push(u);
                }
            }
            let Some(i) = filling.iter().rposition(|&x| x < k) else {
                break;
            };
            filling[i] += 1;
            for x in &mut filling[i + 1..] {
                *x = 1;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Outcome of comparing `{(T, J ⊆ J_T)}` with column-semistandard
/// surjections for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionCount {
    pub n: usize,
    pub pairs: usize,
    pub semistandard: usize,
    /// `(T, J) ↦ T_J` is injective, lands in the enumerated set, and
    /// `decompose` inverts it.
    pub bijective: bool,
}

pub fn bijection_count(n: usize) -> Result<BijectionCount> {
    let mut pairs = 0usize;
    let mut images = BTreeSet::new();
    let mut inverse_ok = true;
    let mut semis = BTreeSet::new();
    for shape in partitions(n) {
        semis.extend(column_semistandard(&shape)?);
        for t in standard_tableaux(&shape)? {
            for j in subsets(&t.descents()) {
                pairs += 1;
                let u = t.t_j(&j)?;
                inverse_ok &= u.decompose()? == (t.clone(), j);
                images.insert(u);
            }
        }
    }
    let bijective = inverse_ok && images.len() == pairs && images == semis;
    Ok(BijectionCount {
        n,
        pairs,
        semistandard: semis.len(),
        bijective,
    })
}

/// All subsets of `s`, by increasing size then lexicographically.
pub fn subsets(s: &Subset) -> Vec<Subset> {
    let items: Vec<usize> = s.iter().copied().collect();
    let mut out: Vec<Subset> = (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
