//! Extended exchange matrices and matrix mutation.
//!
//! An [`ExchangeMatrix`] has `m` rows and `n` columns. The first `n` rows form
//! the skew-symmetrizable principal part; the remaining rows are frozen.
//! Symmetrizers follow the convention `b_ij * d_j = -b_ji * d_i`.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    m: usize,
    entries: Vec<i64>,
    d: Vec<i64>,
}

/// Coefficients `b_1..b_n` of a single frozen vertex. The frozen row stores `-b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoefficientVector(Vec<i64>);

/// Mutation indices, applied left to right. Indices are zero-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationSequence(Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    /// `|b_ij * b_ji|`
    pub weight: i64,
    /// Weight 4 between vertices with equal symmetrizer entries.
    pub double: bool,
}

/// Weighted diagram of the principal part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramView {
    pub n: usize,
    pub d: Vec<i64>,
    pub arrows: Vec<Arrow>,
}

impl ExchangeMatrix {
    /// Builds a matrix from rows. The column count `n` is the row length and the
    /// first `n` rows are the principal part. Without `symmetrizer` the minimal
    /// one is inferred per connected component.
    pub fn new(rows: Vec<Vec<i64>>, symmetrizer: Option<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows have different lengths".into()));
        }
        if m < n {
            return Err(Error::DimensionMismatch(format!("{m} rows but {n} columns")));
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        Self::from_parts(n, m, entries, symmetrizer)
    }

    pub fn from_parts(n: usize, m: usize, entries: Vec<i64>, symmetrizer: Option<Vec<i64>>) -> Result<Self> {
        if entries.len() != n * m || m < n {
            return Err(Error::DimensionMismatch(format!("{} entries for a {m}x{n} matrix", entries.len())));
        }
        let mut out = ExchangeMatrix { n, m, entries, d: vec![1; n] };
        for i in 0..n {
            if out.get(i, i) != 0 {
                return Err(Error::NonzeroDiagonal { index: i });
            }
        }
        match symmetrizer {
            Some(d) => {
                out.check_symmetrizer(&d)?;
                out.d = d;
            }
            None => out.d = out.infer_symmetrizer()?,
        }
        Ok(out)
    }

    /// Principal part from an arrow list `(tail, head, multiplicity)` on `n` vertices.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let mut entries = vec![0i64; n * n];
        for &(t, h, w) in arrows {
            for idx in [t, h] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, len: n });
                }
            }
            entries[t * n + h] += w;
            entries[h * n + t] -= w;
        }
        Self::from_parts(n, n, entries, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn frozen_count(&self) -> usize {
        self.m - self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.n.max(1)).take(self.m)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).saturating_mul(self.get(j, i)).saturating_abs()
    }

    pub fn max_weight(&self) -> i64 {
        let mut best = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                best = best.max(self.weight(i, j));
            }
        }
        best
    }

    /// Principal part with frozen rows dropped.
    pub fn principal(&self) -> ExchangeMatrix {
        ExchangeMatrix { n: self.n, m: self.n, entries: self.entries[..self.n * self.n].to_vec(), d: self.d.clone() }
    }

    /// Coefficient vector carried by frozen row `r` (counted from zero among frozen rows).
    pub fn coefficients(&self, r: usize) -> Result<CoefficientVector> {
        if r >= self.frozen_count() {
            return Err(Error::IndexOutOfRange { index: r, len: self.frozen_count() });
        }
        Ok(CoefficientVector(self.row(self.n + r).iter().map(|&x| -x).collect()))
    }

    /// Appends one frozen row carrying `b`.
    pub fn with_coefficients(&self, b: &CoefficientVector) -> Result<ExchangeMatrix> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {} vertices", b.len(), self.n)));
        }
        let mut entries = self.entries.clone();
        for &x in b.as_slice() {
            entries.push(x.checked_neg().ok_or(Error::Overflow)?);
        }
        Ok(ExchangeMatrix { n: self.n, m: self.m + 1, entries, d: self.d.clone() })
    }

    /// Keeps only frozen row `r`.
    pub fn single_frozen_row(&self, r: usize) -> Result<ExchangeMatrix> {
        let b = self.coefficients(r)?;
        self.principal().with_coefficients(&b)
    }

    /// Matrix mutation at mutable index `k`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        let mut out = self.clone();
        self.mutate_into(k, &mut out)?;
        Ok(out)
    }

    /// Writes the mutation of `self` at `k` into `out`, reusing its buffer.
    pub fn mutate_into(&self, k: usize, out: &mut ExchangeMatrix) -> Result<()> {
        let n = self.n;
        if k >= n {
            return Err(Error::FrozenIndex { index: k, n });
        }
        out.n = n;
        out.m = self.m;
        out.d.clone_from(&self.d);
        out.entries.clear();
        out.entries.reserve(self.entries.len());
        let krow = self.row(k);
        for i in 0..self.m {
            let row = self.row(i);
            let bik = row[k];
            for j in 0..n {
                let bij = row[j];
                let v = if i == k || j == k {
                    -bij
                } else {
                    let bkj = krow[j];
                    if bik > 0 && bkj > 0 {
                        bij.checked_add(bik.checked_mul(bkj).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?
                    } else if bik < 0 && bkj < 0 {
                        bij.checked_sub(bik.checked_mul(bkj).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?
                    } else {
                        bij
                    }
                };
                out.entries.push(v);
            }
        }
        Ok(())
    }

    pub fn apply(&self, seq: &MutationSequence) -> Result<ExchangeMatrix> {
        let mut cur = self.clone();
        let mut next = self.clone();
        for &k in seq.iter() {
            cur.mutate_into(k, &mut next)?;
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    /// Negation of all entries.
    pub fn opposite(&self) -> ExchangeMatrix {
        ExchangeMatrix { n: self.n, m: self.m, entries: self.entries.iter().map(|&x| -x).collect(), d: self.d.clone() }
    }

    /// Submatrix on the listed vertices. Indices below `n` select mutable
    /// vertices, indices `n..m` select frozen rows. The symmetrizer is
    /// renormalized on each component of the restriction.
    pub fn restrict(&self, vertices: &[usize]) -> Result<ExchangeMatrix> {
        let mut cols = Vec::new();
        let mut frozen = Vec::new();
        for &v in vertices {
            if v >= self.m {
                return Err(Error::IndexOutOfRange { index: v, len: self.m });
            }
            if v < self.n {
                cols.push(v);
            } else {
                frozen.push(v);
            }
        }
        if cols.is_empty() {
            return Err(Error::EmptySubset);
        }
        let k = cols.len();
        let mut entries = Vec::with_capacity((k + frozen.len()) * k);
        for &i in cols.iter().chain(frozen.iter()) {
            entries.extend(cols.iter().map(|&j| self.get(i, j)));
        }
        let mut out =
            ExchangeMatrix { n: k, m: k + frozen.len(), entries, d: cols.iter().map(|&c| self.d[c]).collect() };
        out.normalize_symmetrizer();
        Ok(out)
    }

    /// Renames mutable vertex `i` to `perm[i]`; frozen rows keep their order.
    pub fn relabel(&self, perm: &[usize]) -> Result<ExchangeMatrix> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch(format!("permutation of length {} for {n} vertices", perm.len())));
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::DimensionMismatch("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut entries = vec![0; self.entries.len()];
        for i in 0..self.m {
            let ni = if i < n { perm[i] } else { i };
            for j in 0..n {
                entries[ni * n + perm[j]] = self.get(i, j);
            }
        }
        let mut d = vec![0; n];
        for i in 0..n {
            d[perm[i]] = self.d[i];
        }
        Ok(ExchangeMatrix { n, m: self.m, entries, d })
    }

    pub fn diagram(&self) -> DiagramView {
        let mut arrows = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) > 0 {
                    let weight = self.weight(i, j);
                    arrows.push(Arrow { tail: i, head: j, weight, double: weight == 4 && self.d[i] == self.d[j] });
                }
            }
        }
        DiagramView { n: self.n, d: self.d.clone(), arrows }
    }

    /// Connected components of the principal part, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in 0..n {
                    if comp[u] == usize::MAX && (self.get(v, u) != 0 || self.get(u, v) != 0) {
                        comp[u] = id;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn check_symmetrizer(&self, d: &[i64]) -> Result<()> {
        if d.len() != self.n {
            return Err(Error::InvalidSymmetrizer(format!("length {} for {} vertices", d.len(), self.n)));
        }
        if let Some(x) = d.iter().find(|&&x| x <= 0) {
            return Err(Error::InvalidSymmetrizer(format!("entry {x} is not positive")));
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                let lhs = self.get(i, j) as i128 * d[j] as i128;
                let rhs = -(self.get(j, i) as i128) * d[i] as i128;
                if lhs != rhs {
                    return Err(Error::InvalidSymmetrizer(format!("fails on pair ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    fn infer_symmetrizer(&self) -> Result<Vec<i64>> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.get(i, j), self.get(j, i));
                if (a == 0) != (b == 0) || (a != 0 && a.signum() == b.signum()) {
                    return Err(Error::NotSkewSymmetrizable { i, j });
                }
            }
        }
        // d as reduced fractions (num, den), fixed to 1 at the first vertex of each component
        let mut frac: Vec<Option<(i128, i128)>> = vec![None; n];
        let mut d = vec![0i64; n];
        for comp in self.components() {
            frac[comp[0]] = Some((1, 1));
            let mut queue = VecDeque::from([comp[0]]);
            while let Some(i) = queue.pop_front() {
                let (p, q) = frac[i].expect("visited vertex has a value");
                for j in 0..n {
                    let bij = self.get(i, j);
                    if bij == 0 {
                        continue;
                    }
                    // d_j = d_i * (-b_ji) / b_ij
                    let num = p * -(self.get(j, i) as i128);
                    let den = q * bij as i128;
                    let g = num.gcd(&den);
                    let (num, den) = if den < 0 { (-num / g, -den / g) } else { (num / g, den / g) };
                    match frac[j] {
                        None => {
                            frac[j] = Some((num, den));
                            queue.push_back(j);
                        }
                        Some(existing) if existing != (num, den) => {
                            return Err(Error::NotSkewSymmetrizable { i, j });
                        }
                        Some(_) => {}
                    }
                }
            }
            let lcm = comp.iter().fold(1i128, |acc, &v| acc.lcm(&frac[v].unwrap().1));
            let scaled: Vec<i128> = comp.iter().map(|&v| frac[v].unwrap().0 * (lcm / frac[v].unwrap().1)).collect();
            let g = scaled.iter().fold(0i128, |acc, &x| acc.gcd(&x));
            for (&v, &x) in comp.iter().zip(&scaled) {
                d[v] = i64::try_from(x / g).map_err(|_| Error::Overflow)?;
            }
        }
        Ok(d)
    }

    fn normalize_symmetrizer(&mut self) {
        for comp in self.components() {
            let g = comp.iter().fold(0i64, |acc, &v| acc.gcd(&self.d[v]));
            if g > 1 {
                for &v in &comp {
                    self.d[v] /= g;
                }
            }
        }
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i == self.n && self.frozen_count() > 0 {
                writeln!(f, "{}", "-".repeat(4 * self.n))?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl CoefficientVector {
    pub fn new(values: Vec<i64>) -> Self {
        CoefficientVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        CoefficientVector(vec![0; n])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl From<Vec<i64>> for CoefficientVector {
    fn from(v: Vec<i64>) -> Self {
        CoefficientVector(v)
    }
}

impl std::ops::Index<usize> for CoefficientVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl MutationSequence {
    pub fn new(indices: Vec<usize>) -> Self {
        MutationSequence(indices)
    }

    pub fn empty() -> Self {
        MutationSequence(Vec::new())
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &usize> + ExactSizeIterator {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn then(&self, k: usize) -> MutationSequence {
        let mut v = self.0.clone();
        v.push(k);
        MutationSequence(v)
    }

    /// `self` followed by `other`.
    pub fn followed_by(&self, other: &MutationSequence) -> MutationSequence {
        MutationSequence(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Reversed sequence; undoes `self` because every mutation is an involution.
    pub fn reversed(&self) -> MutationSequence {
        MutationSequence(self.0.iter().rev().copied().collect())
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> MutationSequence {
        MutationSequence(self.0.iter().map(|&k| f(k)).collect())
    }
}

impl From<Vec<usize>> for MutationSequence {
    fn from(v: Vec<usize>) -> Self {
        MutationSequence(v)
    }
}

impl FromIterator<usize> for MutationSequence {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        MutationSequence(iter.into_iter().collect())
    }
}

impl DiagramView {
    pub fn max_weight(&self) -> i64 {
        self.arrows.iter().map(|a| a.weight).max().unwrap_or(0)
    }
}
