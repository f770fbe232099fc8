//! Unfoldings of skew-symmetrizable matrices: a skew-symmetric matrix `C`
//! whose indices are split into blocks `E_1..E_n` with `|E_i| = d_i`, such
//! that each column of the block `E_i x E_j` sums to `b_ij` and the block is
//! nonnegative whenever `b_ij >= 0`. Mutating `B` at `i` corresponds to
//! mutating `C` at every index of `E_i`.

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::matrix::{CoefficientVector, ExchangeMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UnfoldingRecord", into = "UnfoldingRecord")]
pub struct UnfoldingSpec {
    name: String,
    base: ExchangeMatrix,
    blocks: Vec<Vec<usize>>,
    unfolded: ExchangeMatrix,
}

/// Plain form used for JSON fixtures. Rows include frozen rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct UnfoldingRecord {
    name: String,
    base: Vec<Vec<i64>>,
    d: Vec<i64>,
    blocks: Vec<Vec<usize>>,
    unfolded: Vec<Vec<i64>>,
}

impl TryFrom<UnfoldingRecord> for UnfoldingSpec {
    type Error = Error;

    fn try_from(r: UnfoldingRecord) -> Result<Self> {
        let n = r.d.len();
        let big = r.blocks.iter().map(Vec::len).sum();
        let base = matrix_from_rows(r.base, n, Some(r.d))?;
        let unfolded = matrix_from_rows(r.unfolded, big, None)?;
        UnfoldingSpec::new(r.name, base, r.blocks, unfolded)
    }
}

impl From<UnfoldingSpec> for UnfoldingRecord {
    fn from(u: UnfoldingSpec) -> Self {
        let rows = |m: &ExchangeMatrix| m.rows().map(<[i64]>::to_vec).collect();
        UnfoldingRecord {
            base: rows(&u.base),
            d: u.base.symmetrizer().to_vec(),
            unfolded: rows(&u.unfolded),
            blocks: u.blocks,
            name: u.name,
        }
    }
}

fn matrix_from_rows(rows: Vec<Vec<i64>>, n: usize, d: Option<Vec<i64>>) -> Result<ExchangeMatrix> {
    if rows.len() < n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("expected rows of length {n} and at least {n} of them")));
    }
    let m = rows.len();
    ExchangeMatrix::from_parts(n, m, rows.into_iter().flatten().collect(), d)
}

impl UnfoldingSpec {
    /// Checks shapes and the unfolding conditions.
    pub fn new(
        name: impl Into<String>,
        base: ExchangeMatrix,
        blocks: Vec<Vec<usize>>,
        unfolded: ExchangeMatrix,
    ) -> Result<Self> {
        let u = UnfoldingSpec { name: name.into(), base, blocks, unfolded };
        u.check_shapes()?;
        validate_unfolding(&u)?;
        Ok(u)
    }

    /// Folds a skew-symmetric `c` along the given blocks; the base matrix is
    /// read off from the column sums.
    pub fn fold(name: impl Into<String>, c: ExchangeMatrix, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = blocks.len();
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::EmptySubset);
        }
        let mut entries = Vec::with_capacity(n * n);
        for ei in &blocks {
            for ej in &blocks {
                entries.push(ei.iter().map(|&a| c.get(a, ej[0])).sum());
            }
        }
        let d = blocks.iter().map(|e| e.len() as i64).collect();
        let base = ExchangeMatrix::from_parts(n, n, entries, Some(d))?;
        UnfoldingSpec::new(name, base, blocks, c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &ExchangeMatrix {
        &self.base
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn unfolded(&self) -> &ExchangeMatrix {
        &self.unfolded
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Same unfolding with one more frozen row on both sides: `-b` on the
    /// base, and `-b_j` repeated over `E_j` on the unfolded side.
    pub fn with_coefficients(&self, b: &CoefficientVector) -> Result<Self> {
        let base = self.base.with_coefficients(b)?;
        let unfolded = self.unfolded.with_coefficients(&self.lift(b)?)?;
        Ok(UnfoldingSpec { name: self.name.clone(), base, blocks: self.blocks.clone(), unfolded })
    }

    /// `b_hat`: each `b_j` repeated over the block `E_j`.
    pub fn lift(&self, b: &CoefficientVector) -> Result<CoefficientVector> {
        let n = self.base.n();
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {n} vertices", b.len())));
        }
        let mut out = vec![0; self.unfolded.n()];
        for (j, e) in self.blocks.iter().enumerate() {
            for &x in e {
                out[x] = b[j];
            }
        }
        Ok(CoefficientVector::new(out))
    }

    fn check_shapes(&self) -> Result<()> {
        let (n, big) = (self.base.n(), self.unfolded.n());
        if self.blocks.len() != n {
            return Err(Error::DimensionMismatch(format!("{} blocks for {n} vertices", self.blocks.len())));
        }
        if self.base.frozen_count() != self.unfolded.frozen_count() {
            return Err(Error::DimensionMismatch("frozen row counts differ".into()));
        }
        let d = self.base.symmetrizer();
        let mut seen = vec![false; big];
        for (i, e) in self.blocks.iter().enumerate() {
            if e.len() as i64 != d[i] {
                return Err(Error::DimensionMismatch(format!("block {i} has {} indices, d_{i} = {}", e.len(), d[i])));
            }
            for &x in e {
                if x >= big || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::DimensionMismatch(format!("blocks do not partition 0..{big}")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::DimensionMismatch(format!("blocks do not partition 0..{big}")));
        }
        if !self.unfolded.is_skew_symmetric() {
            return Err(Error::DimensionMismatch("unfolded matrix is not skew-symmetric".into()));
        }
        Ok(())
    }
}

/// Checks column sums, sign coherence and the frozen blocks.
pub fn validate_unfolding(u: &UnfoldingSpec) -> Result<()> {
    let (b, c) = (&u.base, &u.unfolded);
    for (i, ei) in u.blocks.iter().enumerate() {
        for (j, ej) in u.blocks.iter().enumerate() {
            let bij = b.get(i, j);
            for &col in ej {
                if ei.iter().map(|&r| c.get(r, col)).sum::<i64>() != bij {
                    return Err(Error::Condition1Violated { i, j, column: col });
                }
                if bij >= 0 {
                    if let Some(entry) = ei.iter().map(|&r| c.get(r, col)).find(|&x| x < 0) {
                        return Err(Error::Condition2Violated { i, j, entry });
                    }
                }
            }
        }
    }
    for r in 0..b.frozen_count() {
        for (j, ej) in u.blocks.iter().enumerate() {
            let want = b.get(b.n() + r, j);
            if ej.iter().any(|&x| c.get(c.n() + r, x) != want) {
                return Err(Error::FrozenBlockMismatch { block: j });
            }
        }
    }
    Ok(())
}

/// Mutation at `i` on the base and at every index of `E_i` on the unfolded side.
pub fn composite_mutate(u: &UnfoldingSpec, i: usize) -> Result<UnfoldingSpec> {
    let block = u.blocks.get(i).ok_or(Error::FrozenIndex { index: i, n: u.blocks.len() })?;
    for (x, &a) in block.iter().enumerate() {
        if let Some(&b) = block[x + 1..].iter().find(|&&b| u.unfolded.get(a, b) != 0) {
            return Err(Error::CommutationFailure { block: i, a, b });
        }
    }
    let mut c = u.unfolded.clone();
    for &a in block {
        c = c.mutate(a)?;
    }
    let out = UnfoldingSpec { name: u.name.clone(), base: u.base.mutate(i)?, blocks: u.blocks.clone(), unfolded: c };
    validate_unfolding(&out)?;
    Ok(out)
}

/// Principal part of the unfolded matrix with the frozen row `-b_hat`.
pub fn unfold_extended(u: &UnfoldingSpec, b: &CoefficientVector) -> Result<ExchangeMatrix> {
    u.unfolded.principal().with_coefficients(&u.lift(b)?)
}

/// Rank-two weight-four matrix with `d = (1, 4)` unfolded to a star with four leaves.
pub fn a14() -> UnfoldingSpec {
    let c = ExchangeMatrix::from_arrows(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]).expect("star");
    UnfoldingSpec::fold("a14", c, vec![vec![0], vec![1, 2, 3, 4]]).expect("valid unfolding")
}

/// Affine G2 from the double-arrow form of affine D4, all three wings folded together.
pub fn g2_from_d4() -> UnfoldingSpec {
    UnfoldingSpec::fold("g2_from_d4", catalog::affine_d_double(4), vec![vec![0], vec![1], vec![2, 3, 4]])
        .expect("valid unfolding")
}

/// Affine F4 from the double-arrow form of affine E6, the two wings of length two folded.
pub fn f4_from_e6() -> UnfoldingSpec {
    let blocks = vec![vec![0], vec![1], vec![2], vec![3, 5], vec![4, 6]];
    UnfoldingSpec::fold("f4_from_e6", catalog::affine_e_double(6), blocks).expect("valid unfolding")
}

/// Affine B from the double-arrow form of affine D_n, the two single-vertex wings folded.
pub fn b_from_d(n: usize) -> UnfoldingSpec {
    assert!(n >= 5);
    let mut blocks = vec![vec![0], vec![1], vec![2, n]];
    blocks.extend((3..n).map(|v| vec![v]));
    UnfoldingSpec::fold(format!("b_from_d{n}"), catalog::affine_d_double(n), blocks).expect("valid unfolding")
}

/// Affine C from the double-arrow form of the cycle with `n` arrows each way,
/// the two wings folded onto each other.
pub fn c_from_a(n: usize) -> UnfoldingSpec {
    assert!(n >= 2);
    let mut blocks = vec![vec![0], vec![1]];
    blocks.extend((0..n - 1).map(|k| vec![2 + k, 1 + n + k]));
    UnfoldingSpec::fold(format!("c_from_a{n}{n}"), catalog::double_arrow_with_wings(&[n - 1, n - 1]), blocks)
        .expect("valid unfolding")
}

/// All shipped unfoldings.
pub fn fixtures() -> Vec<UnfoldingSpec> {
    vec![a14(), g2_from_d4(), f4_from_e6(), b_from_d(5), c_from_a(3)]
}

/// Shipped unfolding by name.
pub fn fixture(name: &str) -> Option<UnfoldingSpec> {
    fixtures().into_iter().find(|u| u.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a14_matrices() {
        let u = a14();
        assert_eq!(u.base().entries(), &[0, 1, -4, 0]);
        assert_eq!(u.base().symmetrizer(), &[1, 4]);
        assert_eq!(u.unfolded().row(0), &[0, 1, 1, 1, 1]);
        let b = CoefficientVector::new(vec![-2, 1]);
        assert_eq!(u.lift(&b).unwrap().as_slice(), &[-2, 1, 1, 1, 1]);
        let e = unfold_extended(&u, &b).unwrap();
        assert_eq!(e.row(5), &[2, -1, -1, -1, -1]);
    }

    #[test]
    fn broken_block_entry() {
        let u = a14();
        let mut c: Vec<Vec<i64>> = u.unfolded().rows().map(<[i64]>::to_vec).collect();
        c[0][1] = 2;
        c[1][0] = -2;
        let c = ExchangeMatrix::new(c, None).unwrap();
        let err = UnfoldingSpec::new("x", u.base().clone(), u.blocks().to_vec(), c).unwrap_err();
        assert_eq!(err, Error::Condition1Violated { i: 0, j: 1, column: 1 });
    }

    #[test]
    fn mismatched_frozen_row() {
        let u = a14();
        let base = u.base().with_coefficients(&CoefficientVector::new(vec![1, 2])).unwrap();
        let c = u.unfolded().with_coefficients(&CoefficientVector::new(vec![1, 2, 2, 2, 0])).unwrap();
        let err = UnfoldingSpec::new("x", base, u.blocks().to_vec(), c).unwrap_err();
        assert_eq!(err, Error::FrozenBlockMismatch { block: 1 });
    }

    #[test]
    fn sign_incoherent_block() {
        // two leaves of a star with opposite orientation cannot fold
        let c = ExchangeMatrix::from_arrows(3, &[(0, 1, 1), (2, 0, 1)]).unwrap();
        assert!(UnfoldingSpec::fold("x", c, vec![vec![0], vec![1, 2]]).is_err());
    }

    #[test]
    fn composite_mutation_is_an_involution() {
        for u in fixtures() {
            for i in 0..u.base().n() {
                let v = composite_mutate(&u, i).unwrap();
                assert_eq!(composite_mutate(&v, i).unwrap(), u, "{} at {i}", u.name());
            }
        }
    }

    #[test]
    fn adjacent_block_is_rejected() {
        let c = ExchangeMatrix::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let base = ExchangeMatrix::new(vec![vec![0]], Some(vec![2])).unwrap();
        let u = UnfoldingSpec { name: "x".into(), base, blocks: vec![vec![0, 1]], unfolded: c };
        assert_eq!(composite_mutate(&u, 0).unwrap_err(), Error::CommutationFailure { block: 0, a: 0, b: 1 });
    }

    #[test]
    fn json_roundtrip() {
        for u in fixtures() {
            assert_eq!(UnfoldingSpec::from_json(&u.to_json()).unwrap(), u);
        }
    }
}
