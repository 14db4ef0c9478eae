//! Bit-packed vectors and matrices over GF(2).
//!
//! Coordinates are 0-based here. The Pauli, Plücker and projection layers
//! translate to the 1-based subscripts used in their text formats.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2) of fixed length.
///
/// Bits beyond `len` are always zero, so the derived `Hash` and `Eq` agree
/// with coordinate-wise equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinVec {
    len: usize,
    words: Vec<u64>,
}

impl BinVec {
    pub fn zeros(len: usize) -> Self {
        BinVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % WORD);
            }
            len += 1;
        }
        BinVec { len, words }
    }

    /// Builds a vector whose coordinate `i` is bit `i` of `word`.
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_u64 needs len <= 64, got {len}");
        let mask = if len == WORD {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word & mask;
        }
        v
    }

    /// Packs the vector into a `u64` (coordinate `i` at bit `i`).
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "to_u64 needs len <= 64, got {}", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BinVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard dot product over GF(2).
    pub fn dot(&self, other: &BinVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    /// Lowest index holding a one.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl Ord for BinVec {
    /// Lexicographic on coordinates (coordinate 0 first, 0 < 1), then by length.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BinVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinVec({self})")
    }
}

/// Whether [`BinMat::rref_with`] keeps the zero rows left by elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroRows {
    Drop,
    Keep,
}

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinMat {
    cols: usize,
    rows: Vec<BinVec>,
}

impl BinMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinMat {
            cols,
            rows: vec![BinVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BinMat {
            cols: n,
            rows: (0..n).map(|i| BinVec::unit(n, i)).collect(),
        }
    }

    /// Panics if the rows do not all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BinVec>) -> Self {
        for r in &rows {
            assert_eq!(
                r.len(),
                cols,
                "row length {} does not match column count {cols}",
                r.len()
            );
        }
        BinMat { cols, rows }
    }

    /// Rows given as 0/1 slices; convenient for literals in tests.
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| BinVec::from_bools(r.iter().map(|&b| b != 0)))
                .collect(),
        )
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BinVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BinVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BinVec> {
        self.rows
    }

    pub fn transpose(&self) -> BinMat {
        let mut t = BinMat::zeros(self.cols, self.n_rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &BinMat) -> Result<BinMat> {
        if self.cols != rhs.n_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.n_rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BinVec::zeros(rhs.cols);
                for k in row.ones() {
                    acc.xor_assign(&rhs.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BinMat {
            cols: rhs.cols,
            rows,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.cols).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduced row echelon form with zero rows dropped.
    ///
    /// This is the canonical form of the row space: two matrices have the
    /// same row space iff their `rref()` are equal.
    pub fn rref(&self) -> BinMat {
        self.rref_with(ZeroRows::Drop)
    }

    pub fn rref_with(&self, zero_rows: ZeroRows) -> BinMat {
        let mut rows = self.rows.clone();
        let rank = eliminate(&mut rows, self.cols, true);
        if zero_rows == ZeroRows::Drop {
            rows.truncate(rank);
        }
        BinMat {
            cols: self.cols,
            rows,
        }
    }

    /// Pivot column of each row of an echelon matrix.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().filter_map(BinVec::first_one).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        eliminate(&mut rows, self.cols, false)
    }

    /// Basis (as rows) of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> BinMat {
        let r = self.rref();
        let pivots = r.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BinVec::unit(self.cols, free);
                for (row, &p) in r.rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BinMat {
            cols: self.cols,
            rows: basis,
        }
    }

    pub fn det(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.n_rows(),
                cols: self.cols,
            });
        }
        let mut rows = self.rows.clone();
        Ok(eliminate(&mut rows, self.cols, false) == self.cols)
    }

    /// The submatrix on the given rows and columns, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<BinMat> {
        self.check_indices(rows, cols)?;
        let sub = rows
            .iter()
            .map(|&r| BinVec::from_bools(cols.iter().map(|&c| self.get(r, c))))
            .collect();
        Ok(BinMat {
            cols: cols.len(),
            rows: sub,
        })
    }

    /// Determinant of the submatrix on `rows` x `cols`. The empty minor is 1.
    ///
    /// Gathers the selected bits straight into machine words instead of
    /// materialising a [`BinMat`].
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<bool> {
        if rows.len() != cols.len() {
            return Err(Error::NotSquare {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        self.check_indices(rows, cols)?;
        let k = cols.len();
        if k > WORD {
            return self.submatrix(rows, cols)?.det();
        }
        let mut packed: Vec<u64> = rows
            .iter()
            .map(|&r| {
                let row = &self.rows[r];
                cols.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &c)| acc | (row.get(c) as u64) << j)
            })
            .collect();
        Ok(word_det(&mut packed, k))
    }

    fn check_indices(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.n_rows()) {
            return Err(Error::IndexOutOfRange {
                index: r,
                bound: self.n_rows(),
            });
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: c,
                bound: self.cols,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BinMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinMat {}x{} [", self.n_rows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

/// Gaussian elimination in place; returns the rank. With `reduce` the result
/// is fully reduced (zeros above pivots too). Nonzero rows end up first.
fn eliminate(rows: &mut [BinVec], cols: usize, reduce: bool) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for r in tail.iter_mut() {
            if r.get(c) {
                r.xor_assign(pivot);
            }
        }
        if reduce {
            let (above, rest) = rows.split_at_mut(rank);
            for r in above.iter_mut() {
                if r.get(c) {
                    r.xor_assign(&rest[0]);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a k x k matrix whose row `i` is packed in `rows[i]`.
pub(crate) fn word_det(rows: &mut [u64], k: usize) -> bool {
    for c in 0..k {
        let bit = 1u64 << c;
        let Some(p) = (c..k).find(|&r| rows[r] & bit != 0) else {
            return false;
        };
        rows.swap(c, p);
        let pivot = rows[c];
        for r in rows[c + 1..k].iter_mut() {
            if *r & bit != 0 {
                *r ^= pivot;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_mat(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinMat> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BinMat::from_rows(c, rows.into_iter().map(BinVec::from_bools).collect())
                },
            )
        })
    }

    fn arb_square(max: usize) -> impl Strategy<Value = BinMat> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(any::<bool>(), n), n).prop_map(
                move |rows| {
                    BinMat::from_rows(n, rows.into_iter().map(BinVec::from_bools).collect())
                },
            )
        })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BinMat::identity(4).rank(), 4);
        assert_eq!(BinMat::zeros(3, 5).rank(), 0);
        let m = BinMat::from_bits(&[
            &[1, 1, 0, 0, 0, 0],
            &[0, 0, 0, 1, 1, 0],
            &[0, 0, 0, 0, 0, 1],
        ]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rref_examples() {
        assert_eq!(BinMat::identity(3).rref(), BinMat::identity(3));
        let m = BinMat::from_bits(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.rref(), BinMat::from_bits(&[&[1, 0], &[0, 1]]));
        let m = BinMat::from_bits(&[&[1, 1, 0], &[0, 0, 0], &[1, 1, 0]]);
        assert_eq!(m.rref().n_rows(), 1);
        assert_eq!(m.rref_with(ZeroRows::Keep).n_rows(), 3);
    }

    #[test]
    fn rref_ignores_row_order() {
        let a = BinMat::from_bits(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 1, 0]]);
        let b = BinMat::from_bits(&[&[1, 1, 1, 0], &[1, 0, 1, 1], &[0, 1, 1, 0]]);
        assert_eq!(a.rref(), b.rref());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BinMat::identity(4).kernel().n_rows(), 0);
        assert_eq!(BinMat::zeros(2, 3).kernel().n_rows(), 3);
        let m = BinMat::from_bits(&[&[1, 1, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.n_rows(), 3);
        for v in k.rows() {
            assert!(!m.row(0).dot(v));
        }
    }

    #[test]
    fn det_examples() {
        assert!(BinMat::identity(5).det().unwrap());
        assert!(!BinMat::from_bits(&[&[1, 1], &[1, 1]]).det().unwrap());
        assert!(BinMat::from_bits(&[&[0, 1], &[1, 0]]).det().unwrap());
        assert!(matches!(
            BinMat::zeros(2, 3).det(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn minor_examples() {
        let a = BinMat::from_bits(&[&[0, 1], &[1, 0]]);
        assert!(a.minor(&[], &[]).unwrap());
        assert!(!a.minor(&[0], &[0]).unwrap());
        assert!(a.minor(&[0, 1], &[0, 1]).unwrap());
        assert!(matches!(
            a.minor(&[0], &[0, 1]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            a.minor(&[2], &[0]),
            Err(Error::IndexOutOfRange { index: 2, bound: 2 })
        ));
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a = BinVec::from_bools([true, false, false]);
        let b = BinVec::from_bools([false, true, true]);
        assert!(a > b);
        let long = BinVec::from_bools((0..130).map(|i| i == 100));
        let longer = BinVec::from_bools((0..130).map(|i| i == 99));
        assert!(longer > long);
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_row_space_preserving(m in arb_mat(7, 9)) {
            let r = m.rref();
            prop_assert_eq!(r.rref(), r.clone());
            prop_assert_eq!(r.n_rows(), m.rank());
            let mut stacked = m.rows().to_vec();
            stacked.extend(r.rows().iter().cloned());
            prop_assert_eq!(BinMat::from_rows(m.n_cols(), stacked).rank(), m.rank());
        }

        #[test]
        fn rref_invariant_under_row_operations(m in arb_mat(6, 8), ops in prop::collection::vec((0usize..6, 0usize..6), 0..12)) {
            let mut rows = m.rows().to_vec();
            for (a, b) in ops {
                let (a, b) = (a % rows.len(), b % rows.len());
                if a != b {
                    let src = rows[b].clone();
                    rows[a].xor_assign(&src);
                } else if rows.len() > 1 {
                    let len = rows.len();
                    rows.swap(a, (a + 1) % len);
                }
            }
            prop_assert_eq!(BinMat::from_rows(m.n_cols(), rows).rref(), m.rref());
        }

        #[test]
        fn rank_nullity(m in arb_mat(8, 10)) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.n_rows(), m.n_cols());
            prop_assert_eq!(k.rank(), k.n_rows());
            for v in k.rows() {
                for row in m.rows() {
                    prop_assert!(!row.dot(v));
                }
            }
        }

        #[test]
        fn det_is_multiplicative(a in arb_square(6), seed in any::<u64>()) {
            let n = a.n_rows();
            let b = BinMat::from_rows(n, (0..n).map(|i| BinVec::from_u64(n, seed.rotate_left(7 * i as u32))).collect());
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() & b.det().unwrap());
        }

        #[test]
        fn minor_matches_materialised_submatrix(m in arb_mat(7, 7), rsel in any::<u8>(), csel in any::<u8>()) {
            let rows: Vec<usize> = (0..m.n_rows()).filter(|i| rsel >> i & 1 == 1).collect();
            let cols: Vec<usize> = (0..m.n_cols()).filter(|i| csel >> i & 1 == 1).take(rows.len()).collect();
            let rows = &rows[..cols.len()];
            let sub = m.submatrix(rows, &cols).unwrap();
            let via_sub = if cols.is_empty() { true } else { sub.det().unwrap() };
            prop_assert_eq!(m.minor(rows, &cols).unwrap(), via_sub);
        }
    }
}
