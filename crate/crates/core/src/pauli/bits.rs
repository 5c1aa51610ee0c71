//! Word-packed GF(2) vectors and matrices.
//!
//! Bit `i` of a [`BitVector`] lives in word `i / 64` at position `i % 64`.
//! Unused high bits of the last word are always zero, so word-wise equality,
//! hashing and ordering agree with bitwise semantics.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Low `len` bits of `value`, bit 0 first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len.min(WORD) {
            if (value >> i) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, leftmost character is bit 0.
    pub fn parse(text: &str) -> Option<Self> {
        let mut v = Self::zeros(text.chars().count());
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn swap_bits(&mut self, i: usize, j: usize) {
        let (a, b) = (self.get(i), self.get(j));
        self.set(i, b);
        self.set(j, a);
    }

    /// In-place XOR. Panics on length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Unsigned value with bit 0 as least significant. `None` above 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.len > WORD {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }

    /// Sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// A row addition `rows[target] ^= rows[source]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowOp {
    pub source: usize,
    pub target: usize,
}

/// Result of [`gauss_jordan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: BitMatrix,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub log: Vec<RowOp>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows of equal length. An empty row list needs
    /// the column count supplied separately.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            Error::check_dim(cols, r.len())?;
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows like `["110", "011"]`.
    pub fn parse_rows(rows: &[&str]) -> Option<Self> {
        let parsed: Option<Vec<_>> = rows.iter().map(|r| BitVector::parse(r)).collect();
        let parsed = parsed?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(cols, parsed).ok()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut BitVector {
        &mut self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        Error::check_dim(self.cols, row.len())?;
        self.rows.push(row);
        Ok(())
    }

    /// `rows[target] ^= rows[source]`.
    pub fn add_row(&mut self, source: usize, target: usize) {
        assert_ne!(source, target);
        let src = self.rows[source].clone();
        self.rows[target].xor_assign(&src);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        Error::check_dim(self.cols, other.rows())?;
        let mut out = BitMatrix::zeros(self.rows(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.iter_ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.count_ones() == 1 && r.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows() == self.cols && *self == self.transpose()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows() != self.cols {
            return None;
        }
        let n = self.cols;
        let mut work = self.clone();
        let mut inv = BitMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| work.get(r, col))?;
            if pivot != col {
                work.rows.swap(pivot, col);
                inv.rows.swap(pivot, col);
            }
            for r in 0..n {
                if r != col && work.get(r, col) {
                    work.add_row(col, r);
                    inv.add_row(col, r);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.to_string()))
            .finish()
    }
}

/// Rank over GF(2). The input is copied, not modified.
pub fn gf2_rank(m: &BitMatrix) -> usize {
    let mut rows: Vec<BitVector> = m.rows.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// Incrementally maintained row-echelon basis used for independence tests.
///
/// Each stored row has a distinct pivot (its lowest set bit) and is zero at
/// the pivots of every row stored before it, so a single in-order pass reduces
/// a candidate vector against the whole span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentBasis {
    cols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl IndependentBasis {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Residual of `v` after elimination against the basis.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` if it is outside the current span. Returns whether it was
    /// accepted; the zero vector is always rejected.
    pub fn try_extend(&mut self, v: &BitVector) -> Result<bool> {
        Error::check_dim(self.cols, v.len())?;
        let r = self.reduce(v);
        match r.first_one() {
            None => Ok(false),
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                Ok(true)
            }
        }
    }
}

/// Decision of [`independent_extend`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Accept,
    Reject,
}

/// Functional form of [`IndependentBasis::try_extend`] over a plain matrix:
/// returns the decision and the (possibly) extended matrix.
pub fn independent_extend(basis: &BitMatrix, v: &BitVector) -> Result<(Extension, BitMatrix)> {
    Error::check_dim(basis.cols(), v.len())?;
    let mut echelon = IndependentBasis::new(basis.cols());
    for row in basis.row_vectors() {
        echelon.try_extend(row)?;
    }
    if echelon.try_extend(v)? {
        let mut out = basis.clone();
        out.push_row(v.clone())?;
        Ok((Extension::Accept, out))
    } else {
        Ok((Extension::Reject, basis.clone()))
    }
}

/// Gauss-Jordan reduction by row additions only (no swaps).
///
/// Row `i` takes the first remaining set column as its pivot and that column is
/// cleared from every other row, so on exit each pivot column is a unit vector.
/// Requires `rows <= cols` and linearly independent rows; the first row that
/// reduces to zero is reported.
pub fn gauss_jordan(m: &BitMatrix) -> Result<Reduction> {
    if m.rows() > m.cols() {
        return Err(Error::Dependent { index: m.cols() });
    }
    let mut work = m.clone();
    let mut pivots = Vec::with_capacity(m.rows());
    let mut log = Vec::new();
    for i in 0..work.rows() {
        let Some(p) = work.row(i).first_one() else {
            return Err(Error::Dependent { index: i });
        };
        for r in 0..work.rows() {
            if r != i && work.get(r, p) {
                work.add_row(i, r);
                log.push(RowOp {
                    source: i,
                    target: r,
                });
            }
        }
        pivots.push(p);
    }
    Ok(Reduction {
        reduced: work,
        pivots,
        log,
    })
}

/// Solves `a · x = b` over GF(2); `None` when inconsistent. Free variables are
/// set to zero.
pub fn solve(a: &BitMatrix, b: &BitVector) -> Result<Option<BitVector>> {
    Error::check_dim(a.rows(), b.len())?;
    let n = a.cols();
    let mut rows: Vec<(BitVector, bool)> = a.row_vectors().iter().cloned().zip(b.iter()).collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0.get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let (pivot, pb) = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0.get(col) {
                row.0.xor_assign(&pivot);
                row.1 ^= pb;
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, rhs)| *rhs) {
        return Ok(None);
    }
    let mut x = BitVector::zeros(n);
    for (r, &c) in pivot_cols.iter().enumerate() {
        if rows[r].1 {
            x.set(c, true);
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::parse_rows(rows).unwrap()
    }

    fn v(s: &str) -> BitVector {
        BitVector::parse(s).unwrap()
    }

    #[test]
    fn bitvector_basics() {
        let mut a = BitVector::zeros(130);
        a.set(0, true);
        a.set(129, true);
        assert_eq!(a.count_ones(), 2);
        assert_eq!(a.iter_ones().collect::<Vec<_>>(), vec![0, 129]);
        assert_eq!(a.first_one(), Some(0));
        a.flip(0);
        assert_eq!(a.first_one(), Some(129));
        assert_eq!(v("0110").to_u64(), Some(6));
        assert_eq!(BitVector::from_u64(6, 4), v("0110"));
        assert_eq!(v("101").to_string(), "101");
        assert!(BitVector::parse("10a").is_none());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(gf2_rank(&BitMatrix::identity(3)), 3);
        assert_eq!(gf2_rank(&m(&["11", "11"])), 1);
        assert_eq!(gf2_rank(&m(&["110", "011", "101"])), 2);
        assert_eq!(gf2_rank(&BitMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn extend_examples() {
        let (d, b) = independent_extend(&m(&["10"]), &v("01")).unwrap();
        assert_eq!(d, Extension::Accept);
        assert_eq!(b.rows(), 2);

        let basis = m(&["10", "01"]);
        let (d, b) = independent_extend(&basis, &v("11")).unwrap();
        assert_eq!(d, Extension::Reject);
        assert_eq!(b, basis);

        let (d, _) = independent_extend(&BitMatrix::zeros(0, 3), &v("000")).unwrap();
        assert_eq!(d, Extension::Reject);

        assert!(matches!(
            independent_extend(&basis, &v("111")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn gauss_jordan_examples() {
        let r = gauss_jordan(&m(&["11", "01"])).unwrap();
        assert_eq!(r.reduced, m(&["10", "01"]));
        assert_eq!(
            r.log,
            vec![RowOp {
                source: 1,
                target: 0
            }]
        );

        let id = BitMatrix::identity(4);
        let r = gauss_jordan(&id).unwrap();
        assert_eq!(r.reduced, id);
        assert!(r.log.is_empty());

        let r = gauss_jordan(&m(&["111", "011", "001"])).unwrap();
        assert!(r.reduced.is_identity());

        assert_eq!(
            gauss_jordan(&m(&["110", "011", "101"])),
            Err(Error::Dependent { index: 2 })
        );
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&["110", "011", "001"]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(m(&["11", "11"]).inverse().is_none());

        let x = solve(&a, &v("101")).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), v("101"));
        assert_eq!(solve(&m(&["11", "11"]), &v("10")).unwrap(), None);
    }
}
