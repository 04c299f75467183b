//! Linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words. Elimination always pivots on the
//! leftmost nonzero column using the first available row, so every basis
//! this module returns is in reduced row-echelon form and is reproducible.
//!
//! Point indices follow the row-major grid convention used throughout the
//! crate: the point in row `r`, column `c` of an `n x n` grid (both 0-based)
//! is bit `r * n + c`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("ragged matrix: row {row} has length {found}, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("matrix has no rows")]
    Empty,
    #[error("bit index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Characteristic vector of a set of indices.
    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(len);
        for &i in indices {
            if i >= len {
                return Err(Gf2Error::OutOfRange { index: i, len });
            }
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, ignoring whitespace.
    pub fn parse(bits: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = bits
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bits(&b))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the one-bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    fn leading_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn check_len(&self, other: &Self) -> Result<(), Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    /// In-place binary sum.
    pub fn add_assign(&mut self, other: &Self) -> Result<(), Gf2Error> {
        self.check_len(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    /// Number of positions where both vectors are one.
    pub fn overlap(&self, other: &Self) -> Result<usize, Gf2Error> {
        self.check_len(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    /// Standard dot product, reduced mod 2.
    pub fn dot(&self, other: &Self) -> Result<bool, Gf2Error> {
        Ok(self.overlap(other)? % 2 == 1)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Gf2Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gf2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Gf2Vector::parse(&s).ok_or_else(|| serde::de::Error::custom("expected a 0/1 string"))
    }
}

/// Standard dot product of two vectors.
pub fn dot(v: &Gf2Vector, w: &Gf2Vector) -> Result<bool, Gf2Error> {
    v.dot(w)
}

/// A matrix over GF(2), stored as rows of equal length.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vector>,
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

impl Gf2Matrix {
    /// Builds a matrix, rejecting rows of unequal length.
    pub fn from_rows(rows: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        let cols = rows.first().map(Gf2Vector::len).ok_or(Gf2Error::Empty)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::Ragged {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    /// A matrix with no rows but a known column count. Used for empty bases.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(k: usize) -> Self {
        let rows = (0..k)
            .map(|i| {
                let mut v = Gf2Vector::zeros(k);
                v.set(i, true);
                v
            })
            .collect();
        Self { cols: k, rows }
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn parse_rows(rows: &[&str]) -> Result<Self, Gf2Error> {
        let rows = rows
            .iter()
            .map(|r| Gf2Vector::parse(r).ok_or(Gf2Error::Empty))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Gf2Vector::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `self * other^T`: entry (i, j) is the dot product of row i of `self`
    /// with row j of `other`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.cols != other.cols {
            return Err(Gf2Error::LengthMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut out = Self::zero(self.rows.len(), other.rows.len());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b)? {
                    out.rows[i].set(j, true);
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix of the rows under the standard dot product.
    pub fn gram(&self) -> Self {
        self.mul_transpose(self).expect("a matrix always matches itself")
    }

    /// Binary combination of rows selected by `coeffs`.
    pub fn combine(&self, coeffs: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if coeffs.len() != self.rows.len() {
            return Err(Gf2Error::LengthMismatch {
                left: coeffs.len(),
                right: self.rows.len(),
            });
        }
        let mut acc = Gf2Vector::zeros(self.cols);
        for i in coeffs.support() {
            acc.add_assign(&self.rows[i])?;
        }
        Ok(acc)
    }

    /// Reduced row-echelon form with the zero rows dropped, together with the
    /// pivot column of each remaining row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    for (a, b) in row.words.iter_mut().zip(&pivot_row.words) {
                        *a ^= b;
                    }
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (
            Self {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    /// Rank over GF(2), by in-place elimination on packed words.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Gf2Vector> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut rank = 0;
        while let Some(pos) = rows.iter().position(|r| !r.is_zero()) {
            let pivot = rows.swap_remove(pos);
            let lead = pivot.leading_one().expect("nonzero");
            for row in rows.iter_mut() {
                if row.get(lead) {
                    for (a, b) in row.words.iter_mut().zip(&pivot.words) {
                        *a ^= b;
                    }
                }
            }
            rows.retain(|r| !r.is_zero());
            rank += 1;
        }
        rank
    }

    /// A basis of the row space in reduced row-echelon form.
    pub fn row_space_basis(&self) -> Self {
        self.rref().0
    }

    /// Basis of `{x : self * x = 0}` (vectors of length `num_cols`), in
    /// reduced row-echelon form.
    pub fn null_space(&self) -> Self {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = Gf2Vector::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in rref.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return Self::empty(self.cols);
        }
        Self::from_rows(basis)
            .expect("equal lengths")
            .row_space_basis()
    }

    /// Basis of `{c : c^T * self = 0}`: the linear relations among the rows.
    pub fn left_kernel(&self) -> Self {
        let t = self.transpose();
        if t.rows.is_empty() {
            return Self::empty(self.rows.len());
        }
        t.null_space()
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &Gf2Vector) -> Result<bool, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                left: v.len(),
                right: self.cols,
            });
        }
        let (rref, pivots) = self.rref();
        let mut rest = v.clone();
        for (row, &p) in rref.rows.iter().zip(&pivots) {
            if rest.get(p) {
                rest.add_assign(row)?;
            }
        }
        Ok(rest.is_zero())
    }
}

/// Rank of a matrix given as rows; errors on ragged input.
pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// Basis of the hull `C ∩ C⊥` of the code spanned by `generators`.
///
/// With `B` a basis of `C`, a codeword `aB` is orthogonal to `C` exactly when
/// `a (B B^T) = 0`, so the hull is the image of the left kernel of the Gram
/// matrix of `B`.
pub fn hull_basis(generators: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
    if generators.num_rows() == 0 {
        return Err(Gf2Error::Empty);
    }
    let basis = generators.row_space_basis();
    if basis.num_rows() == 0 {
        return Ok(Gf2Matrix::empty(generators.num_cols()));
    }
    let kernel = basis.gram().left_kernel();
    let hull: Vec<Gf2Vector> = kernel
        .rows()
        .iter()
        .map(|a| basis.combine(a))
        .collect::<Result<_, _>>()?;
    if hull.is_empty() {
        return Ok(Gf2Matrix::empty(generators.num_cols()));
    }
    Ok(Gf2Matrix::from_rows(hull)?.row_space_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_ones_minus_identity(k: usize) -> Gf2Matrix {
        let rows = (0..k)
            .map(|i| {
                let mut v = Gf2Vector::ones(k);
                v.set(i, false);
                v
            })
            .collect();
        Gf2Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(all_ones_minus_identity(4).rank(), 4);
        assert_eq!(Gf2Matrix::zero(5, 5).rank(), 0);
        assert_eq!(Gf2Matrix::identity(7).rank(), 7);
        // odd size: J - I has rank k - 1 when k is odd
        assert_eq!(all_ones_minus_identity(5).rank(), 4);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = Gf2Matrix::from_rows(vec![Gf2Vector::zeros(3), Gf2Vector::zeros(4)]).unwrap_err();
        assert_eq!(
            err,
            Gf2Error::Ragged {
                row: 1,
                expected: 3,
                found: 4
            }
        );
        assert_eq!(Gf2Matrix::from_rows(vec![]).unwrap_err(), Gf2Error::Empty);
    }

    #[test]
    fn dot_examples() {
        let ones = Gf2Vector::ones(6);
        assert!(!ones.dot(&ones).unwrap());
        assert!(!ones.dot(&Gf2Vector::zeros(6)).unwrap());
        assert!(matches!(
            ones.dot(&Gf2Vector::zeros(5)),
            Err(Gf2Error::LengthMismatch { left: 6, right: 5 })
        ));
    }

    #[test]
    fn hull_of_self_orthogonal_code_is_the_code() {
        let g = Gf2Matrix::parse_rows(&["1100", "0011"]).unwrap();
        let h = hull_basis(&g).unwrap();
        assert_eq!(h.num_rows(), 2);
        assert_eq!(h, g.row_space_basis());
    }

    #[test]
    fn hull_of_full_space_is_trivial() {
        let g = Gf2Matrix::parse_rows(&["10", "11"]).unwrap();
        assert_eq!(hull_basis(&g).unwrap().num_rows(), 0);
    }

    #[test]
    fn rref_is_reduced_and_leftmost_pivot() {
        let g = Gf2Matrix::parse_rows(&["0110", "1100", "1010"]).unwrap();
        let (r, pivots) = g.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row(0).to_string(), "1010");
        assert_eq!(r.row(1).to_string(), "0110");
    }

    #[test]
    fn null_space_annihilates() {
        let g = Gf2Matrix::parse_rows(&["1110", "0111"]).unwrap();
        let ns = g.null_space();
        assert_eq!(ns.num_rows(), 2);
        for v in ns.rows() {
            for r in g.rows() {
                assert!(!r.dot(v).unwrap());
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = Gf2Matrix> {
        (1usize..8, 1usize..80).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                |rows| {
                    Gf2Matrix::from_rows(rows.iter().map(|b| Gf2Vector::from_bits(b)).collect())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= m.num_rows().min(m.num_cols()));
            prop_assert_eq!(m.rank(), m.rref().0.num_rows());
        }

        #[test]
        fn hull_is_orthogonal_and_inside_code(m in arb_matrix()) {
            let h = hull_basis(&m).unwrap();
            for v in h.rows() {
                prop_assert!(m.spans(v).unwrap());
                for g in m.rows() {
                    prop_assert!(!v.dot(g).unwrap());
                }
            }
            // dim span = dim hull + dim(span / hull)
            let mut stacked = h.rows().to_vec();
            stacked.extend(m.rows().iter().cloned());
            let quotient = Gf2Matrix::from_rows(stacked).unwrap().rank() - h.rank();
            prop_assert_eq!(m.rank(), h.rank() + quotient);
            // hull = span ∩ span⊥ has dimension rank - rank(Gram of a basis)
            let b = m.row_space_basis();
            if b.num_rows() > 0 {
                prop_assert_eq!(h.rank(), b.num_rows() - b.gram().rank());
            }
        }

        #[test]
        fn weight_of_sum(a in proptest::collection::vec(any::<bool>(), 1..150), seed in any::<u64>()) {
            let b: Vec<bool> = a.iter().enumerate().map(|(i, _)| (seed >> (i % 64)) & 1 == 1).collect();
            let (va, vb) = (Gf2Vector::from_bits(&a), Gf2Vector::from_bits(&b));
            let overlap = a.iter().zip(&b).filter(|(x, y)| **x && **y).count();
            prop_assert_eq!(va.overlap(&vb).unwrap(), overlap);
            prop_assert_eq!(va.add(&vb).unwrap().weight(), va.weight() + vb.weight() - 2 * overlap);
        }

        #[test]
        fn left_kernel_relations_vanish(m in arb_matrix()) {
            let k = m.left_kernel();
            prop_assert_eq!(k.num_rows(), m.num_rows() - m.rank());
            for c in k.rows() {
                prop_assert!(m.combine(c).unwrap().is_zero());
            }
        }
    }
}
