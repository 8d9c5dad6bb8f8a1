//! Packed GF(2) vectors and dense matrices.
//!
//! [`LevelVector`] is the signal unit of the deterministic channel: a column of
//! signal levels where index 0 is the most significant (top) level. The same
//! type doubles as a generic bit vector for message words and matrix rows.

use std::fmt;
use std::ops::BitXor;

use serde::{Serialize, Serializer};

use crate::error::{check_len, Error, Result};

const WORD: usize = 64;

/// A GF(2) column of signal levels. Index 0 is the top (most significant) level.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LevelVector {
    len: usize,
    words: Vec<u64>,
}

impl LevelVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// The standard basis vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector from `0`/`1` entries; any other value is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => v.set(i, true),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "level {i} holds {other}, expected 0 or 1"
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "level {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "level {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Elementwise XOR; fails when the lengths differ.
    pub fn try_xor(&self, other: &Self) -> Result<Self> {
        check_len(self.len, other.len)?;
        let mut out = self.clone();
        out.xor_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn xor_assign_unchecked(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// GF(2) inner product: parity of the elementwise AND.
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    /// `S^k v`: content moves `k` levels toward the bottom, the top `k` levels clear.
    pub fn shift_down(&self, k: usize) -> Self {
        let mut out = Self::zeros(self.len);
        for j in k..self.len {
            if self.get(j - k) {
                out.set(j, true);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Stacks vectors top to bottom.
    pub fn concat<'a, I: IntoIterator<Item = &'a LevelVector>>(parts: I) -> Self {
        Self::from_bools(parts.into_iter().flat_map(|p| p.iter().collect::<Vec<_>>()))
    }

    /// The sub-vector of levels `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        Self::from_bools((start..start + len).map(|i| self.get(i)))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl BitXor for &LevelVector {
    type Output = LevelVector;

    /// Panics on length mismatch; use [`LevelVector::try_xor`] for a checked version.
    fn bitxor(self, rhs: Self) -> LevelVector {
        self.try_xor(rhs).expect("xor of vectors with different lengths")
    }
}

impl fmt::Display for LevelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for LevelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LevelVector[{self}]")
    }
}

impl Serialize for LevelVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<LevelVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![LevelVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| LevelVector::unit(n, i)).collect(),
        }
    }

    /// The `q x q` down-shift matrix raised to the power `k`.
    pub fn shift(q: usize, k: usize) -> Self {
        let mut m = Self::zeros(q, q);
        for j in k..q {
            m.set(j, j - k, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<LevelVector>) -> Result<Self> {
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(Self { cols, rows })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &LevelVector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[LevelVector] {
        &self.rows
    }

    pub fn mul_vec(&self, v: &LevelVector) -> Result<LevelVector> {
        check_len(self.cols, v.len())?;
        Ok(LevelVector::from_bools(self.rows.iter().map(|r| r.dot(v))))
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, rhs.num_rows())?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = LevelVector::zeros(rhs.cols);
                for k in r.ones() {
                    acc.xor_assign_unchecked(&rhs.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: rhs.cols,
            rows,
        })
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.num_rows(), rhs.num_rows())?;
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| LevelVector::concat([a, b]))
            .collect();
        Ok(BitMatrix {
            cols: self.cols + rhs.cols,
            rows,
        })
    }

    /// `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, rhs.cols)?;
        let mut rows = self.rows.clone();
        rows.extend(rhs.rows.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Elementwise sum of two matrices of equal shape.
    pub fn xor(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, rhs.cols)?;
        check_len(self.num_rows(), rhs.num_rows())?;
        let rows = self.rows.iter().zip(&rhs.rows).map(|(a, b)| a ^ b).collect();
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Places this matrix's columns at `offset..offset + cols` of a `total`-column matrix.
    pub fn embed_cols(&self, total: usize, offset: usize) -> BitMatrix {
        assert!(offset + self.cols <= total);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = LevelVector::zeros(total);
                for c in r.ones() {
                    out.set(offset + c, true);
                }
                out
            })
            .collect();
        BitMatrix { cols: total, rows }
    }

    pub fn rank(&self) -> usize {
        Elimination::new(self).pivots.len()
    }

    /// For each target row `t`, finds a row vector `d` with `d * self = t`.
    ///
    /// Returns `None` for targets outside the row space.
    pub fn solve_left(&self, targets: &[LevelVector]) -> Vec<Option<LevelVector>> {
        let elim = Elimination::new(self);
        targets.iter().map(|t| elim.express(t)).collect()
    }
}

/// Row echelon form with a record of the row operations applied.
struct Elimination {
    reduced: Vec<LevelVector>,
    combos: Vec<LevelVector>,
    /// (pivot column, row index) in increasing column order.
    pivots: Vec<(usize, usize)>,
}

impl Elimination {
    fn new(m: &BitMatrix) -> Self {
        let n = m.num_rows();
        let mut reduced = m.rows.clone();
        let mut combos: Vec<LevelVector> = (0..n).map(|i| LevelVector::unit(n, i)).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            let Some(p) = (next..n).find(|&r| reduced[r].get(col)) else {
                continue;
            };
            reduced.swap(next, p);
            combos.swap(next, p);
            for r in 0..n {
                if r != next && reduced[r].get(col) {
                    let (pr, pc) = (reduced[next].clone(), combos[next].clone());
                    reduced[r].xor_assign_unchecked(&pr);
                    combos[r].xor_assign_unchecked(&pc);
                }
            }
            pivots.push((col, next));
            next += 1;
            if next == n {
                break;
            }
        }
        Self {
            reduced,
            combos,
            pivots,
        }
    }

    fn express(&self, target: &LevelVector) -> Option<LevelVector> {
        let n = self.combos.len();
        let mut rest = target.clone();
        let mut coeffs = LevelVector::zeros(n);
        for &(col, row) in &self.pivots {
            if rest.get(col) {
                rest.xor_assign_unchecked(&self.reduced[row]);
                coeffs.xor_assign_unchecked(&self.combos[row]);
            }
        }
        rest.is_zero().then_some(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u8]) -> LevelVector {
        LevelVector::from_bits(bits).unwrap()
    }

    #[test]
    fn from_bits_rejects_non_binary() {
        assert!(LevelVector::from_bits(&[0, 2]).is_err());
    }

    #[test]
    fn xor_with_self_is_zero() {
        let a = v(&[1, 0, 1, 1]);
        assert!((&a ^ &a).is_zero());
        assert!(a.try_xor(&v(&[1])).is_err());
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let mut a = LevelVector::zeros(130);
        a.set(0, true);
        a.set(129, true);
        let s = a.shift_down(64);
        assert!(s.get(64));
        assert_eq!(s.count_ones(), 1);
        assert_eq!(a.slice(120, 10).to_bits(), vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn shift_matrix_matches_vector_shift() {
        let x = v(&[1, 1, 0, 1, 0]);
        for k in 0..7 {
            let m = BitMatrix::shift(5, k);
            assert_eq!(m.mul_vec(&x).unwrap(), x.shift_down(k));
        }
    }

    #[test]
    fn solve_left_recovers_unit_rows() {
        // rows: [1 1 0], [0 1 0], [0 1 1]
        let g = BitMatrix::from_rows(3, vec![v(&[1, 1, 0]), v(&[0, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let targets: Vec<_> = (0..3).map(|i| LevelVector::unit(3, i)).collect();
        for (t, d) in targets.iter().zip(g.solve_left(&targets)) {
            let d = d.expect("full rank");
            let back = BitMatrix::from_rows(3, vec![d]).unwrap().mul(&g).unwrap();
            assert_eq!(back.row(0), t);
        }
        assert_eq!(g.rank(), 3);
    }

    #[test]
    fn solve_left_reports_missing_rows() {
        let g = BitMatrix::from_rows(2, vec![v(&[1, 1]), v(&[1, 1])]).unwrap();
        let res = g.solve_left(&[v(&[1, 0]), v(&[1, 1])]);
        assert!(res[0].is_none());
        assert!(res[1].is_some());
        assert_eq!(g.rank(), 1);
    }
}
