use std::fmt;

use super::kmatrix::KMatrix;
use super::scalar::{TruncScalar, Zpn};
use crate::error::{Error, Result};

/// Dense matrix over `Z/p^N`.
///
/// Entries are meaningful modulo `p^prec` with `prec <= N`; they are stored
/// reduced modulo `p^prec` so that equal matrices compare equal. Exact
/// division by powers of `p` lowers `prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    ring: Zpn,
    prec: u32,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl RMatrix {
    pub fn zeros(ring: Zpn, rows: usize, cols: usize) -> Self {
        RMatrix { ring, prec: ring.precision(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: Zpn, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar_identity(ring: Zpn, n: usize, s: u64) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = s % ring.modulus();
        }
        m
    }

    pub fn from_fn(ring: Zpn, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(ring.reduce_i64(f(i, j)));
            }
        }
        RMatrix { ring, prec: ring.precision(), rows, cols, data }
    }

    pub fn from_rows(ring: Zpn, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(ring, rows.len(), cols, |i, j| rows[i][j])
    }

    /// A single row vector.
    pub fn row_vector(ring: Zpn, v: &[i64]) -> Self {
        Self::from_fn(ring, 1, v.len(), |_, j| v[j])
    }

    pub(crate) fn from_raw(ring: Zpn, prec: u32, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        let mut m = RMatrix { ring, prec, rows, cols, data };
        m.truncate();
        m
    }

    pub fn ring(&self) -> Zpn {
        self.ring
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.ring.modulus();
    }

    pub fn entry(&self, i: usize, j: usize) -> TruncScalar {
        TruncScalar::new(self.ring, self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn data(&self) -> &[u64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [u64] {
        &mut self.data
    }

    /// Lowers the working precision (never raises it).
    pub fn with_prec(mut self, prec: u32) -> Self {
        if prec < self.prec {
            self.prec = prec;
            self.truncate();
        }
        self
    }

    fn truncate(&mut self) {
        if self.prec < self.ring.precision() {
            let m = self.ring.p_pow_int(self.prec);
            for v in &mut self.data {
                *v %= m;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn valuation(&self, i: usize, j: usize) -> u32 {
        self.ring.valuation_at(self.get(i, j), self.prec)
    }

    /// Minimal valuation over all entries (`prec` for the zero matrix).
    pub fn min_valuation(&self) -> u32 {
        self.data.iter().map(|&v| self.ring.valuation_at(v, self.prec)).min().unwrap_or(self.prec)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        RMatrix { ring: self.ring, prec: self.prec, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let ring = self.ring;
        let m = ring.modulus();
        let (n, k, c) = (self.rows, self.cols, other.cols);
        let mut data = vec![0u64; n * c];
        let bound = (m - 1).max(1) as u128;
        let per_u64 = (u64::MAX as u128 / (bound * bound)).max(1) as usize;
        if per_u64 >= 2 {
            let mut acc = vec![0u64; c];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                let mut pending = 0usize;
                for t in 0..k {
                    let a = self.data[i * k + t];
                    if a == 0 {
                        continue;
                    }
                    let orow = &other.data[t * c..(t + 1) * c];
                    for (dst, &b) in acc.iter_mut().zip(orow) {
                        *dst += a * b;
                    }
                    pending += 1;
                    if pending + 1 >= per_u64 {
                        acc.iter_mut().for_each(|a| *a %= m);
                        pending = 0;
                    }
                }
                for (j, a) in acc.iter().enumerate() {
                    data[i * c + j] = a % m;
                }
            }
        } else {
            let mut acc = vec![0u128; c];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                for t in 0..k {
                    let a = self.data[i * k + t] as u128;
                    if a == 0 {
                        continue;
                    }
                    let orow = &other.data[t * c..(t + 1) * c];
                    for (dst, &b) in acc.iter_mut().zip(orow) {
                        *dst = (*dst + a * b as u128) % m as u128;
                    }
                }
                for (j, a) in acc.iter().enumerate() {
                    data[i * c + j] = *a as u64;
                }
            }
        }
        RMatrix::from_raw(ring, self.prec.min(other.prec), n, c, data)
    }

    fn zip_with(&self, other: &RMatrix, f: impl Fn(u64, u64) -> u64) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        RMatrix::from_raw(self.ring, self.prec.min(other.prec), self.rows, self.cols, data)
    }

    pub fn add(&self, other: &RMatrix) -> RMatrix {
        let r = self.ring;
        self.zip_with(other, |a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &RMatrix) -> RMatrix {
        let r = self.ring;
        self.zip_with(other, |a, b| r.sub(a, b))
    }

    pub fn scale(&self, s: u64) -> RMatrix {
        let r = self.ring;
        let s = s % r.modulus();
        let data = self.data.iter().map(|&a| r.mul(a, s)).collect();
        RMatrix::from_raw(r, self.prec, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> RMatrix {
        let r = self.ring;
        let data = self.data.iter().map(|&a| r.neg(a)).collect();
        RMatrix::from_raw(r, self.prec, self.rows, self.cols, data)
    }

    /// `self - s * I`
    pub fn sub_scalar(&self, s: u64) -> RMatrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.data[i * self.cols + i] = self.ring.sub(v, s % self.ring.modulus());
        }
        m.truncate();
        m
    }

    pub fn hstack(blocks: &[&RMatrix]) -> RMatrix {
        let first = blocks.first().expect("empty hstack");
        let rows = first.rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let prec = blocks.iter().map(|b| b.prec).min().unwrap();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        RMatrix::from_raw(first.ring, prec, rows, cols, data)
    }

    pub fn vstack(blocks: &[&RMatrix]) -> RMatrix {
        let first = blocks.first().expect("empty vstack");
        let cols = first.cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let prec = blocks.iter().map(|b| b.prec).min().unwrap();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        RMatrix::from_raw(first.ring, prec, rows, cols, data)
    }

    pub fn block_diag(blocks: &[&RMatrix]) -> RMatrix {
        let first = blocks.first().expect("empty block_diag");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let prec = blocks.iter().map(|b| b.prec).min().unwrap();
        let mut m = RMatrix::zeros(first.ring, rows, cols);
        m.prec = prec;
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m.truncate();
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(i));
        }
        self.prec = self.prec.min(b.prec);
        self.truncate();
    }

    pub fn select_rows(&self, idx: &[usize]) -> RMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        RMatrix { ring: self.ring, prec: self.prec, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> RMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j));
            }
        }
        RMatrix { ring: self.ring, prec: self.prec, rows: self.rows, cols: idx.len(), data }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> RMatrix {
        let ridx: Vec<usize> = (r0..r0 + rows).collect();
        let cidx: Vec<usize> = (c0..c0 + cols).collect();
        self.select_rows(&ridx).select_cols(&cidx)
    }

    /// Reduction modulo `p`.
    pub fn mod_p(&self) -> KMatrix {
        let p = self.ring.p();
        KMatrix::from_raw(p, self.rows, self.cols, self.data.iter().map(|&v| v % p).collect())
    }

    /// Lift with representatives in `0..p`.
    pub fn lift(ring: Zpn, k: &KMatrix) -> RMatrix {
        assert_eq!(ring.p(), k.p(), "residue field mismatch");
        RMatrix::from_raw(ring, ring.precision(), k.rows(), k.cols(), k.data().to_vec())
    }

    /// Exact division of every entry by `p^k`; the result is known modulo `p^(prec-k)`.
    pub fn div_p_pow(&self, k: u32) -> Result<RMatrix> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.prec {
            return Err(Error::PrecisionExhausted { valuation: k, precision: self.prec });
        }
        let q = self.ring.p_pow_int(k);
        if self.data.iter().any(|&v| v % q != 0) {
            return Err(Error::NotInLattice);
        }
        let data = self.data.iter().map(|&v| v / q).collect();
        Ok(RMatrix::from_raw(self.ring, self.prec - k, self.rows, self.cols, data))
    }

    /// Centered integer entries, row by row.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        let m = self.ring.p_pow_int(self.prec);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&v| if v > m / 2 { v as i64 - m as i64 } else { v as i64 })
                    .collect()
            })
            .collect()
    }

    /// Equality modulo the smaller of the two precisions.
    pub fn congruent(&self, other: &RMatrix) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        let prec = self.prec.min(other.prec);
        self.clone().with_prec(prec).data == other.clone().with_prec(prec).data
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} (p={}, prec={})", self.rows, self.cols, self.ring.p(), self.prec)?;
        for row in self.to_i64_rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Zpn {
        Zpn::new(5, 16).unwrap()
    }

    #[test]
    fn product_matches_schoolbook() {
        let r = ring();
        let a = RMatrix::from_rows(r, &[vec![1, 2, 3], vec![-4, 5, 6]]);
        let b = RMatrix::from_rows(r, &[vec![7, 8], vec![9, -10], vec![11, 12]]);
        let c = a.mul(&b);
        assert_eq!(c.to_i64_rows(), vec![vec![58, 24], vec![83, -10]]);
    }

    #[test]
    fn wide_accumulation_does_not_overflow() {
        let r = ring();
        let n = 40;
        let big = r.modulus() as i64 - 1;
        let a = RMatrix::from_fn(r, n, n, |_, _| big);
        let c = a.mul(&a);
        // (-1)*(-1) summed n times
        assert_eq!(c.get(0, 0), n as u64);
    }

    #[test]
    fn division_lowers_precision() {
        let r = ring();
        let a = RMatrix::from_rows(r, &[vec![25, -50]]);
        let q = a.div_p_pow(2).unwrap();
        assert_eq!(q.prec(), 14);
        assert_eq!(q.to_i64_rows(), vec![vec![1, -2]]);
        assert_eq!(RMatrix::from_rows(r, &[vec![5]]).div_p_pow(2), Err(Error::NotInLattice));
    }

    #[test]
    fn stacking_shapes() {
        let r = ring();
        let a = RMatrix::identity(r, 2);
        let b = RMatrix::zeros(r, 2, 3);
        assert_eq!(RMatrix::hstack(&[&a, &b]).cols(), 5);
        assert_eq!(RMatrix::vstack(&[&a, &a]).rows(), 4);
        let d = RMatrix::block_diag(&[&a, &b]);
        assert_eq!((d.rows(), d.cols()), (4, 5));
        assert_eq!(d.get(1, 1), 1);
        assert_eq!(d.get(2, 2), 0);
    }
}
