use std::fmt;

use super::poly::FpPoly;

/// Dense matrix over the prime field `F_p`. Vectors are rows; a matrix acts
/// on the right.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: KMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.matrix.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// The nonzero rows (a basis of the row space).
    pub fn basis(&self) -> KMatrix {
        let idx: Vec<usize> = (0..self.rank()).collect();
        self.matrix.select_rows(&idx)
    }
}

impl KMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        KMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).rem_euclid(p as i64) as u64);
            }
        }
        KMatrix { p, rows, cols, data }
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(p, rows.len(), cols, |i, j| rows[i][j])
    }

    pub(crate) fn from_raw(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        KMatrix { p, rows, cols, data }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub(crate) fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        KMatrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i) as i64)
    }

    pub fn mul(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let p = self.p;
        let mut out = KMatrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(t, j)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &KMatrix) -> KMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % self.p).collect();
        KMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &KMatrix) -> KMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + self.p - b) % self.p).collect();
        KMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u64) -> KMatrix {
        let data = self.data.iter().map(|a| a * (s % self.p) % self.p).collect();
        KMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(blocks: &[&KMatrix]) -> KMatrix {
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                assert_eq!(b.rows, rows, "hstack row mismatch");
                data.extend_from_slice(b.row(i));
            }
        }
        KMatrix { p: blocks[0].p, rows, cols, data }
    }

    pub fn vstack(blocks: &[&KMatrix]) -> KMatrix {
        let cols = blocks[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        KMatrix { p: blocks[0].p, rows, cols, data }
    }

    pub fn block_diag(blocks: &[&KMatrix]) -> KMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = KMatrix::zeros(blocks[0].p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * cols + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> KMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        KMatrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> KMatrix {
        KMatrix::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]) as i64)
    }

    pub fn col_range(&self, start: usize, len: usize) -> KMatrix {
        let idx: Vec<usize> = (start..start + len).collect();
        self.select_cols(&idx)
    }

    pub fn row_range(&self, start: usize, len: usize) -> KMatrix {
        let idx: Vec<usize> = (start..start + len).collect();
        self.select_rows(&idx)
    }

    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, piv);
            let inv = inverse_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = m.get(r, j) * inv % p;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = (m.get(i, j) + p * p - f * m.get(r, j)) % p;
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis (as rows) of `{v : v * self = 0}`.
    pub fn left_kernel(&self) -> KMatrix {
        self.transpose().right_kernel()
    }

    /// Basis of `{w : self * w^T = 0}`, returned as rows.
    pub fn right_kernel(&self) -> KMatrix {
        let rref = self.rref();
        let free = rref.free_columns();
        let mut out = KMatrix::zeros(self.p, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (r, &pc) in rref.pivots.iter().enumerate() {
                let v = rref.matrix.get(r, f);
                out.set(k, pc, (self.p - v) % self.p);
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<KMatrix> {
        if !self.is_square_matrix() {
            return None;
        }
        let n = self.rows;
        let aug = KMatrix::hstack(&[self, &KMatrix::identity(self.p, n)]);
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rref.matrix.col_range(n, n))
    }

    pub fn is_square_matrix(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square_matrix() && self.rank() == self.rows
    }

    /// Solves `x * self = b` for a row vector `b`.
    pub fn solve_left(&self, b: &KMatrix) -> Option<KMatrix> {
        assert_eq!(b.cols, self.cols);
        // x A = b  <=>  A^T x^T = b^T
        let at = self.transpose();
        let aug = KMatrix::hstack(&[&at, &b.transpose()]);
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = KMatrix::zeros(self.p, b.rows, self.rows);
        for (r, &pc) in rref.pivots.iter().enumerate() {
            for k in 0..b.rows {
                x.set(k, pc, rref.matrix.get(r, self.rows + k));
            }
        }
        Some(x)
    }

    /// Evaluates a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, f: &FpPoly) -> KMatrix {
        let n = self.rows;
        let mut acc = KMatrix::zeros(self.p, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add(&KMatrix::identity(self.p, n).scale(c));
        }
        acc
    }

    /// Characteristic polynomial via reduction to Hessenberg form.
    pub fn charpoly(&self) -> FpPoly {
        assert!(self.is_square_matrix());
        let p = self.p;
        let n = self.rows;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else { continue };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = inverse_mod(h.get(m, m - 1), p);
            for i in m + 1..n {
                let u = h.get(i, m - 1) * inv % p;
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = (h.get(i, j) + p * p - u * h.get(m, j)) % p;
                    h.data[i * n + j] = v;
                }
                for r in 0..n {
                    let v = (h.get(r, m) + u * h.get(r, i)) % p;
                    h.data[r * n + m] = v;
                }
            }
        }
        // recurrence on leading principal minors
        let mut polys: Vec<FpPoly> = vec![FpPoly::one(p)];
        for k in 0..n {
            let t_minus = FpPoly::new(p, vec![(p - h.get(k, k)) % p, 1]);
            let mut next = polys[k].mul(&t_minus);
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = prod * h.get(i + 1, i) % p;
                if prod == 0 {
                    break;
                }
                let c = prod * h.get(i, k) % p;
                next = next.sub(&polys[i].scale(c));
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

pub fn inverse_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl fmt::Debug for KMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "KMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_kernels() {
        let m = KMatrix::from_rows(3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let r = m.rref();
        assert_eq!(r.rank(), 2);
        let k = m.right_kernel();
        assert_eq!(k.rows(), 1);
        assert!(m.mul(&k.transpose()).is_zero());
        let lk = KMatrix::from_rows(3, &[vec![1, 1], vec![2, 2]]).left_kernel();
        assert_eq!(lk.rows(), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let m = KMatrix::from_rows(5, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), KMatrix::identity(5, 2));
        let b = KMatrix::from_rows(5, &[vec![3, 4]]);
        let x = m.solve_left(&b).unwrap();
        assert_eq!(x.mul(&m), b);
        assert!(KMatrix::from_rows(5, &[vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^3 + t + 1 over F_2
        let f = FpPoly::new(2, vec![1, 1, 0, 1]);
        let c = f.companion();
        assert_eq!(c.charpoly(), f);
        assert!(c.eval_poly(&f).is_zero());
    }

    #[test]
    fn charpoly_brute_force_small() {
        // det(tI - M) evaluated at every t in F_7 against the polynomial
        let p = 7;
        let m = KMatrix::from_rows(p, &[vec![1, 2, 3], vec![0, 4, 5], vec![6, 1, 2]]);
        let cp = m.charpoly();
        for t in 0..p {
            let tm = KMatrix::identity(p, 3).scale(t).sub(&m);
            assert_eq!(det3(&tm), cp.eval(t));
        }
    }

    fn det3(m: &KMatrix) -> u64 {
        let p = m.p() as i64;
        let g = |i, j| m.get(i, j) as i64;
        let d = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
        d.rem_euclid(p) as u64
    }
}
