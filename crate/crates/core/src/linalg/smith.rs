//! Smith normal form over `Z/p^N`, kernels, solving and homology of
//! two-term sequences.
//!
//! Pivots are chosen by minimal valuation with ties broken in row-major
//! order. Because `R` is local, eliminating with such a pivot never needs a
//! gcd step, and the quotient of two entries is computed exactly modulo the
//! working precision.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::rmatrix::RMatrix;
use super::scalar::{Zpn, GUARD};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `U * M * V` is diagonal.
    pub left: RMatrix,
    pub right: RMatrix,
    pub left_inv: RMatrix,
    pub right_inv: RMatrix,
    /// One valuation per diagonal position, `min(rows, cols)` entries;
    /// zero diagonal entries are recorded as the working precision.
    pub pivots: Vec<u32>,
    pub prec: u32,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|&&e| e < self.prec).count()
    }
}

/// Isomorphism type of a finitely generated `R`-module:
/// `R^free_rank + sum_i R/p^(torsion_i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleInvariant {
    pub free_rank: usize,
    /// Sorted ascending, every entry at least 1.
    pub torsion: Vec<u32>,
}

impl ModuleInvariant {
    pub fn new(free_rank: usize, mut torsion: Vec<u32>) -> Self {
        torsion.retain(|&e| e > 0);
        torsion.sort_unstable();
        ModuleInvariant { free_rank, torsion }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `k^n = (R/p)^n`
    pub fn k_power(n: usize) -> Self {
        ModuleInvariant { free_rank: 0, torsion: vec![1; n] }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Whether the module is a `k`-vector space.
    pub fn is_elementary(&self) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(|&e| e == 1)
    }

    /// `dim_k M/pM`, i.e. the minimal number of generators.
    pub fn dim_mod_p(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Composition length; `None` for modules with a free part.
    pub fn length(&self) -> Option<u32> {
        (self.free_rank == 0).then(|| self.torsion.iter().sum())
    }

    pub fn max_exponent(&self) -> u32 {
        self.torsion.iter().copied().max().unwrap_or(0)
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut t = self.torsion.clone();
        t.extend_from_slice(&o.torsion);
        ModuleInvariant::new(self.free_rank + o.free_rank, t)
    }
}

impl fmt::Display for ModuleInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "R".to_string() } else { format!("R^{}", self.free_rank) });
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let e = self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == e {
                j += 1;
            }
            let base = if e == 1 { "k".to_string() } else { format!("R/p^{e}") };
            parts.push(if j - i == 1 { base } else { format!("({base})^{}", j - i) });
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Default)]
struct Track {
    left: bool,
    left_inv: bool,
    right: bool,
    right_inv: bool,
}

struct Work {
    ring: Zpn,
    prec: u32,
    modulus: u64,
    a: RMatrix,
    u: Option<RMatrix>,
    u_inv: Option<RMatrix>,
    v: Option<RMatrix>,
    v_inv: Option<RMatrix>,
}

fn check_guard(v: u32, prec: u32) -> Result<()> {
    if v < prec && v + GUARD > prec {
        return Err(Error::PrecisionExhausted { valuation: v, precision: prec });
    }
    Ok(())
}

impl Work {
    fn new(m: &RMatrix, t: Track) -> Self {
        let ring = m.ring();
        let prec = m.prec();
        let id = |n| RMatrix::identity(ring, n).with_prec(prec);
        Work {
            ring,
            prec,
            modulus: ring.p_pow_int(prec),
            a: m.clone(),
            u: t.left.then(|| id(m.rows())),
            u_inv: t.left_inv.then(|| id(m.rows())),
            v: t.right.then(|| id(m.cols())),
            v_inv: t.right_inv.then(|| id(m.cols())),
        }
    }

    /// row_i -= q * row_k on `a` (from column `from`) and on `u`; the inverse
    /// column operation on `u_inv`.
    fn row_op(&mut self, i: usize, k: usize, q: u64, from: usize) {
        if q == 0 {
            return;
        }
        let cols = self.a.cols();
        let (ring, modulus) = (self.ring, self.modulus);
        let data = self.a.data_mut();
        let (src, dst) = split_rows(data, cols, k, i);
        for j in from..cols {
            dst[j] = (dst[j] + modulus - ring.mul(q, src[j]) % modulus) % modulus;
        }
        if let Some(u) = self.u.as_mut() {
            let c = u.cols();
            let (src, dst) = split_rows(u.data_mut(), c, k, i);
            for j in 0..c {
                dst[j] = (dst[j] + modulus - ring.mul(q, src[j]) % modulus) % modulus;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // U^{-1} <- U^{-1} (I + q e_i e_k^T): column k += q * column i
            let n = ui.rows();
            let c = ui.cols();
            let d = ui.data_mut();
            for r in 0..n {
                let add = ring.mul(q, d[r * c + i]) % modulus;
                d[r * c + k] = (d[r * c + k] + add) % modulus;
            }
        }
    }

    /// col_j -= q * col_k on `a` (from row `from`), on `v`; inverse row op on `v_inv`.
    fn col_op(&mut self, j: usize, k: usize, q: u64, from: usize) {
        if q == 0 {
            return;
        }
        let (ring, modulus) = (self.ring, self.modulus);
        let rows = self.a.rows();
        let cols = self.a.cols();
        let d = self.a.data_mut();
        for r in from..rows {
            let sub = ring.mul(q, d[r * cols + k]) % modulus;
            d[r * cols + j] = (d[r * cols + j] + modulus - sub) % modulus;
        }
        if let Some(v) = self.v.as_mut() {
            let n = v.rows();
            let c = v.cols();
            let d = v.data_mut();
            for r in 0..n {
                let sub = ring.mul(q, d[r * c + k]) % modulus;
                d[r * c + j] = (d[r * c + j] + modulus - sub) % modulus;
            }
        }
        if let Some(vi) = self.v_inv.as_mut() {
            // V^{-1} <- (I + q e_k e_j^T) V^{-1}: row k += q * row j
            let c = vi.cols();
            let (src, dst) = split_rows(vi.data_mut(), c, j, k);
            for t in 0..c {
                dst[t] = (dst[t] + ring.mul(q, src[t])) % modulus;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_rows(&mut self.a, a, b);
        if let Some(u) = self.u.as_mut() {
            swap_rows(u, a, b);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            swap_cols(ui, a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_cols(&mut self.a, a, b);
        if let Some(v) = self.v.as_mut() {
            swap_cols(v, a, b);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            swap_rows(vi, a, b);
        }
    }

    /// Multiplies row `k` by the unit `s` (and column `k` of `u_inv` by `s^{-1}`).
    fn scale_row(&mut self, k: usize, s: u64, s_inv: u64) {
        let cols = self.a.cols();
        let m = self.modulus;
        let ring = self.ring;
        for x in &mut self.a.data_mut()[k * cols..(k + 1) * cols] {
            *x = ring.mul(*x, s) % m;
        }
        if let Some(u) = self.u.as_mut() {
            let c = u.cols();
            for x in &mut u.data_mut()[k * c..(k + 1) * c] {
                *x = ring.mul(*x, s) % m;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            let c = ui.cols();
            let n = ui.rows();
            let d = ui.data_mut();
            for r in 0..n {
                d[r * c + k] = ring.mul(d[r * c + k], s_inv) % m;
            }
        }
    }

    /// Position of the entry of least valuation in the trailing block
    /// `[k.., k..]`, row-major first on ties.
    fn find_pivot(&self, k: usize, col_limit: usize) -> Option<(usize, usize, u32)> {
        let cols = self.a.cols();
        let data = self.a.data();
        let p = self.ring.p();
        let mut best: Option<(usize, usize, u32)> = None;
        for i in k..self.a.rows() {
            let row = &data[i * cols..(i + 1) * cols];
            for (j, &x) in row.iter().enumerate().take(col_limit).skip(k) {
                if x == 0 {
                    continue;
                }
                if x % p != 0 {
                    return Some((i, j, 0));
                }
                let v = self.ring.valuation_at(x, self.prec);
                if best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        best
    }

    fn diagonalize(&mut self) -> Result<Vec<u32>> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let n = rows.min(cols);
        let mut pivots = vec![self.prec; n];
        for k in 0..n {
            let Some((pi, pj, v)) = self.find_pivot(k, cols) else { break };
            check_guard(v, self.prec)?;
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            let x = self.a.get(k, k);
            let unit = self.ring.unit_part(x, v) % self.modulus;
            let unit_inv = self.ring.unit_inverse(unit) % self.modulus;
            self.scale_row(k, unit_inv, unit);
            let pv = self.ring.p_pow_int(v);
            for i in k + 1..rows {
                let x = self.a.get(i, k);
                if x != 0 {
                    self.row_op(i, k, x / pv, k);
                }
            }
            for j in k + 1..cols {
                let x = self.a.get(k, j);
                if x != 0 {
                    self.col_op(j, k, x / pv, k);
                }
            }
            pivots[k] = v;
        }
        Ok(pivots)
    }
}

fn split_rows(data: &mut [u64], cols: usize, src: usize, dst: usize) -> (&[u64], &mut [u64]) {
    debug_assert_ne!(src, dst);
    if src < dst {
        let (a, b) = data.split_at_mut(dst * cols);
        (&a[src * cols..(src + 1) * cols], &mut b[..cols])
    } else {
        let (a, b) = data.split_at_mut(src * cols);
        (&b[..cols], &mut a[dst * cols..(dst + 1) * cols])
    }
}

fn swap_rows(m: &mut RMatrix, a: usize, b: usize) {
    let c = m.cols();
    let d = m.data_mut();
    for j in 0..c {
        d.swap(a * c + j, b * c + j);
    }
}

fn swap_cols(m: &mut RMatrix, a: usize, b: usize) {
    let c = m.cols();
    let r = m.rows();
    let d = m.data_mut();
    for i in 0..r {
        d.swap(i * c + a, i * c + b);
    }
}

/// Full Smith normal form with both transforms and their inverses.
pub fn smith(m: &RMatrix) -> Result<SmithForm> {
    let mut w = Work::new(m, Track { left: true, left_inv: true, right: true, right_inv: true });
    let pivots = w.diagonalize()?;
    Ok(SmithForm {
        left: w.u.unwrap(),
        right: w.v.unwrap(),
        left_inv: w.u_inv.unwrap(),
        right_inv: w.v_inv.unwrap(),
        pivots,
        prec: w.prec,
    })
}

/// Pivot valuations only (elementary divisors), without transforms.
pub fn smith_pivots(m: &RMatrix) -> Result<Vec<u32>> {
    let mut w = Work::new(m, Track::default());
    w.diagonalize()
}

/// Number of nonzero elementary divisors.
pub fn rank(m: &RMatrix) -> Result<usize> {
    let prec = m.prec();
    Ok(smith_pivots(m)?.iter().filter(|&&e| e < prec).count())
}

/// Saturated basis (as rows) of the left kernel `{v : v * M = 0}`.
pub fn kernel_basis(m: &RMatrix) -> Result<RMatrix> {
    Ok(kernel_with_coordinates(m)?.0)
}

/// Left kernel basis `Z` together with a matrix `C` such that `w * C` are the
/// coordinates in `Z` of any kernel vector `w`.
pub fn kernel_with_coordinates(m: &RMatrix) -> Result<(RMatrix, RMatrix)> {
    let mut w = Work::new(m, Track { left: true, left_inv: true, ..Track::default() });
    let prec = w.prec;
    let r = w.diagonalize()?.iter().filter(|&&e| e < prec).count();
    let idx: Vec<usize> = (r..m.rows()).collect();
    let basis = w.u.unwrap().select_rows(&idx);
    let coords = w.u_inv.unwrap().select_cols(&idx);
    Ok((basis, coords))
}

/// `ker(d_out) / im(d_in)` for row-vector maps `C_prev --d_in--> C --d_out--> C_next`.
///
/// The kernel is a direct summand of `C`, so the torsion of the quotient is
/// read off the elementary divisors of `d_in` alone.
pub fn subquotient_invariant(d_out: &RMatrix, d_in: &RMatrix) -> Result<ModuleInvariant> {
    if d_in.cols() != d_out.rows() {
        return Err(Error::Dimension(format!(
            "d_in has {} columns but d_out has {} rows",
            d_in.cols(),
            d_out.rows()
        )));
    }
    if d_in.rows() > 0 && d_out.cols() > 0 && !d_in.mul(d_out).is_zero() {
        return Err(Error::CompositionNonZero);
    }
    subquotient_unchecked(d_out, d_in)
}

pub(crate) fn subquotient_unchecked(d_out: &RMatrix, d_in: &RMatrix) -> Result<ModuleInvariant> {
    let kernel_rank = d_out.rows() - rank(d_out)?;
    let prec = d_in.prec();
    let pivots = smith_pivots(d_in)?;
    let image_rank = pivots.iter().filter(|&&e| e < prec).count();
    let torsion = pivots.into_iter().filter(|&e| e > 0 && e < prec).collect();
    Ok(ModuleInvariant::new(kernel_rank - image_rank, torsion))
}

/// Reusable solver for `x * M = b`.
#[derive(Clone, Debug)]
pub struct Solver {
    form: SmithForm,
    rows: usize,
    cols: usize,
}

impl Solver {
    pub fn new(m: &RMatrix) -> Result<Self> {
        Ok(Solver { form: smith(m)?, rows: m.rows(), cols: m.cols() })
    }

    pub fn form(&self) -> &SmithForm {
        &self.form
    }

    /// Returns some `x` with `x * M = b` (rows of `b` solved independently as a
    /// batch), or `None` if any row is unsolvable. The answer is known modulo
    /// `p^(prec - e)` where `e` is the largest pivot used.
    pub fn solve(&self, b: &RMatrix) -> Result<Option<RMatrix>> {
        if b.cols() != self.cols {
            return Err(Error::Dimension(format!("rhs has {} columns, expected {}", b.cols(), self.cols)));
        }
        let f = &self.form;
        let ring = b.ring();
        let prec = f.prec.min(b.prec());
        let bv = b.mul(&f.right).with_prec(prec);
        let n = self.rows.min(self.cols);
        let mut max_e = 0;
        let mut y = RMatrix::zeros(ring, b.rows(), self.rows).with_prec(prec);
        for r in 0..b.rows() {
            for j in 0..self.cols {
                let x = bv.get(r, j);
                let e = if j < n { f.pivots[j] } else { prec };
                if e >= prec {
                    if x != 0 {
                        return Ok(None);
                    }
                    continue;
                }
                if ring.valuation_at(x, prec) < e {
                    return Ok(None);
                }
                max_e = max_e.max(e);
                y.set(r, j, x / ring.p_pow_int(e));
            }
        }
        let x = y.mul(&f.left).with_prec(prec - max_e);
        Ok(Some(x))
    }
}

/// Solves `x * M = b` for a single row vector.
pub fn solve(m: &RMatrix, b: &RMatrix) -> Result<Option<RMatrix>> {
    Solver::new(m)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(p: u64) -> Zpn {
        Zpn::new(p, 16).unwrap()
    }

    /// Random unimodular matrix as a product of elementary matrices.
    fn unimodular(r: Zpn, n: usize, rng: &mut ChaCha8Rng) -> RMatrix {
        let mut m = RMatrix::identity(r, n);
        for _ in 0..4 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let q: i64 = rng.gen_range(-30..30);
            let e = RMatrix::from_fn(r, n, n, |a, b| if a == b { 1 } else if a == i && b == j { q } else { 0 });
            m = e.mul(&m);
        }
        m
    }

    fn diag(r: Zpn, vals: &[i64], rows: usize, cols: usize) -> RMatrix {
        RMatrix::from_fn(r, rows, cols, |i, j| if i == j && i < vals.len() { vals[i] } else { 0 })
    }

    #[test]
    fn identity_and_diagonal_examples() {
        let r = ring(5);
        assert_eq!(smith(&RMatrix::identity(r, 2)).unwrap().pivots, vec![0, 0]);
        assert_eq!(smith(&diag(r, &[1, 5], 2, 2)).unwrap().pivots, vec![0, 1]);
    }

    #[test]
    fn recovers_known_diagonal_under_unimodular_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 3, 5] {
            let r = ring(p);
            let d = diag(r, &[1, p as i64, (p * p) as i64], 3, 3);
            for _ in 0..20 {
                let e = unimodular(r, 3, &mut rng);
                let f = unimodular(r, 3, &mut rng);
                let m = e.mul(&d).mul(&f);
                let sf = smith(&m).unwrap();
                assert_eq!(sf.pivots, vec![0, 1, 2]);
            }
        }
    }

    #[test]
    fn transforms_reconstruct_diagonal_and_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = ring(3);
        for _ in 0..30 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let m = RMatrix::from_fn(r, rows, cols, |_, _| {
                let v: i64 = rng.gen_range(-20..20);
                v * 3i64.pow(rng.gen_range(0..3))
            });
            let sf = smith(&m).unwrap();
            let d = sf.left.mul(&m).mul(&sf.right);
            for i in 0..rows {
                for j in 0..cols {
                    let x = d.get(i, j);
                    if i == j {
                        assert_eq!(r.valuation(x), sf.pivots[i]);
                    } else {
                        assert_eq!(x, 0);
                    }
                }
            }
            assert_eq!(sf.left.mul(&sf.left_inv), RMatrix::identity(r, rows));
            assert_eq!(sf.right.mul(&sf.right_inv), RMatrix::identity(r, cols));
            assert!(sf.pivots.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn kernel_examples() {
        let r = ring(5);
        let k = kernel_basis(&RMatrix::zeros(r, 1, 1)).unwrap();
        assert_eq!(k, RMatrix::identity(r, 1));
        let k = kernel_basis(&RMatrix::from_rows(r, &[vec![5]])).unwrap();
        assert_eq!(k.rows(), 0);
        // kernel size equals rank deficit
        let m = RMatrix::from_rows(r, &[vec![1, 0], vec![0, 5], vec![0, 0], vec![0, 5]]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.rows(), 4 - smith(&m).unwrap().rank());
        assert!(k.mul(&m).is_zero());
    }

    #[test]
    fn kernel_is_saturated() {
        let r = ring(2);
        // v * [[2],[2]] = 0 has kernel spanned by (1,-1), not 2*(1,-1)
        let m = RMatrix::from_rows(r, &[vec![2], vec![2]]);
        let (k, c) = kernel_with_coordinates(&m).unwrap();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.mod_p().rank(), 1);
        let w = RMatrix::row_vector(r, &[3, -3]);
        let coords = w.mul(&c);
        assert!(coords.mul(&k).congruent(&w));
    }

    #[test]
    fn subquotient_examples() {
        let r = ring(5);
        let d_out = RMatrix::zeros(r, 1, 0);
        let d_in = RMatrix::from_rows(r, &[vec![25]]);
        assert_eq!(subquotient_invariant(&d_out, &d_in).unwrap(), ModuleInvariant::new(0, vec![2]));
        let id = RMatrix::identity(r, 1);
        assert!(subquotient_invariant(&id, &RMatrix::zeros(r, 1, 1)).unwrap().is_zero());
        assert_eq!(subquotient_invariant(&id, &id), Err(Error::CompositionNonZero));
    }

    #[test]
    fn solve_examples() {
        let r = ring(3);
        let b = RMatrix::row_vector(r, &[4, -7]);
        let x = solve(&RMatrix::identity(r, 2), &b).unwrap().unwrap();
        assert!(x.congruent(&b));
        let m = RMatrix::from_rows(r, &[vec![3]]);
        assert!(solve(&m, &RMatrix::row_vector(r, &[1])).unwrap().is_none());
        let x = solve(&m, &RMatrix::row_vector(r, &[9])).unwrap().unwrap();
        assert!(x.congruent(&RMatrix::row_vector(r, &[3])));
        assert_eq!(x.prec(), 15);
    }

    #[test]
    fn guard_band_rejects_ambiguous_pivots() {
        let r = ring(2);
        let m = RMatrix::from_rows(r, &[vec![1 << 13]]);
        assert!(matches!(smith(&m), Err(Error::PrecisionExhausted { .. })));
        let z = RMatrix::from_rows(r, &[vec![0]]);
        assert_eq!(smith(&z).unwrap().pivots, vec![16]);
    }
}
