//! The differentials of the resolution `P = P̄ ⊗ P̄` of `R` over `K` and of
//! its two-sided (full) version, induced on a module given by its action
//! matrices.
//!
//! `P_n` has basis `u^i v^j` (`i + j = n`) and `P̂_{-m}` for `m >= 1` has the
//! dual basis `û^i v̂^j` (`i + j = m - 1`). Blocks are ordered by `i`.

use crate::lattice::Module;
use crate::linalg::RMatrix;

/// Number of basis monomials of the slice in degree `n` of the full resolution.
pub fn slice_size(n: i64) -> usize {
    if n >= 0 {
        n as usize + 1
    } else {
        n.unsigned_abs() as usize
    }
}

fn sign(i: usize, m: &RMatrix) -> RMatrix {
    if i % 2 == 0 {
        m.clone()
    } else {
        m.neg()
    }
}

/// `∂_n : P_n ⊗ M -> P_{n-1} ⊗ M` with
/// `∂(u^i v^j ⊗ m) = u^{i-1} v^j ⊗ C_i(x)m + (-1)^i u^i v^{j-1} ⊗ C_j(y)m`.
pub fn tensor_differential(m: &Module, n: usize) -> RMatrix {
    let d = m.dim();
    let ring = m.ring();
    if n == 0 {
        return RMatrix::zeros(ring, d, 0);
    }
    let mut out = RMatrix::zeros(ring, (n + 1) * d, n * d);
    for i in 0..=n {
        let j = n - i;
        if i >= 1 {
            out.set_block(i * d, (i - 1) * d, &m.c_x(i));
        }
        if j >= 1 {
            out.set_block(i * d, i * d, &sign(i, &m.c_y(j)));
        }
    }
    out
}

/// `δ^n : Hom(P̂_n, M) -> Hom(P̂_{n+1}, M)` for every integer `n`.
///
/// For `n >= 0` this is `(δf)(u^i v^j) = C_i(x) f(u^{i-1} v^j) + (-1)^i C_j(y) f(u^i v^{j-1})`,
/// for `n = -1` multiplication by `xy`, and for `n = -m <= -2` it is induced
/// by `d(û^i v̂^j) = C_{i+1} û^{i+1} v̂^j + (-1)^i C_{j+1} û^i v̂^{j+1}`.
pub fn full_coboundary(m: &Module, n: i64) -> RMatrix {
    let d = m.dim();
    let ring = m.ring();
    let (src, dst) = (slice_size(n), slice_size(n + 1));
    let mut out = RMatrix::zeros(ring, src * d, dst * d);
    if n >= 0 {
        let n = n as usize;
        for i in 0..=n + 1 {
            let j = n + 1 - i;
            if i >= 1 {
                out.set_block((i - 1) * d, i * d, &m.c_x(i));
            }
            if j >= 1 {
                out.set_block(i * d, i * d, &sign(i, &m.c_y(j)));
            }
        }
    } else if n == -1 {
        out.set_block(0, 0, &m.xy());
    } else {
        let mm = n.unsigned_abs() as usize;
        // target basis û^i v̂^j with i + j = mm - 2
        for i in 0..mm - 1 {
            let j = mm - 2 - i;
            out.set_block((i + 1) * d, i * d, &m.c_x(i + 1));
            out.set_block(i * d, i * d, &sign(i, &m.c_y(j + 1)));
        }
    }
    out
}

/// `δ^n` of the ordinary Hom complex, `n >= 0`; the same matrix as
/// [`full_coboundary`] in nonnegative degrees.
pub fn hom_coboundary(m: &Module, n: usize) -> RMatrix {
    full_coboundary(m, n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::Zpn;

    #[test]
    fn slice_sizes() {
        assert_eq!(slice_size(0), 1);
        assert_eq!(slice_size(3), 4);
        assert_eq!(slice_size(-1), 1);
        assert_eq!(slice_size(-4), 4);
    }

    #[test]
    fn composites_vanish() {
        let r = Zpn::new(3, 16).unwrap();
        let m = catalog::make_a(r).module().direct_sum(&Module::free(r, 1));
        for n in 1..6 {
            let a = tensor_differential(&m, n + 1);
            let b = tensor_differential(&m, n);
            assert!(a.mul(&b).is_zero(), "tensor n={n}");
        }
        for n in -7..7 {
            let a = full_coboundary(&m, n);
            let b = full_coboundary(&m, n + 1);
            assert!(a.mul(&b).is_zero(), "full n={n}");
        }
    }
}
