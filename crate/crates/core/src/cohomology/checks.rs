//! Structural checks on Tate cohomology: the shift by `τ`, duality and
//! annihilation by `p^2`.

use crate::error::Result;
use crate::lattice::TypedLattice;
use crate::report::{Check, Status};

use super::tate;

/// `Ĥ^n(M) = Ĥ^{n+1}(τM)`.
pub fn check_shift(l: &TypedLattice, n: i64) -> Result<Check> {
    let lhs = tate(l, n)?;
    let rhs = tate(&l.tau()?, n + 1)?;
    Ok(Check::compare(format!("shift n={n}"), &lhs, &rhs))
}

/// `Ĥ^n(M^∨)` and `Ĥ^{-n}(M)` have the same invariant.
pub fn check_duality(l: &TypedLattice, n: i64) -> Result<Check> {
    let lhs = tate(&l.dual()?, n)?;
    let rhs = tate(l, -n)?;
    Ok(Check::compare(format!("duality n={n}"), &rhs, &lhs))
}

/// `p^2` kills `Ĥ^n(M)`, and `p` kills it off degree `0`. A `p^2` summand
/// off degree `0` is reported as a discrepancy rather than a failure.
pub fn check_kill(l: &TypedLattice, n: i64) -> Result<Check> {
    let h = tate(l, n)?;
    let e = h.max_exponent();
    let status = match (h.free_rank, e) {
        (0, 0..=1) => Status::Pass,
        (0, 2) if n == 0 => Status::Pass,
        (0, 2) => Status::Discrepancy,
        _ => Status::Fail,
    };
    let note = if status == Status::Discrepancy { "p^2 torsion off degree 0" } else { "" };
    Ok(Check {
        name: format!("kill n={n}"),
        status,
        expected: if n == 0 { "exponents <= 2" } else { "exponents <= 1" }.into(),
        computed: h.to_string(),
        note: note.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, make_a, TubeId};
    use crate::linalg::{FpPoly, Zpn};
    use crate::ring::CoordType;

    #[test]
    fn stated_checks() {
        let r = Zpn::new(3, 16).unwrap();
        assert!(check_shift(&make_a(r), 2).unwrap().passed());
        assert!(check_kill(&catalog::atom(r, CoordType::PP), 0).unwrap().passed());
        let r2 = Zpn::new(2, 16).unwrap();
        let t = TubeId::homogeneous(FpPoly::new(2, vec![1, 1, 1]), 2).build(r2).unwrap();
        assert!(check_duality(&t, 1).unwrap().passed());
    }
}
