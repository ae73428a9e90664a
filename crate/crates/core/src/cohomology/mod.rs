//! Homology, cohomology and Tate cohomology of `K`-lattices computed from
//! the resolution `P̄ ⊗ P̄` and its two-sided extension.

pub mod checks;
pub mod expected;
pub mod resolution;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Module, TypedLattice};
use crate::linalg::{subquotient_invariant, ModuleInvariant, RMatrix};

pub use checks::{check_duality, check_kill, check_shift};
pub use expected::{expected, expected_homology, expected_tube};
pub use resolution::{full_coboundary, hom_coboundary, slice_size, tensor_differential};

/// Default degree window.
pub const DEFAULT_WINDOW: (i64, i64) = (-6, 6);

/// `H_n(K, M) = Tor_n^K(R, M)` from the tensor complex.
pub fn module_homology(m: &Module, n: usize) -> Result<ModuleInvariant> {
    subquotient_invariant(&tensor_differential(m, n), &tensor_differential(m, n + 1))
}

/// `H^n(K, M) = Ext^n_K(R, M)` for `n >= 1` from the Hom complex.
pub fn module_cohomology(m: &Module, n: usize) -> Result<ModuleInvariant> {
    if n == 0 {
        return Err(Error::Dimension("ordinary cohomology is computed in degrees n >= 1".into()));
    }
    subquotient_invariant(&hom_coboundary(m, n), &hom_coboundary(m, n - 1))
}

pub fn homology_h(l: &TypedLattice, n: usize) -> Result<ModuleInvariant> {
    module_homology(&l.module(), n)
}

pub fn cohomology_h(l: &TypedLattice, n: usize) -> Result<ModuleInvariant> {
    module_cohomology(&l.module(), n)
}

/// Tate cohomology from the four-case definition: `H^n` for `n > 0`,
/// `H_{-n-1}` for `n < -1`, `M_pp / xyM` at `0` and
/// `{m : xym = 0} / ((x-p)M + (y-p)M)` at `-1`.
pub fn module_tate(m: &Module, n: i64) -> Result<ModuleInvariant> {
    let p = m.ring().p();
    match n {
        n if n > 0 => module_cohomology(m, n as usize),
        n if n < -1 => module_homology(m, (-n - 1) as usize),
        0 => {
            let eigen = RMatrix::hstack(&[&m.x.sub_scalar(p), &m.y.sub_scalar(p)]);
            subquotient_invariant(&eigen, &m.xy())
        }
        _ => {
            let radical = RMatrix::vstack(&[&m.x.sub_scalar(p), &m.y.sub_scalar(p)]);
            subquotient_invariant(&m.xy(), &radical)
        }
    }
}

pub fn tate(l: &TypedLattice, n: i64) -> Result<ModuleInvariant> {
    module_tate(&l.module(), n)
}

/// Tate cohomology as the cohomology of `Hom_K(P̂, M)` at `n`.
pub fn module_tate_full(m: &Module, n: i64) -> Result<ModuleInvariant> {
    subquotient_invariant(&full_coboundary(m, n), &full_coboundary(m, n - 1))
}

pub fn tate_via_full_resolution(l: &TypedLattice, n: i64) -> Result<ModuleInvariant> {
    module_tate_full(&l.module(), n)
}

/// `tate(l, n)` for `n` in `from..=to`, evaluated concurrently.
pub fn tate_table(l: &TypedLattice, from: i64, to: i64) -> Result<Vec<(i64, ModuleInvariant)>> {
    let m = l.module();
    (from..=to).into_par_iter().map(|n| module_tate(&m, n).map(|h| (n, h))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, make_a, make_free};
    use crate::linalg::Zpn;
    use crate::ring::CoordType;

    fn ring(p: u64) -> Zpn {
        Zpn::new(p, 16).unwrap()
    }

    #[test]
    fn stated_values() {
        let r = ring(3);
        let a = make_a(r);
        let rpp = catalog::atom(r, CoordType::PP);
        let r00 = catalog::atom(r, CoordType::ZZ);
        assert_eq!(tate(&a, 0).unwrap(), ModuleInvariant::k_power(1));
        assert_eq!(tate(&rpp, 0).unwrap(), ModuleInvariant::new(0, vec![2]));
        assert_eq!(tate(&a, -1).unwrap(), ModuleInvariant::k_power(1));
        assert_eq!(homology_h(&a, 3).unwrap(), ModuleInvariant::k_power(4));
        assert_eq!(homology_h(&r00, 2).unwrap(), ModuleInvariant::k_power(2));
        assert_eq!(homology_h(&rpp, 0).unwrap(), ModuleInvariant::new(1, vec![]));
        assert_eq!(cohomology_h(&a, 2).unwrap(), ModuleInvariant::k_power(3));
        assert!(cohomology_h(&rpp, 1).unwrap().is_zero());
    }

    #[test]
    fn free_modules_are_acyclic() {
        let f = make_free(ring(2), 2);
        for n in -6..=6 {
            assert!(tate(&f, n).unwrap().is_zero(), "n={n}");
            assert!(tate_via_full_resolution(&f, n).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn full_resolution_agrees() {
        for p in [2, 3] {
            let r = ring(p);
            for l in [make_a(r), catalog::atom(r, CoordType::ZZ), catalog::atom(r, CoordType::PP)] {
                for n in -4..=4 {
                    assert_eq!(tate(&l, n).unwrap(), tate_via_full_resolution(&l, n).unwrap(), "p={p} n={n}");
                }
            }
        }
    }

    #[test]
    fn table_is_ordered() {
        let t = tate_table(&make_a(ring(3)), -4, 4).unwrap();
        let dims: Vec<usize> = t.iter().map(|(_, h)| h.dim_mod_p()).collect();
        assert_eq!(dims, vec![4, 3, 2, 1, 1, 2, 3, 4, 5]);
    }
}
