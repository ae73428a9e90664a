//! A `K`-module that is free over `R`, given by the action matrices of `x`
//! and `y` on a fixed `R`-basis (row vectors, acting on the right).

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, smith_pivots, RMatrix, Zpn};
use crate::ring::{k_regular_x, k_regular_y};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub x: RMatrix,
    pub y: RMatrix,
}

impl Module {
    pub fn new(x: RMatrix, y: RMatrix) -> Result<Module> {
        if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
            return Err(Error::Dimension("action matrices must be square of equal size".into()));
        }
        Ok(Module { x, y })
    }

    /// The free module `K^r`.
    pub fn free(ring: Zpn, r: usize) -> Module {
        let x = k_regular_x(ring);
        let y = k_regular_y(ring);
        let xs: Vec<&RMatrix> = (0..r).map(|_| &x).collect();
        let ys: Vec<&RMatrix> = (0..r).map(|_| &y).collect();
        Module { x: RMatrix::block_diag(&xs), y: RMatrix::block_diag(&ys) }
    }

    pub fn ring(&self) -> Zpn {
        self.x.ring()
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    fn p(&self) -> u64 {
        self.ring().p()
    }

    /// `C_i(x)`: `x` for even `i`, `x - p` for odd `i`.
    pub fn c_x(&self, i: usize) -> RMatrix {
        if i % 2 == 0 {
            self.x.clone()
        } else {
            self.x.sub_scalar(self.p())
        }
    }

    pub fn c_y(&self, j: usize) -> RMatrix {
        if j % 2 == 0 {
            self.y.clone()
        } else {
            self.y.sub_scalar(self.p())
        }
    }

    pub fn xy(&self) -> RMatrix {
        self.x.mul(&self.y)
    }

    /// `Hom_R(M, R)` with the transposed action.
    pub fn transpose(&self) -> Module {
        Module { x: self.x.transpose(), y: self.y.transpose() }
    }

    pub fn direct_sum(&self, o: &Module) -> Module {
        Module { x: RMatrix::block_diag(&[&self.x, &o.x]), y: RMatrix::block_diag(&[&self.y, &o.y]) }
    }

    /// `x(x-p) = 0`, `y(y-p) = 0` and `xy = yx`.
    pub fn satisfies_relations(&self) -> bool {
        let p = self.p();
        self.x.mul(&self.x.sub_scalar(p)).is_zero()
            && self.y.mul(&self.y.sub_scalar(p)).is_zero()
            && self.x.mul(&self.y) == self.y.mul(&self.x)
    }

    /// Whether `f` (rows indexed by this basis) intertwines the actions.
    pub fn is_morphism_to(&self, f: &RMatrix, o: &Module) -> bool {
        self.x.mul(f).congruent(&f.mul(&o.x)) && self.y.mul(f).congruent(&f.mul(&o.y))
    }

    /// Standard basis vectors whose classes span `M / rM` with `r = (p, x, y)`.
    pub fn minimal_generators(&self) -> RMatrix {
        let rad = RMatrix::vstack(&[&self.x, &self.y]).mod_p().rref();
        let free = rad.free_columns();
        RMatrix::from_fn(self.ring(), free.len(), self.dim(), |i, j| (j == free[i]) as i64)
    }

    /// The map `K^g -> M` sending the `i`-th copy of `{1, x, y, xy}` to
    /// `g_i, g_i x, g_i y, g_i xy`.
    pub fn cover_matrix(&self, generators: &RMatrix) -> RMatrix {
        let xy = self.xy();
        let mut rows = Vec::with_capacity(4 * generators.rows());
        for i in 0..generators.rows() {
            let g = generators.select_rows(&[i]);
            rows.push(g.clone());
            rows.push(g.mul(&self.x));
            rows.push(g.mul(&self.y));
            rows.push(g.mul(&xy));
        }
        let refs: Vec<&RMatrix> = rows.iter().collect();
        if refs.is_empty() {
            return RMatrix::zeros(self.ring(), 0, self.dim());
        }
        RMatrix::vstack(&refs)
    }

    /// Kernel of the cover defined by `generators`, in `K^g` coordinates.
    /// Fails if the generators do not generate.
    pub fn syzygy_kernel(&self, generators: &RMatrix) -> Result<RMatrix> {
        let c = self.cover_matrix(generators);
        let pivots = smith_pivots(&c)?;
        if pivots.len() < self.dim() || pivots.iter().any(|&e| e != 0) {
            return Err(Error::NotExact("projective cover is not surjective".into()));
        }
        kernel_basis(&c)
    }
}
