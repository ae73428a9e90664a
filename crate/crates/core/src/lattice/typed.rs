//! Lattices stored inside a typed ambient `⊕ R_αβ^{d_αβ}`.
//!
//! An `A`-lattice `M` with `M♯ = ambient` satisfies `pM♯ ⊆ M ⊆ M♯`, so it is
//! determined by the subspace `V̄ = M / pM♯` of `k^D`. That subspace is kept
//! in reduced row echelon form, which makes the representation canonical.

use std::fmt;

use super::module::Module;
use super::quiver::{self, QuiverRep, RepHom};
use super::rank::VectorRank;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, smith, KMatrix, RMatrix, Zpn};
use crate::ring::{ambient_action, k_embedding, CoordType, Generator};

#[derive(Clone, PartialEq, Eq)]
pub struct TypedLattice {
    ring: Zpn,
    dims: [usize; 4],
    /// RREF rows spanning `M / pM♯`, one row per minimal generator.
    vbar: KMatrix,
    pivots: Vec<usize>,
    free_k_rank: usize,
}

impl TypedLattice {
    fn from_vbar(ring: Zpn, dims: [usize; 4], v: &KMatrix, free_k_rank: usize) -> TypedLattice {
        let r = v.rref();
        TypedLattice { ring, dims, vbar: r.basis(), pivots: r.pivots, free_k_rank }
    }

    /// The functor Ψ: the preimage of the image of `f_+` under reduction mod `p`.
    pub fn realize(ring: Zpn, rep: &QuiverRep) -> Result<TypedLattice> {
        if rep.p() != ring.p() {
            return Err(Error::InvalidRepresentation(format!(
                "representation over F_{} for a ring with p = {}",
                rep.p(),
                ring.p()
            )));
        }
        rep.validate().map_err(|v| Error::InvalidRepresentation(v.to_string()))?;
        Ok(Self::from_vbar(ring, rep.rank().arms, &rep.f_plus(), 0))
    }

    /// The free module `K^r`, carried symbolically.
    pub fn free(ring: Zpn, r: usize) -> TypedLattice {
        TypedLattice { ring, dims: [0; 4], vbar: KMatrix::zeros(ring.p(), 0, 0), pivots: vec![], free_k_rank: r }
    }

    pub fn ring(&self) -> Zpn {
        self.ring
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn free_k_rank(&self) -> usize {
        self.free_k_rank
    }

    pub fn vbar(&self) -> &KMatrix {
        &self.vbar
    }

    /// Rank over `R` of the `A`-lattice part.
    pub fn a_rank(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Rank over `R` including free summands.
    pub fn rank(&self) -> usize {
        self.a_rank() + 4 * self.free_k_rank
    }

    /// Coordinate types of the ambient, grouped in the global order.
    pub fn types(&self) -> Vec<CoordType> {
        CoordType::ALL.iter().flat_map(|&t| std::iter::repeat(t).take(self.dims[t.index()])).collect()
    }

    pub fn vector_rank(&self) -> VectorRank {
        VectorRank { bullet: self.vbar.rows(), arms: self.dims }
    }

    /// The functor Φ on the `A`-lattice part.
    pub fn rep_of(&self) -> QuiverRep {
        let mut start = 0;
        let arms = self.dims.map(|d| {
            let a = self.vbar.col_range(start, d);
            start += d;
            a
        });
        QuiverRep::new(self.ring.p(), self.vbar.rows(), arms)
    }

    /// Basis rows of the `A`-lattice part inside its ambient: lifted echelon
    /// rows, then `p e_k` for every non-pivot coordinate `k`.
    pub fn basis(&self) -> RMatrix {
        let d = self.a_rank();
        let p = self.ring.p() as i64;
        let mut b = RMatrix::zeros(self.ring, d, d);
        for i in 0..self.vbar.rows() {
            for j in 0..d {
                b.set(i, j, self.vbar.get(i, j));
            }
        }
        for (r, k) in self.non_pivots().into_iter().enumerate() {
            b.set(self.vbar.rows() + r, k, p as u64);
        }
        b
    }

    fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.a_rank()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.a_rank()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates in [`basis`](Self::basis) of `p * u` for an ambient row
    /// vector `u`; exact, no division.
    fn coords_of_p_times(&self, u: &[u64]) -> Vec<u64> {
        let r = self.ring;
        let p = r.p();
        let mut c = vec![0u64; self.a_rank()];
        for (i, &j) in self.pivots.iter().enumerate() {
            c[i] = r.mul(p, u[j]);
        }
        let g = self.vbar.rows();
        for (s, k) in self.non_pivots().into_iter().enumerate() {
            let mut v = u[k];
            for (i, &j) in self.pivots.iter().enumerate() {
                v = r.sub(v, r.mul(u[j], self.vbar.get(i, k)));
            }
            c[g + s] = v;
        }
        c
    }

    /// Coordinates of ambient rows in the lattice basis. Entries are known
    /// to one digit less than the input.
    pub fn coordinates(&self, w: &RMatrix) -> Result<RMatrix> {
        let r = self.ring;
        let d = self.a_rank();
        if w.cols() != d {
            return Err(Error::Dimension(format!("vector of length {} in ambient of rank {d}", w.cols())));
        }
        let p = r.p();
        let g = self.vbar.rows();
        let np = self.non_pivots();
        let mut out = RMatrix::zeros(r, w.rows(), d);
        for row in 0..w.rows() {
            let x = w.row(row);
            let mut resid: Vec<u64> = x.to_vec();
            for (i, &j) in self.pivots.iter().enumerate() {
                let c = x[j];
                out.set(row, i, c);
                for k in 0..d {
                    resid[k] = r.sub(resid[k], r.mul(c, self.vbar.get(i, k)));
                }
            }
            for (s, &k) in np.iter().enumerate() {
                if resid[k] % p != 0 {
                    return Err(Error::NotInLattice);
                }
                out.set(row, g + s, resid[k] / p);
            }
        }
        Ok(out.with_prec(w.prec().saturating_sub(1)))
    }

    fn intrinsic(&self, which: Generator) -> RMatrix {
        let types = self.types();
        let d = self.a_rank();
        let b = self.basis();
        let on = |t: CoordType| match which {
            Generator::X => t.alpha_is_p(),
            Generator::Y => t.beta_is_p(),
            Generator::Z => t == CoordType::PP,
        };
        let mut m = RMatrix::zeros(self.ring, d, d);
        for i in 0..d {
            // b_i * action = p * u with u the masked row
            let u: Vec<u64> = (0..d).map(|j| if on(types[j]) { b.get(i, j) } else { 0 }).collect();
            for (j, c) in self.coords_of_p_times(&u).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Action matrices on the lattice basis, free summands appended as
    /// copies of the regular representation.
    pub fn module(&self) -> Module {
        let a = Module { x: self.intrinsic(Generator::X), y: self.intrinsic(Generator::Y) };
        if self.free_k_rank == 0 {
            a
        } else {
            a.direct_sum(&Module::free(self.ring, self.free_k_rank))
        }
    }

    /// Action of `z` on the `A`-lattice part.
    pub fn z_action(&self) -> RMatrix {
        self.intrinsic(Generator::Z)
    }

    /// Checks closure under `x`, `y`, `z` by acting in the ambient and
    /// solving in the basis.
    pub fn is_closed(&self) -> bool {
        let b = self.basis();
        let types = self.types();
        [Generator::X, Generator::Y, Generator::Z]
            .into_iter()
            .all(|g| self.coordinates(&b.mul(&ambient_action(self.ring, &types, g))).is_ok())
    }

    /// Normalizes the lattice spanned by `basis` rows inside an ambient with
    /// the given coordinate types (in any order): the ambient is replaced by
    /// the projections onto each type.
    pub fn from_basis(ring: Zpn, types: &[CoordType], basis: &RMatrix) -> Result<TypedLattice> {
        if basis.cols() != types.len() {
            return Err(Error::Dimension("basis width differs from the type list".into()));
        }
        let r = basis.rows();
        let mut dims = [0usize; 4];
        let mut blocks = Vec::new();
        for t in CoordType::ALL {
            let idx: Vec<usize> = (0..types.len()).filter(|&j| types[j] == t).collect();
            if idx.is_empty() {
                continue;
            }
            let bt = basis.select_cols(&idx);
            let sf = smith(&bt)?;
            let s = sf.rank();
            dims[t.index()] = s;
            let cols: Vec<usize> = (0..s).collect();
            blocks.push(sf.left_inv.select_cols(&cols));
        }
        if dims.iter().sum::<usize>() != r {
            return Err(Error::Dimension(format!(
                "{r} basis rows span a lattice of rank {}",
                dims.iter().sum::<usize>()
            )));
        }
        let refs: Vec<&RMatrix> = blocks.iter().collect();
        let b = if refs.is_empty() { RMatrix::zeros(ring, 0, 0) } else { RMatrix::hstack(&refs) };
        let sf = smith(&b)?;
        if let Some(&e) = sf.pivots.iter().find(|&&e| e > 1) {
            return Err(Error::NotNormalized(format!("elementary divisor p^{e} exceeds p")));
        }
        Ok(Self::from_vbar(ring, dims, &b.mod_p(), 0))
    }

    /// `Hom_R(M, R)` with the transposed action, rescaled by `p` into
    /// normalized position.
    pub fn dual(&self) -> Result<TypedLattice> {
        let b = self.basis();
        let sf = smith(&b)?;
        let p = self.ring.p();
        let d = self.a_rank();
        // p B^{-1} = V diag(p^{1-e}) U
        let mut diag = RMatrix::zeros(self.ring, d, d);
        for (i, &e) in sf.pivots.iter().enumerate() {
            if e > 1 {
                return Err(Error::NotNormalized(format!("basis has elementary divisor p^{e}")));
            }
            diag.set(i, i, if e == 0 { p } else { 1 });
        }
        let dual_basis = sf.right.mul(&diag).mul(&sf.left).transpose();
        let mut out = Self::from_basis(self.ring, &self.types(), &dual_basis)?;
        out.free_k_rank = self.free_k_rank;
        Ok(out)
    }

    /// The kernel of a minimal projective cover, normalized. Free summands
    /// contribute nothing.
    pub fn syzygy(&self) -> Result<TypedLattice> {
        let m = Module { x: self.intrinsic(Generator::X), y: self.intrinsic(Generator::Y) };
        let gens = m.minimal_generators();
        let kernel = m.syzygy_kernel(&gens)?;
        syzygy_lattice(self.ring, &kernel)
    }

    /// The Auslander-Reiten translate, which coincides with the syzygy.
    pub fn tau(&self) -> Result<TypedLattice> {
        self.syzygy()
    }

    pub fn tau_inverse(&self) -> Result<TypedLattice> {
        self.dual()?.syzygy()?.dual()
    }

    /// `τ^k` for any integer `k`.
    pub fn tau_power(&self, k: i32) -> Result<TypedLattice> {
        let mut l = self.clone();
        for _ in 0..k.unsigned_abs() {
            l = if k > 0 { l.tau()? } else { l.tau_inverse()? };
        }
        Ok(l)
    }

    /// Saturated basis (in the coordinates of [`module`](Self::module)) of
    /// `{m : xm = αm, ym = βm}`.
    pub fn eigen_part(&self, t: CoordType) -> Result<RMatrix> {
        let m = self.module();
        let p = self.ring.p();
        let ax = if t.alpha_is_p() { m.x.sub_scalar(p) } else { m.x.clone() };
        let ay = if t.beta_is_p() { m.y.sub_scalar(p) } else { m.y.clone() };
        kernel_basis(&RMatrix::hstack(&[&ax, &ay]))
    }

    pub fn direct_sum(&self, o: &TypedLattice) -> TypedLattice {
        let p = self.ring.p();
        let dims: [usize; 4] = [0, 1, 2, 3].map(|t| self.dims[t] + o.dims[t]);
        let total: usize = dims.iter().sum();
        // column positions of each summand's coordinates in the merged ambient
        let mut pos_a = Vec::new();
        let mut pos_b = Vec::new();
        let mut start = 0;
        for t in 0..4 {
            pos_a.extend(start..start + self.dims[t]);
            pos_b.extend(start + self.dims[t]..start + dims[t]);
            start += dims[t];
        }
        let mut v = KMatrix::zeros(p, self.vbar.rows() + o.vbar.rows(), total);
        for i in 0..self.vbar.rows() {
            for (j, &c) in pos_a.iter().enumerate() {
                v.set(i, c, self.vbar.get(i, j));
            }
        }
        for i in 0..o.vbar.rows() {
            for (j, &c) in pos_b.iter().enumerate() {
                v.set(self.vbar.rows() + i, c, o.vbar.get(i, j));
            }
        }
        Self::from_vbar(self.ring, dims, &v, self.free_k_rank + o.free_k_rank)
    }

    /// Regular means every indecomposable summand satisfies `2 d_• = Σ d_αβ`;
    /// for this quiver that is exactly membership in a tube.
    pub fn is_regular(&self) -> bool {
        if self.free_k_rank > 0 || self.a_rank() == 0 {
            return false;
        }
        quiver::decompose(&self.rep_of()).iter().all(|r| r.rank().is_balanced())
    }

    pub fn is_indecomposable(&self) -> bool {
        match (self.free_k_rank, self.a_rank()) {
            (1, 0) => true,
            (0, _) => quiver::is_indecomposable(&self.rep_of()),
            _ => false,
        }
    }

    /// The lattice map induced by a morphism of representations, as a matrix
    /// from this lattice's basis to the basis of `target`. Known to `N - 1`
    /// digits.
    pub fn induced_map(&self, target: &TypedLattice, h: &RepHom) -> Result<RMatrix> {
        let amb = ambient_lift(self.ring, self.dims, target.dims, &h.arms);
        target.coordinates(&self.basis().mul(&amb))
    }
}

/// Block-diagonal ambient map lifting arm maps with representatives in `0..p`.
pub(crate) fn ambient_lift(ring: Zpn, from: [usize; 4], to: [usize; 4], arms: &[KMatrix; 4]) -> RMatrix {
    let mut m = RMatrix::zeros(ring, from.iter().sum(), to.iter().sum());
    let (mut r0, mut c0) = (0, 0);
    for t in 0..4 {
        m.set_block(r0, c0, &RMatrix::lift(ring, &arms[t]));
        r0 += from[t];
        c0 += to[t];
    }
    m
}

/// Normalizes the kernel of a cover `K^g -> M` given in `{1, x, y, xy}`
/// coordinates of each copy.
pub(crate) fn syzygy_lattice(ring: Zpn, kernel: &RMatrix) -> Result<TypedLattice> {
    let g = kernel.cols() / 4;
    let e = k_embedding(ring);
    let blocks: Vec<&RMatrix> = (0..g).map(|_| &e).collect();
    let amb = if g == 0 { RMatrix::zeros(ring, 0, 0) } else { kernel.mul(&RMatrix::block_diag(&blocks)) };
    let types: Vec<CoordType> = (0..4 * g).map(|j| CoordType::from_index(j % 4)).collect();
    TypedLattice::from_basis(ring, &types, &amb)
}

impl fmt::Debug for TypedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypedLattice {} free {} over p={}", self.vector_rank(), self.free_k_rank, self.ring.p())?;
        write!(f, " V̄ = {:?}", self.vbar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> Zpn {
        Zpn::new(p, 16).unwrap()
    }

    fn rep_a(p: u64) -> QuiverRep {
        let one: &[Vec<i64>] = &[vec![1]];
        QuiverRep::from_rows(p, 1, [one, one, one, one])
    }

    fn atom(p: u64, t: CoordType) -> QuiverRep {
        let mut arms = [0; 4].map(|_| KMatrix::zeros(p, 1, 0));
        arms[t.index()] = KMatrix::identity(p, 1);
        QuiverRep::new(p, 1, arms)
    }

    #[test]
    fn realize_a_and_atoms() {
        let r = ring(3);
        let a = TypedLattice::realize(r, &rep_a(3)).unwrap();
        assert_eq!(a.vector_rank(), VectorRank::new(1, 1, 1, 1, 1));
        assert!(a.module().satisfies_relations());
        assert!(a.is_closed());
        let rpp = TypedLattice::realize(r, &atom(3, CoordType::PP)).unwrap();
        let m = rpp.module();
        assert_eq!(m.x, RMatrix::from_rows(r, &[vec![3]]));
        assert_eq!(m.y, RMatrix::from_rows(r, &[vec![3]]));
    }

    #[test]
    fn a_is_spanned_by_the_images_of_one_and_x_y_z() {
        // rows (1,1,1,1), (p,p,0,0), (p,0,p,0), (p,0,0,0) span the same lattice
        let r = ring(5);
        let a = TypedLattice::realize(r, &rep_a(5)).unwrap();
        let gens = RMatrix::from_rows(r, &[vec![1, 1, 1, 1], vec![5, 5, 0, 0], vec![5, 0, 5, 0], vec![5, 0, 0, 0]]);
        let c = a.coordinates(&gens).unwrap();
        assert_eq!(crate::linalg::smith_pivots(&c).unwrap(), vec![0, 0, 0, 0]);
        let b = TypedLattice::from_basis(r, &CoordType::ALL, &gens).unwrap();
        assert_eq!(b, a);
    }

    #[test]
    fn syzygy_and_dual_of_a() {
        let r = ring(2);
        let a = TypedLattice::realize(r, &rep_a(2)).unwrap();
        let om = a.syzygy().unwrap();
        assert_eq!(om.vector_rank(), VectorRank::new(3, 1, 1, 1, 1));
        let d = a.dual().unwrap();
        assert_eq!(d.vector_rank(), om.vector_rank());
        assert_eq!(d.dual().unwrap(), a);
        let rpp = TypedLattice::realize(r, &atom(2, CoordType::PP)).unwrap();
        assert_eq!(rpp.syzygy().unwrap().vector_rank(), VectorRank::new(2, 0, 1, 1, 1));
        assert_eq!(rpp.dual().unwrap(), rpp);
    }

    #[test]
    fn free_summands_rejected_by_normalization() {
        let r = ring(3);
        let k = crate::ring::k_embedding(r);
        assert!(matches!(
            TypedLattice::from_basis(r, &CoordType::ALL, &k),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn direct_sum_ranks() {
        let r = ring(3);
        let a = TypedLattice::realize(r, &rep_a(3)).unwrap();
        let z = TypedLattice::realize(r, &atom(3, CoordType::ZZ)).unwrap();
        let s = a.direct_sum(&z);
        assert_eq!(s.vector_rank(), VectorRank::new(2, 1, 1, 1, 2));
        assert!(!s.is_indecomposable());
        assert!(s.module().satisfies_relations());
    }
}
