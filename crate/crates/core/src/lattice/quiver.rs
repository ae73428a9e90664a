//! Representations of the star quiver with one central vertex and four arms,
//! one arm per character type. Maps act on row vectors from the right, so
//! arm `t` is a `d_• × d_t` matrix.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rank::VectorRank;
use crate::linalg::{FpPoly, KMatrix};
use crate::ring::CoordType;

/// Seed for every randomized search in this module.
const SEARCH_SEED: u64 = 0x6b6c_6569_6e72;
/// Random endomorphisms tried after the basis in the Fitting test.
const RANDOM_TRIALS: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct QuiverRep {
    p: u64,
    bullet: usize,
    arms: [KMatrix; 4],
}

/// Why a representation is not in the admissible class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    ArmNotSurjective(CoordType),
    NotInjective,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::ArmNotSurjective(t) => write!(f, "arm {t} is not surjective"),
            Violation::NotInjective => write!(f, "the stacked map to the arms is not injective"),
        }
    }
}

impl QuiverRep {
    pub fn new(p: u64, bullet: usize, arms: [KMatrix; 4]) -> Self {
        QuiverRep { p, bullet, arms }
    }

    /// Builds a representation from integer arm matrices.
    pub fn from_rows(p: u64, bullet: usize, arms: [&[Vec<i64>]; 4]) -> Self {
        let arms = arms.map(|rows| {
            let cols = rows.first().map_or(0, |r| r.len());
            if rows.is_empty() {
                KMatrix::zeros(p, bullet, 0)
            } else {
                KMatrix::from_fn(p, rows.len(), cols, |i, j| rows[i][j])
            }
        });
        QuiverRep { p, bullet, arms }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn bullet(&self) -> usize {
        self.bullet
    }

    pub fn arm(&self, t: CoordType) -> &KMatrix {
        &self.arms[t.index()]
    }

    pub fn arms(&self) -> &[KMatrix; 4] {
        &self.arms
    }

    pub fn rank(&self) -> VectorRank {
        VectorRank { bullet: self.bullet, arms: self.arms.clone().map(|a| a.cols()) }
    }

    /// Total dimension over all five vertices.
    pub fn total_dim(&self) -> usize {
        self.bullet + self.rank().total()
    }

    /// The stacked map `f_+` from the centre into the sum of the arms.
    pub fn f_plus(&self) -> KMatrix {
        KMatrix::hstack(&[&self.arms[0], &self.arms[1], &self.arms[2], &self.arms[3]])
    }

    /// All reasons the representation fails to be admissible.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (t, a) in CoordType::ALL.iter().zip(&self.arms) {
            if a.rows() != self.bullet {
                out.push(Violation::Shape(format!("arm {t} has {} rows, expected {}", a.rows(), self.bullet)));
            }
            if a.p() != self.p {
                out.push(Violation::Shape(format!("arm {t} is over F_{}", a.p())));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (t, a) in CoordType::ALL.iter().zip(&self.arms) {
            if a.rank() != a.cols() {
                out.push(Violation::ArmNotSurjective(*t));
            }
        }
        if self.f_plus().rank() != self.bullet {
            out.push(Violation::NotInjective);
        }
        out
    }

    pub fn validate(&self) -> Result<(), Violation> {
        match self.violations().into_iter().next() {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    pub fn direct_sum(&self, o: &QuiverRep) -> QuiverRep {
        let arms = [0, 1, 2, 3].map(|i| KMatrix::block_diag(&[&self.arms[i], &o.arms[i]]));
        QuiverRep { p: self.p, bullet: self.bullet + o.bullet, arms }
    }

    /// Exchanges two arms.
    pub fn swap_arms(&self, a: CoordType, b: CoordType) -> QuiverRep {
        let mut arms = self.arms.clone();
        arms.swap(a.index(), b.index());
        QuiverRep { p: self.p, bullet: self.bullet, arms }
    }

    /// The subrepresentation on subspaces given by row bases at each vertex.
    /// The subspaces must be compatible with the arms.
    pub fn restrict(&self, bullet_basis: &KMatrix, arm_bases: &[KMatrix; 4]) -> Option<QuiverRep> {
        let mut arms = Vec::with_capacity(4);
        for (a, s) in self.arms.iter().zip(arm_bases) {
            let image = bullet_basis.mul(a);
            let m = if image.rows() == 0 {
                KMatrix::zeros(self.p, 0, s.rows())
            } else if s.rows() == 0 {
                if !image.is_zero() {
                    return None;
                }
                KMatrix::zeros(self.p, image.rows(), 0)
            } else {
                s.solve_left(&image)?
            };
            arms.push(m);
        }
        let arms: [KMatrix; 4] = arms.try_into().ok()?;
        Some(QuiverRep { p: self.p, bullet: bullet_basis.rows(), arms })
    }

    /// The quotient representation by the image of a monomorphism, together
    /// with the projection onto it.
    pub fn cokernel(&self, mono: &RepHom) -> Option<(QuiverRep, RepHom)> {
        // For each vertex, a complement basis C_v; the projection sends the
        // image rows to zero and C_v to the identity.
        let p = self.p;
        let vertex = |img: &KMatrix, n: usize| -> Option<(KMatrix, KMatrix)> {
            let r = img.rref();
            if r.rank() != img.rows() {
                return None;
            }
            let free = r.free_columns();
            let comp = KMatrix::from_fn(p, free.len(), n, |i, j| (j == free[i]) as i64);
            // projection: basis [img; comp] -> coordinates, keep the comp part
            let full = KMatrix::vstack(&[img, &comp]);
            let inv = full.inverse()?;
            let proj = inv.col_range(img.rows(), comp.rows());
            Some((comp, proj))
        };
        let (cb, pb) = vertex(&mono.bullet, self.bullet)?;
        let mut arms = Vec::new();
        let mut projs = Vec::new();
        for (t, a) in self.arms.iter().enumerate() {
            let (_, pt) = vertex(&mono.arms[t], a.cols())?;
            arms.push(cb.mul(a).mul(&pt));
            projs.push(pt);
        }
        let rep = QuiverRep { p, bullet: cb.rows(), arms: arms.try_into().ok()? };
        let pi = RepHom { bullet: pb, arms: projs.try_into().ok()? };
        Some((rep, pi))
    }
}

impl fmt::Debug for QuiverRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QuiverRep {} over F_{}", self.rank(), self.p)?;
        for (t, a) in CoordType::ALL.iter().zip(&self.arms) {
            write!(f, "  {t}: {a:?}")?;
        }
        Ok(())
    }
}

/// A morphism of representations: one linear map per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepHom {
    pub bullet: KMatrix,
    pub arms: [KMatrix; 4],
}

impl RepHom {
    pub fn identity(v: &QuiverRep) -> RepHom {
        RepHom {
            bullet: KMatrix::identity(v.p, v.bullet),
            arms: v.arms.clone().map(|a| KMatrix::identity(v.p, a.cols())),
        }
    }

    pub fn is_hom(&self, v: &QuiverRep, w: &QuiverRep) -> bool {
        (0..4).all(|t| v.arms[t].mul(&self.arms[t]) == self.bullet.mul(&w.arms[t]))
    }

    fn vertices(&self) -> impl Iterator<Item = &KMatrix> {
        std::iter::once(&self.bullet).chain(self.arms.iter())
    }

    pub fn is_iso(&self) -> bool {
        self.vertices().all(|m| m.is_invertible() || (m.rows() == 0 && m.cols() == 0))
    }

    pub fn is_mono(&self) -> bool {
        self.vertices().all(|m| m.rank() == m.rows())
    }

    pub fn is_epi(&self) -> bool {
        self.vertices().all(|m| m.rank() == m.cols())
    }

    pub fn compose(&self, o: &RepHom) -> RepHom {
        RepHom {
            bullet: self.bullet.mul(&o.bullet),
            arms: [0, 1, 2, 3].map(|t| self.arms[t].mul(&o.arms[t])),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vertices().all(|m| m.is_zero())
    }

    fn combine(p: u64, basis: &[RepHom], coeffs: &[u64]) -> RepHom {
        let mut acc = basis[0].scale(coeffs[0]);
        for (h, &c) in basis.iter().zip(coeffs).skip(1) {
            if c != 0 {
                acc = acc.add(&h.scale(c));
            }
        }
        let _ = p;
        acc
    }

    fn scale(&self, c: u64) -> RepHom {
        RepHom { bullet: self.bullet.scale(c), arms: self.arms.clone().map(|a| a.scale(c)) }
    }

    fn add(&self, o: &RepHom) -> RepHom {
        RepHom {
            bullet: self.bullet.add(&o.bullet),
            arms: [0, 1, 2, 3].map(|t| self.arms[t].add(&o.arms[t])),
        }
    }
}

/// Basis of `Hom(v, w)`: solutions of `F^v_t φ_t = φ_• F^w_t` for all arms.
pub fn hom_space(v: &QuiverRep, w: &QuiverRep) -> Vec<RepHom> {
    let p = v.p;
    let (bv, bw) = (v.bullet, w.bullet);
    let dv = v.rank().arms;
    let dw = w.rank().arms;
    let mut offsets = [0usize; 5];
    offsets[0] = bv * bw;
    for t in 0..4 {
        offsets[t + 1] = offsets[t] + dv[t] * dw[t];
    }
    let unknowns = offsets[4];
    let equations: usize = (0..4).map(|t| bv * dw[t]).sum();
    let mut sys = KMatrix::zeros(p, equations, unknowns);
    let mut row = 0;
    for t in 0..4 {
        let fv = &v.arms[t];
        let fw = &w.arms[t];
        let base = offsets[t];
        for i in 0..bv {
            for j in 0..dw[t] {
                for k in 0..dv[t] {
                    let c = fv.get(i, k);
                    if c != 0 {
                        sys.set(row, base + k * dw[t] + j, c);
                    }
                }
                for k in 0..bw {
                    let c = fw.get(k, j);
                    if c != 0 {
                        sys.set(row, i * bw + k, (p - c) % p);
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = sys.right_kernel();
    (0..kernel.rows())
        .map(|r| {
            let x = kernel.row(r);
            let bullet = KMatrix::from_fn(p, bv, bw, |i, k| x[i * bw + k] as i64);
            let arms = [0, 1, 2, 3].map(|t| {
                let base = offsets[t];
                KMatrix::from_fn(p, dv[t], dw[t], |k, j| x[base + k * dw[t] + j] as i64)
            });
            RepHom { bullet, arms }
        })
        .collect()
}

/// Searches for an isomorphism `v -> w` among the basis of `Hom(v, w)` and
/// seeded random combinations of it.
pub fn find_isomorphism(v: &QuiverRep, w: &QuiverRep) -> Option<RepHom> {
    if v.rank() != w.rank() {
        return None;
    }
    if v.total_dim() == 0 {
        return Some(RepHom::identity(v));
    }
    let basis = hom_space(v, w);
    if basis.is_empty() {
        return None;
    }
    if let Some(h) = basis.iter().find(|h| h.is_iso()) {
        return Some(h.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..4 * RANDOM_TRIALS {
        let coeffs: Vec<u64> = (0..basis.len()).map(|_| rng.gen_range(0..v.p)).collect();
        let h = RepHom::combine(v.p, &basis, &coeffs);
        if h.is_iso() {
            return Some(h);
        }
    }
    None
}

/// Searches for a monomorphism `v -> w`.
pub fn find_monomorphism(v: &QuiverRep, w: &QuiverRep) -> Option<RepHom> {
    let basis = hom_space(v, w);
    if basis.is_empty() {
        return None;
    }
    if let Some(h) = basis.iter().find(|h| h.is_mono()) {
        return Some(h.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..4 * RANDOM_TRIALS {
        let coeffs: Vec<u64> = (0..basis.len()).map(|_| rng.gen_range(0..v.p)).collect();
        let h = RepHom::combine(v.p, &basis, &coeffs);
        if h.is_mono() {
            return Some(h);
        }
    }
    None
}

fn charpoly(h: &RepHom) -> FpPoly {
    let p = h.bullet.p();
    h.vertices().fold(FpPoly::one(p), |acc, m| acc.mul(&m.charpoly()))
}

/// Tries to split `v` with the Fitting decomposition of one endomorphism.
fn fitting_split(v: &QuiverRep, h: &RepHom, rng: &mut ChaCha8Rng) -> Option<(QuiverRep, QuiverRep)> {
    let c = charpoly(h);
    let rad = c.radical();
    if rad.degree() < 2 || rad.is_irreducible() {
        return None;
    }
    let g = rad.split_squarefree(rng)?;
    let a = c.gcd(&g.powmod(c.degree() as u64, &c));
    let b = c.divrem(&a).0;
    let kernels = |f: &FpPoly| -> (KMatrix, [KMatrix; 4]) {
        let kb = h.bullet.eval_poly(f).left_kernel();
        let ka = [0, 1, 2, 3].map(|t| h.arms[t].eval_poly(f).left_kernel());
        (kb, ka)
    };
    let (ab, aa) = kernels(&a);
    let (bb, ba) = kernels(&b);
    let u = v.restrict(&ab, &aa)?;
    let w = v.restrict(&bb, &ba)?;
    if u.total_dim() == 0 || w.total_dim() == 0 {
        return None;
    }
    Some((u, w))
}

fn split_once(v: &QuiverRep, rng: &mut ChaCha8Rng) -> Option<(QuiverRep, QuiverRep)> {
    let basis = hom_space(v, v);
    for h in &basis {
        if let Some(s) = fitting_split(v, h, rng) {
            return Some(s);
        }
    }
    if basis.len() < 2 {
        return None;
    }
    for _ in 0..RANDOM_TRIALS {
        let c1: Vec<u64> = (0..basis.len()).map(|_| rng.gen_range(0..v.p)).collect();
        let c2: Vec<u64> = (0..basis.len()).map(|_| rng.gen_range(0..v.p)).collect();
        let h1 = RepHom::combine(v.p, &basis, &c1);
        let h2 = RepHom::combine(v.p, &basis, &c2);
        for h in [h1.clone(), h1.compose(&h2)] {
            if let Some(s) = fitting_split(v, &h, rng) {
                return Some(s);
            }
        }
    }
    None
}

/// Decomposes a representation into indecomposable summands.
pub fn decompose(v: &QuiverRep) -> Vec<QuiverRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    let mut stack = vec![v.clone()];
    let mut out = Vec::new();
    while let Some(r) = stack.pop() {
        if r.total_dim() == 0 {
            continue;
        }
        match split_once(&r, &mut rng) {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => out.push(r),
        }
    }
    out
}

pub fn is_indecomposable(v: &QuiverRep) -> bool {
    if v.total_dim() == 0 {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    split_once(v, &mut rng).is_none()
}

/// A random admissible representation with the given centre dimension and
/// arm dimensions (rejection sampling; returns `None` after many failures).
pub fn random_rep(p: u64, rank: VectorRank, rng: &mut impl Rng) -> Option<QuiverRep> {
    for _ in 0..200 {
        let arms = rank.arms.map(|d| KMatrix::from_fn(p, rank.bullet, d, |_, _| rng.gen_range(0..p as i64)));
        let v = QuiverRep { p, bullet: rank.bullet, arms };
        if v.validate().is_ok() {
            return Some(v);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn validation_examples() {
        assert!(rep_a(3).validate().is_ok());
        let zero = QuiverRep::new(3, 1, [0; 4].map(|_| KMatrix::zeros(3, 1, 0)));
        assert_eq!(zero.validate(), Err(Violation::NotInjective));
        let mut arms = [0; 4].map(|_| KMatrix::zeros(3, 0, 0));
        arms[0] = KMatrix::zeros(3, 0, 1);
        let trivial = QuiverRep::new(3, 0, arms);
        assert_eq!(trivial.validate(), Err(Violation::ArmNotSurjective(CoordType::PP)));
    }

    #[test]
    fn hom_space_dimensions() {
        // End of the rank-(2|1,1,1,1) rep with a generic fourth arm is k
        let p = 5;
        let v = QuiverRep::from_rows(
            p,
            2,
            [&[vec![1], vec![0]], &[vec![0], vec![1]], &[vec![1], vec![1]], &[vec![1], vec![2]]],
        );
        assert!(v.validate().is_ok());
        assert_eq!(hom_space(&v, &v).len(), 1);
        assert!(is_indecomposable(&v));
        let a = rep_a(p);
        assert_eq!(hom_space(&a, &a).len(), 1);
        // Hom(R_pp, A) = k (the centre maps identically, arm pp matches)
        assert_eq!(hom_space(&atom(p, CoordType::PP), &a).len(), 0);
        assert_eq!(hom_space(&a, &atom(p, CoordType::PP)).len(), 1);
    }

    #[test]
    fn direct_sums_split() {
        let p = 2;
        let s = rep_a(p).direct_sum(&atom(p, CoordType::ZZ));
        assert!(!is_indecomposable(&s));
        let parts = decompose(&s);
        assert_eq!(parts.len(), 2);
        let mut ranks: Vec<VectorRank> = parts.iter().map(|r| r.rank()).collect();
        ranks.sort();
        assert_eq!(ranks, vec![VectorRank::new(1, 0, 0, 0, 1), VectorRank::new(1, 1, 1, 1, 1)]);
        // isomorphic summands need a non-basis endomorphism
        let twice = rep_a(p).direct_sum(&rep_a(p));
        assert_eq!(decompose(&twice).len(), 2);
    }

    #[test]
    fn isomorphism_search() {
        let p = 3;
        let v = rep_a(p).direct_sum(&atom(p, CoordType::P0));
        let w = atom(p, CoordType::P0).direct_sum(&rep_a(p));
        let h = find_isomorphism(&v, &w).unwrap();
        assert!(h.is_hom(&v, &w));
        assert!(find_isomorphism(&v, &rep_a(p).direct_sum(&atom(p, CoordType::ZP))).is_none());
    }

    #[test]
    fn cokernel_of_summand_inclusion() {
        let p = 3;
        let a = rep_a(p);
        let b = atom(p, CoordType::ZZ);
        let s = a.direct_sum(&b);
        let iota = RepHom {
            bullet: KMatrix::from_rows(p, &[vec![1, 0]]),
            arms: [
                KMatrix::identity(p, 1),
                KMatrix::identity(p, 1),
                KMatrix::identity(p, 1),
                KMatrix::from_rows(p, &[vec![1, 0]]),
            ],
        };
        assert!(iota.is_hom(&a, &s) && iota.is_mono());
        let (q, pi) = s.cokernel(&iota).unwrap();
        assert!(pi.is_hom(&s, &q) && pi.is_epi());
        assert!(iota.compose(&pi).is_zero());
        assert!(find_isomorphism(&q, &b).is_some());
    }
}
