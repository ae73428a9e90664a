//! Constructors for the indecomposable families: the atoms `R_αβ`, `A`, the
//! τ-orbits through them, homogeneous tubes `T^f_n` and the exceptional tubes
//! `T^{λi}_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::quiver::{self, QuiverRep, RepHom};
use crate::lattice::{TypedLattice, VectorRank};
use crate::linalg::{FpPoly, KMatrix, Zpn};
use crate::ring::CoordType;

/// Default bound on `|k|` for `τ^k` of a base family.
pub const TRANSLATE_BOUND: i32 = 4;

pub fn atom_rep(p: u64, t: CoordType) -> QuiverRep {
    let mut arms = [0; 4].map(|_| KMatrix::zeros(p, 1, 0));
    arms[t.index()] = KMatrix::identity(p, 1);
    QuiverRep::new(p, 1, arms)
}

pub fn a_rep(p: u64) -> QuiverRep {
    QuiverRep::new(p, 1, [0; 4].map(|_| KMatrix::identity(p, 1)))
}

/// The rank-one lattice `R_αβ`.
pub fn atom(ring: Zpn, t: CoordType) -> TypedLattice {
    TypedLattice::realize(ring, &atom_rep(ring.p(), t)).expect("atoms are admissible")
}

pub fn make_a(ring: Zpn) -> TypedLattice {
    TypedLattice::realize(ring, &a_rep(ring.p())).expect("A is admissible")
}

pub fn make_free(ring: Zpn, r: usize) -> TypedLattice {
    TypedLattice::free(ring, r)
}

/// Base of a preprojective-preinjective orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    A,
    R(CoordType),
}

impl Base {
    pub const ALL: [Base; 5] =
        [Base::A, Base::R(CoordType::PP), Base::R(CoordType::P0), Base::R(CoordType::ZP), Base::R(CoordType::ZZ)];

    pub fn build(self, ring: Zpn) -> TypedLattice {
        match self {
            Base::A => make_a(ring),
            Base::R(t) => atom(ring, t),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::A => write!(f, "A"),
            Base::R(t) => write!(f, "R[{t}]"),
        }
    }
}

/// `τ^k` applied to a base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyId {
    pub base: Base,
    pub k: i32,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.k)
        }
    }
}

pub fn translate_family(ring: Zpn, id: FamilyId) -> Result<TypedLattice> {
    if id.k.abs() > TRANSLATE_BOUND {
        return Err(Error::Semantic(format!("|k| = {} exceeds the bound {TRANSLATE_BOUND}", id.k.abs())));
    }
    id.base.build(ring).tau_power(id.k)
}

/// Vector ranks of the preprojective-preinjective families as displayed in
/// the literature; known not to match the syzygy computation for `k != 0`.
pub fn displayed_family_rank(id: FamilyId) -> VectorRank {
    let k = id.k as i64;
    let floor_half = |n: i64| n.div_euclid(2);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let u = |v: i64| v.max(0) as usize;
    match id.base {
        Base::A => match k {
            0 => VectorRank::new(1, 1, 1, 1, 1),
            k if k > 0 => {
                let k = k as usize;
                VectorRank::new(2 * k - 1, k, k, k, k)
            }
            k => {
                let m = (1 - k) as usize;
                VectorRank::new((1 - 2 * k) as usize, m, m, m, m)
            }
        },
        Base::R(t) => {
            let r = match k {
                0 => VectorRank::new(1, 1, 0, 0, 0),
                k if k > 0 => {
                    let h = floor_half(k);
                    VectorRank::new(u(k + 1), u(h - sign), u(h), u(h), u(h))
                }
                k => {
                    let h = floor_half(1 - k);
                    VectorRank::new(u(-k), u(h + sign), u(h), u(h), u(h))
                }
            };
            r.swap(CoordType::PP, t)
        }
    }
}

/// A point of the projective line indexing a tube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TubePoint {
    /// Irreducible monic `f ∉ {t, t-1}`.
    Homogeneous(#[serde(with = "poly_serde")] FpPoly),
    /// `λ ∈ {0, 1, ∞}`.
    Exceptional(Lambda),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lambda {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

impl Lambda {
    pub const ALL: [Lambda; 3] = [Lambda::Zero, Lambda::One, Lambda::Infinity];

    /// The arm exchanged with `p0` relative to the tube at `1`.
    fn swap_partner(self) -> Option<CoordType> {
        match self {
            Lambda::One => None,
            Lambda::Zero => Some(CoordType::ZZ),
            Lambda::Infinity => Some(CoordType::ZP),
        }
    }

    pub fn permute_rank(self, r: VectorRank) -> VectorRank {
        match self.swap_partner() {
            None => r,
            Some(t) => r.swap(CoordType::P0, t),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lambda::Zero => "0",
            Lambda::One => "1",
            Lambda::Infinity => "inf",
        })
    }
}

mod poly_serde {
    use super::FpPoly;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &FpPoly, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(_: D) -> Result<FpPoly, D::Error> {
        Err(serde::de::Error::custom("polynomials are not deserialized without a prime"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TubeId {
    pub point: TubePoint,
    /// Branch `1` or `2` for exceptional tubes; `1` for homogeneous ones.
    pub branch: u8,
    pub layer: usize,
}

impl TubeId {
    pub fn homogeneous(f: FpPoly, layer: usize) -> TubeId {
        TubeId { point: TubePoint::Homogeneous(f), branch: 1, layer }
    }

    pub fn exceptional(lambda: Lambda, branch: u8, layer: usize) -> TubeId {
        TubeId { point: TubePoint::Exceptional(lambda), branch, layer }
    }

    pub fn is_infinity(&self) -> bool {
        self.point == TubePoint::Exceptional(Lambda::Infinity)
    }

    pub fn with_layer(&self, layer: usize) -> TubeId {
        TubeId { layer, ..self.clone() }
    }

    pub fn with_branch(&self, branch: u8) -> TubeId {
        TubeId { branch, ..self.clone() }
    }

    /// Degree of the point (`1` for exceptional points).
    pub fn degree(&self) -> usize {
        match &self.point {
            TubePoint::Homogeneous(f) => f.degree(),
            TubePoint::Exceptional(_) => 1,
        }
    }

    /// The vector rank of the tube member.
    pub fn expected_rank(&self) -> VectorRank {
        let n = self.layer;
        match &self.point {
            TubePoint::Homogeneous(f) => {
                let dn = f.degree() * n;
                VectorRank::new(2 * dn, dn, dn, dn, dn)
            }
            TubePoint::Exceptional(l) => {
                let m = n.div_ceil(2);
                let r = if n % 2 == 0 {
                    VectorRank::new(n, m, m, m, m)
                } else if self.branch == 1 {
                    VectorRank::new(n, m, m, m - 1, m - 1)
                } else {
                    VectorRank::new(n, m - 1, m - 1, m, m)
                };
                l.permute_rank(r)
            }
        }
    }

    pub fn build_rep(&self, p: u64) -> Result<QuiverRep> {
        match &self.point {
            TubePoint::Homogeneous(f) => homogeneous_rep(p, f, self.layer),
            TubePoint::Exceptional(l) => exceptional_rep(p, *l, self.branch, self.layer),
        }
    }

    pub fn build(&self, ring: Zpn) -> Result<TypedLattice> {
        TypedLattice::realize(ring, &self.build_rep(ring.p())?)
    }
}

impl fmt::Display for TubeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.point {
            TubePoint::Homogeneous(g) => write!(f, "tube(f={g},n={})", self.layer),
            TubePoint::Exceptional(l) => write!(f, "etube(l={l},i={},n={})", self.branch, self.layer),
        }
    }
}

pub(crate) fn check_homogeneous_point(p: u64, f: &FpPoly) -> Result<()> {
    if f.p() != p {
        return Err(Error::Semantic(format!("polynomial over F_{} used with p = {p}", f.p())));
    }
    if !f.is_monic() || !f.is_irreducible() {
        return Err(Error::Semantic(format!("{f} is not a monic irreducible polynomial")));
    }
    if *f == FpPoly::t(p) || *f == FpPoly::linear(p, 1) {
        return Err(Error::NotHomogeneousPoint(f.to_string()));
    }
    Ok(())
}

/// Arms `[I;0]`, `[0;I]`, `[I;I]`, `[I;F]` where `F` is the companion
/// matrix of `f^n`.
pub fn homogeneous_rep(p: u64, f: &FpPoly, n: usize) -> Result<QuiverRep> {
    check_homogeneous_point(p, f)?;
    if n == 0 {
        return Err(Error::Semantic("tube layers start at 1".into()));
    }
    let fm = f.pow(n as u32).companion();
    let d = fm.rows();
    let i = KMatrix::identity(p, d);
    let z = KMatrix::zeros(p, d, d);
    let arms = [
        KMatrix::vstack(&[&i, &z]),
        KMatrix::vstack(&[&z, &i]),
        KMatrix::vstack(&[&i, &i]),
        KMatrix::vstack(&[&i, &fm]),
    ];
    Ok(QuiverRep::new(p, 2 * d, arms))
}

pub fn homogeneous_tube(ring: Zpn, f: &FpPoly, n: usize) -> Result<TypedLattice> {
    TypedLattice::realize(ring, &homogeneous_rep(ring.p(), f, n)?)
}

fn exceptional_base(p: u64, lambda: Lambda, branch: u8) -> QuiverRep {
    // at λ = 1: branch 1 uses the pp and p0 arms, branch 2 the 0p and 00 arms
    let (a, b) = if branch == 1 { (CoordType::PP, CoordType::P0) } else { (CoordType::ZP, CoordType::ZZ) };
    let mut arms = [0; 4].map(|_| KMatrix::zeros(p, 1, 0));
    arms[a.index()] = KMatrix::identity(p, 1);
    arms[b.index()] = KMatrix::identity(p, 1);
    let rep = QuiverRep::new(p, 1, arms);
    match lambda.swap_partner() {
        None => rep,
        Some(t) => rep.swap_arms(CoordType::P0, t),
    }
}

/// Exceptional tube member built by iterated extensions
/// `0 -> T^{λi}_1 -> T^{λi}_n -> T^{λj}_{n-1} -> 0` with `j != i`.
pub fn exceptional_rep(p: u64, lambda: Lambda, branch: u8, n: usize) -> Result<QuiverRep> {
    if !(1..=2).contains(&branch) {
        return Err(Error::Semantic(format!("branch {branch} is not 1 or 2")));
    }
    if n == 0 {
        return Err(Error::Semantic("tube layers start at 1".into()));
    }
    if n == 1 {
        return Ok(exceptional_base(p, lambda, branch));
    }
    let sub = exceptional_base(p, lambda, branch);
    let quot = exceptional_rep(p, lambda, 3 - branch, n - 1)?;
    let want = TubeId::exceptional(lambda, branch, n).expected_rank();
    for e in extensions(&sub, &quot) {
        if e.validate().is_ok() && e.rank() == want && quiver::is_indecomposable(&e) {
            return Ok(e);
        }
    }
    Err(Error::ExtensionSearchFailed(format!("no extension realizes etube(l={lambda},i={branch},n={n})")))
}

pub fn exceptional_tube(ring: Zpn, lambda: Lambda, branch: u8, n: usize) -> Result<TypedLattice> {
    TypedLattice::realize(ring, &exceptional_rep(ring.p(), lambda, branch, n)?)
}

/// Representatives of the nonzero classes in `Ext(w, u)`, as middle terms
/// with `u` as subrepresentation, in a fixed enumeration order.
///
/// A class is a tuple `η_t : W_• -> U_t`; the middle term has arms
/// `[[U_t, 0], [η_t, W_t]]`. Coboundaries are `W_t φ_t - φ_• U_t`.
pub fn extensions(u: &QuiverRep, w: &QuiverRep) -> Vec<QuiverRep> {
    let p = u.p();
    let (bu, bw) = (u.bullet(), w.bullet());
    let du = u.rank().arms;
    let dw = w.rank().arms;
    let mut eta_off = [0usize; 5];
    for t in 0..4 {
        eta_off[t + 1] = eta_off[t] + bw * du[t];
    }
    let n_eta = eta_off[4];
    // parameters (φ_• : W_• -> U_•, φ_t : W_t -> U_t)
    let mut phi_off = [0usize; 5];
    phi_off[0] = bw * bu;
    for t in 0..4 {
        phi_off[t + 1] = phi_off[t] + dw[t] * du[t];
    }
    let n_phi = phi_off[4];
    // image of the coboundary map, rows indexed by parameters
    let mut cob = KMatrix::zeros(p, n_phi, n_eta);
    for t in 0..4 {
        let (ut, wt) = (u.arm(CoordType::from_index(t)), w.arm(CoordType::from_index(t)));
        for i in 0..bw {
            for j in 0..du[t] {
                let col = eta_off[t] + i * du[t] + j;
                // (W_t φ_t)[i][j] = Σ_k W_t[i][k] φ_t[k][j]
                for k in 0..dw[t] {
                    let c = wt.get(i, k);
                    if c != 0 {
                        let r = phi_off[t] + k * du[t] + j;
                        cob.set(r, col, (cob.get(r, col) + c) % p);
                    }
                }
                // -(φ_• U_t)[i][j] = -Σ_k φ_•[i][k] U_t[k][j]
                for k in 0..bu {
                    let c = ut.get(k, j);
                    if c != 0 {
                        let r = i * bu + k;
                        cob.set(r, col, (cob.get(r, col) + p - c) % p);
                    }
                }
            }
        }
    }
    let image = cob.rref();
    let complement = image.free_columns();
    let dim = complement.len();
    if dim == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let total = (p as usize).pow(dim.min(6) as u32);
    for idx in 1..total {
        let mut eta = vec![0u64; n_eta];
        let mut x = idx;
        for &c in complement.iter().take(6) {
            eta[c] = (x % p as usize) as u64;
            x /= p as usize;
        }
        let arms = [0, 1, 2, 3].map(|t| {
            let ct = CoordType::from_index(t);
            let (ut, wt) = (u.arm(ct), w.arm(ct));
            let mut m = KMatrix::zeros(p, bu + bw, du[t] + dw[t]);
            for i in 0..bu {
                for j in 0..du[t] {
                    m.set(i, j, ut.get(i, j));
                }
            }
            for i in 0..bw {
                for j in 0..du[t] {
                    m.set(bu + i, j, eta[eta_off[t] + i * du[t] + j]);
                }
                for j in 0..dw[t] {
                    m.set(bu + i, du[t] + j, wt.get(i, j));
                }
            }
            m
        });
        out.push(QuiverRep::new(p, bu + bw, arms));
    }
    out
}

/// A tube-layer short exact sequence `0 -> T_1 -> T_m -> T_{m-1} -> 0` at
/// the level of representations.
#[derive(Clone, Debug)]
pub struct RepSequence {
    pub sub: QuiverRep,
    pub middle: QuiverRep,
    pub quotient: QuiverRep,
    pub mono: RepHom,
    pub epi: RepHom,
    /// Catalog labels of the outer terms.
    pub sub_id: TubeId,
    pub quotient_id: TubeId,
}

/// Finds `T_1 -> T_m` with cokernel isomorphic to a layer `m - 1` member of
/// the same tube.
pub fn tube_layer_sequence(p: u64, id: &TubeId) -> Result<RepSequence> {
    let m = id.layer;
    if m < 2 {
        return Err(Error::Semantic("tube-layer sequences need layer at least 2".into()));
    }
    let middle = id.build_rep(p)?;
    let branches: &[u8] = match id.point {
        TubePoint::Homogeneous(_) => &[1],
        TubePoint::Exceptional(_) => &[1, 2],
    };
    for &bi in branches {
        let sub_id = id.with_layer(1).with_branch(bi);
        let sub = sub_id.build_rep(p)?;
        let Some(mono) = quiver::find_monomorphism(&sub, &middle) else { continue };
        let Some((quotient, epi)) = middle.cokernel(&mono) else { continue };
        for &bj in branches {
            let quotient_id = id.with_layer(m - 1).with_branch(bj);
            let target = quotient_id.build_rep(p)?;
            if quiver::find_isomorphism(&quotient, &target).is_some() {
                return Ok(RepSequence { sub, middle, quotient, mono, epi, sub_id, quotient_id });
            }
        }
    }
    Err(Error::NotExact(format!("no layer sequence found for {id}")))
}

/// A catalog build plan: a family member, a tube member, a free module or
/// a direct sum of these.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeDesc {
    Family(FamilyId),
    Tube(TubeId),
    Free(usize),
    Sum(Vec<LatticeDesc>),
}

impl LatticeDesc {
    pub fn build(&self, ring: Zpn) -> Result<TypedLattice> {
        match self {
            LatticeDesc::Family(id) => translate_family(ring, *id),
            LatticeDesc::Tube(id) => id.build(ring),
            LatticeDesc::Free(r) => Ok(make_free(ring, *r)),
            LatticeDesc::Sum(parts) => {
                let mut it = parts.iter();
                let Some(first) = it.next() else {
                    return Err(Error::Semantic("empty sum".into()));
                };
                let mut acc = first.build(ring)?;
                for d in it {
                    acc = acc.direct_sum(&d.build(ring)?);
                }
                Ok(acc)
            }
        }
    }

    /// Whether every summand is a tube member.
    pub fn is_regular(&self) -> bool {
        match self {
            LatticeDesc::Tube(_) => true,
            LatticeDesc::Sum(parts) => parts.iter().all(|d| d.is_regular()),
            _ => false,
        }
    }
}

impl fmt::Display for LatticeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeDesc::Family(id) => write!(f, "{id}"),
            LatticeDesc::Tube(id) => write!(f, "{id}"),
            LatticeDesc::Free(r) => write!(f, "free({r})"),
            LatticeDesc::Sum(parts) => {
                write!(f, "sum(")?;
                for (i, d) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
        }
    }
}
