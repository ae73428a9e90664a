//! The fixed test corpus: translates of the base families, homogeneous and
//! exceptional tube members, and tube-layer sequences.

use rayon::prelude::*;

use crate::catalog::{Base, FamilyId, Lambda, LatticeDesc, TubeId};
use crate::error::Result;
use crate::lattice::TypedLattice;
use crate::linalg::{FpPoly, Zpn};

/// Range of `k` for the families `τ^k B`.
pub const FAMILY_K: (i32, i32) = (-3, 3);
pub const HOMOGENEOUS_LAYERS: usize = 4;
pub const EXCEPTIONAL_LAYERS: usize = 5;
/// Middle layers of the tube-layer sequences.
pub const SEQUENCE_LAYERS: usize = 4;

#[derive(Clone, Debug)]
pub struct Entry {
    pub desc: LatticeDesc,
    pub lattice: TypedLattice,
}

impl Entry {
    pub fn tube(&self) -> Option<&TubeId> {
        match &self.desc {
            LatticeDesc::Tube(id) => Some(id),
            _ => None,
        }
    }
}

/// Generic points used for homogeneous tubes at the prime `p`.
pub fn homogeneous_points(p: u64) -> Vec<FpPoly> {
    match p {
        2 => vec![FpPoly::new(2, vec![1, 1, 1]), FpPoly::new(2, vec![1, 1, 0, 1])],
        3 => vec![FpPoly::new(3, vec![1, 0, 1])],
        5 => vec![FpPoly::linear(5, 2), FpPoly::linear(5, 3)],
        _ => {
            let c = (2..p).next().unwrap_or(0);
            vec![FpPoly::linear(p, c)]
        }
    }
}

pub fn family_ids() -> Vec<FamilyId> {
    Base::ALL.iter().flat_map(|&base| (FAMILY_K.0..=FAMILY_K.1).map(move |k| FamilyId { base, k })).collect()
}

pub fn tube_ids(p: u64) -> Vec<TubeId> {
    let mut out = Vec::new();
    for f in homogeneous_points(p) {
        out.extend((1..=HOMOGENEOUS_LAYERS).map(|m| TubeId::homogeneous(f.clone(), m)));
    }
    for l in Lambda::ALL {
        for i in 1..=2 {
            out.extend((1..=EXCEPTIONAL_LAYERS).map(|m| TubeId::exceptional(l, i, m)));
        }
    }
    out
}

/// Middle terms of the tube-layer sequences `0 -> T_1 -> T_m -> T_{m-1} -> 0`.
pub fn sequence_ids(p: u64) -> Vec<TubeId> {
    let mut out = Vec::new();
    for f in homogeneous_points(p) {
        out.extend((2..=SEQUENCE_LAYERS).map(|m| TubeId::homogeneous(f.clone(), m)));
    }
    for l in Lambda::ALL {
        for i in 1..=2 {
            out.extend((2..=SEQUENCE_LAYERS).map(|m| TubeId::exceptional(l, i, m)));
        }
    }
    out
}

fn build_all(ring: Zpn, descs: Vec<LatticeDesc>) -> Result<Vec<Entry>> {
    descs
        .into_par_iter()
        .map(|desc| desc.build(ring).map(|lattice| Entry { desc, lattice }))
        .collect()
}

pub fn families(ring: Zpn) -> Result<Vec<Entry>> {
    build_all(ring, family_ids().into_iter().map(LatticeDesc::Family).collect())
}

pub fn tubes(ring: Zpn) -> Result<Vec<Entry>> {
    build_all(ring, tube_ids(ring.p()).into_iter().map(LatticeDesc::Tube).collect())
}

/// Every indecomposable non-free corpus member.
pub fn indecomposables(ring: Zpn) -> Result<Vec<Entry>> {
    let mut all = families(ring)?;
    all.extend(tubes(ring)?);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(family_ids().len(), 35);
        assert_eq!(tube_ids(2).len(), 8 + 30);
        assert_eq!(sequence_ids(5).len(), 6 + 18);
        for p in [2, 3, 5, 7] {
            for f in homogeneous_points(p) {
                assert!(f.is_irreducible() && f != FpPoly::t(p) && f != FpPoly::linear(p, 1));
            }
        }
    }
}
