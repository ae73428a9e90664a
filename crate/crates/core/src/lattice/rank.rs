use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::ring::CoordType;

/// `(d_• | d_pp, d_p0, d_0p, d_00)`: the minimal number of generators over
/// `A` and the multiplicities of the four character types.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VectorRank {
    pub bullet: usize,
    pub arms: [usize; 4],
}

impl VectorRank {
    pub const fn new(bullet: usize, pp: usize, p0: usize, zp: usize, zz: usize) -> Self {
        VectorRank { bullet, arms: [pp, p0, zp, zz] }
    }

    pub fn arm(&self, t: CoordType) -> usize {
        self.arms[t.index()]
    }

    /// Rank over `R`, i.e. the sum of the arm dimensions.
    pub fn total(&self) -> usize {
        self.arms.iter().sum()
    }

    /// The numerical regularity condition `2 d_• = Σ d_αβ`.
    pub fn is_balanced(&self) -> bool {
        2 * self.bullet == self.total()
    }

    /// Expected rank of the syzygy of a regular lattice:
    /// `d_•` is preserved and each arm becomes `d_• - d_αβ`.
    pub fn regular_syzygy(&self) -> Option<VectorRank> {
        let mut arms = [0; 4];
        for (a, &d) in arms.iter_mut().zip(&self.arms) {
            *a = self.bullet.checked_sub(d)?;
        }
        Some(VectorRank { bullet: self.bullet, arms })
    }

    /// Exchanges the multiplicities of two types.
    pub fn swap(&self, a: CoordType, b: CoordType) -> VectorRank {
        let mut arms = self.arms;
        arms.swap(a.index(), b.index());
        VectorRank { bullet: self.bullet, arms }
    }
}

impl Add for VectorRank {
    type Output = VectorRank;
    fn add(self, o: Self) -> Self {
        let mut arms = self.arms;
        for (a, b) in arms.iter_mut().zip(o.arms) {
            *a += b;
        }
        VectorRank { bullet: self.bullet + o.bullet, arms }
    }
}

impl fmt::Display for VectorRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arms;
        write!(f, "({}|{},{},{},{})", self.bullet, a, b, c, d)
    }
}
