//! The Kleinian 4-ring `K = R[x,y]/(x(x-p), y(y-p))`, its overring
//! `A = K + Rz`, and the coordinate embedding `K ⊂ A ⊂ R^4`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::linalg::{RMatrix, TruncScalar, Zpn};

/// One of the four characters of `K`: the pair `(α, β)` by which `x` and `y`
/// act, each either `p` or `0`. The global order is `pp, p0, 0p, 00`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoordType {
    #[serde(rename = "pp")]
    PP,
    #[serde(rename = "p0")]
    P0,
    #[serde(rename = "0p")]
    ZP,
    #[serde(rename = "00")]
    ZZ,
}

impl CoordType {
    pub const ALL: [CoordType; 4] = [CoordType::PP, CoordType::P0, CoordType::ZP, CoordType::ZZ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> CoordType {
        Self::ALL[i]
    }

    /// Whether `x` acts as `p` (rather than `0`).
    pub fn alpha_is_p(self) -> bool {
        matches!(self, CoordType::PP | CoordType::P0)
    }

    /// Whether `y` acts as `p` (rather than `0`).
    pub fn beta_is_p(self) -> bool {
        matches!(self, CoordType::PP | CoordType::ZP)
    }

    pub fn from_pair(alpha_is_p: bool, beta_is_p: bool) -> CoordType {
        match (alpha_is_p, beta_is_p) {
            (true, true) => CoordType::PP,
            (true, false) => CoordType::P0,
            (false, true) => CoordType::ZP,
            (false, false) => CoordType::ZZ,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CoordType::PP => "pp",
            CoordType::P0 => "p0",
            CoordType::ZP => "0p",
            CoordType::ZZ => "00",
        }
    }

    pub fn parse(s: &str) -> Option<CoordType> {
        Self::ALL.into_iter().find(|t| t.label() == s)
    }
}

impl fmt::Display for CoordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A point of `R^4`, one coordinate per character type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadCoord {
    ring: Zpn,
    coords: [u64; 4],
}

impl QuadCoord {
    pub fn new(ring: Zpn, coords: [i64; 4]) -> Self {
        QuadCoord { ring, coords: coords.map(|c| ring.reduce_i64(c)) }
    }

    pub fn get(&self, t: CoordType) -> TruncScalar {
        TruncScalar::new(self.ring, self.coords[t.index()])
    }

    pub fn raw(&self) -> [u64; 4] {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.coords;
        for (a, b) in c.iter_mut().zip(o.coords) {
            *a = self.ring.add(*a, b);
        }
        QuadCoord { ring: self.ring, coords: c }
    }

    pub fn scale(&self, s: i64) -> Self {
        let s = self.ring.reduce_i64(s);
        QuadCoord { ring: self.ring, coords: self.coords.map(|c| self.ring.mul(c, s)) }
    }
}

impl Mul for QuadCoord {
    type Output = QuadCoord;
    fn mul(self, o: Self) -> Self {
        let mut c = self.coords;
        for (a, b) in c.iter_mut().zip(o.coords) {
            *a = self.ring.mul(*a, b);
        }
        QuadCoord { ring: self.ring, coords: c }
    }
}

/// Element of `K` in the `R`-basis `{1, x, y, xy}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KElem {
    ring: Zpn,
    c: [u64; 4],
}

impl KElem {
    pub fn new(ring: Zpn, c: [i64; 4]) -> Self {
        KElem { ring, c: c.map(|v| ring.reduce_i64(v)) }
    }

    pub fn one(ring: Zpn) -> Self {
        Self::new(ring, [1, 0, 0, 0])
    }

    pub fn x(ring: Zpn) -> Self {
        Self::new(ring, [0, 1, 0, 0])
    }

    pub fn y(ring: Zpn) -> Self {
        Self::new(ring, [0, 0, 1, 0])
    }

    pub fn coeffs(&self) -> [u64; 4] {
        self.c
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c) {
            *a = self.ring.sub(*a, b);
        }
        KElem { ring: self.ring, c }
    }

    pub fn scalar(ring: Zpn, s: i64) -> Self {
        Self::new(ring, [s, 0, 0, 0])
    }

    pub fn embed(&self) -> QuadCoord {
        let r = self.ring;
        let p = r.p();
        let [a, b, c, d] = self.c;
        // 1 -> (1,1,1,1), x -> (p,p,0,0), y -> (p,0,p,0), xy -> (p^2,0,0,0)
        let pp = r.add(r.add(a, r.mul(p, r.add(b, c))), r.mul(p * p, d));
        let p0 = r.add(a, r.mul(p, b));
        let zp = r.add(a, r.mul(p, c));
        QuadCoord { ring: r, coords: [pp, p0, zp, a] }
    }
}

impl Mul for KElem {
    type Output = KElem;
    fn mul(self, o: Self) -> Self {
        let r = self.ring;
        let p = r.p();
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = o.c;
        let m = |u, v| r.mul(u, v);
        // x^2 = px, y^2 = py, x*xy = y*xy = p*xy, (xy)^2 = p^2*xy
        let c0 = m(a0, b0);
        let c1 = r.add(r.add(m(a0, b1), m(a1, b0)), m(p, m(a1, b1)));
        let c2 = r.add(r.add(m(a0, b2), m(a2, b0)), m(p, m(a2, b2)));
        let mut c3 = r.add(r.add(m(a0, b3), m(a3, b0)), r.add(m(a1, b2), m(a2, b1)));
        let px = r.add(r.add(m(a1, b3), m(a3, b1)), r.add(m(a2, b3), m(a3, b2)));
        c3 = r.add(c3, m(p, px));
        c3 = r.add(c3, m(p * p, m(a3, b3)));
        KElem { ring: r, c: [c0, c1, c2, c3] }
    }
}

/// Element of `A` in the `R`-basis `{1, x, y, z}` with `z = (p,0,0,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AElem {
    ring: Zpn,
    c: [u64; 4],
}

impl AElem {
    pub fn new(ring: Zpn, c: [i64; 4]) -> Self {
        AElem { ring, c: c.map(|v| ring.reduce_i64(v)) }
    }

    pub fn z(ring: Zpn) -> Self {
        Self::new(ring, [0, 0, 0, 1])
    }

    pub fn coeffs(&self) -> [u64; 4] {
        self.c
    }

    pub fn from_k(k: &KElem) -> Self {
        // xy = pz
        let r = k.ring;
        let [a, b, c, d] = k.c;
        AElem { ring: r, c: [a, b, c, r.mul(r.p(), d)] }
    }

    pub fn embed(&self) -> QuadCoord {
        let r = self.ring;
        let p = r.p();
        let [a, b, c, d] = self.c;
        let pp = r.add(r.add(a, r.mul(p, r.add(b, c))), r.mul(p, d));
        let p0 = r.add(a, r.mul(p, b));
        let zp = r.add(a, r.mul(p, c));
        QuadCoord { ring: r, coords: [pp, p0, zp, a] }
    }
}

impl Mul for AElem {
    type Output = AElem;
    fn mul(self, o: Self) -> Self {
        let r = self.ring;
        let p = r.p();
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = o.c;
        let m = |u, v| r.mul(u, v);
        // x^2 = px, y^2 = py, xy = xz = yz = z^2 = pz
        let c0 = m(a0, b0);
        let c1 = r.add(r.add(m(a0, b1), m(a1, b0)), m(p, m(a1, b1)));
        let c2 = r.add(r.add(m(a0, b2), m(a2, b0)), m(p, m(a2, b2)));
        let cross = [m(a1, b2), m(a2, b1), m(a1, b3), m(a3, b1), m(a2, b3), m(a3, b2), m(a3, b3)]
            .into_iter()
            .fold(0, |s, v| r.add(s, v));
        let c3 = r.add(r.add(m(a0, b3), m(a3, b0)), m(p, cross));
        AElem { ring: r, c: [c0, c1, c2, c3] }
    }
}

/// Multiplies each coordinate of `v` by the component of `e` of its type.
pub fn act(e: &QuadCoord, v: &[u64], types: &[CoordType]) -> Vec<u64> {
    assert_eq!(v.len(), types.len(), "vector and type list differ in length");
    v.iter().zip(types).map(|(&c, t)| e.ring.mul(c, e.coords[t.index()])).collect()
}

/// Diagonal action matrix of `x` (or `y`, or `z`) on a typed ambient.
pub fn ambient_action(ring: Zpn, types: &[CoordType], which: Generator) -> RMatrix {
    let p = ring.p() as i64;
    RMatrix::from_fn(ring, types.len(), types.len(), |i, j| {
        if i != j {
            return 0;
        }
        let t = types[i];
        let on = match which {
            Generator::X => t.alpha_is_p(),
            Generator::Y => t.beta_is_p(),
            Generator::Z => t == CoordType::PP,
        };
        if on {
            p
        } else {
            0
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
    Z,
}

/// Right multiplication by `x` on `K` in the basis `{1, x, y, xy}`.
pub fn k_regular_x(ring: Zpn) -> RMatrix {
    let p = ring.p() as i64;
    RMatrix::from_rows(ring, &[vec![0, 1, 0, 0], vec![0, p, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, p]])
}

/// Right multiplication by `y` on `K` in the basis `{1, x, y, xy}`.
pub fn k_regular_y(ring: Zpn) -> RMatrix {
    let p = ring.p() as i64;
    RMatrix::from_rows(ring, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, p, 0], vec![0, 0, 0, p]])
}

/// Rows are the images of `1, x, y, xy` in `R^4`.
pub fn k_embedding(ring: Zpn) -> RMatrix {
    let p = ring.p() as i64;
    RMatrix::from_rows(ring, &[vec![1, 1, 1, 1], vec![p, p, 0, 0], vec![p, 0, p, 0], vec![p * p, 0, 0, 0]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring() -> Zpn {
        Zpn::new(3, 16).unwrap()
    }

    #[test]
    fn stated_products() {
        let r = ring();
        let x = KElem::x(r);
        let y = KElem::y(r);
        assert_eq!((x * y).embed(), AElem::z(r).embed().scale(3));
        let z = AElem::z(r);
        assert_eq!((z * z).embed(), (x * y).embed());
        let xm = x.sub(&KElem::scalar(r, 3));
        assert!((x * xm).embed().is_zero());
    }

    #[test]
    fn embedding_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2u64, 3, 5] {
            let r = Zpn::new(p, 16).unwrap();
            for _ in 0..2000 {
                let mut g = || [0; 4].map(|_: i64| rng.gen_range(-50..50));
                let (a, b) = (KElem::new(r, g()), KElem::new(r, g()));
                assert_eq!((a * b).embed(), a.embed() * b.embed());
                let (c, d) = (AElem::new(r, g()), AElem::new(r, g()));
                assert_eq!((c * d).embed(), c.embed() * d.embed());
                assert_eq!(AElem::from_k(&a).embed(), a.embed());
            }
            assert_eq!(KElem::one(r).embed(), QuadCoord::new(r, [1, 1, 1, 1]));
        }
    }

    #[test]
    fn radical_times_a_lands_in_k() {
        // every product of a generator of (p, x, y) with a basis element of A
        // has an embedding in the image of K
        let r = ring();
        let kemb = k_embedding(r);
        let gens = [KElem::scalar(r, 3), KElem::x(r), KElem::y(r)];
        for g in gens {
            for i in 0..4 {
                let mut c = [0; 4];
                c[i] = 1;
                let prod = AElem::from_k(&g) * AElem::new(r, c);
                let v = RMatrix::from_fn(r, 1, 4, |_, j| prod.embed().raw()[j] as i64);
                assert!(crate::linalg::solve(&kemb, &v).unwrap().is_some());
            }
        }
    }

    #[test]
    fn action_on_typed_vectors() {
        let r = ring();
        let types = CoordType::ALL;
        let x = KElem::x(r).embed();
        let y = KElem::y(r).embed();
        assert_eq!(act(&x, &[1, 0, 0, 0], &types), vec![3, 0, 0, 0]);
        assert_eq!(act(&y, &[0, 1, 0, 0], &types), vec![0, 0, 0, 0]);
        assert_eq!(act(&KElem::one(r).embed(), &[4, 5, 6, 7], &types), vec![4, 5, 6, 7]);
    }

    #[test]
    fn regular_representation_relations() {
        let r = ring();
        let x = k_regular_x(r);
        let y = k_regular_y(r);
        assert!(x.mul(&x.sub_scalar(3)).is_zero());
        assert!(y.mul(&y.sub_scalar(3)).is_zero());
        assert_eq!(x.mul(&y), y.mul(&x));
        // the embedding intertwines the regular action with the diagonal one
        let e = k_embedding(r);
        let dx = ambient_action(r, &CoordType::ALL, Generator::X);
        assert_eq!(x.mul(&e), e.mul(&dx));
    }
}
