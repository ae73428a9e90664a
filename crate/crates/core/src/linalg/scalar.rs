//! The truncated valuation ring `R = Z/p^N` and its residue field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// Width of the guard band below the working precision. A pivot whose
/// valuation falls strictly inside `(prec - GUARD, prec)` cannot be told
/// apart from zero and aborts the computation.
pub const GUARD: u32 = 4;

/// Arithmetic context for `Z/p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Zpn {
    p: u64,
    precision: u32,
    modulus: u64,
    #[serde(skip)]
    narrow: bool,
}

impl Zpn {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a prime below 2^16")));
        }
        if precision <= GUARD + 2 {
            return Err(Error::InvalidRing(format!(
                "precision {precision} leaves no room above the guard band"
            )));
        }
        let mut modulus: u64 = 1;
        for _ in 0..precision {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m < (1u64 << 62))
                .ok_or_else(|| Error::InvalidRing(format!("{p}^{precision} does not fit in 62 bits")))?;
        }
        Ok(Zpn { p, precision, modulus, narrow: modulus < (1u64 << 32) })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn precision(&self) -> u32 {
        self.precision
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p^k`, saturating to the modulus (which is zero in the ring) when `k >= N`.
    pub fn p_pow(&self, k: u32) -> u64 {
        if k >= self.precision {
            return 0;
        }
        self.p.pow(k)
    }

    /// `p^k` as an integer, valid for `k <= N`.
    pub fn p_pow_int(&self, k: u32) -> u64 {
        self.p.pow(k.min(self.precision))
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.narrow {
            (a * b) % self.modulus
        } else {
            ((a as u128 * b as u128) % self.modulus as u128) as u64
        }
    }

    /// `a - q*b`
    #[inline]
    pub fn sub_mul(&self, a: u64, q: u64, b: u64) -> u64 {
        self.sub(a, self.mul(q, b))
    }

    /// Valuation of `a` seen modulo `p^prec`; zero has valuation `prec`.
    #[inline]
    pub fn valuation_at(&self, mut a: u64, prec: u32) -> u32 {
        let mut v = 0;
        while v < prec {
            if a % self.p != 0 {
                return v;
            }
            a /= self.p;
            v += 1;
        }
        prec
    }

    pub fn valuation(&self, a: u64) -> u32 {
        self.valuation_at(a, self.precision)
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of a non-unit");
        let (mut old_r, mut r) = (a as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        old_s.rem_euclid(self.modulus as i128) as u64
    }

    /// Splits `a` (of valuation `v < prec`) as `p^v * u` and returns the unit `u`
    /// reduced modulo `p^(N - v)`, which is the part determined by `a`.
    pub fn unit_part(&self, a: u64, v: u32) -> u64 {
        a / self.p.pow(v)
    }

    /// Exact division by `p^k` of a residue known to be divisible by it.
    pub fn div_p_pow(&self, a: u64, k: u32) -> u64 {
        a / self.p.pow(k)
    }

    /// Signed representative in `(-p^N/2, p^N/2]`.
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }

    pub fn scalar(&self, v: i64) -> TruncScalar {
        TruncScalar { value: self.reduce_i64(v), ring: *self }
    }
}

pub fn is_small_prime(p: u64) -> bool {
    if !(2..65536).contains(&p) {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Z/p^N` carrying its ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncScalar {
    value: u64,
    ring: Zpn,
}

impl TruncScalar {
    pub fn new(ring: Zpn, value: u64) -> Self {
        TruncScalar { value: value % ring.modulus, ring }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> Zpn {
        self.ring
    }

    pub fn valuation(&self) -> u32 {
        self.ring.valuation(self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.value % self.ring.p != 0
    }

    pub fn inverse(&self) -> Option<Self> {
        self.is_unit().then(|| TruncScalar { value: self.ring.unit_inverse(self.value), ring: self.ring })
    }
}

impl Add for TruncScalar {
    type Output = TruncScalar;
    fn add(self, o: Self) -> Self {
        TruncScalar { value: self.ring.add(self.value, o.value), ring: self.ring }
    }
}

impl Sub for TruncScalar {
    type Output = TruncScalar;
    fn sub(self, o: Self) -> Self {
        TruncScalar { value: self.ring.sub(self.value, o.value), ring: self.ring }
    }
}

impl Mul for TruncScalar {
    type Output = TruncScalar;
    fn mul(self, o: Self) -> Self {
        TruncScalar { value: self.ring.mul(self.value, o.value), ring: self.ring }
    }
}

impl Neg for TruncScalar {
    type Output = TruncScalar;
    fn neg(self) -> Self {
        TruncScalar { value: self.ring.neg(self.value), ring: self.ring }
    }
}

impl fmt::Display for TruncScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.centered(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_and_zero_convention() {
        let r = Zpn::new(5, 16).unwrap();
        assert_eq!(r.valuation(0), 16);
        assert_eq!(r.valuation(1), 0);
        assert_eq!(r.valuation(25 * 3), 2);
        assert_eq!(r.scalar(-5).valuation(), 1);
    }

    #[test]
    fn unit_inverse_roundtrip() {
        for p in [2u64, 3, 5, 7] {
            let r = Zpn::new(p, 16).unwrap();
            for a in [1u64, 2, 3, 4, 6, 7, 12345] {
                if a % p == 0 {
                    continue;
                }
                let a = a % r.modulus();
                assert_eq!(r.mul(a, r.unit_inverse(a)), 1);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Zpn::new(4, 16).is_err());
        assert!(Zpn::new(2, 3).is_err());
        assert!(Zpn::new(65521, 16).is_err());
    }

    #[test]
    fn wide_multiplication_is_exact() {
        let r = Zpn::new(5, 16).unwrap();
        let a = r.modulus() - 1;
        assert_eq!(r.mul(a, a), 1);
    }
}
