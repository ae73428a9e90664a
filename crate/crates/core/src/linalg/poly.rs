//! Univariate polynomials over `F_p` in the variable `t`.

use std::fmt;

use rand::Rng;

use super::kmatrix::{inverse_mod, KMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    /// Low degree first, no trailing zeros.
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    /// The monomial `t`.
    pub fn t(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    /// `t - lambda`
    pub fn linear(p: u64, lambda: u64) -> Self {
        FpPoly::new(p, vec![(p - lambda % p) % p, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inverse_mod(self.leading(), self.p))
    }

    pub fn scale(&self, s: u64) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|c| c * (s % self.p) % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(self.p - 1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(FpPoly::one(self.p), |acc, _| acc.mul(self))
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let inv = inverse_mod(d.leading(), p);
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - d.coeffs.len() + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + d.coeffs.len() - 1] * inv % p;
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[k + j] = (r[k + j] + p * p - c * dj % p) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % self.p) * c % self.p).collect();
        FpPoly::new(self.p, c)
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// Rabin/Ben-Or test: `gcd(f, t^(p^i) - t) = 1` for all `i <= deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        if self.is_zero() || n == 0 {
            return false;
        }
        let f = self.monic();
        let t = FpPoly::t(self.p);
        let mut frob = t.rem(&f);
        for _ in 1..=n / 2 {
            frob = frob.powmod(self.p, &f);
            if f.gcd(&frob.sub(&t)).degree() > 0 {
                return false;
            }
        }
        true
    }

    /// The polynomial `g` with `g(t)^p = self`, when the derivative vanishes.
    fn pth_root(&self) -> Self {
        let c = self.coeffs.iter().step_by(self.p as usize).copied().collect();
        FpPoly::new(self.p, c)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        if self.degree() == 0 {
            return FpPoly::one(self.p);
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.pth_root().radical();
        }
        let g = self.gcd(&d);
        let w = self.divrem(&g).0.monic();
        let r = g.radical();
        let common = w.gcd(&r);
        w.mul(&r).divrem(&common).0.monic()
    }

    /// Whether the polynomial is a power of a single irreducible.
    pub fn is_primary(&self) -> bool {
        self.degree() > 0 && self.radical().is_irreducible()
    }

    /// A nontrivial monic factor of a reducible squarefree polynomial.
    pub fn split_squarefree(&self, rng: &mut impl Rng) -> Option<Self> {
        let f = self.monic();
        let n = f.degree();
        if n < 2 || f.is_irreducible() {
            return None;
        }
        let t = FpPoly::t(self.p);
        let mut frob = t.rem(&f);
        // distinct-degree stage
        for d in 1..=n {
            frob = frob.powmod(self.p, &f);
            let g = f.gcd(&frob.sub(&t));
            if g.degree() == n {
                return f.equal_degree_split(d, rng);
            }
            if g.degree() > 0 {
                return Some(g);
            }
        }
        None
    }

    /// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
    fn equal_degree_split(&self, d: usize, rng: &mut impl Rng) -> Option<Self> {
        let p = self.p;
        let n = self.degree();
        for _ in 0..256 {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree() == 0 {
                continue;
            }
            let g0 = self.gcd(&a);
            if g0.degree() > 0 && g0.degree() < n {
                return Some(g0);
            }
            let b = if p == 2 {
                let mut acc = FpPoly::zero(p);
                let mut pw = a.rem(self);
                for _ in 0..d {
                    acc = acc.add(&pw);
                    pw = pw.mulmod(&pw, self);
                }
                acc
            } else {
                let mut norm = FpPoly::one(p);
                let mut pw = a.rem(self);
                for _ in 0..d {
                    norm = norm.mulmod(&pw, self);
                    pw = pw.powmod(p, self);
                }
                norm.powmod((p - 1) / 2, self).sub(&FpPoly::one(p))
            };
            let g = self.gcd(&b);
            if g.degree() > 0 && g.degree() < n {
                return Some(g);
            }
        }
        None
    }

    /// Companion matrix with the negated coefficients in the last column.
    pub fn companion(&self) -> KMatrix {
        assert!(self.is_monic() && self.degree() > 0, "companion of a non-monic polynomial");
        let n = self.degree();
        let p = self.p;
        let mut m = KMatrix::zeros(p, n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, (p - self.coeffs[i]) % p);
        }
        m
    }

    /// Parses expressions such as `t^2+t+1`, `t-2`, `2*t^3 + t`.
    pub fn parse(p: u64, s: &str) -> Result<Self, (usize, String)> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut coeffs: Vec<u64> = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            s[start..*pos].parse().ok()
        };
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err((pos, "empty polynomial".into()));
                }
                break;
            }
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                sign = if bytes[pos] == b'-' { -1 } else { 1 };
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err((pos, format!("expected '+' or '-', found '{}'", bytes[pos] as char)));
            }
            first = false;
            let mut coeff: u64 = 1;
            let mut has_coeff = false;
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                coeff = read_int(&mut pos).ok_or((pos, "bad integer".to_string()))?;
                has_coeff = true;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                }
            }
            let mut exp = 0usize;
            if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                exp = 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let e = read_int(&mut pos).ok_or((pos, "expected exponent".to_string()))?;
                    exp = e as usize;
                }
            } else if !has_coeff {
                return Err((pos, "expected a term".into()));
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            let c = ((sign * (coeff % p) as i64).rem_euclid(p as i64)) as u64;
            coeffs[exp] = (coeffs[exp] + c) % p;
        }
        Ok(FpPoly::new(p, coeffs))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Irreducibility by trial division over all monic polynomials of lower degree.
    fn brute_irreducible(f: &FpPoly) -> bool {
        let p = f.p();
        let n = f.degree();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut x = code;
                for _ in 0..d {
                    c.push(x % p);
                    x /= p;
                }
                c.push(1);
                let g = FpPoly::new(p, c);
                if f.rem(&g).is_zero() {
                    return false;
                }
            }
        }
        n > 0
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for p in [2u64, 3, 5] {
            for n in 1..=4usize {
                for code in 0..p.pow(n as u32) {
                    let mut c = Vec::new();
                    let mut x = code;
                    for _ in 0..n {
                        c.push(x % p);
                        x /= p;
                    }
                    c.push(1);
                    let f = FpPoly::new(p, c);
                    assert_eq!(f.is_irreducible(), brute_irreducible(&f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let f = FpPoly::parse(2, "t^2+t+1").unwrap();
        assert_eq!(f.coeffs(), &[1, 1, 1]);
        assert_eq!(f.to_string(), "t^2+t+1");
        let g = FpPoly::parse(5, "t - 2").unwrap();
        assert_eq!(g, FpPoly::linear(5, 2));
        assert_eq!(FpPoly::parse(5, "2*t^3 + 4").unwrap().coeffs(), &[4, 0, 0, 2]);
        assert!(FpPoly::parse(5, "t^").is_err());
        assert!(FpPoly::parse(5, "t t").is_err());
    }

    #[test]
    fn radical_and_primary() {
        let p = 2;
        let f = FpPoly::parse(p, "t^2+t+1").unwrap();
        let g = FpPoly::parse(p, "t+1").unwrap();
        assert!(f.pow(3).is_primary());
        assert!(g.pow(4).is_primary());
        assert!(!f.mul(&g).is_primary());
        assert_eq!(f.pow(2).mul(&g.pow(2)).radical(), f.mul(&g));
    }

    #[test]
    fn splitting_finds_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5] {
            // product of two distinct linear factors has equal degree parts
            let f = FpPoly::linear(p, 0).mul(&FpPoly::linear(p, 1));
            let g = f.split_squarefree(&mut rng).unwrap();
            assert!(g.degree() == 1 && f.rem(&g).is_zero());
        }
        let f = FpPoly::parse(2, "t^2+t+1").unwrap().mul(&FpPoly::parse(2, "t^3+t+1").unwrap());
        let g = f.split_squarefree(&mut rng).unwrap();
        assert!(g.degree() > 0 && g.degree() < 5 && f.rem(&g).is_zero());
    }
}
