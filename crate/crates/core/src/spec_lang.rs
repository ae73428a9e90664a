//! The lattice description language:
//!
//! ```text
//! spec := base | base '^' int | 'free(' int ')' | tube | etube | 'sum(' spec (',' spec)* ')'
//! base := 'A' | 'R[pp]' | 'R[p0]' | 'R[0p]' | 'R[00]'
//! tube := 'tube(f=' poly ',n=' int ')'
//! etube := 'etube(l=' ('0'|'1'|'inf') ',i=' ('1'|'2') ',n=' int ')'
//! ```
//!
//! Whitespace is allowed between tokens. Polynomials are in `t` with
//! coefficients in `0..p`.

use crate::catalog::{check_homogeneous_point, Base, FamilyId, LatticeDesc, Lambda, TubeId, TRANSLATE_BOUND};
use crate::error::{Error, Result};
use crate::linalg::FpPoly;
use crate::ring::CoordType;

pub fn parse_spec(p: u64, s: &str) -> Result<LatticeDesc> {
    let mut ps = Parser { src: s, pos: 0, p };
    let d = ps.spec()?;
    ps.ws();
    if ps.pos < s.len() {
        return Err(ps.err("unexpected trailing input"));
    }
    Ok(d)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    p: u64,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}'")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        let neg = self.eat("-");
        self.ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let v: i64 = self.rest()[..digits].parse().map_err(|_| self.err("integer out of range"))?;
        self.pos += digits;
        Ok(if neg { -v } else { v })
    }

    fn positive(&mut self, what: &str) -> Result<usize> {
        let at = self.pos;
        let v = self.int()?;
        if v < 1 {
            return Err(Error::Parse { pos: at, msg: format!("{what} must be at least 1") });
        }
        Ok(v as usize)
    }

    fn spec(&mut self) -> Result<LatticeDesc> {
        self.ws();
        if self.eat("sum(") {
            let mut parts = vec![self.spec()?];
            while self.eat(",") {
                parts.push(self.spec()?);
            }
            self.expect(")")?;
            return Ok(LatticeDesc::Sum(parts));
        }
        if self.eat("free(") {
            let r = self.positive("rank")?;
            self.expect(")")?;
            return Ok(LatticeDesc::Free(r));
        }
        if self.eat("etube(") {
            return self.etube();
        }
        if self.eat("tube(") {
            return self.tube();
        }
        let base = self.base()?;
        let mut k = 0;
        if self.eat("^") {
            let at = self.pos;
            let v = self.int()?;
            if v.abs() > TRANSLATE_BOUND as i64 {
                return Err(Error::Semantic(format!("translate exponent {v} at position {at} exceeds {TRANSLATE_BOUND}")));
            }
            k = v as i32;
        }
        Ok(LatticeDesc::Family(FamilyId { base, k }))
    }

    fn base(&mut self) -> Result<Base> {
        if self.eat("A") {
            return Ok(Base::A);
        }
        if self.eat("R[") {
            let t = [("pp", CoordType::PP), ("p0", CoordType::P0), ("0p", CoordType::ZP), ("00", CoordType::ZZ)]
                .into_iter()
                .find(|(name, _)| self.rest().starts_with(name));
            let Some((name, t)) = t else {
                return Err(self.err("expected one of pp, p0, 0p, 00"));
            };
            self.pos += name.len();
            self.expect("]")?;
            return Ok(Base::R(t));
        }
        Err(self.err("expected a lattice description"))
    }

    fn tube(&mut self) -> Result<LatticeDesc> {
        self.expect("f")?;
        self.expect("=")?;
        self.ws();
        let start = self.pos;
        let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
        let text = &self.rest()[..len];
        if let Some(off) = bad_coefficient(text, self.p) {
            return Err(Error::Parse { pos: start + off, msg: format!("coefficient outside 0..{}", self.p) });
        }
        let f = FpPoly::parse(self.p, text).map_err(|(off, msg)| Error::Parse { pos: start + off, msg })?;
        self.pos += len;
        self.expect(",")?;
        self.expect("n")?;
        self.expect("=")?;
        let m = self.positive("layer")?;
        self.expect(")")?;
        check_homogeneous_point(self.p, &f).map_err(|e| match e {
            Error::NotHomogeneousPoint(g) => {
                Error::Semantic(format!("{g} is an exceptional point; use etube(l=..,i=..,n=..)"))
            }
            other => other,
        })?;
        Ok(LatticeDesc::Tube(TubeId::homogeneous(f, m)))
    }

    fn etube(&mut self) -> Result<LatticeDesc> {
        self.expect("l")?;
        self.expect("=")?;
        let lambda = if self.eat("inf") {
            Lambda::Infinity
        } else if self.eat("0") {
            Lambda::Zero
        } else if self.eat("1") {
            Lambda::One
        } else {
            return Err(self.err("expected 0, 1 or inf"));
        };
        self.expect(",")?;
        self.expect("i")?;
        self.expect("=")?;
        let branch = if self.eat("1") {
            1
        } else if self.eat("2") {
            2
        } else {
            return Err(self.err("expected 1 or 2"));
        };
        self.expect(",")?;
        self.expect("n")?;
        self.expect("=")?;
        let m = self.positive("layer")?;
        self.expect(")")?;
        Ok(LatticeDesc::Tube(TubeId::exceptional(lambda, branch, m)))
    }
}

/// Offset of the first integer coefficient that is not below `p`, if any.
/// Exponents (after `^`) are skipped.
fn bad_coefficient(text: &str, p: u64) -> Option<usize> {
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let after_caret = text[..start].trim_end().ends_with('^');
            if !after_caret && text[start..i].parse::<u64>().map_or(true, |v| v >= p) {
                return Some(start);
            }
        } else {
            i += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_examples() {
        let d = parse_spec(2, "A^2").unwrap();
        assert_eq!(d, LatticeDesc::Family(FamilyId { base: Base::A, k: 2 }));
        let d = parse_spec(2, "tube(f=t^2+t+1,n=3)").unwrap();
        let LatticeDesc::Tube(id) = &d else { panic!() };
        assert_eq!((id.degree(), id.layer), (2, 3));
        assert!(matches!(parse_spec(2, "tube(f=t,n=1)"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec(2, "tube(f=t^2+1,n=1)"), Err(Error::Semantic(_))));
    }

    #[test]
    fn round_trip_display() {
        for s in ["A", "R[0p]^-3", "free(2)", "etube(l=inf,i=2,n=4)", "sum(A^1,tube(f=t^2+t+1,n=2),R[00])"] {
            assert_eq!(parse_spec(2, s).unwrap().to_string(), s);
        }
        assert_eq!(parse_spec(2, " sum( A , R[pp] ^ 1 ) ").unwrap().to_string(), "sum(A,R[pp]^1)");
    }

    #[test]
    fn positions() {
        let pos = |s: &str| match parse_spec(3, s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("R[px]"), 2);
        assert_eq!(pos("sum(A,B)"), 6);
        assert_eq!(pos("A)"), 1);
        assert_eq!(pos("tube(f=t^2+5,n=1)"), 11);
        assert_eq!(pos("etube(l=2,i=1,n=1)"), 8);
        assert_eq!(pos("free(0)"), 5);
    }
}
