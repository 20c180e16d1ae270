//! Polynomials over GF(q): exact arithmetic, irreducibility, the base-p(t)
//! expansion and the p(t)-adic norm exponent.
//!
//! Norms never materialise as magnitudes; everything is exponent-level
//! integer arithmetic (`|x| = q^deg(x)` is represented by `deg(x)`).

use std::fmt;

use crate::error::Error;
use crate::field::Field;
use crate::Result;

/// Extended degree: the zero polynomial has a distinguished marker that
/// compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Of(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Of(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Of(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over a finite field, coefficients ascending by power of t,
/// trimmed so the leading coefficient is nonzero (empty = zero).
#[derive(Debug, Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u16>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id() && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Poly {
            field,
            coeffs: vec![1],
        }
    }

    pub fn constant(field: Field, code: u16) -> Self {
        let coeffs = if code == 0 { Vec::new() } else { vec![code] };
        Poly { field, coeffs }
    }

    /// `code * t^deg`.
    pub fn monomial(field: Field, code: u16, deg: usize) -> Self {
        if code == 0 {
            return Poly::zero(field);
        }
        let mut coeffs = vec![0u16; deg + 1];
        coeffs[deg] = code;
        Poly { field, coeffs }
    }

    pub fn from_codes(field: Field, codes: &[u16]) -> Result<Self> {
        for &c in codes {
            if c as u32 >= field.order() {
                return Err(Error::CodeOutOfRange {
                    code: c as u32,
                    order: field.order(),
                });
            }
        }
        let mut coeffs = codes.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Poly { field, coeffs })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u16] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u16 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Of(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn leading(&self) -> u16 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn trim(mut coeffs: Vec<u16>, field: Field) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u16; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = f.add(self.coeff(i), other.coeff(i));
        }
        Poly::trim(out, self.field.clone())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u16; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = f.sub(self.coeff(i), other.coeff(i));
        }
        Poly::trim(out, self.field.clone())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        let out = self.coeffs.iter().map(|&c| f.neg(c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![0u16; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::trim(out, self.field.clone())
    }

    pub fn mul_scalar(&self, c: u16) -> Poly {
        if c == 0 {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let out = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        Poly::trim(out, self.field.clone())
    }

    /// `self * t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u16; k];
        out.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        let lead_inv = f.inv(d.leading());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u16; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let factor = f.mul(rem[dr], lead_inv);
            if factor != 0 {
                quo[dr - dd] = factor;
                for i in 0..=dd {
                    let s = f.mul(factor, d.coeffs[i]);
                    rem[dr - dd + i] = f.sub(rem[dr - dd + i], s);
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((
            Poly::trim(quo, self.field.clone()),
            Poly::trim(rem, self.field.clone()),
        ))
    }

    /// `self(inner)`: substitution of a polynomial for t, by Horner.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field.clone());
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc = acc.add(&Poly::constant(self.field.clone(), c));
        }
        acc
    }

    /// Irreducibility over GF(q) by trial division with every monic
    /// polynomial of degree up to deg/2. Desk-scale degrees only.
    pub fn is_irreducible(&self) -> bool {
        let deg = match self.degree() {
            Degree::NegInf | Degree::Of(0) => return false,
            Degree::Of(d) => d as usize,
        };
        if deg == 1 {
            return true;
        }
        let q = self.field.order() as u64;
        for d in 1..=deg / 2 {
            let count = q.pow(d as u32);
            for code in 0..count {
                // monic of degree d from packed code, base q
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    coeffs.push((c % q) as u16);
                    c /= q;
                }
                coeffs.push(1);
                let g = Poly {
                    field: self.field.clone(),
                    coeffs,
                };
                let (_, r) = self.divmod(&g).expect("nonzero divisor");
                if r.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// UTF-free display form `c_d*t^d + ... + c_0` with zero terms dropped.
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{i}")?,
                (_, 1) => write!(f, "{c}*t")?,
                (_, _) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }

    /// Compact form `d:[c_d,...,c_0]`.
    pub fn compact_string(&self) -> String {
        match self.degree() {
            Degree::NegInf => "0".into(),
            Degree::Of(d) => {
                let list: Vec<String> = self
                    .coeffs
                    .iter()
                    .rev()
                    .map(|c| c.to_string())
                    .collect();
                format!("{}:[{}]", d, list.join(","))
            }
        }
    }

    /// Parse either the term form (`t^2+t+1`, `2*t^3 + 1`) or the compact
    /// form (`3:[1,0,1,1]`). Coefficients are element codes.
    pub fn parse(field: Field, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s == "0" {
            return Ok(Poly::zero(field));
        }
        if let Some((deg, list)) = s.split_once(":[") {
            let deg: usize = deg
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
            let list = list
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("missing ] in {s:?}")))?;
            let mut hi_to_lo = Vec::new();
            for tok in list.split(',') {
                let c: u16 = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
                hi_to_lo.push(c);
            }
            if hi_to_lo.len() != deg + 1 {
                return Err(Error::Parse(format!(
                    "degree {deg} needs {} coefficients, got {}",
                    deg + 1,
                    hi_to_lo.len()
                )));
            }
            hi_to_lo.reverse();
            return Poly::from_codes(field, &hi_to_lo);
        }
        // term form; '-' negates the following term
        let mut out = Poly::zero(field.clone());
        let normalized = s.replace('-', "+-");
        for term in normalized.split('+') {
            let term = term.trim();
            if term.is_empty() {
                continue;
            }
            let (negate, term) = match term.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, term),
            };
            let (coef_str, pow) = if let Some(ix) = term.find('t') {
                let coef = term[..ix].trim().trim_end_matches('*').trim();
                let rest = term[ix + 1..].trim();
                let pow = if rest.is_empty() {
                    1usize
                } else {
                    let rest = rest
                        .strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
                    rest.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad power in {term:?}")))?
                };
                (coef, pow)
            } else {
                (term, 0usize)
            };
            let code: u16 = if coef_str.is_empty() {
                1
            } else {
                coef_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
            };
            if code as u32 >= field.order() {
                return Err(Error::CodeOutOfRange {
                    code: code as u32,
                    order: field.order(),
                });
            }
            let code = if negate { field.neg(code) } else { code };
            out = out.add(&Poly::monomial(field.clone(), code, pow));
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

/// The base-p(t) expansion of a polynomial: digit polynomials of degree
/// below deg p, low index first, reassembling exactly to the input.
#[derive(Debug, Clone)]
pub struct BasePExpansion {
    pub digits: Vec<Poly>,
    pub base: Poly,
}

impl BasePExpansion {
    pub fn reassemble(&self) -> Poly {
        let field = self.base.field().clone();
        let mut acc = Poly::zero(field);
        for d in self.digits.iter().rev() {
            acc = acc.mul(&self.base);
            acc = acc.add(d);
        }
        acc
    }

    /// Index of the first nonzero digit; `None` for the zero polynomial.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.digits.iter().position(|d| !d.is_zero())
    }
}

/// Expand `n` in base `p`; `p` must be irreducible.
pub fn base_p_expand(n: &Poly, p: &Poly) -> Result<BasePExpansion> {
    if !p.is_irreducible() {
        return Err(Error::ReducibleBase);
    }
    let mut digits = Vec::new();
    let mut cur = n.clone();
    if cur.is_zero() {
        digits.push(Poly::zero(n.field().clone()));
    }
    while !cur.is_zero() {
        let (q, r) = cur.divmod(p)?;
        digits.push(r);
        cur = q;
    }
    Ok(BasePExpansion {
        digits,
        base: p.clone(),
    })
}

/// Exponent `e >= 0` with `|n|_{p(t)} = q^{-e}`: `e = deg(p) * i` for the
/// first nonzero base-p digit index `i`.
pub fn padic_norm_exp(n: &Poly, p: &Poly) -> Result<i64> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let exp = base_p_expand(n, p)?;
    let i = exp.first_nonzero().expect("nonzero input has a digit") as i64;
    let m = p.degree().finite().expect("irreducible base is nonzero");
    Ok(m * i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::rng::Rng;

    fn gf(p: u64) -> Field {
        FieldSpec::make(p, 1, None).unwrap()
    }

    #[test]
    fn degree_of_zero_is_marker() {
        let f = gf(3);
        assert_eq!(Poly::zero(f.clone()).degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Of(-100));
        assert_eq!(
            Poly::from_codes(f, &[0, 1, 0, 1]).unwrap().degree(),
            Degree::Of(3)
        );
    }

    #[test]
    fn divmod_round_trip() {
        let f = gf(5);
        let mut rng = Rng::new(1);
        for _ in 0..200 {
            let a_codes: Vec<u16> = (0..rng.below(10) + 1).map(|_| rng.code(5)).collect();
            let b_codes: Vec<u16> = (0..rng.below(5) + 1).map(|_| rng.code(5)).collect();
            let a = Poly::from_codes(f.clone(), &a_codes).unwrap();
            let b = Poly::from_codes(f.clone(), &b_codes).unwrap();
            if b.is_zero() {
                continue;
            }
            let (q, r) = a.divmod(&b).unwrap();
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.degree() < b.degree());
        }
    }

    #[test]
    fn irreducibility_small_cases() {
        let f2 = gf(2);
        // t^2+t+1 irreducible, t^2+1 = (t+1)^2 reducible
        assert!(Poly::from_codes(f2.clone(), &[1, 1, 1]).unwrap().is_irreducible());
        assert!(!Poly::from_codes(f2.clone(), &[1, 0, 1]).unwrap().is_irreducible());
        // t^3+t+1 irreducible over GF(2)
        assert!(Poly::from_codes(f2, &[1, 1, 0, 1]).unwrap().is_irreducible());
        // t^2+1 irreducible over GF(3), but has the root 1 over GF(5)? 1+1=2 no;
        // over GF(3): (-1) is not a square, so irreducible
        let f3 = gf(3);
        assert!(Poly::from_codes(f3.clone(), &[1, 0, 1]).unwrap().is_irreducible());
        // t^2+t+1 has root 1 over GF(3)
        assert!(!Poly::from_codes(f3, &[1, 1, 1]).unwrap().is_irreducible());
    }

    #[test]
    fn base_p_examples() {
        let f2 = gf(2);
        let p = Poly::from_codes(f2.clone(), &[1, 1, 1]).unwrap(); // t^2+t+1
        // N = p^2 -> digits [0, 0, 1]
        let n = p.mul(&p);
        let e = base_p_expand(&n, &p).unwrap();
        assert_eq!(e.digits.len(), 3);
        assert!(e.digits[0].is_zero() && e.digits[1].is_zero());
        assert_eq!(e.digits[2], Poly::one(f2.clone()));
        assert_eq!(e.reassemble(), n);
        // N = t^3+t^2+t = t*p -> digits [0, t]
        let n = Poly::from_codes(f2.clone(), &[0, 1, 1, 1]).unwrap();
        let e = base_p_expand(&n, &p).unwrap();
        assert_eq!(e.digits.len(), 2);
        assert!(e.digits[0].is_zero());
        assert_eq!(e.digits[1], Poly::from_codes(f2.clone(), &[0, 1]).unwrap());
        // N = 1 -> digits [1]
        let e = base_p_expand(&Poly::one(f2.clone()), &p).unwrap();
        assert_eq!(e.digits.len(), 1);
        assert_eq!(e.digits[0], Poly::one(f2));
    }

    #[test]
    fn base_p_round_trip_random() {
        let mut rng = Rng::new(7);
        for &q in &[2u64, 3, 5] {
            let f = gf(q);
            let mut done = 0;
            while done < 340 {
                let dn = rng.below(13) as usize;
                let dp = rng.below(3) as usize + 1;
                let n_codes: Vec<u16> = (0..=dn).map(|_| rng.code(q as u32)).collect();
                let mut p_codes: Vec<u16> = (0..dp).map(|_| rng.code(q as u32)).collect();
                p_codes.push(1);
                let n = Poly::from_codes(f.clone(), &n_codes).unwrap();
                let p = Poly::from_codes(f.clone(), &p_codes).unwrap();
                if !p.is_irreducible() {
                    continue;
                }
                let e = base_p_expand(&n, &p).unwrap();
                assert_eq!(e.reassemble(), n);
                let m = p.degree().finite().unwrap();
                for d in &e.digits {
                    assert!(d.degree() < Degree::Of(m));
                }
                done += 1;
            }
        }
    }

    #[test]
    fn padic_norm_examples() {
        let f2 = gf(2);
        let p = Poly::from_codes(f2.clone(), &[1, 1, 1]).unwrap();
        // N coprime to p
        let n = Poly::from_codes(f2.clone(), &[1, 1]).unwrap();
        assert_eq!(padic_norm_exp(&n, &p).unwrap(), 0);
        // N = t*(t^2+t+1): i=1, m=2 -> 2
        let n = Poly::from_codes(f2.clone(), &[0, 1]).unwrap().mul(&p);
        assert_eq!(padic_norm_exp(&n, &p).unwrap(), 2);
        // N = t^5, p = t -> 5
        let t = Poly::from_codes(f2.clone(), &[0, 1]).unwrap();
        let n = Poly::monomial(f2, 1, 5);
        assert_eq!(padic_norm_exp(&n, &t).unwrap(), 5);
    }

    #[test]
    fn padic_norm_multiplicative_in_p() {
        let mut rng = Rng::new(11);
        let f = gf(3);
        let p = Poly::from_codes(f.clone(), &[1, 0, 1]).unwrap(); // t^2+1
        let dp = p.degree().finite().unwrap();
        for _ in 0..200 {
            let codes: Vec<u16> = (0..rng.below(8) + 1).map(|_| rng.code(3)).collect();
            let n = Poly::from_codes(f.clone(), &codes).unwrap();
            if n.is_zero() {
                continue;
            }
            let lhs = padic_norm_exp(&n.mul(&p), &p).unwrap();
            let rhs = padic_norm_exp(&n, &p).unwrap() + dp;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ultrametric_degree() {
        let mut rng = Rng::new(13);
        let f = gf(5);
        for _ in 0..400 {
            let a_codes: Vec<u16> = (0..rng.below(9) + 1).map(|_| rng.code(5)).collect();
            let b_codes: Vec<u16> = (0..rng.below(9) + 1).map(|_| rng.code(5)).collect();
            let a = Poly::from_codes(f.clone(), &a_codes).unwrap();
            let b = Poly::from_codes(f.clone(), &b_codes).unwrap();
            let s = a.add(&b);
            assert!(s.degree() <= a.degree().max(b.degree()));
            if a.degree() != b.degree() {
                assert_eq!(s.degree(), a.degree().max(b.degree()));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let f = gf(3);
        let p = Poly::parse(f.clone(), "t^2 + 2*t + 1").unwrap();
        assert_eq!(p.coeffs(), &[1, 2, 1]);
        let p2 = Poly::parse(f.clone(), "2:[1,2,1]").unwrap();
        assert_eq!(p, p2);
        let p3 = Poly::parse(f.clone(), &p.to_string()).unwrap();
        assert_eq!(p, p3);
        let p4 = Poly::parse(f.clone(), "t^2 - 1").unwrap();
        assert_eq!(p4.coeffs(), &[2, 0, 1]);
        assert_eq!(Poly::parse(f, "0").unwrap(), Poly::zero(gf(3)));
    }
}
