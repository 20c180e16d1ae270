//! Exact arithmetic over GF(p^k).
//!
//! Elements are encoded as integers in `[0, q)`: the code of an element is
//! the base-`p` digit packing of its polynomial representative, so code
//! arithmetic on prime fields is ordinary arithmetic mod `p` and extension
//! fields reduce modulo a monic irreducible of degree `k`. Small orders get
//! full precomputed operation tables; everything stays exact.
//!
//! Every arithmetic operation bumps an instrumented counter on the owning
//! [`FieldSpec`], which is what the wall generators use to compare
//! field-operation budgets.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Orders up to this bound get full add/mul lookup tables.
const TABLE_LIMIT: u32 = 512;

/// A shared, immutable field description.
pub type Field = Arc<FieldSpec>;

/// Identity of a field: equal for structurally identical specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(u64);

/// A field element: its code plus the identity of the owning field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe {
    code: u16,
    field: FieldId,
}

impl Fe {
    pub fn code(self) -> u16 {
        self.code
    }
    pub fn field_id(self) -> FieldId {
        self.field
    }
    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

/// Operation selector for [`FieldSpec::fe_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(i64),
}

/// A validated finite field GF(p^k).
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Modulus coefficients over GF(p), ascending, length k+1, monic.
    /// Empty for prime fields.
    modulus: Vec<u16>,
    id: FieldId,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    ops: AtomicU64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- small polynomial helpers over GF(p), used only for modulus handling ---

fn gfp_trim(v: &mut Vec<u16>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gfp_rem(a: &[u16], b: &[u16], p: u32) -> Vec<u16> {
    let mut r: Vec<u16> = a.to_vec();
    gfp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db] as u32, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] as u32 * lead_inv) % p;
        if factor != 0 {
            for i in 0..=db {
                let sub = (factor * b[i] as u32) % p;
                let idx = dr - db + i;
                r[idx] = (((r[idx] as u32 + p) - sub) % p) as u16;
            }
        }
        r.pop();
        gfp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime, a != 0
    mod_pow(a, p as u64 - 2, p)
}

fn mod_pow(base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = base as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Monic polynomial of degree `deg` over GF(p) from its packed code
/// (low digits = low coefficients; the leading 1 is implicit).
fn monic_from_code(code: u64, deg: u32, p: u32) -> Vec<u16> {
    let mut c = code;
    let mut v = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        v.push((c % p as u64) as u16);
        c /= p as u64;
    }
    v.push(1);
    v
}

fn gfp_is_irreducible(f: &[u16], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let g = monic_from_code(code, d as u32, p);
            if gfp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn spec_hash(p: u32, k: u32, modulus: &[u16]) -> FieldId {
    // FNV-1a over the defining data; stable across runs.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
    };
    eat(p as u64);
    eat(k as u64);
    for &c in modulus {
        eat(c as u64);
    }
    FieldId(h)
}

impl FieldSpec {
    /// Build GF(p^k). For `k > 1` the modulus may be given as ascending
    /// coefficient codes over GF(p) (length k+1, monic); when absent, the
    /// lexicographically smallest monic irreducible of degree `k` is chosen,
    /// so repeated runs agree.
    pub fn make(p: u64, k: u32, modulus: Option<&[u16]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::DegreeMismatch { got: 0, want: 1 });
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= MAX_ORDER as u128);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::OrderTooLarge(p.saturating_pow(k.min(64)))),
        };
        let p = p as u32;
        let modulus: Vec<u16> = if k == 1 {
            Vec::new()
        } else {
            match modulus {
                Some(m) => {
                    let mut m: Vec<u16> = m.to_vec();
                    gfp_trim(&mut m);
                    if m.len() != k as usize + 1 {
                        return Err(Error::DegreeMismatch {
                            got: m.len().saturating_sub(1),
                            want: k as usize,
                        });
                    }
                    if m.iter().any(|&c| c as u32 >= p) || *m.last().unwrap() != 1 {
                        return Err(Error::ReducibleModulus { p: p as u64 });
                    }
                    if !gfp_is_irreducible(&m, p) {
                        return Err(Error::ReducibleModulus { p: p as u64 });
                    }
                    m
                }
                None => Self::auto_modulus(p, k),
            }
        };
        let id = spec_hash(p, k, &modulus);
        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            id,
            add_t: Vec::new(),
            mul_t: Vec::new(),
            neg_t: Vec::new(),
            inv_t: Vec::new(),
            ops: AtomicU64::new(0),
        };
        if q <= TABLE_LIMIT {
            spec.build_tables();
        }
        Ok(Arc::new(spec))
    }

    fn auto_modulus(p: u32, k: u32) -> Vec<u16> {
        let count = (p as u64).pow(k);
        for code in 0..count {
            let f = monic_from_code(code, k, p);
            if gfp_is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("an irreducible of every degree exists over GF(p)")
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            neg[a] = self.neg_raw(a as u16);
            if a != 0 {
                inv[a] = self.inv_raw(a as u16);
            }
            for b in 0..q {
                add[a * q + b] = self.add_raw(a as u16, b as u16);
                mul[a * q + b] = self.mul_raw(a as u16, b as u16);
            }
        }
        self.add_t = add;
        self.mul_t = mul;
        self.neg_t = neg;
        self.inv_t = inv;
    }

    // --- raw digit-vector arithmetic (table construction & large fields) ---

    fn decode(&self, code: u16) -> Vec<u16> {
        let mut v = vec![0u16; self.k as usize];
        let mut c = code as u32;
        for d in v.iter_mut() {
            *d = (c % self.p) as u16;
            c /= self.p;
        }
        v
    }

    fn encode(&self, digits: &[u16]) -> u16 {
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * self.p + d as u32;
        }
        code as u16
    }

    fn add_raw(&self, a: u16, b: u16) -> u16 {
        if self.k == 1 {
            return ((a as u32 + b as u32) % self.p) as u16;
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u16> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| ((x as u32 + y as u32) % self.p) as u16)
            .collect();
        self.encode(&sum)
    }

    fn neg_raw(&self, a: u16) -> u16 {
        if self.k == 1 {
            return ((self.p - a as u32) % self.p) as u16;
        }
        let da = self.decode(a);
        let n: Vec<u16> = da
            .iter()
            .map(|&x| ((self.p - x as u32) % self.p) as u16)
            .collect();
        self.encode(&n)
    }

    fn mul_raw(&self, a: u16, b: u16) -> u16 {
        if self.k == 1 {
            return (a as u32 * b as u32 % self.p) as u16;
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u16; 2 * self.k as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                let t = (prod[i + j] as u32 + x as u32 * y as u32) % self.p;
                prod[i + j] = t as u16;
            }
        }
        // reduce mod modulus
        let mut prod_v = prod;
        gfp_trim(&mut prod_v);
        let r = if prod_v.len() > self.k as usize {
            gfp_rem(&prod_v, &self.modulus, self.p)
        } else {
            prod_v
        };
        let mut digits = vec![0u16; self.k as usize];
        digits[..r.len()].copy_from_slice(&r);
        self.encode(&digits)
    }

    fn inv_raw(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        // a^(q-2); exact and division-free
        let mut acc = self.one_code();
        let mut base = a;
        let mut e = self.q as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    fn one_code(&self) -> u16 {
        1
    }

    // --- public accessors ---

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn extension_degree(&self) -> u32 {
        self.k
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn id(&self) -> FieldId {
        self.id
    }
    /// Modulus coefficient codes (ascending); empty for prime fields.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// Total arithmetic operations performed since the last reset.
    pub fn ops_performed(&self) -> u64 {
        self.ops.load(Ordering::Relaxed)
    }
    pub fn reset_ops(&self) {
        self.ops.store(0, Ordering::Relaxed);
    }
    #[inline]
    fn tick(&self) {
        self.ops.fetch_add(1, Ordering::Relaxed);
    }

    pub fn elt(&self, code: u32) -> Result<Fe> {
        if code >= self.q {
            return Err(Error::CodeOutOfRange {
                code,
                order: self.q,
            });
        }
        Ok(Fe {
            code: code as u16,
            field: self.id,
        })
    }

    pub fn zero(&self) -> Fe {
        Fe {
            code: 0,
            field: self.id,
        }
    }

    pub fn one(&self) -> Fe {
        Fe {
            code: 1,
            field: self.id,
        }
    }

    /// All element codes in canonical order.
    pub fn codes(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    // --- code-level arithmetic (hot path) ---

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.tick();
        if !self.add_t.is_empty() {
            return self.add_t[a as usize * self.q as usize + b as usize];
        }
        self.add_raw(a, b)
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.tick();
        let nb = if !self.neg_t.is_empty() {
            self.neg_t[b as usize]
        } else {
            self.neg_raw(b)
        };
        if !self.add_t.is_empty() {
            return self.add_t[a as usize * self.q as usize + nb as usize];
        }
        self.add_raw(a, nb)
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.tick();
        if !self.mul_t.is_empty() {
            return self.mul_t[a as usize * self.q as usize + b as usize];
        }
        self.mul_raw(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.tick();
        if !self.neg_t.is_empty() {
            return self.neg_t[a as usize];
        }
        self.neg_raw(a)
    }

    /// Multiplicative inverse of a nonzero code.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0, "inverse of zero");
        self.tick();
        if !self.inv_t.is_empty() {
            return self.inv_t[a as usize];
        }
        self.inv_raw(a)
    }

    /// `a / b` for nonzero `b`.
    #[inline]
    pub fn div(&self, a: u16, b: u16) -> u16 {
        let ib = self.inv(b);
        self.mul(a, ib)
    }

    /// `a^e` for any integer exponent; negative exponents invert first.
    pub fn pow(&self, a: u16, e: i64) -> Result<u16> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::DivisionByZero),
            };
        }
        let (mut base, mut e) = if e < 0 {
            (self.inv(a), e.unsigned_abs())
        } else {
            (a, e as u64)
        };
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `(-1)^parity` as a field element; the identity in characteristic 2.
    pub fn sign(&self, parity: i64) -> Fe {
        let code = if parity.rem_euclid(2) == 0 {
            1
        } else {
            self.neg_raw(1)
        };
        Fe {
            code,
            field: self.id,
        }
    }

    fn check(&self, a: Fe) -> Result<u16> {
        if a.field != self.id {
            return Err(Error::FieldMismatch);
        }
        Ok(a.code)
    }

    /// Checked element-level arithmetic. `b` is required for the binary ops
    /// and ignored otherwise.
    pub fn fe_arith(&self, op: FeOp, a: Fe, b: Option<Fe>) -> Result<Fe> {
        let a = self.check(a)?;
        let bin = |b: Option<Fe>| -> Result<u16> {
            self.check(b.ok_or(Error::FieldMismatch)?)
        };
        let code = match op {
            FeOp::Add => self.add(a, bin(b)?),
            FeOp::Sub => self.sub(a, bin(b)?),
            FeOp::Mul => self.mul(a, bin(b)?),
            FeOp::Div => {
                let b = bin(b)?;
                if b == 0 {
                    return Err(Error::DivisionByZero);
                }
                self.div(a, b)
            }
            FeOp::Neg => self.neg(a),
            FeOp::Inv => {
                if a == 0 {
                    return Err(Error::DivisionByZero);
                }
                self.inv(a)
            }
            FeOp::Pow(e) => self.pow(a, e)?,
        };
        Ok(Fe {
            code,
            field: self.id,
        })
    }

    /// Parse a field spec string: `p^k` or `p^k/modulus-code`, where the
    /// modulus code packs ascending GF(p) coefficients in base p.
    pub fn parse(s: &str) -> Result<Field> {
        let (pk, modcode) = match s.split_once('/') {
            Some((pk, m)) => (pk, Some(m)),
            None => (s, None),
        };
        let (p, k) = match pk.split_once('^') {
            Some((p, k)) => (p, k),
            None => (pk, "1"),
        };
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field characteristic in {s:?}")))?;
        let k: u32 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad extension degree in {s:?}")))?;
        let modulus = match modcode {
            None => None,
            Some(m) => {
                let code: u64 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad modulus code in {s:?}")))?;
                let mut c = code;
                let mut v = Vec::new();
                while c > 0 {
                    v.push((c % p) as u16);
                    c /= p;
                }
                Some(v)
            }
        };
        FieldSpec::make(p, k, modulus.as_deref())
    }

    /// Canonical spec string, the inverse of [`FieldSpec::parse`].
    pub fn spec_string(&self) -> String {
        if self.k == 1 {
            format!("{}^1", self.p)
        } else {
            let mut code = 0u64;
            for &c in self.modulus.iter().rev() {
                code = code * self.p as u64 + c as u64;
            }
            format!("{}^{}/{}", self.p, self.k, code)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}
