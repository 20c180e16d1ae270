//! The Diophantine layer: quality exponents for the t-adic / p(t)-adic
//! Littlewood products, the window-growth checker, the two-sided
//! equivalence audit between the two, and the transference construction
//! `Θ(t) ↦ Θ(p(t))`.
//!
//! Everything is exponent arithmetic: the product
//! `f(|N|) · |N| · |N|_p · |⟨NΘ⟩|` is tracked through the integer ledger
//! `b_f(deg N) + deg N - v_p + deg⟨NΘ⟩`, never as a magnitude. A growth
//! function only ever enters through `b_f(k) = floor(log_q f(q^k))`,
//! computed by integer comparison against powers of `q`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::Field;
use crate::laurent::{substitute, LaurentTrunc};
use crate::poly::{padic_norm_exp, Poly};
use crate::seq::Seq;
use crate::wall::{Wall, WindowRec};
use crate::Result;

/// Monotone growth functions with exact integer values at powers of `q`.
/// The logarithmic kinds are clamped below at 1 so every value is positive
/// (the bare logarithm vanishes at `q^0`, which would make the Littlewood
/// product degenerate for constant polynomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthFn {
    Constant(u64),
    /// `f(q^k) = max(1, k^2)`.
    LogSq,
    /// `f(q^k) = max(1, k * floor(log_q k))`.
    LogMulLogLog,
    /// Explicit `k -> f(q^k)` table; must be monotone non-decreasing.
    Table(Vec<u128>),
}

impl GrowthFn {
    pub fn value(&self, k: u64, q: u32) -> Result<u128> {
        let v = match self {
            GrowthFn::Constant(c) => *c as u128,
            GrowthFn::LogSq => (k as u128 * k as u128).max(1),
            GrowthFn::LogMulLogLog => {
                let mut b = 0u128;
                let mut pw = q as u128;
                while pw <= k as u128 {
                    b += 1;
                    pw *= q as u128;
                }
                (k as u128 * b).max(1)
            }
            GrowthFn::Table(t) => *t.get(k as usize).ok_or_else(|| {
                Error::Parse(format!("growth table has no entry for k = {k}"))
            })?,
        };
        if v == 0 {
            return Err(Error::Parse("growth function value must be positive".into()));
        }
        Ok(v)
    }

    /// `b_f(k) = floor(log_q f(q^k))` by exact integer comparison.
    pub fn floor_log_q(&self, k: u64, q: u32) -> Result<i64> {
        let v = self.value(k, q)?;
        let mut b = 0i64;
        let mut pw = q as u128;
        while pw <= v {
            b += 1;
            match pw.checked_mul(q as u128) {
                Some(next) => pw = next,
                None => break,
            }
        }
        Ok(b)
    }

    /// Check monotonicity over `0..=k_max` (tables may violate it).
    pub fn validate_monotone(&self, k_max: u64, q: u32) -> Result<()> {
        let mut prev = self.value(0, q)?;
        for k in 1..=k_max {
            let v = self.value(k, q)?;
            if v < prev {
                return Err(Error::Parse(format!(
                    "growth function decreases at k = {k}"
                )));
            }
            prev = v;
        }
        Ok(())
    }

    /// `const:C`, `log2`, or `loglog`.
    pub fn parse(s: &str) -> Result<GrowthFn> {
        let s = s.trim();
        if let Some(c) = s.strip_prefix("const:") {
            let c: u64 = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad growth constant in {s:?}")))?;
            if c == 0 {
                return Err(Error::Parse("growth constant must be positive".into()));
            }
            return Ok(GrowthFn::Constant(c));
        }
        match s {
            "1" => Ok(GrowthFn::Constant(1)),
            "log2" => Ok(GrowthFn::LogSq),
            "loglog" => Ok(GrowthFn::LogMulLogLog),
            _ => Err(Error::Parse(format!("unknown growth function {s:?}"))),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GrowthFn::Constant(c) => format!("const:{c}"),
            GrowthFn::LogSq => "log2".into(),
            GrowthFn::LogMulLogLog => "loglog".into(),
            GrowthFn::Table(t) => format!("table[{}]", t.len()),
        }
    }
}

/// Exponent of the Littlewood product `q^{-e}`. `AtLeast(e)` means the
/// fractional part could not be resolved on the stored precision: the
/// product is at most `q^{-e}` and possibly exactly zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "e", rename_all = "kebab-case")]
pub enum ProductExp {
    Exact(i64),
    AtLeast(i64),
}

impl ProductExp {
    pub fn lower_bound(self) -> i64 {
        match self {
            ProductExp::Exact(e) | ProductExp::AtLeast(e) => e,
        }
    }
    pub fn is_exact(self) -> bool {
        matches!(self, ProductExp::Exact(_))
    }
    /// True when the product is certainly below `q^{-l}`.
    pub fn below(self, l: i64) -> bool {
        self.lower_bound() > l
    }
}

/// Exponent ledger for one polynomial `N`: the product
/// `f(|N|)·|N|·|N|_p·|⟨NΘ⟩|` is `q^{-exponent}` with
/// `exponent = -(b_f_part + deg_n - padic_exp + frac_deg)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DioWitness {
    pub n: String,
    /// `b_f(deg N)`.
    pub b_f_part: i64,
    /// `log_q |N| = deg N`.
    pub deg_n: i64,
    /// `v >= 0` with `|N|_p = q^{-v}`.
    pub padic_exp: i64,
    /// `deg ⟨NΘ⟩`; `None` when zero on the stored range.
    pub frac_deg: Option<i64>,
    pub exponent: ProductExp,
    pub precision_used: i64,
}

/// Evaluate the exponent ledger of `f(|N|)·|N|·|N|_p·|⟨NΘ⟩|` exactly.
pub fn dio_exponent(
    theta: &LaurentTrunc,
    n: &Poly,
    p: &Poly,
    f: &GrowthFn,
) -> Result<DioWitness> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let q = theta.field().order();
    let deg_n = n.degree().finite().expect("nonzero");
    let b = f.floor_log_q(deg_n as u64, q)?;
    let v = padic_norm_exp(n, p)?;
    let prod = theta.mul_poly(n)?;
    let frac = prod.frac();
    let prec_used = frac.prec();
    let (frac_deg, exponent) = match frac.deg() {
        Some(d) => (Some(d), ProductExp::Exact(-(b + deg_n - v + d))),
        None => (
            None,
            ProductExp::AtLeast(-(b + deg_n - v - prec_used - 1)),
        ),
    };
    Ok(DioWitness {
        n: n.to_string(),
        b_f_part: b,
        deg_n,
        padic_exp: v,
        frac_deg,
        exponent,
        precision_used: prec_used,
    })
}

/// Result of a truncated infimum: `q^{-l_star}` over the enumerated range.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfReport {
    pub l_star: ProductExp,
    pub witness: DioWitness,
    pub deg_bound: i64,
    pub pow_bound: i64,
    pub candidates: usize,
}

/// Enumerate every monic `M` coprime to `p` with `deg M <= d_bound`
/// (scalar multiples share the whole ledger, so monic representatives
/// suffice).
fn monic_coprime(field: &Field, p: &Poly, d_bound: i64) -> Vec<Poly> {
    let q = field.order() as u64;
    let mut out = Vec::new();
    for d in 0..=d_bound {
        let count = q.pow(d as u32);
        for code in 0..count {
            let mut coeffs = Vec::with_capacity(d as usize + 1);
            let mut c = code;
            for _ in 0..d {
                coeffs.push((c % q) as u16);
                c /= q;
            }
            coeffs.push(1);
            let m = Poly::from_codes(field.clone(), &coeffs).expect("valid codes");
            let (_, rem) = m.divmod(p).expect("p nonzero");
            if !rem.is_zero() {
                out.push(m);
            }
        }
    }
    out
}

/// Truncated infimum of the Littlewood product over `N = M p^k` with
/// `M` monic coprime to `p`, `deg M <= d_bound`, `0 <= k <= k_bound`.
/// The infimum over the range is `q^{-l_star}`; the arg-max witness is
/// returned. `AtLeast` surfaces when some candidate's fractional part is
/// unresolvable at the given precision (for example, rational `Θ`).
pub fn truncated_inf(
    theta: &LaurentTrunc,
    d_bound: i64,
    k_bound: i64,
    p: &Poly,
    f: &GrowthFn,
) -> Result<InfReport> {
    if !p.is_irreducible() {
        return Err(Error::ReducibleBase);
    }
    let field = theta.field().clone();
    let mut best: Option<DioWitness> = None;
    let mut unresolved_max: Option<i64> = None;
    let mut candidates = 0;
    for m in monic_coprime(&field, p, d_bound) {
        let mut n = m.clone();
        for _k in 0..=k_bound {
            candidates += 1;
            let wit = dio_exponent(theta, &n, p, f)?;
            match wit.exponent {
                ProductExp::Exact(e) => {
                    if best
                        .as_ref()
                        .map(|b| e > b.exponent.lower_bound())
                        .unwrap_or(true)
                    {
                        best = Some(wit);
                    }
                }
                ProductExp::AtLeast(e) => {
                    if unresolved_max.map(|u| e > u).unwrap_or(true) {
                        unresolved_max = Some(e);
                    }
                    if best
                        .as_ref()
                        .map(|b| e > b.exponent.lower_bound())
                        .unwrap_or(true)
                    {
                        best = Some(wit);
                    }
                }
            }
            n = n.mul(p);
        }
    }
    let best = best.ok_or_else(|| {
        Error::InsufficientPrecision("empty enumeration range".into())
    })?;
    // any unresolved candidate leaves the maximum open above
    let l_star = match unresolved_max {
        Some(u) => ProductExp::AtLeast(u.max(best.exponent.lower_bound())),
        None => best.exponent,
    };
    Ok(InfReport {
        l_star,
        witness: best,
        deg_bound: d_bound,
        pow_bound: k_bound,
        candidates,
    })
}

/// Window addressing used by the growth checker. `Column` follows the
/// equivalence theorem: the pair `(m, n)` owns windows with top-left at
/// row `m`, column `m + n + 1`, so the threshold index is `m + n`.
/// `Diagonal` indexes by the diagonal of the top-left cell, `m + col`,
/// as the dimension argument does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AddressMode {
    Column,
    Diagonal,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowViolation {
    pub m: i64,
    pub n: i64,
    pub size: usize,
    pub threshold: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowCheckReport {
    pub verdict: String,
    pub violation: Option<WindowViolation>,
    /// Open windows whose visible extent already reaches the threshold;
    /// their final size depends on entries not yet present.
    pub potential: Vec<WindowViolation>,
    pub max_determined_size: usize,
    pub mode: AddressMode,
}

impl WindowCheckReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn threshold_for(
    win: &WindowRec,
    l: i64,
    f: &GrowthFn,
    q: u32,
    mode: AddressMode,
) -> Result<Option<i64>> {
    let idx = match mode {
        // top-left at column m + n + 1: the theorem's index is m + n = col - 1
        AddressMode::Column => win.n - 1,
        AddressMode::Diagonal => win.m + win.n,
    };
    if idx < 0 {
        return Ok(None);
    }
    Ok(Some(l + f.floor_log_q(idx as u64, q)?))
}

/// Scan the wall's windows against the growth threshold: a violation is a
/// size-determined window of side `>= l + b_f(idx)`. Open windows that
/// already reach the threshold are reported separately as potential.
pub fn window_check(
    wall: &Wall,
    l: i64,
    f: &GrowthFn,
    mode: AddressMode,
) -> Result<WindowCheckReport> {
    let q = wall.field().order();
    let mut violation = None;
    let mut potential = Vec::new();
    let mut max_det = 0usize;
    for win in wall.windows() {
        let thr = match threshold_for(win, l, f, q, mode)? {
            Some(t) if t >= 1 => t,
            _ => continue,
        };
        if win.status.is_determined() {
            max_det = max_det.max(win.l);
            if (win.l as i64) >= thr && violation.is_none() {
                violation = Some(WindowViolation {
                    m: win.m,
                    n: win.n,
                    size: win.l,
                    threshold: thr as usize,
                });
            }
        } else if (win.l as i64) >= thr {
            potential.push(WindowViolation {
                m: win.m,
                n: win.n,
                size: win.l,
                threshold: thr as usize,
            });
        }
    }
    Ok(WindowCheckReport {
        verdict: if violation.is_none() { "pass" } else { "violation" }.into(),
        violation,
        potential,
        max_determined_size: max_det,
        mode,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditMismatch {
    pub m: i64,
    pub n: i64,
    pub window_size: i64,
    pub kernel_exists: bool,
    pub diagonal_zeros: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub pairs_checked: usize,
    pub kernel_pairs: usize,
    pub mismatches: Vec<AuditMismatch>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Kernel vector of the `(rows x cols)` Hankel slab `s_{n0 + i + j}`
/// (`i < rows`, `j < cols`), or `None` at full column rank.
fn hankel_kernel(seq: &Seq, n0: i64, rows: usize, cols: usize) -> Option<Vec<u16>> {
    let f = seq.field().clone();
    let mut mat = vec![0u16; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            mat[i * cols + j] = seq.at((n0 + i as i64 + j as i64) as usize);
        }
    }
    let mut pivot_col_of_row = vec![usize::MAX; rows];
    let mut is_pivot_col = vec![false; cols];
    let mut rank = 0usize;
    for i in 0..rows {
        if rank == cols {
            break;
        }
        for r in 0..i {
            let pc = pivot_col_of_row[r];
            if pc == usize::MAX {
                continue;
            }
            let factor = mat[i * cols + pc];
            if factor != 0 {
                let scale = f.div(factor, mat[r * cols + pc]);
                for j in 0..cols {
                    let s = f.mul(scale, mat[r * cols + j]);
                    mat[i * cols + j] = f.sub(mat[i * cols + j], s);
                }
            }
        }
        if let Some(j) = (0..cols).find(|&j| !is_pivot_col[j] && mat[i * cols + j] != 0) {
            pivot_col_of_row[i] = j;
            is_pivot_col[j] = true;
            rank += 1;
        }
    }
    if rank == cols {
        return None;
    }
    // back-substitute: set the last free column to 1, solve the pivots
    let free = (0..cols).rfind(|&j| !is_pivot_col[j]).expect("rank < cols");
    let mut a = vec![0u16; cols];
    a[free] = 1;
    for i in (0..rows).rev() {
        let pc = pivot_col_of_row[i];
        if pc == usize::MAX {
            continue;
        }
        let mut acc = 0u16;
        for j in 0..cols {
            if j != pc && a[j] != 0 && mat[i * cols + j] != 0 {
                acc = f.add(acc, f.mul(mat[i * cols + j], a[j]));
            }
        }
        a[pc] = f.div(f.neg(acc), mat[i * cols + pc]);
    }
    Some(a)
}

/// Two-sided finite audit of the growth equivalence: for every `(m, n)` in
/// range, a nonzero kernel of the Hankel slab `H_Θ(n+1, L+m-1, m)` exists
/// iff the wall has the zero diagonal `W(i, n+1+i) = 0`,
/// `i = m .. m+L-1`, where `L = l + b_f(m+n)`; every kernel vector must
/// also produce a Littlewood product strictly below `q^{-l}`.
pub fn equivalence_audit(
    seq: &Seq,
    wall: &Wall,
    l: i64,
    f: &GrowthFn,
    d_bound: i64,
) -> Result<AuditReport> {
    let r = seq.len() as i64;
    let q = seq.field().order();
    let theta = LaurentTrunc::from_seq(seq);
    let t = Poly::from_codes(seq.field().clone(), &[0, 1])?;
    let mut pairs = 0usize;
    let mut kernel_pairs = 0usize;
    let mut mismatches = Vec::new();
    for m in 0..=d_bound {
        for n in 0.. {
            let ll = l + f.floor_log_q((m + n) as u64, q)?;
            if n + 2 * (m + ll.max(1)) - 1 > r {
                break;
            }
            if ll < 1 {
                continue;
            }
            pairs += 1;
            let kernel = hankel_kernel(seq, n + 1, (ll + m) as usize, (m + 1) as usize);
            let diag_zeros = (m..m + ll).all(|i| wall.get(i, n + 1 + i) == Some(0));
            if kernel.is_some() != diag_zeros {
                mismatches.push(AuditMismatch {
                    m,
                    n,
                    window_size: ll,
                    kernel_exists: kernel.is_some(),
                    diagonal_zeros: diag_zeros,
                    detail: "kernel/diagonal disagreement".into(),
                });
                continue;
            }
            if let Some(a) = kernel {
                kernel_pairs += 1;
                let m_poly = Poly::from_codes(seq.field().clone(), &a)?;
                let n_poly = m_poly.mul(&Poly::monomial(seq.field().clone(), 1, n as usize));
                let wit = dio_exponent(&theta, &n_poly, &t, f)?;
                if !wit.exponent.below(l) {
                    mismatches.push(AuditMismatch {
                        m,
                        n,
                        window_size: ll,
                        kernel_exists: true,
                        diagonal_zeros: true,
                        detail: format!(
                            "kernel witness {} has product exponent {:?}, not below q^-{l}",
                            wit.n, wit.exponent
                        ),
                    });
                }
            }
        }
    }
    if pairs == 0 {
        return Err(Error::InsufficientPrefix(format!(
            "no (m, n) pair fits a prefix of length {r} at l = {l}, D = {d_bound}"
        )));
    }
    Ok(AuditReport {
        pairs_checked: pairs,
        kernel_pairs,
        mismatches,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferPair {
    pub m_poly: String,
    pub k: i64,
    pub e_base: i64,
    pub e_trans: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferReport {
    pub base_field_inf: i64,
    pub transferred_inf: i64,
    pub deg_p: i64,
    pub scaling_holds: bool,
    pub pairs: Vec<TransferPair>,
}

/// Finite shadow of the transference theorem: build `Θ(p(t))`, evaluate
/// the truncated infima of the base case (`p = t` on `Θ`) and of the
/// transferred case (`p` on `Θ(p(t))`) over the matched range
/// `N = M t^k` vs `N = M(p(t)) p(t)^k`, and check the exponent relation
/// `l_trans = deg(p) · l_base`, witness by witness.
pub fn transfer(
    field: Field,
    b: &[u16],
    p: &Poly,
    d_bound: i64,
    k_bound: i64,
    prec_t: i64,
) -> Result<TransferReport> {
    if !p.is_irreducible() {
        return Err(Error::ReducibleBase);
    }
    let deg_p = p.degree().finite().expect("irreducible");
    let theta_t = LaurentTrunc::new(field.clone(), -1, b, b.len() as i64)?;
    let theta_p = substitute(field.clone(), b, p, prec_t)?;
    let t = Poly::from_codes(field.clone(), &[0, 1])?;
    let f1 = GrowthFn::Constant(1);
    let mut pairs = Vec::new();
    let mut l_base = i64::MIN;
    let mut l_trans = i64::MIN;
    for m in monic_coprime(&field, &t, d_bound) {
        let m_of_p = m.compose(p);
        for k in 0..=k_bound {
            let n_base = m.mul(&t.pow(k as u32));
            let n_trans = m_of_p.mul(&p.pow(k as u32));
            let wb = dio_exponent(&theta_t, &n_base, &t, &f1)?;
            let wt = dio_exponent(&theta_p, &n_trans, p, &f1)?;
            let (eb, et) = match (wb.exponent, wt.exponent) {
                (ProductExp::Exact(eb), ProductExp::Exact(et)) => (eb, et),
                _ => {
                    return Err(Error::InsufficientPrecision(format!(
                        "witness M = {m}, k = {k} does not resolve; supply more \
                         coefficients or precision"
                    )))
                }
            };
            pairs.push(TransferPair {
                m_poly: m.to_string(),
                k,
                e_base: eb,
                e_trans: et,
            });
            l_base = l_base.max(eb);
            l_trans = l_trans.max(et);
        }
    }
    let scaling_holds = pairs.iter().all(|p2| p2.e_trans == deg_p * p2.e_base)
        && l_trans == deg_p * l_base;
    Ok(TransferReport {
        base_field_inf: l_base,
        transferred_inf: l_trans,
        deg_p,
        scaling_holds,
        pairs,
    })
}
