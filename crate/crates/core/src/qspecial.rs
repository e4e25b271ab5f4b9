//! Floating-point q-special functions: the q-exponential `𝓔_q(x;w)`, basic
//! sine and cosine, Jackson's second q-Bessel function, `Sin_q`, and zero
//! finders for the convergence radii used by the Lidstone theorems.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{q_pochhammer_f64, q_pochhammer_inf, DEFAULT_FLOAT_TOL};
use crate::symlaurent::eval_chebyshev_f64;

const MAX_TERMS: usize = 2000;

/// Symmetric Chebyshev-type coefficients of `q^{n²/4}/(q;q)_n · ρ_n(x)`.
///
/// Uses `ρ_n = z^{-n}(1+z²) Σ_m [n-1, m]_{q²} q^{m(m+1-n)} z^{2m}`, so every
/// scaled weight is `q^{(m-n/2)²+m}/(q;q)_n ≤ 1/(q;q)_n`.
pub fn scaled_rho_coeffs(q: f64, n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![1.0];
    }
    let p = q * q;
    // Gaussian binomials [n-1, m]_{p} via the Pascal rule
    let mut binom = vec![1.0f64];
    for r in 1..n {
        let mut next = vec![1.0f64; r + 1];
        for m in 1..r {
            next[m] = binom[m - 1] + p.powi(m as i32) * binom[m];
        }
        binom = next;
    }
    let qq = q_pochhammer_f64(q, q, n);
    let nf = n as f64;
    let b: Vec<f64> = (0..n)
        .map(|m| {
            let mf = m as f64;
            binom[m] * q.powf((mf - nf / 2.0).powi(2) + mf) / qq
        })
        .collect();
    // Laurent coefficient at z^{2j-n} is b_j + b_{j-1}
    let mut c = vec![0.0; n + 1];
    for j in 0..=n {
        let k = 2 * j as i64 - n as i64;
        if k < 0 {
            continue;
        }
        let lj = b.get(j).copied().unwrap_or(0.0) + if j > 0 { b[j - 1] } else { 0.0 };
        c[k as usize] = lj;
    }
    c
}

/// `ψ_n ρ_n(x)` with `ψ_n = q^{n²/4}/(q;q)_n`.
pub fn scaled_rho(q: f64, n: usize, x: f64) -> f64 {
    eval_chebyshev_f64(&scaled_rho_coeffs(q, n), x)
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("q = {q} must satisfy 0 < q < 1")));
    }
    Ok(())
}

/// Sums `Σ_n a_n(w) ψ_n ρ_n(x)` until the terms fall below `tol` relative to the sum.
fn rho_series<T>(q: f64, x: f64, tol: f64, mut weight: impl FnMut(usize) -> Option<T>) -> Result<T>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default + Norm,
{
    let mut sum = T::default();
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let Some(w) = weight(n) else { continue };
        let term = w * scaled_rho(q, n, x);
        sum = sum + term;
        let bound = w.norm() * scaled_rho_coeffs(q, n).iter().map(|c| c.abs()).sum::<f64>() * 2.0;
        if bound <= tol * sum.norm().max(f64::MIN_POSITIVE) {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Domain("q-series did not converge".into()))
}

/// Absolute value for real or complex accumulators.
pub trait Norm {
    fn norm(&self) -> f64;
}

impl Norm for f64 {
    fn norm(&self) -> f64 {
        self.abs()
    }
}

impl Norm for Complex64 {
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
}

/// `𝓔_q(x; w) = Σ ψ_n w^n ρ_n(x)` for real `w` with `|w| < 1`.
pub fn eq_eval(q: f64, x: f64, w: f64, tol: f64) -> Result<f64> {
    check_q(q)?;
    if w.abs() >= 1.0 {
        return Err(Error::Domain(format!("|w| = {} must be < 1 for the q-exponential series", w.abs())));
    }
    if w == 0.0 {
        return Ok(1.0);
    }
    rho_series(q, x, tol, |n| Some(w.powi(n as i32)))
}

/// Complex-argument version of [`eq_eval`].
pub fn eq_eval_complex(q: f64, x: f64, w: Complex64, tol: f64) -> Result<Complex64> {
    check_q(q)?;
    if w.norm() >= 1.0 {
        return Err(Error::Domain(format!("|w| = {} must be < 1 for the q-exponential series", w.norm())));
    }
    rho_series(q, x, tol, |n| Some(w.powi(n as i32)))
}

/// Basic sine or cosine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    S,
    C,
}

/// Argument of [`basic_trig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrigPoint {
    X(f64),
    Eta,
}

/// `(-q w²; q²)_∞ S_q(η; w) = Σ (-1)^k q^{k²+k/2} w^{2k+1} / (q^{1/2}; q^{1/2})_{2k+1}`
/// and the cosine analogue; both are entire in `w`.
pub fn prefactored_trig_eta(q: f64, w: f64, kind: TrigKind) -> f64 {
    let sq = q.sqrt();
    let (mut sum, mut small) = (0.0f64, 0);
    let mut denom = 1.0f64;
    let offset = if kind == TrigKind::S { 1 } else { 0 };
    for j in 0..MAX_TERMS {
        // n = 2k + offset; denom tracks (√q;√q)_n
        let n = 2 * j + offset;
        let start = if j == 0 { 0 } else { n - 2 };
        for i in start..n {
            denom *= 1.0 - sq.powi(i as i32 + 1);
        }
        let kf = j as f64;
        let expo = match kind {
            TrigKind::S => kf * kf + kf / 2.0,
            TrigKind::C => kf * kf - kf / 2.0,
        };
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * q.powf(expo) * w.powi(n as i32) / denom;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(f64::MIN_POSITIVE) && j > 2 {
            small += 1;
            if small >= 2 {
                break;
            }
        }
    }
    sum
}

/// `S_q(η; w)` by the scalar series valid for `|w| < q^{-1/2}`.
pub fn trig_eta_series(q: f64, w: f64, kind: TrigKind) -> Result<f64> {
    if w.abs() * q.sqrt() >= 1.0 {
        return Err(Error::Domain(format!("|w| = {} outside |w| < q^(-1/2)", w.abs())));
    }
    let a = -1.0 / q.sqrt();
    let x = q.sqrt() * w;
    let offset = if kind == TrigKind::S { 1 } else { 0 };
    let mut sum = 0.0;
    for k in 0..MAX_TERMS {
        let n = 2 * k + offset;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * q_pochhammer_f64(a, q, n) / q_pochhammer_f64(q, q, n) * x.powi(n as i32);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(f64::MIN_POSITIVE) && k > 3 {
            return Ok(sum);
        }
    }
    Err(Error::Domain("basic trigonometric series did not converge".into()))
}

/// `S_q` or `C_q` at a real `x` (series in `ρ_n`, `|w| < 1`) or at `η`
/// (prefactored entire series divided by `(-q w²; q²)_∞`).
pub fn basic_trig(q: f64, at: TrigPoint, w: f64, kind: TrigKind, tol: f64) -> Result<f64> {
    check_q(q)?;
    match at {
        TrigPoint::Eta => {
            let (pref, _) = q_pochhammer_inf(-q * w * w, q * q, tol.min(1e-15))?;
            Ok(prefactored_trig_eta(q, w, kind) / pref)
        }
        TrigPoint::X(x) => {
            if w.abs() >= 1.0 {
                return Err(Error::Domain(format!("|w| = {} must be < 1 for real x", w.abs())));
            }
            if w == 0.0 {
                return Ok(if kind == TrigKind::C { 1.0 } else { 0.0 });
            }
            rho_series(q, x, tol, |n| match (kind, n % 2) {
                (TrigKind::C, 0) | (TrigKind::S, 1) => {
                    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    Some(sign * w.powi(n as i32))
                }
                _ => None,
            })
        }
    }
}

/// Jackson's second q-Bessel function
/// `J_ν^{(2)}(z;q) = (q^{ν+1};q)_∞/(q;q)_∞ Σ (-1)^n q^{n(n+ν)} (z/2)^{2n+ν} / ((q;q)_n (q^{ν+1};q)_n)`.
pub fn jackson_bessel_j2(nu: f64, z: f64, q: f64) -> Result<f64> {
    check_q(q)?;
    if z < 0.0 {
        return Err(Error::Domain(format!("z = {z} must be non-negative")));
    }
    let a = q.powf(nu + 1.0);
    let (top, _) = q_pochhammer_inf(a, q, 1e-16)?;
    let (bottom, _) = q_pochhammer_inf(q, q, 1e-16)?;
    let h = z / 2.0;
    let mut sum = 0.0f64;
    let (mut qn, mut an) = (1.0f64, 1.0f64);
    for n in 0..MAX_TERMS {
        if n > 0 {
            qn *= 1.0 - q.powi(n as i32);
            an *= 1.0 - a * q.powi(n as i32 - 1);
        }
        let nf = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * q.powf(nf * (nf + nu)) * h.powi(2 * n as i32) / (qn * an);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(f64::MIN_POSITIVE) && n > 2 {
            break;
        }
    }
    Ok(top / bottom * h.powf(nu) * sum)
}

/// `Sin_q x = Σ (-1)^k q^{k(2k+1)} x^{2k+1} / [2k+1]_q!`.
pub fn sin_q(q: f64, x: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut fact = 1.0f64;
    for k in 0..MAX_TERMS {
        let n = 2 * k + 1;
        let from = if k == 0 { 1 } else { n - 1 };
        for i in from..=n {
            fact *= (1.0 - q.powi(i as i32)) / (1.0 - q);
        }
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * q.powf(kf * (2.0 * kf + 1.0)) * x.powi(n as i32) / fact;
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(f64::MIN_POSITIVE) && k > 2 {
            break;
        }
    }
    sum
}

/// `2 q^{-m} q^{(1-ν)/2}`.
pub fn hayman_zero_estimate(m: usize, nu: f64, q: f64) -> f64 {
    2.0 * q.powi(-(m as i32)) * q.powf((1.0 - nu) / 2.0)
}

/// Which function to find zeros of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroKind {
    /// `S_q(η; w)`, zeros `w_m`.
    SqEta,
    /// `C_q(η; w)`, zeros `w̃_m`.
    CqEta,
    /// `Sin_q x`, zeros `ξ_m`.
    Sinq,
}

impl ZeroKind {
    pub fn name(self) -> &'static str {
        match self {
            ZeroKind::SqEta => "Sq_eta",
            ZeroKind::CqEta => "Cq_eta",
            ZeroKind::Sinq => "Sinq",
        }
    }

    /// Entire function with the same positive zeros.
    fn eval(self, q: f64, x: f64) -> f64 {
        match self {
            ZeroKind::SqEta => prefactored_trig_eta(q, x, TrigKind::S),
            ZeroKind::CqEta => prefactored_trig_eta(q, x, TrigKind::C),
            ZeroKind::Sinq => sin_q(q, x),
        }
    }

    /// Hayman estimate of the m-th zero in this function's variable.
    pub fn estimate(self, m: usize, q: f64) -> f64 {
        match self {
            ZeroKind::SqEta => hayman_zero_estimate(m, 0.5, q) / 2.0,
            ZeroKind::CqEta => hayman_zero_estimate(m, -0.5, q) / 2.0,
            ZeroKind::Sinq => hayman_zero_estimate(m, 0.5, q * q) / (2.0 * (1.0 - q)),
        }
    }
}

impl std::str::FromStr for ZeroKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Sq_eta" | "sq_eta" | "S" => Ok(ZeroKind::SqEta),
            "Cq_eta" | "cq_eta" | "C" => Ok(ZeroKind::CqEta),
            "Sinq" | "sinq" => Ok(ZeroKind::Sinq),
            _ => Err(Error::Parse(format!("unknown zero kind `{s}` (expected Sq_eta, Cq_eta, Sinq)"))),
        }
    }
}

/// A located zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub kind: ZeroKind,
    pub q: f64,
    pub index: usize,
    pub value: f64,
    pub bracket: (f64, f64),
    /// `|f(value)|` of the unprefactored function (`S_q(η;·)`, `C_q(η;·)`, `Sin_q`).
    pub residual: f64,
    /// For `SqEta`: `value² ≥ q^{-3/2}(1-q)(1-q^{3/2})`; trivially true otherwise.
    pub bound_check: bool,
    /// Hayman estimate for this index.
    pub estimate: f64,
}

/// `q^{-3/2}(1-q)(1-q^{3/2})`.
pub fn sine_zero_lower_bound_sq(q: f64) -> f64 {
    q.powf(-1.5) * (1.0 - q) * (1.0 - q.powf(1.5))
}

const SCAN_RATIO: f64 = 1.05;
const FINE_RATIO: f64 = 1.01;

/// First sign change of `f` on the geometric grid `lo, lo·r, ...` up to `limit`.
fn scan(f: &dyn Fn(f64) -> f64, lo: f64, limit: f64, ratio: f64) -> Option<(f64, f64)> {
    let mut a = lo;
    let mut fa = f(a);
    while a < limit {
        let b = (a * ratio).min(limit);
        let fb = f(b);
        if fa == 0.0 {
            return Some((a, a));
        }
        if fa.signum() != fb.signum() {
            return Some((a, b));
        }
        if b >= limit {
            break;
        }
        a = b;
        fa = fb;
    }
    None
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut flo = f(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn unprefactored(kind: ZeroKind, q: f64, x: f64) -> f64 {
    match kind {
        ZeroKind::SqEta => basic_trig(q, TrigPoint::Eta, x, TrigKind::S, DEFAULT_FLOAT_TOL).unwrap_or(f64::NAN),
        ZeroKind::CqEta => basic_trig(q, TrigPoint::Eta, x, TrigKind::C, DEFAULT_FLOAT_TOL).unwrap_or(f64::NAN),
        ZeroKind::Sinq => sin_q(q, x),
    }
}

/// The first `count` positive zeros, in increasing order.
pub fn positive_zeros(kind: ZeroKind, q: f64, count: usize) -> Result<Vec<ZeroReport>> {
    check_q(q)?;
    let f = |x: f64| kind.eval(q, x);
    let bound = sine_zero_lower_bound_sq(q).sqrt();
    let mut start = match kind {
        ZeroKind::SqEta => bound,
        _ => 1e-3 * kind.estimate(1, q),
    };
    let mut out = Vec::with_capacity(count);
    for index in 1..=count {
        let limit = kind.estimate(index + 2, q);
        let (a, b) = scan(&f, start, limit, SCAN_RATIO).ok_or_else(|| {
            Error::SearchFailure(format!(
                "{}: no sign change for zero #{index} on [{start:.6e}, {limit:.6e}] (Hayman estimate for index {} is {:.6e})",
                kind.name(),
                index + 2,
                limit
            ))
        })?;
        let (a, b) = scan(&f, a, b, FINE_RATIO).unwrap_or((a, b));
        let (lo, hi) = bisect(&f, a, b);
        let value = 0.5 * (lo + hi);
        let bound_check = kind != ZeroKind::SqEta || value * value >= sine_zero_lower_bound_sq(q);
        out.push(ZeroReport {
            kind,
            q,
            index,
            value,
            bracket: (lo, hi),
            residual: unprefactored(kind, q, value).abs(),
            bound_check,
            estimate: kind.estimate(index, q),
        });
        start = hi * (1.0 + 1e-9);
    }
    Ok(out)
}

/// The smallest positive zero.
pub fn smallest_positive_zero(kind: ZeroKind, q: f64) -> Result<ZeroReport> {
    Ok(positive_zeros(kind, q, 1)?.remove(0))
}
