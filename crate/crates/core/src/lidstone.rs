//! Two-point q-Lidstone expansions at `{0, η}`.
//!
//! A function is either an exact [`SymPoly`] or a floating stream of
//! normalized rho coefficients `u_k`, meaning `f = Σ u_k ψ_k ρ_k` with
//! `ψ_k = q^{k²/4}/(q;q)_k`. In that normalization `𝒟_q ψ_kρ_k = γ ψ_{k-1}ρ_{k-1}`,
//! so `𝒟_q^j f(0) = γ^j u_j` and `𝒟_q^j f(η) = γ^j Σ_k u_k e_{k-j}` with
//! `e_m = ψ_m ρ_m(η)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fps::{euler_factor_series, pochhammer_inf_series, Series};
use crate::qcore::{from_f64, int, pow, q_factorial, to_f64, QContext, Scalar};
use crate::qpolys::{lidstone_basis, BasisKind};
use crate::qspecial::{positive_zeros, scaled_rho_coeffs, ZeroKind};
use crate::symlaurent::{aw_derivative, change_basis, eval_at, eval_chebyshev_f64, from_basis, Basis, SpecialPoint, SymPoly};

/// Width of the window used for the root statistic.
pub const TAU_WINDOW: usize = 10;

/// A function to expand.
#[derive(Debug, Clone, PartialEq)]
pub enum EntireFn {
    Poly(SymPoly),
    /// Normalized coefficients `u_k` (see the module docs).
    Stream(Vec<f64>),
}

impl EntireFn {
    /// Float stream from plain rho coefficients `c_k` (`f = Σ c_k ρ_k`).
    pub fn from_rho_coeffs(q: f64, c: &[f64]) -> Self {
        EntireFn::Stream(c.iter().enumerate().map(|(k, ck)| ck / psi(q, k)).collect())
    }

    /// Truncation of `S_q(x; w)` (`kind = S`) or `C_q(x; w)` (`kind = C`) to `len` coefficients.
    pub fn basic_trig(kind: crate::qspecial::TrigKind, w: f64, len: usize) -> Self {
        let odd = kind == crate::qspecial::TrigKind::S;
        EntireFn::Stream(
            (0..len)
                .map(|n| {
                    if (n % 2 == 1) != odd {
                        return 0.0;
                    }
                    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * w.powi(n as i32)
                })
                .collect(),
        )
    }

    /// Truncation of the even part `(𝓔_q(x;w) + 𝓔_q(x;-w))/2`.
    pub fn eq_even(w: f64, len: usize) -> Self {
        EntireFn::Stream((0..len).map(|n| if n % 2 == 0 { w.powi(n as i32) } else { 0.0 }).collect())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, EntireFn::Poly(_))
    }
}

/// `ψ_k = q^{k²/4}/(q;q)_k` in floating point.
pub fn psi(q: f64, k: usize) -> f64 {
    q.powf((k * k) as f64 / 4.0) / crate::qcore::q_pochhammer_f64(q, q, k)
}

/// `e_m = ψ_m ρ_m(η) = (-q^{-1/2};q)_m q^{m/2}/(q;q)_m`, `m < len`.
pub fn eta_weights(q: f64, len: usize) -> Vec<f64> {
    let mut e = Vec::with_capacity(len);
    let mut cur = 1.0f64;
    for m in 0..len {
        if m > 0 {
            let mf = m as f64;
            cur *= (1.0 + q.powf(mf - 1.5)) * q.sqrt() / (1.0 - q.powi(m as i32));
        }
        e.push(cur);
    }
    e
}

/// Exact or floating sequence of numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Exact(Vec<Scalar>),
    Float(Vec<f64>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Exact(v) => v.len(),
            Values::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Values::Exact(v) => v.iter().map(to_f64).collect(),
            Values::Float(v) => v.clone(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.to_f64().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Rho coefficients of `f` and the growth statistic `τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoExpansion {
    /// `c_k` with `f = Σ c_k ρ_k` for polynomials; normalized `u_k` for streams.
    pub coeffs: Values,
    /// Max over the last [`TAU_WINDOW`] indices of `|u_n|^{1/n}`; zero once a polynomial terminates.
    pub tau: f64,
}

/// `τ` of a stream of normalized coefficients.
pub fn tau_estimate(u: &[f64]) -> f64 {
    let start = u.len().saturating_sub(TAU_WINDOW).max(1);
    (start..u.len()).map(|n| u[n].abs().powf(1.0 / n as f64)).fold(0.0, f64::max)
}

pub fn rho_expand(ctx: &QContext, f: &EntireFn) -> RhoExpansion {
    match f {
        EntireFn::Poly(p) => RhoExpansion { coeffs: Values::Exact(change_basis(ctx, p, Basis::Rho)), tau: 0.0 },
        EntireFn::Stream(u) => RhoExpansion { coeffs: Values::Float(u.clone()), tau: tau_estimate(u) },
    }
}

/// Which theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    /// Data `𝒟^{2k}f(0)`, `𝒟^{2k}f(η)` on the bases `A_k`, `B_k`.
    Bernoulli,
    /// Data `𝒟^{2k+1}f(0)`, `𝒟^{2k}f(η)` on the bases `M_k`, `M̃_k`.
    Euler,
}

impl ExpansionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionKind::Bernoulli => "bernoulli",
            ExpansionKind::Euler => "euler",
        }
    }

    fn zero_kind(self) -> ZeroKind {
        match self {
            ExpansionKind::Bernoulli => ZeroKind::SqEta,
            ExpansionKind::Euler => ZeroKind::CqEta,
        }
    }

    /// Basis multiplying the data at zero and the data at `η`.
    fn bases(self) -> (BasisKind, BasisKind) {
        match self {
            ExpansionKind::Bernoulli => (BasisKind::B, BasisKind::A),
            ExpansionKind::Euler => (BasisKind::M, BasisKind::Mtilde),
        }
    }

    /// Sign applied to the data at zero.
    fn zero_sign(self) -> f64 {
        match self {
            ExpansionKind::Bernoulli => -1.0,
            ExpansionKind::Euler => 1.0,
        }
    }

    fn zero_order(self, k: usize) -> usize {
        match self {
            ExpansionKind::Bernoulli => 2 * k,
            ExpansionKind::Euler => 2 * k + 1,
        }
    }
}

impl std::str::FromStr for ExpansionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli" => Ok(ExpansionKind::Bernoulli),
            "euler" => Ok(ExpansionKind::Euler),
            _ => Err(Error::Parse(format!("unknown expansion kind `{s}` (expected bernoulli or euler)"))),
        }
    }
}

/// Boundary data for `k = 0..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub at_zero: Values,
    pub at_eta: Values,
}

pub fn aw_boundary_data(ctx: &QContext, f: &EntireFn, k_max: usize, kind: ExpansionKind) -> BoundaryData {
    match f {
        EntireFn::Poly(p) => {
            let top = 2 * k_max + 1;
            let mut derivs = Vec::with_capacity(top + 1);
            let mut cur = p.clone();
            for _ in 0..=top {
                derivs.push(cur.clone());
                cur = aw_derivative(ctx, &cur, 1);
            }
            let at_zero = (0..=k_max).map(|k| eval_at(ctx, &derivs[kind.zero_order(k)], &SpecialPoint::Zero)).collect();
            let at_eta = (0..=k_max).map(|k| eval_at(ctx, &derivs[2 * k], &SpecialPoint::Eta)).collect();
            BoundaryData { at_zero: Values::Exact(at_zero), at_eta: Values::Exact(at_eta) }
        }
        EntireFn::Stream(u) => {
            let q = ctx.q_f64();
            let g = to_f64(ctx.gamma());
            let e = eta_weights(q, u.len());
            let at_zero = (0..=k_max)
                .map(|k| {
                    let j = kind.zero_order(k);
                    g.powi(j as i32) * u.get(j).copied().unwrap_or(0.0)
                })
                .collect();
            let at_eta = (0..=k_max)
                .map(|k| {
                    let j = 2 * k;
                    let s: f64 = (j..u.len()).map(|i| u[i] * e[i - j]).sum();
                    g.powi(j as i32) * s
                })
                .collect();
            BoundaryData { at_zero: Values::Float(at_zero), at_eta: Values::Float(at_eta) }
        }
    }
}

/// Closed form of `𝒟_q^j φ_n(x;a)` at zero or `η`, from
/// `𝒟_q^j φ_n(x;a) = (-2a)^j q^{j(j-1)/4} [n]_q!/[n-j]_q! φ_{n-j}(x; a q^{j/2})`.
pub fn phi_derivative_value(ctx: &QContext, n: usize, a: &Scalar, j: usize, at: &SpecialPoint) -> Result<Scalar> {
    if j > n {
        return Ok(Scalar::zero());
    }
    let q = ctx.q();
    let lead = pow(&(-int(2) * a), j as i64) * ctx.quarter_pow((j * (j.saturating_sub(1))) as i64) * q_factorial(n, q)
        / q_factorial(n - j, q);
    let b = a * ctx.quarter_pow(2 * j as i64);
    let mut prod = Scalar::one();
    let mut qi = Scalar::one();
    for _ in 0..n - j {
        match at {
            SpecialPoint::Zero => prod *= Scalar::one() + &b * &b * &qi * &qi,
            SpecialPoint::Eta => {
                let s = ctx.s();
                prod *= (Scalar::one() - &b * s * &qi) * (Scalar::one() - &b / s * &qi);
            }
            _ => return Err(Error::Domain("closed form available at zero and eta only".into())),
        }
        qi *= q;
    }
    Ok(lead * prod)
}

/// How the float assembly stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// All `k ≤ K` used.
    ReachedK,
    /// Two consecutive terms fell below the float tolerance on the grid.
    BelowTolerance { k: usize },
}

/// Difference between `f` and its expansion.
#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    /// Max abs coefficient of the exact difference.
    Exact(Scalar),
    /// Max over the grid.
    Float(f64),
}

impl Residual {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Residual::Exact(r) if r.is_zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Residual::Exact(r) => to_f64(r),
            Residual::Float(r) => *r,
        }
    }
}

/// Result of [`bernoulli_expansion`] or [`euler_expansion`].
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    pub kind: ExpansionKind,
    pub k_max: usize,
    /// Number of `k` values actually assembled.
    pub terms_used: usize,
    pub data: BoundaryData,
    pub tau: f64,
    /// Smallest positive zero of `S_q(η;·)` or `C_q(η;·)`.
    pub zero: Option<f64>,
    /// `min(1, zero)`.
    pub cap: f64,
    /// Exact reconstruction for polynomial input.
    pub reconstruction: Option<SymPoly>,
    /// Max abs value of term `k` on the default grid (float) or max abs coefficient (exact).
    pub term_sizes: Vec<f64>,
    pub residual: Residual,
    pub stop: StopReason,
    pub warnings: Vec<String>,
    f: EntireFn,
    ctx: QContext,
}

/// `{-1, -0.9, ..., 1}`.
pub fn default_grid() -> Vec<f64> {
    (-10..=10).map(|i| i as f64 / 10.0).collect()
}

fn basis_cached(ctx: &QContext, kind: BasisKind, k_max: usize) -> Result<Arc<Vec<SymPoly>>> {
    type Key = (BasisKind, Scalar, usize);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<SymPoly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind, ctx.s().clone(), k_max);
    if let Some(v) = cache.lock().expect("basis cache").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(lidstone_basis(ctx, kind, k_max)?);
    cache.lock().expect("basis cache").insert(key, v.clone());
    Ok(v)
}

/// Scalar generating-function factors in floating point.
struct FloatFactors {
    p: Vec<f64>,
    wm: Vec<f64>,
    wp: Vec<f64>,
    dminus: Vec<f64>,
    dplus: Vec<f64>,
}

impl FloatFactors {
    fn new(ctx: &QContext, order: usize) -> Self {
        let f = |s: Series<Scalar>| s.coeffs().iter().map(to_f64).collect::<Vec<f64>>();
        let wm = f(euler_factor_series(1, ctx.sqrt_q(), order + 1));
        let wp = f(euler_factor_series(-1, ctx.sqrt_q(), order + 1));
        let dminus = (0..order).map(|n| wp[n + 1] - wm[n + 1]).collect();
        let dplus = (0..order).map(|n| wp[n] + wm[n]).collect();
        FloatFactors {
            p: f(pochhammer_inf_series(ctx.q(), 2, &ctx.q_pow(2), order)),
            wm,
            wp,
            dminus,
            dplus,
        }
    }
}

fn fmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    (0..n).map(|m| (0..=m).map(|i| a[i] * b[m - i]).sum()).collect()
}

fn fdiv(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c: Vec<f64> = Vec::with_capacity(n);
    for m in 0..n {
        let s: f64 = (1..=m).map(|k| b[k] * c[m - k]).sum();
        c.push((a[m] - s) / b[0]);
    }
    c
}

/// Values of the two Lidstone bases of `kind` at `x`, `k = 0..=k_max`, from the
/// generating-function quotients in floating point. Returns (zero basis, eta basis).
pub fn float_basis_values(ctx: &QContext, kind: ExpansionKind, k_max: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let order = 2 * k_max + 2;
    let ff = FloatFactors::new(ctx, order);
    float_basis_values_with(ctx, &ff, kind, k_max, x)
}

fn float_basis_values_with(ctx: &QContext, ff: &FloatFactors, kind: ExpansionKind, k_max: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let order = 2 * k_max + 2;
    let q = ctx.q_f64();
    let g = to_f64(ctx.gamma());
    let e: Vec<f64> = (0..=order).map(|n| eval_chebyshev_f64(&scaled_rho_coeffs(q, n), x)).collect();
    let en: Vec<f64> = e.iter().enumerate().map(|(n, v)| if n % 2 == 0 { *v } else { -v }).collect();
    let pick = |c: &[f64], odd: bool| -> Vec<f64> {
        (0..=k_max)
            .map(|k| {
                let j = 2 * k + usize::from(odd);
                c[j] * g.powi(-(j as i32))
            })
            .collect()
    };
    // (Wm E(y) - Wp E(-y)), shared by B and M
    let mixed = |n: usize| -> Vec<f64> {
        let a = fmul(&ff.wm, &e, n);
        let b = fmul(&ff.wp, &en, n);
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    };
    match kind {
        ExpansionKind::Bernoulli => {
            let odd: Vec<f64> = (0..order).map(|m| e[m + 1] - en[m + 1]).collect();
            let a = fdiv(&fmul(&odd, &ff.p, order), &ff.dminus, order);
            let mx = mixed(order + 1);
            let b = fdiv(&mx[1..], &ff.dminus, order);
            (pick(&b, false), pick(&a, false))
        }
        ExpansionKind::Euler => {
            let m = fdiv(&mixed(order), &ff.dplus, order);
            let even: Vec<f64> = (0..order).map(|n| e[n] + en[n]).collect();
            let mt = fdiv(&fmul(&even, &ff.p, order), &ff.dplus, order);
            (pick(&m, true), pick(&mt, false))
        }
    }
}

/// Float evaluation of a stream.
pub fn eval_stream(q: f64, u: &[f64], x: f64) -> f64 {
    u.iter()
        .enumerate()
        .filter(|(_, uk)| **uk != 0.0)
        .map(|(k, uk)| uk * eval_chebyshev_f64(&scaled_rho_coeffs(q, k), x))
        .sum()
}

fn stream_table(q: f64, u: &[f64], grid: &[f64]) -> Vec<f64> {
    let tables: Vec<Vec<f64>> = (0..u.len()).into_par_iter().map(|k| if u[k] == 0.0 { Vec::new() } else { scaled_rho_coeffs(q, k) }).collect();
    grid.iter()
        .map(|&x| u.iter().zip(&tables).filter(|(uk, _)| **uk != 0.0).map(|(uk, c)| uk * eval_chebyshev_f64(c, x)).sum())
        .collect()
}

pub fn bernoulli_expansion(ctx: &QContext, f: &EntireFn, k_max: usize) -> Result<ExpansionReport> {
    expansion(ctx, f, k_max, ExpansionKind::Bernoulli)
}

pub fn euler_expansion(ctx: &QContext, f: &EntireFn, k_max: usize) -> Result<ExpansionReport> {
    expansion(ctx, f, k_max, ExpansionKind::Euler)
}

pub fn expand(ctx: &QContext, f: &EntireFn, k_max: usize, kind: ExpansionKind) -> Result<ExpansionReport> {
    expansion(ctx, f, k_max, kind)
}

fn expansion(ctx: &QContext, f: &EntireFn, k_max: usize, kind: ExpansionKind) -> Result<ExpansionReport> {
    let needed = 2 * k_max + 2;
    if needed > ctx.series_order() {
        return Err(Error::Capacity { what: "lidstone basis", needed, available: ctx.series_order() });
    }
    let data = aw_boundary_data(ctx, f, k_max, kind);
    let q = ctx.q_f64();
    let mut warnings = Vec::new();
    let zero = match positive_zeros(kind.zero_kind(), q, 1) {
        Ok(z) => Some(z[0].value),
        Err(e) => {
            warnings.push(format!("zero search failed: {e}"));
            None
        }
    };
    let cap = zero.map_or(1.0, |z| z.min(1.0));
    let tau = rho_expand(ctx, f).tau;
    if tau >= cap * (1.0 - 1e-12) {
        warnings.push(format!(
            "growth statistic tau = {tau:.6e} is not below the cap {cap:.6e}; the expansion need not converge to f"
        ));
    }
    let mut report = ExpansionReport {
        kind,
        k_max,
        terms_used: k_max + 1,
        data,
        tau,
        zero,
        cap,
        reconstruction: None,
        term_sizes: Vec::new(),
        residual: Residual::Float(0.0),
        stop: StopReason::ReachedK,
        warnings,
        f: f.clone(),
        ctx: ctx.clone(),
    };
    match (&report.data.at_zero, &report.data.at_eta, f) {
        (Values::Exact(z), Values::Exact(e), EntireFn::Poly(p)) => {
            let (zk, ek) = kind.bases();
            let zero_basis = basis_cached(ctx, zk, k_max)?;
            let eta_basis = basis_cached(ctx, ek, k_max)?;
            let sign = if kind.zero_sign() < 0.0 { -Scalar::one() } else { Scalar::one() };
            let terms: Vec<SymPoly> =
                (0..=k_max).map(|k| eta_basis[k].scale(&e[k]).add(&zero_basis[k].scale(&(&sign * &z[k])))).collect();
            report.term_sizes = terms.iter().map(|t| to_f64(&t.max_abs_coeff())).collect();
            let recon = terms.iter().fold(SymPoly::zero(), |acc, t| acc.add(t));
            report.residual = Residual::Exact(recon.sub(p).max_abs_coeff());
            report.reconstruction = Some(recon);
        }
        (Values::Float(z), Values::Float(e), _) => {
            let grid = default_grid();
            let ff = FloatFactors::new(ctx, 2 * k_max + 2);
            let values: Vec<(Vec<f64>, Vec<f64>)> =
                grid.par_iter().map(|&x| float_basis_values_with(ctx, &ff, kind, k_max, x)).collect();
            let tol = ctx.float_tol();
            let mut small = 0;
            for k in 0..=k_max {
                let size = values
                    .iter()
                    .map(|(zb, eb)| (kind.zero_sign() * z[k] * zb[k] + e[k] * eb[k]).abs())
                    .fold(0.0, f64::max);
                report.term_sizes.push(size);
                small = if size < tol { small + 1 } else { 0 };
                if small >= 2 && k < k_max {
                    report.terms_used = k + 1;
                    report.stop = StopReason::BelowTolerance { k };
                    break;
                }
            }
            report.residual = Residual::Float(report.residual_on(&grid)?.0);
        }
        _ => unreachable!("boundary data representation follows the input"),
    }
    Ok(report)
}

impl ExpansionReport {
    /// `f(x)` for the expanded function.
    pub fn eval_f(&self, x: f64) -> Result<f64> {
        Ok(match &self.f {
            EntireFn::Poly(p) => to_f64(&eval_at(&self.ctx, p, &SpecialPoint::RationalX(from_f64(x)?))),
            EntireFn::Stream(u) => eval_stream(self.ctx.q_f64(), u, x),
        })
    }

    /// Value of the truncated expansion at `x`.
    pub fn eval_expansion(&self, x: f64) -> Result<f64> {
        if let Some(r) = &self.reconstruction {
            return Ok(to_f64(&eval_at(&self.ctx, r, &SpecialPoint::RationalX(from_f64(x)?))));
        }
        let z = self.data.at_zero.to_f64();
        let e = self.data.at_eta.to_f64();
        let (zb, eb) = float_basis_values(&self.ctx, self.kind, self.k_max, x);
        Ok((0..self.terms_used).map(|k| self.kind.zero_sign() * z[k] * zb[k] + e[k] * eb[k]).sum())
    }

    /// Max `|f(x) - expansion(x)|` over `grid`; an empty grid gives zero with a warning.
    pub fn residual_on(&self, grid: &[f64]) -> Result<(f64, Option<String>)> {
        if grid.is_empty() {
            return Ok((0.0, Some("empty grid: residual is vacuous".into())));
        }
        let fvals = self.f_values(grid)?;
        let evals: Vec<f64> = grid.par_iter().map(|&x| self.eval_expansion(x)).collect::<Result<_>>()?;
        Ok((fvals.iter().zip(&evals).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max), None))
    }

    fn f_values(&self, grid: &[f64]) -> Result<Vec<f64>> {
        match &self.f {
            EntireFn::Stream(u) => Ok(stream_table(self.ctx.q_f64(), u, grid)),
            EntireFn::Poly(_) => grid.iter().map(|&x| self.eval_f(x)).collect(),
        }
    }

    /// Max `|f|` over `grid`.
    pub fn f_norm_on(&self, grid: &[f64]) -> Result<f64> {
        Ok(self.f_values(grid)?.iter().fold(0.0, |m, v| m.max(v.abs())))
    }

    pub fn has_warning(&self) -> bool {
        !self.warnings.is_empty()
    }
}

/// Residual of a report: exact coefficient norm for polynomial input, grid max otherwise.
pub fn residual(ctx: &QContext, report: &ExpansionReport, grid: &[f64]) -> Result<(Residual, Option<String>)> {
    if let Residual::Exact(r) = &report.residual {
        return Ok((Residual::Exact(r.clone()), None));
    }
    let _ = ctx;
    let (r, w) = report.residual_on(grid)?;
    Ok((Residual::Float(r), w))
}

/// Polynomial from exact rho coefficients.
pub fn poly_from_rho(ctx: &QContext, c: &[Scalar]) -> SymPoly {
    from_basis(ctx, c, Basis::Rho)
}

/// Largest `|c|` among exact values, as a rational.
pub fn max_abs_exact(v: &[Scalar]) -> Scalar {
    v.iter().map(|x| x.abs()).fold(Scalar::zero(), |m, x| if x > m { x } else { m })
}
