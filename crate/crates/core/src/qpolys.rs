//! The q-Bernoulli and q-Euler polynomial families, their numbers, the
//! Lidstone bases built from them, and an exact identity registry.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fps::{eq_exponential_series, euler_factor_series, pochhammer_inf_series, Series};
use crate::qcore::{int, pow, q_factorial, q_number, q_pochhammer, rat, QContext, Scalar};
use crate::symlaurent::{
    aw_derivative, eval_at, hermite, pair_pochhammer, q_translate, rho, SpecialPoint, SymPoly,
};

/// The four polynomial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// Suslov's q-Bernoulli polynomials `𝓑_n(x;q)`.
    SuslovB,
    /// `β_n(x;q)`, generated with the extra factor `(w; q^{1/2})_∞`.
    NewBeta,
    /// Suslov's q-Euler polynomials `𝓔_n(x;q)`.
    SuslovE,
    /// `Ẽ_n(x;q)`.
    NewE,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [Self::SuslovB, Self::NewBeta, Self::SuslovE, Self::NewE];

    pub fn name(self) -> &'static str {
        match self {
            Self::SuslovB => "suslov_B",
            Self::NewBeta => "new_beta",
            Self::SuslovE => "suslov_E",
            Self::NewE => "new_E",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}` (expected suslov_B, new_beta, suslov_E, new_E)")))
    }
}

/// Polynomials `P_0..P_N` of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFamilyTable {
    pub kind: FamilyKind,
    pub entries: Vec<SymPoly>,
}

/// Number sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumberKind {
    /// `β_n(q) = β_n(0;q)`.
    BetaQ,
    /// `𝓑_n(q)`, the value of `𝓑_n` at `-η`.
    SuslovBq,
    /// `B_n(q)` generated by `y / (e_q(y/2) E_q(y/2) - 1)` with `[n]_q!` normalization.
    ImBq,
    /// `𝓔_n(q)`, generated by `(w;q^{1/2})_∞ / ((-w;q^{1/2})_∞ + (w;q^{1/2})_∞)`.
    SuslovEq,
}

impl NumberKind {
    pub const ALL: [NumberKind; 4] = [Self::BetaQ, Self::SuslovBq, Self::ImBq, Self::SuslovEq];

    pub fn name(self) -> &'static str {
        match self {
            Self::BetaQ => "beta",
            Self::SuslovBq => "suslov_B",
            Self::ImBq => "im_B",
            Self::SuslovEq => "suslov_E",
        }
    }
}

impl std::str::FromStr for NumberKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown number kind `{s}` (expected beta, suslov_B, im_B, suslov_E)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumberTable {
    pub kind: NumberKind,
    pub values: Vec<Scalar>,
}

/// The two Lidstone basis pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    A,
    B,
    M,
    Mtilde,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [Self::A, Self::B, Self::M, Self::Mtilde];

    pub fn name(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::M => "M",
            Self::Mtilde => "Mtilde",
        }
    }
}

impl std::str::FromStr for BasisKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown basis `{s}` (expected A, B, M, Mtilde)")))
    }
}

/// Scalar series shared by all generating functions, each of order `order`.
struct Ingredients {
    /// `(q w²; q²)_∞`
    p: Series<Scalar>,
    /// `(w; q^{1/2})_∞`
    wm: Series<Scalar>,
    /// `(-w; q^{1/2})_∞`
    wp: Series<Scalar>,
    /// `((-w; q^{1/2})_∞ - (w; q^{1/2})_∞) / w`
    dminus: Series<Scalar>,
    /// `(-w; q^{1/2})_∞ + (w; q^{1/2})_∞`
    dplus: Series<Scalar>,
}

impl Ingredients {
    fn new(ctx: &QContext, order: usize) -> Self {
        let wm = euler_factor_series(1, ctx.sqrt_q(), order + 1);
        let wp = euler_factor_series(-1, ctx.sqrt_q(), order + 1);
        let dminus = wp.sub(&wm).div_w().expect("odd difference");
        Self {
            p: pochhammer_inf_series(ctx.q(), 2, &ctx.q_pow(2), order),
            dplus: wp.add(&wm).truncate(order),
            wm: wm.truncate(order),
            wp: wp.truncate(order),
            dminus,
        }
    }

    /// Scalar factor multiplying `𝓔_q(x;w)` in each family's generating function.
    fn family_factor(&self, kind: FamilyKind) -> Series<Scalar> {
        let q = |a: &Series<Scalar>, b: &Series<Scalar>| a.div(b).expect("unit constant term");
        match kind {
            FamilyKind::SuslovB => q(&self.p, &self.dminus),
            FamilyKind::NewBeta => q(&self.wm, &self.dminus),
            FamilyKind::SuslovE => q(&self.p, &self.dplus),
            FamilyKind::NewE => q(&self.wm, &self.dplus).scale(&int(2)),
        }
    }
}

fn check_budget(ctx: &QContext, what: &'static str, needed: usize) -> Result<()> {
    if needed > ctx.series_order() {
        return Err(Error::Capacity { what, needed, available: ctx.series_order() });
    }
    Ok(())
}

fn build_family_uncached(ctx: &QContext, kind: FamilyKind, n_max: usize) -> Vec<SymPoly> {
    let order = n_max + 1;
    let ing = Ingredients::new(ctx, order);
    eq_exponential_series(ctx, order).mul_scalar(&ing.family_factor(kind)).into_coeffs()
}

type CacheKey = (FamilyKind, Scalar);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Vec<SymPoly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Vec<SymPoly>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Family entries `0..=n_max`, shared through a process-wide cache keyed by `(kind, s)`.
pub fn family_entries(ctx: &QContext, kind: FamilyKind, n_max: usize) -> Result<Arc<Vec<SymPoly>>> {
    check_budget(ctx, "polynomial family", n_max + 1)?;
    let key = (kind, ctx.s().clone());
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        if hit.len() > n_max {
            return Ok(if hit.len() == n_max + 1 { hit.clone() } else { Arc::new(hit[..=n_max].to_vec()) });
        }
    }
    let built = Arc::new(build_family_uncached(ctx, kind, n_max));
    let mut guard = cache().lock().expect("cache lock");
    let slot = guard.entry(key).or_insert_with(|| built.clone());
    if slot.len() < built.len() {
        *slot = built.clone();
    }
    Ok(built)
}

/// Builds `P_0..P_{n_max}` of a family from its generating function.
pub fn build_family(ctx: &QContext, kind: FamilyKind, n_max: usize) -> Result<PolyFamilyTable> {
    let entries = family_entries(ctx, kind, n_max)?;
    Ok(PolyFamilyTable { kind, entries: entries.as_ref().clone() })
}

/// `𝓔_q(η; w)` through order `order`, obtained by evaluating the
/// `ρ`-expansion coefficients at `η`.
fn eta_exponential(ctx: &QContext, order: usize) -> Series<Scalar> {
    eq_exponential_series(ctx, order).eval_coeffs(ctx, &SpecialPoint::Eta)
}

fn number_series(ctx: &QContext, kind: NumberKind, n_max: usize) -> Vec<Scalar> {
    let order = n_max + 1;
    match kind {
        NumberKind::BetaQ => {
            // w 𝓔(η;-w) / (𝓔(η;w) - 𝓔(η;-w))
            let e = eta_exponential(ctx, order + 1);
            let e_neg = e.scale_arg(&int(-1));
            let den = e.sub(&e_neg).div_w().expect("odd difference");
            e_neg.truncate(order).div(&den).expect("unit").into_coeffs()
        }
        NumberKind::SuslovBq => {
            let ing = Ingredients::new(ctx, order);
            ing.wm.div(&ing.dminus).expect("unit").into_coeffs()
        }
        NumberKind::SuslovEq => {
            let ing = Ingredients::new(ctx, order);
            ing.wm.div(&ing.dplus).expect("unit").into_coeffs()
        }
        NumberKind::ImBq => {
            let q = ctx.q();
            let half = rat(1, 2);
            let little: Vec<Scalar> = (0..=order).map(|n| q_factorial(n, q).recip()).collect();
            let big: Vec<Scalar> = (0..=order)
                .map(|n| pow(q, (n * n.saturating_sub(1) / 2) as i64) / q_factorial(n, q))
                .collect();
            let e_small = Series::new(little, order + 1).scale_arg(&half);
            let e_big = Series::new(big, order + 1).scale_arg(&half);
            let den = e_small.mul(&e_big).sub(&Series::one(order + 1)).div_w().expect("vanishes at 0");
            let gen = Series::<Scalar>::one(order).div(&den).expect("unit");
            gen.into_coeffs().into_iter().enumerate().map(|(n, c)| c * q_factorial(n, q)).collect()
        }
    }
}

/// Number table, cross-checked exactly against the polynomial families.
pub fn build_numbers(ctx: &QContext, kind: NumberKind, n_max: usize) -> Result<NumberTable> {
    check_budget(ctx, "number table", n_max + 1)?;
    let values = number_series(ctx, kind, n_max);
    let cross: Option<Vec<Scalar>> = match kind {
        NumberKind::BetaQ => Some(
            family_entries(ctx, FamilyKind::NewBeta, n_max)?
                .iter()
                .map(|p| eval_at(ctx, p, &SpecialPoint::Zero))
                .collect(),
        ),
        NumberKind::SuslovBq => Some(
            family_entries(ctx, FamilyKind::SuslovB, n_max)?
                .iter()
                .map(|p| eval_at(ctx, p, &SpecialPoint::MinusEta))
                .collect(),
        ),
        NumberKind::SuslovEq => Some(
            family_entries(ctx, FamilyKind::SuslovE, n_max)?
                .iter()
                .map(|p| eval_at(ctx, p, &SpecialPoint::MinusEta))
                .collect(),
        ),
        NumberKind::ImBq => None,
    };
    if let Some(cross) = cross {
        if let Some(index) = (0..=n_max).find(|&n| cross[n] != values[n]) {
            return Err(Error::Integrity { what: format!("{} numbers vs polynomial values", kind.name()), index });
        }
    }
    Ok(NumberTable { kind, values })
}

/// Lidstone basis from the family tables (scaled by powers of `γ`).
fn basis_from_families(ctx: &QContext, kind: BasisKind, k_max: usize) -> Result<Vec<SymPoly>> {
    let g = ctx.gamma();
    let (family, odd) = match kind {
        BasisKind::A => (FamilyKind::SuslovB, true),
        BasisKind::B => (FamilyKind::NewBeta, true),
        BasisKind::M => (FamilyKind::NewE, true),
        BasisKind::Mtilde => (FamilyKind::SuslovE, false),
    };
    let entries = family_entries(ctx, family, 2 * k_max + 1)?;
    Ok((0..=k_max)
        .map(|k| {
            let idx = if odd { 2 * k + 1 } else { 2 * k };
            let c = match kind {
                BasisKind::A | BasisKind::B | BasisKind::Mtilde => int(2) * pow(g, -2 * k as i64),
                BasisKind::M => pow(g, -(2 * k as i64) - 1),
            };
            entries[idx].scale(&c)
        })
        .collect())
}

/// Lidstone basis straight from its own generating-function quotient.
fn basis_from_quotient(ctx: &QContext, kind: BasisKind, k_max: usize) -> Vec<SymPoly> {
    let order = 2 * k_max + 2;
    let ing = Ingredients::new(ctx, order);
    let e = eq_exponential_series(ctx, order + 1);
    let e_neg = e.scale_arg(&int(-1));
    let g = ctx.gamma();
    let series = match kind {
        // (qy²;q²)_∞ (𝓔(x;y) - 𝓔(x;-y)) / ((-y;√q)_∞ - (y;√q)_∞)
        BasisKind::A => e.sub(&e_neg).div_w().expect("odd").mul_scalar(&ing.p).div_scalar(&ing.dminus),
        // ((y;√q)_∞ 𝓔(x;y) - (-y;√q)_∞ 𝓔(x;-y)) / ((-y;√q)_∞ - (y;√q)_∞)
        BasisKind::B => {
            let wm = euler_factor_series(1, ctx.sqrt_q(), order + 1);
            let wp = euler_factor_series(-1, ctx.sqrt_q(), order + 1);
            e.mul_scalar(&wm).sub(&e_neg.mul_scalar(&wp)).div_w().expect("odd").div_scalar(&ing.dminus)
        }
        BasisKind::M => e
            .truncate(order)
            .mul_scalar(&ing.wm)
            .sub(&e_neg.truncate(order).mul_scalar(&ing.wp))
            .div_scalar(&ing.dplus),
        BasisKind::Mtilde => e.add(&e_neg).truncate(order).mul_scalar(&ing.p).div_scalar(&ing.dplus),
    }
    .expect("unit constant term");
    (0..=k_max)
        .map(|k| match kind {
            BasisKind::M => series.coeff(2 * k + 1).scale(&pow(g, -(2 * k as i64) - 1)),
            _ => series.coeff(2 * k).scale(&pow(g, -2 * k as i64)),
        })
        .collect()
}

/// Lidstone basis `0..=k_max`, built from the families and checked exactly
/// against the direct quotient.
pub fn lidstone_basis(ctx: &QContext, kind: BasisKind, k_max: usize) -> Result<Vec<SymPoly>> {
    let from_families = basis_from_families(ctx, kind, k_max)?;
    let direct = basis_from_quotient(ctx, kind, k_max);
    if let Some(index) = (0..=k_max).find(|&k| from_families[k] != direct[k]) {
        return Err(Error::Integrity { what: format!("lidstone basis {} (family vs quotient)", kind.name()), index });
    }
    Ok(from_families)
}

/// `H_n(x|q)` rebuilt from the `𝓑` family.
pub fn hermite_from_bernoulli(ctx: &QContext, n: usize) -> Result<SymPoly> {
    let b = family_entries(ctx, FamilyKind::SuslovB, n)?;
    let base = ctx.sqrt_q();
    let mut acc = SymPoly::zero();
    for k in 0..=n / 2 {
        let c = ctx.quarter_pow((4 * k * k + 2 * k) as i64) / q_pochhammer(base, base, 2 * k + 1);
        acc = acc.add(&b[n - 2 * k].scale(&c));
    }
    let pref = int(2) * ctx.quarter_pow(-((n * n) as i64)) * q_pochhammer(ctx.q(), ctx.q(), n);
    Ok(acc.scale(&pref))
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Side {
    Poly(SymPoly),
    Num(Scalar),
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Poly(p) => write!(f, "{p:?}"),
            Side::Num(c) => write!(f, "{c}"),
        }
    }
}

/// First discrepancy of a failed identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityFailure {
    pub index: usize,
    pub lhs: Side,
    pub rhs: Side,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub n_max: usize,
    /// Pass flag for every checked index.
    pub per_index: Vec<bool>,
    pub failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Registered identity names.
pub const IDENTITY_NAMES: &[&str] = &[
    "ladder",
    "connection_beta_from_suslov",
    "connection_suslov_from_beta",
    "reflection_suslov",
    "reflection_beta",
    "suslov_from_numbers",
    "beta_rho_expansion",
    "hermite_from_bernoulli",
    "q_square_relation",
    "translation_bernoulli",
    "translation_euler",
    "numbers_agree",
    "euler_numbers_agree",
    "bernoulli_decomposition",
    "euler_decomposition",
    "hermite_generating",
    "eta_product",
    "lidstone_ladders",
    "lidstone_boundary",
];

type Pairs = Vec<(Side, Side)>;

fn polys(l: impl IntoIterator<Item = SymPoly>, r: impl IntoIterator<Item = SymPoly>) -> Pairs {
    l.into_iter().zip(r).map(|(a, b)| (Side::Poly(a), Side::Poly(b))).collect()
}

fn nums(l: impl IntoIterator<Item = Scalar>, r: impl IntoIterator<Item = Scalar>) -> Pairs {
    l.into_iter().zip(r).map(|(a, b)| (Side::Num(a), Side::Num(b))).collect()
}

fn sign(n: usize) -> Scalar {
    if n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `Σ_k c_k P_{n-k}` for `n = 0..=n_max`.
fn convolve(c: &[Scalar], p: &[SymPoly], n_max: usize) -> Vec<SymPoly> {
    (0..=n_max)
        .map(|n| (0..=n).fold(SymPoly::zero(), |acc, k| acc.add(&p[n - k].scale(&c[k]))))
        .collect()
}

fn identity_pairs(ctx: &QContext, name: &str, n: usize) -> Result<Pairs> {
    let fam = |k| family_entries(ctx, k, n);
    let q = ctx.q();
    let sq = ctx.sqrt_q();
    let qq = |k: usize| q_pochhammer(q, q, k);
    Ok(match name {
        "ladder" => {
            let g = ctx.gamma();
            let mut out = Vec::new();
            for kind in FamilyKind::ALL {
                let e = fam(kind)?;
                out.extend(polys(
                    (1..=n).map(|m| aw_derivative(ctx, &e[m], 1)),
                    (1..=n).map(|m| e[m - 1].scale(g)),
                ));
            }
            out
        }
        "connection_beta_from_suslov" => {
            let c: Vec<Scalar> = (0..=n)
                .map(|k| q_pochhammer(&-sq.recip(), q, k) / qq(k) * pow(&-sq.clone(), k as i64))
                .collect();
            polys(fam(FamilyKind::NewBeta)?.iter().cloned(), convolve(&c, &fam(FamilyKind::SuslovB)?, n))
        }
        "connection_suslov_from_beta" => {
            let c: Vec<Scalar> = (0..=n).map(|k| q_pochhammer(&-sq.clone(), q, k) / qq(k)).collect();
            polys(fam(FamilyKind::SuslovB)?.iter().cloned(), convolve(&c, &fam(FamilyKind::NewBeta)?, n))
        }
        "reflection_suslov" => {
            let b = fam(FamilyKind::SuslovB)?;
            polys(b.iter().map(SymPoly::reflect), b.iter().enumerate().map(|(m, p)| p.scale(&sign(m))))
        }
        "reflection_beta" => {
            let b = fam(FamilyKind::NewBeta)?;
            let c: Vec<Scalar> = (0..=n).map(|k| q_pochhammer(&int(-1), sq, k) / q_pochhammer(sq, sq, k)).collect();
            let rhs = convolve(&c, &b, n).into_iter().enumerate().map(|(m, p)| p.scale(&sign(m)));
            polys(b.iter().map(SymPoly::reflect), rhs)
        }
        "suslov_from_numbers" => {
            // 𝓑_n(x) = (-1)^n Σ_k β_{n-k}(q) (q^{1/4}z, q^{1/4}/z; q^{1/2})_k / (q;q)_k
            let beta = build_numbers(ctx, NumberKind::BetaQ, n)?.values;
            let rhs = (0..=n).map(|m| {
                (0..=m)
                    .fold(SymPoly::zero(), |acc, k| {
                        acc.add(&pair_pochhammer(ctx.s(), sq, k).scale(&(&beta[m - k] / qq(k))))
                    })
                    .scale(&sign(m))
            });
            polys(fam(FamilyKind::SuslovB)?.iter().cloned(), rhs.collect::<Vec<_>>())
        }
        "beta_rho_expansion" => {
            let beta = build_numbers(ctx, NumberKind::BetaQ, n)?.values;
            let psi_rho: Vec<SymPoly> =
                (0..=n).map(|k| rho(ctx, k).scale(&(ctx.quarter_pow((k * k) as i64) / qq(k)))).collect();
            let rhs = (0..=n).map(|m| (0..=m).fold(SymPoly::zero(), |acc, k| acc.add(&psi_rho[k].scale(&beta[m - k]))));
            polys(fam(FamilyKind::NewBeta)?.iter().cloned(), rhs.collect::<Vec<_>>())
        }
        "hermite_from_bernoulli" => {
            let lhs: Vec<SymPoly> = (0..=n).map(|m| hermite(ctx, m)).collect();
            let rhs = (0..=n).map(|m| hermite_from_bernoulli(ctx, m)).collect::<Result<Vec<_>>>()?;
            polys(lhs, rhs)
        }
        "q_square_relation" => {
            let c2 = ctx.squared().with_series_order(ctx.series_order());
            let im = build_numbers(ctx, NumberKind::ImBq, n)?.values;
            let suslov = build_numbers(&c2, NumberKind::SuslovBq, n)?.values;
            let beta = build_numbers(&c2, NumberKind::BetaQ, n)?.values;
            let rhs: Vec<Scalar> = (0..=n)
                .map(|m| &im[m] * pow(&int(2), m as i64 - 1) * (int(1) - q) / qq(m))
                .collect();
            let mut out = nums(suslov, rhs.clone());
            out.extend(nums(beta, rhs));
            out
        }
        "translation_bernoulli" => polys(
            fam(FamilyKind::SuslovB)?.iter().map(|p| q_translate(ctx, p, &SpecialPoint::MinusEta)).collect::<Vec<_>>(),
            fam(FamilyKind::NewBeta)?.iter().cloned(),
        ),
        "translation_euler" => polys(
            fam(FamilyKind::SuslovE)?.iter().map(|p| q_translate(ctx, p, &SpecialPoint::MinusEta)).collect::<Vec<_>>(),
            fam(FamilyKind::NewE)?.iter().map(|p| p.scale(&rat(1, 2))),
        ),
        "numbers_agree" => {
            let a = build_numbers(ctx, NumberKind::SuslovBq, n)?.values;
            let b = build_numbers(ctx, NumberKind::BetaQ, n)?.values;
            let at_minus_eta = fam(FamilyKind::SuslovB)?.iter().map(|p| eval_at(ctx, p, &SpecialPoint::MinusEta)).collect::<Vec<_>>();
            let at_zero = fam(FamilyKind::NewBeta)?.iter().map(|p| eval_at(ctx, p, &SpecialPoint::Zero)).collect::<Vec<_>>();
            let mut out = nums(a, b.clone());
            out.extend(nums(at_minus_eta, at_zero));
            out
        }
        "euler_numbers_agree" => {
            let num = build_numbers(ctx, NumberKind::SuslovEq, n)?.values;
            let at_minus_eta = fam(FamilyKind::SuslovE)?.iter().map(|p| eval_at(ctx, p, &SpecialPoint::MinusEta)).collect::<Vec<_>>();
            let half_at_zero = fam(FamilyKind::NewE)?.iter().map(|p| eval_at(ctx, p, &SpecialPoint::Zero) / int(2)).collect::<Vec<_>>();
            let mut out = nums(at_minus_eta.clone(), half_at_zero);
            out.extend(nums(num, at_minus_eta));
            out
        }
        "bernoulli_decomposition" | "euler_decomposition" => {
            let order = n.max(10) + 1;
            let k_max = order / 2;
            let g = ctx.gamma();
            let eta = eta_exponential(ctx, order);
            let place = |basis: &[SymPoly], odd: bool| -> Series<SymPoly> {
                let mut c = vec![SymPoly::zero(); order];
                for (k, b) in basis.iter().enumerate() {
                    let i = if odd { 2 * k + 1 } else { 2 * k };
                    if i < order {
                        c[i] = b.scale(&pow(g, i as i64));
                    }
                }
                Series::new(c, order)
            };
            let rhs = if name == "bernoulli_decomposition" {
                let a = lidstone_basis(ctx, BasisKind::A, k_max)?;
                let b = lidstone_basis(ctx, BasisKind::B, k_max)?;
                place(&a, false).mul_scalar(&eta).sub(&place(&b, false))
            } else {
                let m = lidstone_basis(ctx, BasisKind::M, k_max)?;
                let mt = lidstone_basis(ctx, BasisKind::Mtilde, k_max)?;
                place(&m, true).add(&place(&mt, false).mul_scalar(&eta))
            };
            polys(eq_exponential_series(ctx, order).into_coeffs(), rhs.into_coeffs())
        }
        "hermite_generating" => {
            let order = n.max(10) + 1;
            let p = pochhammer_inf_series(q, 2, &ctx.q_pow(2), order);
            let lhs = eq_exponential_series(ctx, order).mul_scalar(&p);
            let rhs = (0..order).map(|m| hermite(ctx, m).scale(&(ctx.quarter_pow((m * m) as i64) / qq(m))));
            polys(lhs.into_coeffs(), rhs.collect::<Vec<_>>())
        }
        "eta_product" => {
            // 𝓔(η;w) = (-w;√q)_∞ / (qw²;q²)_∞ and its q-binomial form
            let order = n + 1;
            let lhs = eta_exponential(ctx, order);
            let prod = crate::fps::eq_exponential_at_eta(ctx, order);
            let binom = (0..order).map(|m| q_pochhammer(&-sq.recip(), q, m) / qq(m) * pow(sq, m as i64));
            let mut out = nums(lhs.coeffs().to_vec(), prod.into_coeffs());
            out.extend(nums(lhs.into_coeffs(), binom.collect::<Vec<_>>()));
            out
        }
        "lidstone_ladders" => {
            let k_max = n / 2;
            let mut out = Vec::new();
            for kind in BasisKind::ALL {
                let b = lidstone_basis(ctx, kind, k_max)?;
                out.extend(polys((1..=k_max).map(|k| aw_derivative(ctx, &b[k], 2)), (1..=k_max).map(|k| b[k - 1].clone())));
            }
            out
        }
        "lidstone_boundary" => {
            let k_max = n / 2;
            let a = lidstone_basis(ctx, BasisKind::A, k_max)?;
            let b = lidstone_basis(ctx, BasisKind::B, k_max)?;
            let m = lidstone_basis(ctx, BasisKind::M, k_max)?;
            let mt = lidstone_basis(ctx, BasisKind::Mtilde, k_max)?;
            let delta = |k: usize| if k == 0 { int(1) } else { int(0) };
            let z = SpecialPoint::Zero;
            let e = SpecialPoint::Eta;
            let mut out = Vec::new();
            for k in 0..=k_max {
                out.push((Side::Num(eval_at(ctx, &a[k], &z)), Side::Num(int(0))));
                out.push((Side::Num(eval_at(ctx, &a[k], &e)), Side::Num(delta(k))));
                out.push((Side::Num(eval_at(ctx, &b[k], &z)), Side::Num(-delta(k))));
                out.push((Side::Num(eval_at(ctx, &b[k], &e)), Side::Num(int(0))));
                out.push((Side::Num(eval_at(ctx, &aw_derivative(ctx, &m[k], 1), &z)), Side::Num(delta(k))));
                out.push((Side::Num(eval_at(ctx, &m[k], &e)), Side::Num(int(0))));
                out.push((Side::Num(eval_at(ctx, &aw_derivative(ctx, &mt[k], 1), &z)), Side::Num(int(0))));
                out.push((Side::Num(eval_at(ctx, &mt[k], &e)), Side::Num(delta(k))));
            }
            out.push((Side::Poly(a[0].sub(&b[0])), Side::Poly(SymPoly::one())));
            out
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    })
}

/// Evaluates both sides of a registered identity for every index up to `n_max`.
pub fn check_identity(ctx: &QContext, name: &str, n_max: usize) -> Result<IdentityReport> {
    let key = IDENTITY_NAMES
        .iter()
        .copied()
        .find(|k| *k == name)
        .ok_or_else(|| Error::UnknownIdentity(name.to_string()))?;
    let pairs = identity_pairs(ctx, key, n_max)?;
    let per_index: Vec<bool> = pairs.iter().map(|(l, r)| l == r).collect();
    let failure = per_index.iter().position(|ok| !ok).map(|index| IdentityFailure {
        index,
        lhs: pairs[index].0.clone(),
        rhs: pairs[index].1.clone(),
    });
    Ok(IdentityReport { name: key, n_max, per_index, failure })
}

/// Runs the whole registry in parallel; reports come back in registry order.
pub fn check_all(ctx: &QContext, n_max: usize) -> Result<Vec<IdentityReport>> {
    IDENTITY_NAMES.par_iter().map(|name| check_identity(ctx, name, n_max)).collect()
}

/// `(-1)^{n-1} β_{2n}(q) > 0` and `β_{2n+1}(q) = 0` for `1 ≤ n ≤ n_max`.
pub fn beta_number_signs(ctx: &QContext, n_max: usize) -> Result<bool> {
    let b = build_numbers(ctx, NumberKind::BetaQ, 2 * n_max + 1)?.values;
    Ok((1..=n_max).all(|n| b[2 * n + 1].is_zero() && (sign(n - 1) * &b[2 * n]).is_positive()))
}

/// `q[2]_q / (4 [3]_q)`.
pub fn im_b2_closed_form(ctx: &QContext) -> Scalar {
    ctx.q() * q_number(2, ctx.q()) / (int(4) * q_number(3, ctx.q()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctxs() -> Vec<QContext> {
        vec![QContext::new(rat(1, 2)).unwrap(), QContext::new(rat(3, 5)).unwrap()]
    }

    #[test]
    fn degrees_and_first_values() {
        for ctx in ctxs() {
            for kind in FamilyKind::ALL {
                let t = build_family(&ctx, kind, 6).unwrap();
                for (n, p) in t.entries.iter().enumerate() {
                    assert_eq!(p.degree(), Some(n), "{kind:?} {n}");
                }
            }
            let beta = build_family(&ctx, FamilyKind::NewBeta, 2).unwrap().entries;
            assert_eq!(beta[0], SymPoly::constant((int(1) - ctx.sqrt_q()) / int(2)));
            assert_eq!(eval_at(&ctx, &beta[1], &SpecialPoint::Zero), rat(-1, 2));
        }
    }

    #[test]
    fn number_facts() {
        for ctx in ctxs() {
            let b = build_numbers(&ctx, NumberKind::BetaQ, 11).unwrap().values;
            assert_eq!(b[0], (int(1) - ctx.sqrt_q()) / int(2));
            assert_eq!(b[1], rat(-1, 2));
            let s3 = pow(ctx.sqrt_q(), 3);
            assert_eq!(b[2], ctx.sqrt_q() / (int(2) * (int(1) - s3)));
            assert!(b[3].is_zero());
            assert!(beta_number_signs(&ctx, 5).unwrap());
            let im = build_numbers(&ctx, NumberKind::ImBq, 4).unwrap().values;
            assert_eq!(im[0], int(1));
            assert_eq!(im[1], rat(-1, 2));
            assert_eq!(im[2], im_b2_closed_form(&ctx));
            assert!(im[3].is_zero());
        }
    }

    #[test]
    fn im_b4_closed_form() {
        let ctx = &ctxs()[0];
        let q = ctx.q();
        let im = build_numbers(ctx, NumberKind::ImBq, 4).unwrap().values;
        let expect = -pow(q, 4) / int(16) * q_pochhammer(&-q.clone(), q, 2) * q_number(2, q)
            / (q_number(3, q) * q_number(5, q));
        assert_eq!(im[4], expect);
    }

    #[test]
    fn all_identities_pass() {
        for ctx in ctxs() {
            for r in check_all(&ctx, 6).unwrap() {
                assert!(r.passed(), "{} failed: {:?}", r.name, r.failure);
            }
        }
    }

    #[test]
    fn unknown_identity() {
        let ctx = &ctxs()[0];
        assert_eq!(check_identity(ctx, "nope", 3), Err(Error::UnknownIdentity("nope".into())));
    }

    #[test]
    fn hermite_rebuilt() {
        let ctx = &ctxs()[0];
        assert_eq!(hermite_from_bernoulli(ctx, 0).unwrap(), SymPoly::one());
        assert_eq!(hermite_from_bernoulli(ctx, 2).unwrap(), hermite(ctx, 2));
    }

    #[test]
    fn basis_constant_terms() {
        let ctx = &ctxs()[1];
        let a = lidstone_basis(ctx, BasisKind::A, 2).unwrap();
        let b = lidstone_basis(ctx, BasisKind::B, 2).unwrap();
        assert_eq!(a[0].sub(&b[0]), SymPoly::one());
        assert_eq!(eval_at(ctx, &b[0], &SpecialPoint::Zero), int(-1));
        assert_eq!(lidstone_basis(ctx, BasisKind::Mtilde, 0).unwrap()[0], SymPoly::one());
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = QContext::new(rat(1, 2)).unwrap().with_series_order(8);
        assert!(matches!(build_family(&ctx, FamilyKind::SuslovB, 10), Err(Error::Capacity { .. })));
    }
}
