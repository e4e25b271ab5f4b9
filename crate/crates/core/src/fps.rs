//! Truncated formal power series with exact coefficients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qcore::{int, pow, q_pochhammer, QContext, Scalar};
use crate::symlaurent::{rho, eval_at, SpecialPoint, SymPoly};

/// Coefficient ring for [`Series`].
pub trait Coeff: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
    /// Multiplicative inverse if it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
    /// `self += a·c` in place.
    fn add_scaled(&mut self, a: &Self, c: &Scalar) {
        *self = self.plus(&a.scaled(c));
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self * c
    }
    fn try_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coeff for SymPoly {
    fn zero() -> Self {
        SymPoly::zero()
    }
    fn one() -> Self {
        SymPoly::one()
    }
    fn is_zero(&self) -> bool {
        SymPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn add_scaled(&mut self, a: &Self, c: &Scalar) {
        self.add_scaled_assign(a, c);
    }
    fn try_inverse(&self) -> Option<Self> {
        match self.as_constant() {
            Some(c) if !Zero::is_zero(&c) => Some(SymPoly::constant(c.recip())),
            _ => None,
        }
    }
}

/// Parity selector for [`Series::parity_part`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// `a_0 + a_1 w + ... + a_{N-1} w^{N-1} + O(w^N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Series<T> {
    /// Series of the given order; missing coefficients are zero, extra ones dropped.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order, T::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(T::one(), 0, order)
    }

    /// `c w^k`.
    pub fn monomial(c: T, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..order.min(self.order())].to_vec(), order.min(self.order()))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..n).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, T::plus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, T::minus)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(T::negated).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.scaled(c)).collect() }
    }

    /// Cauchy product truncated to the shared order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .into_par_iter()
            .map(|m| {
                (0..=m).fold(T::zero(), |acc, i| {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[m - i]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.plus(&a.times(b))
                    }
                })
            })
            .collect();
        Self { coeffs }
    }

    /// Product with a scalar series.
    pub fn mul_scalar(&self, other: &Series<Scalar>) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .into_par_iter()
            .map(|m| {
                let mut acc = T::zero();
                for i in 0..=m {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[m - i]);
                    if !a.is_zero() && !Zero::is_zero(b) {
                        acc.add_scaled(a, b);
                    }
                }
                acc
            })
            .collect();
        Self { coeffs }
    }

    /// `Q` with `Q · B = self` through the shared order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let inv = other.coeffs[0].try_inverse().ok_or(Error::NonInvertible)?;
        let mut q: Vec<T> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                let b = &other.coeffs[k];
                if !b.is_zero() && !q[m - k].is_zero() {
                    acc = acc.minus(&b.times(&q[m - k]));
                }
            }
            q.push(acc.times(&inv));
        }
        Ok(Self { coeffs: q })
    }

    /// Quotient by a scalar series.
    pub fn div_scalar(&self, other: &Series<Scalar>) -> Result<Self> {
        let n = self.order().min(other.order());
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let inv = other.coeffs[0].try_inverse().ok_or(Error::NonInvertible)?;
        let mut q: Vec<T> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                let b = &other.coeffs[k];
                if !Zero::is_zero(b) && !q[m - k].is_zero() {
                    acc.add_scaled(&q[m - k], &-b);
                }
            }
            q.push(acc.scaled(&inv));
        }
        Ok(Self { coeffs: q })
    }

    /// Keeps one parity class of coefficients.
    pub fn parity_part(&self, which: Parity) -> Self {
        let keep = match which {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == keep { a.clone() } else { T::zero() })
                .collect(),
        }
    }

    /// `a_k -> c^k a_k`, i.e. `A(c w)`.
    pub fn scale_arg(&self, c: &Scalar) -> Self {
        let mut ck = <Scalar as One>::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a.scaled(&ck);
                ck *= c;
                out
            })
            .collect();
        Self { coeffs }
    }

    /// `A(w) / w` for a series with vanishing constant term; the order drops by one.
    pub fn div_w(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(self.clone()),
            Some(a0) if a0.is_zero() => Ok(Self { coeffs: self.coeffs[1..].to_vec() }),
            Some(_) => Err(Error::Domain("cannot cancel w: constant term is nonzero".into())),
        }
    }

    /// `w · A(w)` keeping the order.
    pub fn mul_w(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order());
        if self.order() > 0 {
            coeffs.push(T::zero());
            coeffs.extend_from_slice(&self.coeffs[..self.order() - 1]);
        }
        Self { coeffs }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U + Sync + Send) -> Series<U> {
        Series { coeffs: self.coeffs.par_iter().map(f).collect() }
    }
}

impl Series<Scalar> {
    /// Promotes to polynomial coefficients.
    pub fn to_poly(&self) -> Series<SymPoly> {
        self.map(|c| SymPoly::constant(c.clone()))
    }

    /// Floating-point value at `w` of the truncated sum.
    pub fn eval_f64(&self, w: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * w + crate::qcore::to_f64(c))
    }
}

impl Series<SymPoly> {
    /// Evaluates every coefficient at a special point.
    pub fn eval_coeffs(&self, ctx: &QContext, pt: &SpecialPoint) -> Series<Scalar> {
        self.map(|p| eval_at(ctx, p, pt))
    }

    /// Applies `x -> -x` to every coefficient.
    pub fn reflect_coeffs(&self) -> Self {
        self.map(SymPoly::reflect)
    }
}

/// `(a w^power; base)_∞ = Σ_n (-a)^n base^{n(n-1)/2} w^{power·n} / (base; base)_n`.
pub fn pochhammer_inf_series(a: &Scalar, power: usize, base: &Scalar, order: usize) -> Series<Scalar> {
    assert!(power >= 1, "power must be positive");
    let mut out = vec![<Scalar as Zero>::zero(); order];
    let mut n = 0usize;
    while n * power < order {
        let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
        let num = sign * pow(a, n as i64) * pow(base, (n * n.saturating_sub(1) / 2) as i64);
        out[n * power] = num / q_pochhammer(base, base, n);
        n += 1;
    }
    Series::new(out, order)
}

/// `(sign · w; base)_∞` to the given order.
///
/// Uses the exact Euler expansion rather than a finite product: no finite
/// number of factors `1 - sign·base^k w` reproduces the low-order
/// coefficients exactly.
pub fn euler_factor_series(sign: i32, base: &Scalar, order: usize) -> Series<Scalar> {
    pochhammer_inf_series(&int(sign.signum() as i64), 1, base, order)
}

/// `𝓔_q(x; t) = Σ_n q^{n²/4} / (q;q)_n ρ_n(x) t^n`, cached per `s`.
pub fn eq_exponential_series(ctx: &QContext, order: usize) -> Series<SymPoly> {
    static CACHE: OnceLock<Mutex<HashMap<Scalar, Arc<Vec<SymPoly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("series cache").get(ctx.s()) {
        if hit.len() >= order {
            return Series::new(hit[..order].to_vec(), order);
        }
    }
    let coeffs: Vec<SymPoly> = (0..order)
        .into_par_iter()
        .map(|n| rho(ctx, n).scale(&(ctx.quarter_pow((n * n) as i64) / q_pochhammer(ctx.q(), ctx.q(), n))))
        .collect();
    let mut guard = cache.lock().expect("series cache");
    let slot = guard.entry(ctx.s().clone()).or_default();
    if slot.len() < coeffs.len() {
        *slot = Arc::new(coeffs.clone());
    }
    Series::new(coeffs, order)
}

/// `𝓔_q(η; t)` as a scalar series, from the product form
/// `(-t; q^{1/2})_∞ / (q t²; q²)_∞`.
pub fn eq_exponential_at_eta(ctx: &QContext, order: usize) -> Series<Scalar> {
    let num = euler_factor_series(-1, ctx.sqrt_q(), order);
    let den = pochhammer_inf_series(ctx.q(), 2, &ctx.q_pow(2), order);
    num.div(&den).expect("unit constant term")
}
