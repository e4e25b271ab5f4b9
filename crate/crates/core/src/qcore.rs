//! Exact scalar arithmetic in the base parameter `s = q^{1/4}` and the
//! q-combinatorial primitives shared by every other module.
//!
//! All quantities that appear with fractional powers of `q` (`q^{1/2}`,
//! `q^{1/4}`, the node `eta` and the scale `gamma`) are rational functions of
//! `s`, so choosing `s` rational keeps every identity exactly checkable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Scalar = BigRational;

/// Default truncation order for scalar series.
pub const DEFAULT_SERIES_ORDER: usize = 64;
/// Default tolerance for floating-point work.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-12;

/// Builds the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer power with possibly negative exponent. `pow(0, e)` for `e < 0`
/// panics, as does division by zero.
pub fn pow(base: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        Pow::pow(base, e as u64)
    } else {
        Pow::pow(base.recip(), e.unsigned_abs())
    }
}

/// Parses `"3/5"`, `"-2"` or `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational number (expected e.g. 1/2, 3, 0.25)"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("`{text}` has a zero denominator")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = Pow::pow(BigInt::from(10), frac.len() as u32);
        let v = BigRational::new(n, d);
        return Ok(if negative { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Lossy conversion to `f64`.
pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite `f64` into a rational.
pub fn from_f64(x: f64) -> Result<Scalar> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

/// Read-only parameters shared by all exact computations.
#[derive(Debug, Clone, PartialEq)]
pub struct QContext {
    s: Scalar,
    q: Scalar,
    sqrt_q: Scalar,
    eta: Scalar,
    gamma: Scalar,
    series_order: usize,
    float_tol: f64,
}

impl QContext {
    /// Context for `q = s^4` with `0 < s < 1`.
    pub fn new(s: Scalar) -> Result<Self> {
        if !s.is_positive() || s >= Scalar::one() {
            return Err(Error::Domain(format!("s = {s} must satisfy 0 < s < 1")));
        }
        let sqrt_q = &s * &s;
        let q = &sqrt_q * &sqrt_q;
        let eta = (&s + s.recip()) / int(2);
        // 𝒟_q 𝓔_q(x;y) = gamma * y * 𝓔_q(x;y)
        let gamma = (int(2) * &s) / (Scalar::one() - &q);
        Ok(Self {
            s,
            q,
            sqrt_q,
            eta,
            gamma,
            series_order: DEFAULT_SERIES_ORDER,
            float_tol: DEFAULT_FLOAT_TOL,
        })
    }

    /// Context from `q` itself; `q` must be the fourth power of a rational.
    pub fn from_q(q: Scalar) -> Result<Self> {
        if !q.is_positive() || q >= Scalar::one() {
            return Err(Error::Domain(format!("q = {q} must satisfy 0 < q < 1")));
        }
        let root = |n: &BigInt| -> Option<BigInt> {
            let r = n.nth_root(4);
            (Pow::pow(&r, 4u32) == *n).then_some(r)
        };
        match (root(q.numer()), root(q.denom())) {
            (Some(a), Some(b)) => Self::new(BigRational::new(a, b)),
            _ => Err(Error::Domain(format!(
                "q = {q} is not the fourth power of a rational; pass s = q^(1/4) instead"
            ))),
        }
    }

    pub fn with_series_order(mut self, order: usize) -> Self {
        self.series_order = order.max(1);
        self
    }

    pub fn with_float_tol(mut self, tol: f64) -> Self {
        self.float_tol = tol;
        self
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn sqrt_q(&self) -> &Scalar {
        &self.sqrt_q
    }

    /// `(q^{1/4} + q^{-1/4}) / 2`.
    pub fn eta(&self) -> &Scalar {
        &self.eta
    }

    /// `2 q^{1/4} / (1 - q)`, the eigenvalue scale of the Askey-Wilson
    /// operator on the q-exponential.
    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn series_order(&self) -> usize {
        self.series_order
    }

    pub fn float_tol(&self) -> f64 {
        self.float_tol
    }

    /// `q^{k/4} = s^k`.
    pub fn quarter_pow(&self, k: i64) -> Scalar {
        pow(&self.s, k)
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        pow(&self.q, k)
    }

    pub fn q_f64(&self) -> f64 {
        to_f64(&self.q)
    }

    /// The context for `q^2` (i.e. `s^2`).
    pub fn squared(&self) -> Self {
        let mut c = Self::new(&self.s * &self.s).expect("0 < s^2 < 1");
        c.series_order = self.series_order;
        c.float_tol = self.float_tol;
        c
    }
}

/// `[n]_base = 1 + base + ... + base^{n-1}`; equals `n` when `base = 1`.
pub fn q_number(n: usize, base: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    let mut term = Scalar::one();
    for _ in 0..n {
        acc += &term;
        term *= base;
    }
    acc
}

/// `[n]_base! = [1][2]...[n]`.
pub fn q_factorial(n: usize, base: &Scalar) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * q_number(k, base))
}

/// `(a; base)_n = prod_{k<n} (1 - a base^k)`.
pub fn q_pochhammer(a: &Scalar, base: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut ak = a.clone();
    for _ in 0..n {
        acc *= Scalar::one() - &ak;
        ak *= base;
    }
    acc
}

/// Gaussian binomial coefficient `[n choose k]_base`.
pub fn q_binomial(n: usize, k: usize, base: &Scalar) -> Result<Scalar> {
    if k > n {
        return Err(Error::Domain(format!("q_binomial needs 0 <= k <= n, got n = {n}, k = {k}")));
    }
    // [j]_base vanishes only at base = -1 among rationals other than 1; use Pascal there
    if *base == -Scalar::one() {
        let mut row = vec![Scalar::one()];
        for m in 1..=n {
            let mut next = vec![Scalar::one(); m + 1];
            for j in 1..m {
                next[j] = &row[j - 1] + pow(base, j as i64) * &row[j];
            }
            row = next;
        }
        return Ok(row[k].clone());
    }
    let mut acc = Scalar::one();
    for j in 1..=k {
        acc *= q_number(n - k + j, base);
        acc /= q_number(j, base);
    }
    Ok(acc)
}

/// Truncated value of `(a; base)_∞` together with the number of factors used.
///
/// The factor count `N` is the first one for which the tail bound
/// `sum_{k>=N} |a| base^k / (1 - |a| base^k)`, scaled by the partial product
/// when that exceeds one, drops below `tol`.
pub fn q_pochhammer_inf(a: f64, base: f64, tol: f64) -> Result<(f64, usize)> {
    if base.is_nan() || base.abs() >= 1.0 {
        return Err(Error::Domain(format!("|base| = {} must be < 1", base.abs())));
    }
    let b = base.abs();
    let mut prod = 1.0f64;
    let mut ak = a;
    let mut n = 0usize;
    loop {
        let t = ak.abs();
        if t < 1.0 && t / ((1.0 - b) * (1.0 - t)) * prod.abs().max(1.0) < tol {
            return Ok((prod, n));
        }
        let factor = 1.0 - ak;
        if factor == 0.0 {
            return Err(Error::Pole { index: n });
        }
        prod *= factor;
        ak *= base;
        n += 1;
        if n > 100_000 {
            return Err(Error::Domain("infinite product did not reach its tail bound".into()));
        }
    }
}

/// `(a; base)_n` in floating point.
pub fn q_pochhammer_f64(a: f64, base: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    let mut ak = a;
    for _ in 0..n {
        acc *= 1.0 - ak;
        ak *= base;
    }
    acc
}
