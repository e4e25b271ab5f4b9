//! Polynomials in `x = cos θ` stored through their symmetric Laurent form in
//! `z = e^{iθ}`: `f(x) = c_0 + Σ_{k≥1} c_k (z^k + z^{-k})`.
//!
//! The Askey-Wilson operator acts diagonally on `z^k + z^{-k}` up to a
//! Chebyshev-U factor, so on this representation it is an exact coefficient
//! map with no pointwise division.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qcore::{int, pow, q_binomial, q_pochhammer, QContext, Scalar};

/// Polynomial in `x` as symmetric Laurent coefficients `c_0..c_d`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymPoly {
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl SymPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// `x = (z + 1/z) / 2`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Scalar::zero(), crate::qcore::rat(1, 2)])
    }

    /// From symmetric coefficients `c_0..c_d`; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From the coefficients of a Laurent polynomial in `z` given with its
    /// lowest power `-half`. The input must be symmetric.
    fn from_laurent(laurent: &[Scalar], half: usize) -> Self {
        debug_assert_eq!(laurent.len(), 2 * half + 1);
        debug_assert!((0..=half).all(|k| laurent[half + k] == laurent[half - k]), "not symmetric");
        Self::from_coeffs(laurent[half..].to_vec())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `c_k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The constant value when the polynomial has degree 0 (or is zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.coeffs.len() {
            0 => Some(Scalar::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    /// `self += a·c` without reallocating.
    pub fn add_scaled_assign(&mut self, a: &Self, c: &Scalar) {
        if c.is_zero() || a.is_zero() {
            return;
        }
        if self.coeffs.len() < a.coeffs.len() {
            self.coeffs.resize(a.coeffs.len(), Scalar::zero());
        }
        for (dst, src) in self.coeffs.iter_mut().zip(&a.coeffs) {
            if !src.is_zero() {
                *dst += src * c;
            }
        }
        while self.coeffs.last().is_some_and(|x| x.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (da, db) = (self.coeffs.len() - 1, other.coeffs.len() - 1);
        let mut out = vec![Scalar::zero(); da + db + 1];
        // a_m = c_|m| on both sides; only non-negative output indices are kept.
        for i in -(da as i64)..=(da as i64) {
            let a = &self.coeffs[i.unsigned_abs() as usize];
            if a.is_zero() {
                continue;
            }
            for j in -(db as i64)..=(db as i64) {
                let m = i + j;
                if m < 0 {
                    continue;
                }
                let b = &other.coeffs[j.unsigned_abs() as usize];
                if !b.is_zero() {
                    out[m as usize] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// `f(-x)`: `z -> -z` flips the sign of odd coefficients.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Builds `Σ a_n x^n` from monomial coefficients.
    pub fn from_monomial(coeffs: &[Scalar]) -> Self {
        let x = Self::x();
        coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(&x).add(&Self::constant(c.clone())))
    }

    /// Largest absolute coefficient (exact norm used for residuals).
    pub fn max_abs_coeff(&self) -> Scalar {
        self.coeffs
            .iter()
            .map(num_traits::Signed::abs)
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    /// Floating-point evaluation at real `x ∈ [-1, 1]` (Clenshaw on `2 T_k`).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let c: Vec<f64> = self.coeffs.iter().map(crate::qcore::to_f64).collect();
        eval_chebyshev_f64(&c, x)
    }
}

/// Evaluates `c_0 + Σ c_k (z^k + z^{-k})` at `x = (z + 1/z)/2` with Clenshaw's
/// recurrence for `Σ c_k 2 T_k(x)`.
pub fn eval_chebyshev_f64(c: &[f64], x: f64) -> f64 {
    if c.is_empty() {
        return 0.0;
    }
    let (mut b1, mut b2) = (0.0, 0.0);
    for k in (1..c.len()).rev() {
        let b0 = 2.0 * c[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    // Σ_{k≥1} 2 c_k T_k(x) = x b1 - b2 with the factor 2 folded into b
    c[0] + x * b1 - b2
}

/// Evaluation points with exact values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialPoint {
    /// `x = 0`, `z = i`.
    Zero,
    /// `x = eta`, `z = 1/s`.
    Eta,
    /// `x = -eta`, `z = -1/s`.
    MinusEta,
    /// Any rational `x`.
    RationalX(Scalar),
}

/// Polynomial families with a closed construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialFamily {
    Monomial,
    Rho,
    Hermite,
    Phi,
    G,
}

/// Degree-graded bases for [`change_basis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    Rho,
    Hermite,
}

impl From<Basis> for SpecialFamily {
    fn from(b: Basis) -> Self {
        match b {
            Basis::Monomial => SpecialFamily::Monomial,
            Basis::Rho => SpecialFamily::Rho,
            Basis::Hermite => SpecialFamily::Hermite,
        }
    }
}

/// Multiplies an ordinary polynomial in `z` (coefficients from `z^0`) by
/// `1 + c z^2`.
fn mul_one_plus_cz2(p: &mut Vec<Scalar>, c: &Scalar) {
    p.push(Scalar::zero());
    p.push(Scalar::zero());
    for k in (2..p.len()).rev() {
        let add = &p[k - 2] * c;
        p[k] += add;
    }
}

/// `ρ_n(x) = (1 + z^2)(-q^{2-n} z^2; q^2)_{n-1} z^{-n}`, `ρ_0 = 1`.
pub fn rho(ctx: &QContext, n: usize) -> SymPoly {
    if n == 0 {
        return SymPoly::one();
    }
    let mut p = vec![Scalar::one()];
    mul_one_plus_cz2(&mut p, &Scalar::one());
    for j in 0..n.saturating_sub(1) {
        let c = ctx.q_pow(2 - n as i64 + 2 * j as i64);
        mul_one_plus_cz2(&mut p, &c);
    }
    SymPoly::from_laurent(&p, n)
}

/// `(a z, a/z; base)_n = prod_{k<n} (1 + a^2 base^{2k} - a base^k (z + 1/z))`.
pub fn pair_pochhammer(a: &Scalar, base: &Scalar, n: usize) -> SymPoly {
    let mut acc = SymPoly::one();
    let mut ak = a.clone();
    for _ in 0..n {
        let factor = SymPoly::from_coeffs(vec![Scalar::one() + &ak * &ak, -ak.clone()]);
        acc = acc.mul(&factor);
        ak *= base;
    }
    acc
}

/// Continuous q-Hermite `H_n(x|q)`: `c_{n-2k} = [n choose k]_q`.
pub fn hermite(ctx: &QContext, n: usize) -> SymPoly {
    let mut c = vec![Scalar::zero(); n + 1];
    for k in 0..=n / 2 {
        c[n - 2 * k] = q_binomial(n, k, ctx.q()).expect("k <= n");
    }
    SymPoly::from_coeffs(c)
}

/// `x^n` expanded as `2^{-n} Σ_j C(n, j) z^{n-2j}`.
pub fn monomial(n: usize) -> SymPoly {
    let mut c = vec![Scalar::zero(); n + 1];
    let mut binom = num_bigint::BigInt::one();
    let scale = pow(&crate::qcore::rat(1, 2), n as i64);
    for j in 0..=n / 2 {
        c[n - 2 * j] = Scalar::from_integer(binom.clone()) * &scale;
        binom = binom * num_bigint::BigInt::from(n - j) / num_bigint::BigInt::from(j + 1);
    }
    SymPoly::from_coeffs(c)
}

/// Exact member of a closed-form family. `Phi` needs the parameter `a`.
pub fn special_poly(ctx: &QContext, family: SpecialFamily, n: usize, param: Option<&Scalar>) -> Result<SymPoly> {
    Ok(match family {
        SpecialFamily::Monomial => monomial(n),
        SpecialFamily::Rho => rho(ctx, n),
        SpecialFamily::Hermite => hermite(ctx, n),
        SpecialFamily::Phi => {
            let a = param.ok_or_else(|| Error::Domain("family phi requires the parameter a".into()))?;
            pair_pochhammer(a, ctx.q(), n)
        }
        SpecialFamily::G => rho(ctx, n).scale(&ctx.quarter_pow((n * n) as i64)),
    })
}

/// Exact value at a special point.
pub fn eval_at(ctx: &QContext, p: &SymPoly, pt: &SpecialPoint) -> Scalar {
    let c = p.coeffs();
    if c.is_empty() {
        return Scalar::zero();
    }
    let mut acc = c[0].clone();
    match pt {
        SpecialPoint::Zero => {
            for (k, ck) in c.iter().enumerate().skip(1) {
                match k % 4 {
                    0 => acc += ck * int(2),
                    2 => acc -= ck * int(2),
                    _ => {}
                }
            }
        }
        SpecialPoint::Eta | SpecialPoint::MinusEta => {
            let s = ctx.s();
            let zi = s.recip();
            let (mut up, mut down) = (Scalar::one(), Scalar::one());
            for (k, ck) in c.iter().enumerate().skip(1) {
                up *= &zi;
                down *= s;
                let e = &up + &down;
                if matches!(pt, SpecialPoint::MinusEta) && k % 2 == 1 {
                    acc -= ck * e;
                } else {
                    acc += ck * e;
                }
            }
        }
        SpecialPoint::RationalX(v) => {
            // e_k = z^k + z^-k = 2 T_k(v)
            let two_v = v * int(2);
            let (mut prev, mut cur) = (int(2), two_v.clone());
            for ck in c.iter().skip(1) {
                acc += ck * &cur;
                let next = &two_v * &cur - &prev;
                prev = std::mem::replace(&mut cur, next);
            }
        }
    }
    acc
}

/// Applies the Askey-Wilson operator `k` times.
///
/// On `e_m = z^m + z^{-m}` one application gives
/// `2 (q^{m/2} - q^{-m/2}) / (q^{1/2} - q^{-1/2}) · (z^m - z^{-m}) / (z - z^{-1})`.
pub fn aw_derivative(ctx: &QContext, p: &SymPoly, k: usize) -> SymPoly {
    let mut cur = p.clone();
    for _ in 0..k {
        cur = aw_step(ctx, &cur);
        if cur.is_zero() {
            break;
        }
    }
    cur
}

fn aw_step(ctx: &QContext, p: &SymPoly) -> SymPoly {
    let d = match p.degree() {
        None | Some(0) => return SymPoly::zero(),
        Some(d) => d,
    };
    let sq = ctx.sqrt_q();
    let denom = sq - sq.recip();
    let mut out = vec![Scalar::zero(); d];
    for m in 1..=d {
        let cm = &p.coeffs()[m];
        if cm.is_zero() {
            continue;
        }
        let qm = pow(sq, m as i64);
        let kappa = int(2) * (&qm - qm.recip()) / &denom;
        let w = cm * kappa;
        // (z^m - z^-m)/(z - 1/z) = Σ_{j<m} z^{m-1-2j}
        let r = m - 1;
        let mut t = r as i64;
        while t > 0 {
            out[t as usize] += &w;
            t -= 2;
        }
        if t == 0 {
            out[0] += &w;
        }
    }
    SymPoly::from_coeffs(out)
}

/// Coefficients of `p` in a degree-graded basis, by exact back-substitution
/// from the top degree.
pub fn change_basis(ctx: &QContext, p: &SymPoly, target: Basis) -> Vec<Scalar> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    let basis: Vec<SymPoly> = (0..=d)
        .map(|n| special_poly(ctx, target.into(), n, None).expect("no parameter needed"))
        .collect();
    let mut rest = p.clone();
    let mut out = vec![Scalar::zero(); d + 1];
    for n in (0..=d).rev() {
        let top = rest.coeff(n);
        if top.is_zero() {
            continue;
        }
        let a = top / &basis[n].coeffs()[n];
        rest = rest.sub(&basis[n].scale(&a));
        out[n] = a;
    }
    debug_assert!(rest.is_zero());
    out
}

/// Inverse of [`change_basis`].
pub fn from_basis(ctx: &QContext, coeffs: &[Scalar], basis: Basis) -> SymPoly {
    coeffs.iter().enumerate().fold(SymPoly::zero(), |acc, (n, a)| {
        if a.is_zero() {
            acc
        } else {
            acc.add(&special_poly(ctx, basis.into(), n, None).expect("no parameter").scale(a))
        }
    })
}

/// `g_j(y)` values used by the translation operator.
fn g_values(ctx: &QContext, y: &SpecialPoint, upto: usize) -> Vec<Scalar> {
    (0..=upto)
        .map(|j| eval_at(ctx, &special_poly(ctx, SpecialFamily::G, j, None).expect("g"), y))
        .collect()
}

/// The q-translation `E_q^y`, defined on `H_n(x|q)` by
/// `E_q^y H_n = Σ_m [n m]_q H_m g_{n-m}(y) q^{(m²-n²)/4}` and extended linearly.
pub fn q_translate(ctx: &QContext, p: &SymPoly, y: &SpecialPoint) -> SymPoly {
    let Some(d) = p.degree() else {
        return SymPoly::zero();
    };
    let h = change_basis(ctx, p, Basis::Hermite);
    let hermites: Vec<SymPoly> = (0..=d).map(|m| hermite(ctx, m)).collect();
    let g = g_values(ctx, y, d);
    let mut out = vec![Scalar::zero(); d + 1];
    for (n, hn) in h.iter().enumerate() {
        if hn.is_zero() {
            continue;
        }
        for m in 0..=n {
            if g[n - m].is_zero() {
                continue;
            }
            let w = hn
                * q_binomial(n, m, ctx.q()).expect("m <= n")
                * &g[n - m]
                * ctx.quarter_pow((m * m) as i64 - (n * n) as i64);
            for (t, c) in hermites[m].coeffs().iter().enumerate() {
                out[t] += &w * c;
            }
        }
    }
    SymPoly::from_coeffs(out)
}

/// Scalar `(a; base)_n`.
pub fn scalar_pochhammer(a: &Scalar, base: &Scalar, n: usize) -> Scalar {
    q_pochhammer(a, base, n)
}
