//! The p-difference equation `g(z∔1) - g(z) = f(z)` for the generalized
//! translation `T_p^1 z^n = Σ_k [n,k]_p z^{n-k} δ_k(p)`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qcore::{pow, to_f64, Scalar};
use crate::qspecial::{smallest_positive_zero, ZeroKind};

/// `[n]_p = 1 + p + ... + p^{n-1}`; valid for every `p`, including `p = 1`.
pub fn p_number(n: usize, p: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    let mut pk = Scalar::one();
    for _ in 0..n {
        acc += &pk;
        pk *= p;
    }
    acc
}

pub fn p_factorial(n: usize, p: &Scalar) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * p_number(k, p))
}

/// Gaussian binomial `[n, k]_p`.
pub fn p_binomial(n: usize, k: usize, p: &Scalar) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    p_factorial(n, p) / (p_factorial(k, p) * p_factorial(n - k, p))
}

/// Row `[n, 0]_p .. [n, n]_p` of the Pascal triangle.
fn binomial_row(n: usize, p: &Scalar) -> Vec<Scalar> {
    let mut row = vec![Scalar::one()];
    for r in 1..=n {
        let mut next = vec![Scalar::one(); r + 1];
        let mut pk = Scalar::one();
        for k in 1..r {
            pk *= p;
            // [r,k] = [r-1,k-1] + p^k [r-1,k]
            next[k] = &row[k - 1] + &pk * &row[k];
        }
        row = next;
    }
    row
}

/// Origin of a δ-sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `δ_k = 1`.
    Ones,
    /// `δ_k = (-1;p)_k / 2^k`.
    AlSalamHalf,
    Custom,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Ones => "ones",
            Preset::AlSalamHalf => "alsalam_half",
            Preset::Custom => "custom",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ones" => Ok(Preset::Ones),
            "alsalam_half" => Ok(Preset::AlSalamHalf),
            "custom" => Ok(Preset::Custom),
            _ => Err(Error::Parse(format!("unknown preset `{s}` (expected ones, alsalam_half, custom)"))),
        }
    }
}

/// `δ_0 .. δ_N` together with the base `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSeq {
    p: Scalar,
    delta: Vec<Scalar>,
    preset: Preset,
}

impl DeltaSeq {
    /// Preset sequence of length `n_max + 1`. `p = 1` is accepted for the classical limit.
    pub fn preset(preset: Preset, p: Scalar, n_max: usize) -> Result<Self> {
        let delta = match preset {
            Preset::Ones => vec![Scalar::one(); n_max + 1],
            Preset::AlSalamHalf => {
                let mut d = Vec::with_capacity(n_max + 1);
                let mut poch = Scalar::one();
                let mut pk = Scalar::one();
                let half = Scalar::new(1.into(), 2.into());
                let mut scale = Scalar::one();
                for _ in 0..=n_max {
                    d.push(&poch * &scale);
                    poch *= Scalar::one() + &pk;
                    pk *= &p;
                    scale *= &half;
                }
                d
            }
            Preset::Custom => {
                return Err(Error::Domain("use DeltaSeq::custom for a custom sequence".into()));
            }
        };
        Self::build(p, delta, preset)
    }

    pub fn ones(p: Scalar, n_max: usize) -> Result<Self> {
        Self::preset(Preset::Ones, p, n_max)
    }

    pub fn alsalam_half(p: Scalar, n_max: usize) -> Result<Self> {
        Self::preset(Preset::AlSalamHalf, p, n_max)
    }

    /// User sequence; `δ_0` must be 1.
    pub fn custom(p: Scalar, delta: Vec<Scalar>) -> Result<Self> {
        Self::build(p, delta, Preset::Custom)
    }

    fn build(p: Scalar, delta: Vec<Scalar>, preset: Preset) -> Result<Self> {
        if !p.is_positive() {
            return Err(Error::Domain(format!("p = {p} must be positive")));
        }
        match delta.first() {
            Some(d0) if d0.is_one() => Ok(DeltaSeq { p, delta, preset }),
            Some(d0) => Err(Error::Domain(format!("delta_0 = {d0} must equal 1"))),
            None => Err(Error::Domain("empty delta sequence".into())),
        }
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }

    pub fn delta(&self) -> &[Scalar] {
        &self.delta
    }

    pub fn preset_kind(&self) -> Preset {
        self.preset
    }

    /// Largest `n` with `δ_n` available.
    pub fn max_index(&self) -> usize {
        self.delta.len() - 1
    }

    fn require(&self, n: usize, what: &'static str) -> Result<()> {
        if n > self.max_index() {
            return Err(Error::Capacity { what, needed: n + 1, available: self.delta.len() });
        }
        Ok(())
    }
}

/// Polynomial in `z` with monomial coefficients, low degree first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly(Vec<Scalar>);

impl ZPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn monomial(n: usize, c: Scalar) -> Self {
        let mut v = vec![Scalar::zero(); n + 1];
        v[n] = c;
        ZPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        ZPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        ZPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ZPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, z: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| acc * z + c)
    }

    pub fn truncate(&self, order: usize) -> Self {
        ZPoly::new(self.0.iter().take(order + 1).cloned().collect())
    }
}

/// `T_p^1 h`, extended linearly from `z^n ↦ Σ_k [n,k]_p z^{n-k} δ_k`.
pub fn dotplus_translate(h: &ZPoly, d: &DeltaSeq) -> Result<ZPoly> {
    let Some(deg) = h.degree() else { return Ok(ZPoly::zero()) };
    d.require(deg, "delta sequence for translation")?;
    let mut out = vec![Scalar::zero(); deg + 1];
    for (n, hn) in h.coeffs().iter().enumerate() {
        if hn.is_zero() {
            continue;
        }
        let row = binomial_row(n, d.p());
        for k in 0..=n {
            out[n - k] += hn * &row[k] * &d.delta[k];
        }
    }
    Ok(ZPoly::new(out))
}

/// `D_p^k h` with `D_p z^n = [n]_p z^{n-1}`.
pub fn p_derivative(h: &ZPoly, k: usize, p: &Scalar) -> ZPoly {
    let mut cur = h.clone();
    for _ in 0..k {
        cur = ZPoly::new(cur.coeffs().iter().enumerate().skip(1).map(|(n, c)| c * p_number(n, p)).collect());
    }
    cur
}

/// `B_0 .. B_N` from `Σ B_n t^n/[n]_p! = t / (E(t(0∔1); p) - 1)`.
pub fn bp_numbers(d: &DeltaSeq, n_max: usize) -> Result<Vec<Scalar>> {
    if d.delta.len() < 2 || d.delta[1].is_zero() {
        return Err(Error::Singular("delta_1 = 0: the recurrence for B_{p,n} has no solution".into()));
    }
    d.require(n_max + 1, "delta sequence for B_{p,n} numbers")?;
    let p = d.p();
    let dk: Vec<Scalar> = (0..=n_max + 1).map(|k| &d.delta[k] / p_factorial(k, p)).collect();
    let mut b: Vec<Scalar> = Vec::with_capacity(n_max + 1);
    b.push(Scalar::one() / &dk[1]);
    for m in 1..=n_max {
        let s = (0..m).fold(Scalar::zero(), |acc, j| acc + &b[j] * &dk[m + 1 - j]);
        b.push(-s / &dk[1]);
    }
    Ok(b.iter().enumerate().map(|(k, bk)| bk * p_factorial(k, p)).collect())
}

/// `B_{p,n}(z) = Σ_k [n,k]_p B_{n-k} z^k` for `n ≤ N`, with the ladder and jump
/// properties checked exactly.
pub fn bp_polynomials(d: &DeltaSeq, n_max: usize) -> Result<Vec<ZPoly>> {
    let nums = bp_numbers(d, n_max)?;
    let p = d.p();
    let polys: Vec<ZPoly> = (0..=n_max)
        .map(|n| {
            let row = binomial_row(n, p);
            ZPoly::new((0..=n).map(|k| &row[k] * &nums[n - k]).collect())
        })
        .collect();
    for n in 1..=n_max {
        if p_derivative(&polys[n], 1, p) != polys[n - 1].scale(&p_number(n, p)) {
            return Err(Error::Integrity { what: "ladder D_p B_{p,n} = [n]_p B_{p,n-1}".into(), index: n });
        }
    }
    for (n, bn) in polys.iter().enumerate() {
        if jump_data(bn, d, n)? != expected_jump(n, p) {
            return Err(Error::Integrity { what: "jump D_p^k[B_{p,n}(z∔1) - B_{p,n}(z)] at 0".into(), index: n });
        }
    }
    Ok(polys)
}

/// `D_p^k[h(z∔1) - h(z)]_{z=0}` for `k = 0..=n`.
pub fn jump_data(h: &ZPoly, d: &DeltaSeq, n: usize) -> Result<Vec<Scalar>> {
    let diff = dotplus_translate(h, d)?.sub(h);
    Ok((0..=n).map(|k| p_derivative(&diff, k, d.p()).coeff(0)).collect())
}

/// `[n]_p! δ_{k,n-1}` for `k = 0..=n`.
fn expected_jump(n: usize, p: &Scalar) -> Vec<Scalar> {
    (0..=n).map(|k| if k + 1 == n { p_factorial(n, p) } else { Scalar::zero() }).collect()
}

/// q-Bernoulli polynomial `B_n(z;q) = q^{n(n-1)/2} B_{1/q,n}(z)` for the
/// `alsalam_half` preset at `p = 1/q`.
pub fn im_polynomials(q: &Scalar, n_max: usize) -> Result<Vec<ZPoly>> {
    let d = DeltaSeq::alsalam_half(q.recip(), n_max + 1)?;
    Ok(bp_polynomials(&d, n_max)?
        .into_iter()
        .enumerate()
        .map(|(n, b)| b.scale(&pow(q, (n * n.saturating_sub(1) / 2) as i64)))
        .collect())
}

/// `g = Σ_n a_n B_{p,n+1}(z)/[n+1]_p`, so that `g(z∔1) - g(z) = f(z)`.
///
/// For the normalization `p = 1/q` this equals
/// `Σ a_n q^{-n(n-1)/2} B_{n+1}(z;q)/[n+1]_q`.
pub fn solve_difference(f: &ZPoly, d: &DeltaSeq) -> Result<ZPoly> {
    let Some(deg) = f.degree() else { return Ok(ZPoly::zero()) };
    let polys = bp_polynomials(d, deg + 1)?;
    let p = d.p();
    Ok(f.coeffs().iter().enumerate().fold(ZPoly::zero(), |acc, (n, a)| {
        if a.is_zero() {
            acc
        } else {
            acc.add(&polys[n + 1].scale(&(a / p_number(n + 1, p))))
        }
    }))
}

/// Outcome of [`verify_solution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// `T g - g - f` vanishes through this order.
    ExactThrough(usize),
    /// Lowest and highest coefficient indices where `T g - g ≠ f`.
    Mismatch { first: usize, last: usize },
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::ExactThrough(_))
    }
}

pub fn verify_solution(f: &ZPoly, g: &ZPoly, d: &DeltaSeq) -> Result<Verification> {
    let r = dotplus_translate(g, d)?.sub(g).sub(f);
    let order = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
    Ok(match r.coeffs().iter().position(|c| !c.is_zero()) {
        Some(first) => Verification::Mismatch { first, last: r.degree().unwrap_or(first) },
        None => Verification::ExactThrough(order),
    })
}

/// `f(0) + Σ_{k=1}^{n} (D_p^{k-1}f(0∔1) - D_p^{k-1}f(0)) / [k]_p! · φ_k` with
/// `φ_k = B_{p,k} - B_{p,k}(0)`.
pub fn reconstruct_from_jumps(f: &ZPoly, d: &DeltaSeq) -> Result<ZPoly> {
    let Some(n) = f.degree() else { return Ok(ZPoly::zero()) };
    let p = d.p();
    let polys = bp_polynomials(d, n)?;
    let mut acc = ZPoly::new(vec![f.coeff(0)]);
    for (k, bk) in polys.iter().enumerate().skip(1) {
        let dk = p_derivative(f, k - 1, p);
        let jump = dotplus_translate(&dk, d)?.coeff(0) - dk.coeff(0);
        let phi = bk.sub(&ZPoly::new(vec![bk.coeff(0)]));
        acc = acc.add(&phi.scale(&(jump / p_factorial(k, p))));
    }
    Ok(acc)
}

/// Boundedness of `r_n = |B_n(q)/[n]_q!| (2ξ_1)^n`, `ξ_1` the smallest positive zero of `Sin_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub q: f64,
    pub xi1: f64,
    pub ratios: Vec<f64>,
    pub sup: f64,
    pub argmax: usize,
    /// Sup over `n ≤ 2N`.
    pub sup_doubled: f64,
    /// Relative change of the sup under doubling.
    pub drift: f64,
    pub bounded: bool,
}

/// Numbers `B_n(q) = B_n(0;q)` for `n ≤ N`.
pub fn im_numbers(q: &Scalar, n_max: usize) -> Result<Vec<Scalar>> {
    let d = DeltaSeq::alsalam_half(q.recip(), n_max + 1)?;
    Ok(bp_numbers(&d, n_max)?
        .into_iter()
        .enumerate()
        .map(|(n, b)| b * pow(q, (n * n.saturating_sub(1) / 2) as i64))
        .collect())
}

pub fn growth_bound_check(q: &Scalar, n_max: usize) -> Result<GrowthReport> {
    let qf = to_f64(q);
    let xi1 = smallest_positive_zero(ZeroKind::Sinq, qf)?.value;
    let nums = im_numbers(q, 2 * n_max)?;
    let ratios: Vec<f64> = nums
        .iter()
        .enumerate()
        .map(|(n, b)| {
            let scaled = to_f64(&(b / crate::qcore::q_factorial(n, q)).abs());
            scaled * (2.0 * xi1).powi(n as i32)
        })
        .collect();
    let sup_of = |m: usize| ratios[..=m].iter().cloned().fold(0.0f64, f64::max);
    let sup = sup_of(n_max);
    let argmax = ratios[..=n_max].iter().position(|&r| r == sup).unwrap_or(0);
    let sup_doubled = sup_of(2 * n_max);
    let drift = (sup_doubled - sup) / sup;
    Ok(GrowthReport {
        q: qf,
        xi1,
        ratios: ratios[..=n_max].to_vec(),
        sup,
        argmax,
        sup_doubled,
        drift,
        bounded: sup.is_finite() && drift <= 0.01,
    })
}

/// Parse `a_0, a_1, ...` as a polynomial.
pub fn zpoly_from_strs(items: &[&str]) -> Result<ZPoly> {
    Ok(ZPoly::new(items.iter().map(|s| crate::qcore::parse_rational(s.trim())).collect::<Result<_>>()?))
}

/// `Σ_{n≤N} q^{n²} z^n`.
pub fn gaussian_series(q: &Scalar, n_max: usize) -> ZPoly {
    ZPoly::new((0..=n_max).map(|n| pow(q, (n * n) as i64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::Series;
    use crate::qcore::{rat, QContext};
    use crate::qpolys::{build_numbers, NumberKind};

    #[test]
    fn translate_examples() {
        let d = DeltaSeq::alsalam_half(rat(1, 4), 6).unwrap();
        assert_eq!(dotplus_translate(&ZPoly::new(vec![rat(1, 1)]), &d).unwrap(), ZPoly::new(vec![rat(1, 1)]));
        let x = ZPoly::new(vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(dotplus_translate(&x, &d).unwrap(), ZPoly::new(vec![rat(1, 1), rat(1, 1)]));
        // classical limit
        let d1 = DeltaSeq::ones(rat(1, 1), 6).unwrap();
        let x3 = ZPoly::monomial(3, rat(1, 1));
        assert_eq!(dotplus_translate(&x3, &d1).unwrap(), ZPoly::new(vec![rat(1, 1), rat(3, 1), rat(3, 1), rat(1, 1)]));
        let short = DeltaSeq::ones(rat(1, 4), 2).unwrap();
        assert!(matches!(dotplus_translate(&x3, &short), Err(Error::Capacity { .. })));
    }

    #[test]
    fn delta_validation() {
        assert!(DeltaSeq::custom(rat(1, 2), vec![rat(2, 1), rat(1, 1)]).is_err());
        assert!(DeltaSeq::custom(rat(-1, 2), vec![rat(1, 1)]).is_err());
        let d = DeltaSeq::custom(rat(1, 2), vec![rat(1, 1), rat(0, 1), rat(1, 1)]).unwrap();
        assert!(matches!(bp_numbers(&d, 1), Err(Error::Singular(_))));
    }

    #[test]
    fn derivative_and_commutation() {
        let p = rat(1, 4);
        assert_eq!(p_derivative(&ZPoly::monomial(1, rat(1, 1)), 1, &p), ZPoly::new(vec![rat(1, 1)]));
        assert_eq!(p_derivative(&ZPoly::monomial(3, rat(1, 1)), 1, &p), ZPoly::monomial(2, p_number(3, &p)));
        let d = DeltaSeq::alsalam_half(p.clone(), 5).unwrap();
        let h = ZPoly::new(vec![rat(3, 7), rat(-2, 1), rat(5, 3), rat(1, 9)]);
        let lhs = p_derivative(&dotplus_translate(&h, &d).unwrap(), 1, &p);
        let rhs = dotplus_translate(&p_derivative(&h, 1, &p), &d).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn first_numbers() {
        let d = DeltaSeq::alsalam_half(rat(1, 4), 8).unwrap();
        assert_eq!(bp_numbers(&d, 3).unwrap()[0], rat(1, 1));
        let d1 = DeltaSeq::ones(rat(1, 1), 8).unwrap();
        let b = bp_numbers(&d1, 4).unwrap();
        assert_eq!(b, vec![rat(1, 1), rat(-1, 2), rat(1, 6), rat(0, 1), rat(-1, 30)]);
    }

    /// `t / (Σ_{n≥1} δ_n t^n/[n]_p!)` by series division.
    fn numbers_by_division(d: &DeltaSeq, n: usize) -> Vec<Scalar> {
        let p = d.p();
        let den = Series::new((0..=n).map(|k| &d.delta()[k + 1] / p_factorial(k + 1, p)).collect(), n + 1);
        let quot = Series::one(n + 1).div(&den).unwrap();
        (0..=n).map(|k| quot.coeff(k) * p_factorial(k, p)).collect()
    }

    #[test]
    fn numbers_match_series_division() {
        for p in [rat(1, 4), rat(4, 1), rat(2, 3)] {
            for d in [DeltaSeq::ones(p.clone(), 10).unwrap(), DeltaSeq::alsalam_half(p.clone(), 10).unwrap()] {
                assert_eq!(bp_numbers(&d, 8).unwrap(), numbers_by_division(&d, 8));
            }
        }
    }

    #[test]
    fn alsalam_half_is_ismail_mansour() {
        let ctx = QContext::new(rat(1, 2)).unwrap();
        let q = ctx.q().clone();
        let im = build_numbers(&ctx, NumberKind::ImBq, 8).unwrap().values;
        let d = DeltaSeq::alsalam_half(q.clone(), 10).unwrap();
        assert_eq!(bp_numbers(&d, 8).unwrap(), im);
        assert_eq!(im_numbers(&q, 8).unwrap(), im);
    }

    #[test]
    fn ladder_and_jump() {
        for p in [rat(1, 4), rat(4, 1)] {
            for d in [DeltaSeq::ones(p.clone(), 12).unwrap(), DeltaSeq::alsalam_half(p.clone(), 12).unwrap()] {
                let polys = bp_polynomials(&d, 10).unwrap();
                assert_eq!(polys[0], ZPoly::new(vec![bp_numbers(&d, 0).unwrap()[0].clone()]));
                assert_eq!(jump_data(&polys[2], &d, 2).unwrap()[1], p_factorial(2, &p));
            }
        }
    }

    #[test]
    fn im_polynomial_jump() {
        let q = rat(1, 4);
        let d = DeltaSeq::alsalam_half(q.recip(), 10).unwrap();
        let polys = im_polynomials(&q, 8).unwrap();
        for (n, b) in polys.iter().enumerate().skip(1) {
            let diff = dotplus_translate(b, &d).unwrap().sub(b);
            let e = (n as i64 - 1) * (n as i64 - 2) / 2;
            let expect = ZPoly::monomial(n - 1, pow(&q, e) * crate::qcore::q_number(n, &q));
            assert_eq!(diff, expect, "n={n}");
        }
    }

    #[test]
    fn solver() {
        let q = rat(1, 4);
        let d = DeltaSeq::alsalam_half(q.recip(), 40).unwrap();
        assert_eq!(solve_difference(&ZPoly::zero(), &d).unwrap(), ZPoly::zero());
        let z = ZPoly::monomial(1, rat(1, 1));
        let g = solve_difference(&z, &d).unwrap();
        assert!(verify_solution(&z, &g, &d).unwrap().passed());
        let f = gaussian_series(&q, 12);
        let g = solve_difference(&f, &d).unwrap();
        assert_eq!(verify_solution(&f, &g, &d).unwrap(), Verification::ExactThrough(13));
        let mut bad = g.coeffs().to_vec();
        bad[5] += rat(1, 1);
        let bad = ZPoly::new(bad);
        assert!(matches!(verify_solution(&f, &bad, &d).unwrap(), Verification::Mismatch { last: 4, .. }));
        let ones = DeltaSeq::ones(q.recip(), 40).unwrap();
        let g2 = solve_difference(&f, &ones).unwrap();
        assert_ne!(g, g2);
        assert!(verify_solution(&f, &g2, &ones).unwrap().passed());
    }

    #[test]
    fn im_solution_formula() {
        let q = rat(1, 4);
        let d = DeltaSeq::alsalam_half(q.recip(), 12).unwrap();
        let f = ZPoly::new(vec![rat(1, 3), rat(-2, 1), rat(5, 7), rat(1, 1)]);
        let im = im_polynomials(&q, 5).unwrap();
        let alt = f.coeffs().iter().enumerate().fold(ZPoly::zero(), |acc, (n, a)| {
            let c = a * pow(&q, -((n * n.saturating_sub(1) / 2) as i64)) / crate::qcore::q_number(n + 1, &q);
            acc.add(&im[n + 1].scale(&c))
        });
        assert_eq!(solve_difference(&f, &d).unwrap(), alt);
    }

    #[test]
    fn reconstruction_quartic() {
        let d = DeltaSeq::alsalam_half(rat(1, 4), 8).unwrap();
        let f = ZPoly::new(vec![rat(2, 1), rat(-1, 3), rat(0, 1), rat(4, 5), rat(7, 2)]);
        assert_eq!(reconstruct_from_jumps(&f, &d).unwrap(), f);
    }

    #[test]
    fn growth() {
        let r = growth_bound_check(&rat(1, 4), 20).unwrap();
        assert!(r.bounded, "{r:?}");
        assert_eq!(r.ratios[3], 0.0);
        assert!(r.argmax <= 6);
    }
}
