use num_traits::Zero;
use proptest::prelude::*;

use qlidstone::fps::Series;
use qlidstone::guichard::{dotplus_translate, p_derivative, solve_difference, DeltaSeq, ZPoly};
use qlidstone::lidstone::{aw_boundary_data, bernoulli_expansion, EntireFn, ExpansionKind, Residual, Values};
use qlidstone::qcore::{q_binomial, q_number, q_pochhammer, rat, QContext, Scalar};
use qlidstone::symlaurent::{aw_derivative, eval_at, from_basis, q_translate, Basis, SpecialPoint, SymPoly};

fn small_rat() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Scalar> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn ctx_strategy() -> impl Strategy<Value = QContext> {
    prop_oneof![Just(rat(1, 2)), Just(rat(3, 5)), Just(rat(2, 3))].prop_map(|s| QContext::new(s).unwrap())
}

fn rho_poly(ctx: &QContext, c: &[Scalar]) -> SymPoly {
    from_basis(ctx, c, Basis::Rho)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pascal_rule(n in 1usize..=12, k_frac in 0.0f64..1.0, base in prop_oneof![Just(rat(-1, 1)), nonzero_rat()]) {
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let lhs = q_binomial(n, k, &base).unwrap();
        // [n-1 choose n] = 0
        let upper = if k < n { q_binomial(n - 1, k, &base).unwrap() } else { Scalar::zero() };
        let rhs = q_binomial(n - 1, k - 1, &base).unwrap() + qlidstone::qcore::pow(&base, k as i64) * upper;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pochhammer_splits(a in small_rat(), base in nonzero_rat(), m in 0usize..=10, n in 0usize..=10) {
        let shifted = &a * qlidstone::qcore::pow(&base, m as i64);
        prop_assert_eq!(
            q_pochhammer(&a, &base, m + n),
            q_pochhammer(&a, &base, m) * q_pochhammer(&shifted, &base, n)
        );
    }

    #[test]
    fn q_number_inversion(n in 1usize..=15, p in nonzero_rat()) {
        let inv = Scalar::from_integer(1.into()) / &p;
        prop_assert_eq!(q_number(n, &inv), qlidstone::qcore::pow(&p, 1 - n as i64) * q_number(n, &p));
    }

    #[test]
    fn eval_matches_horner(ctx in ctx_strategy(), c in prop::collection::vec(small_rat(), 1..7), v in small_rat()) {
        let p = SymPoly::from_monomial(&c);
        let horner = c.iter().rev().fold(Scalar::zero(), |acc, ck| acc * &v + ck);
        prop_assert_eq!(eval_at(&ctx, &p, &SpecialPoint::RationalX(v)), horner);
    }

    #[test]
    fn translation_is_linear(
        ctx in ctx_strategy(),
        a in prop::collection::vec(small_rat(), 1..6),
        b in prop::collection::vec(small_rat(), 1..6),
        al in small_rat(),
        be in small_rat(),
    ) {
        let (p, r) = (SymPoly::from_monomial(&a), SymPoly::from_monomial(&b));
        let combo = p.scale(&al).add(&r.scale(&be));
        for y in [SpecialPoint::Eta, SpecialPoint::Zero] {
            let lhs = q_translate(&ctx, &combo, &y);
            let rhs = q_translate(&ctx, &p, &y).scale(&al).add(&q_translate(&ctx, &r, &y).scale(&be));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_is_representation_independent(ctx in ctx_strategy(), c in prop::collection::vec(small_rat(), 1..7)) {
        // the same polynomial built from rho coefficients and from its monomial expansion
        let p = rho_poly(&ctx, &c);
        let mono = qlidstone::symlaurent::change_basis(&ctx, &p, Basis::Monomial);
        let q = SymPoly::from_monomial(&mono);
        prop_assert_eq!(aw_derivative(&ctx, &p, 1), aw_derivative(&ctx, &q, 1));
    }

    #[test]
    fn series_div_inverts_mul(
        a in prop::collection::vec(small_rat(), 1..10),
        b0 in nonzero_rat(),
        b in prop::collection::vec(small_rat(), 0..9),
    ) {
        let order = 10;
        let mut bc = vec![b0];
        bc.extend(b);
        let (sa, sb) = (Series::new(a, order), Series::new(bc, order));
        prop_assert_eq!(sa.mul(&sb).div(&sb).unwrap(), sa.clone());
        prop_assert_eq!(sa.div(&sb).unwrap().mul(&sb), sa);
    }

    #[test]
    fn parity_split(ctx in ctx_strategy(), c in prop::collection::vec(small_rat(), 1..7), even in any::<bool>()) {
        let c: Vec<Scalar> = c
            .into_iter()
            .enumerate()
            .map(|(n, v)| if (n % 2 == 0) == even { v } else { Scalar::zero() })
            .collect();
        let f = EntireFn::Poly(rho_poly(&ctx, &c));
        // even f has no odd-order data at zero, odd f no even-order data
        let kind = if even { ExpansionKind::Euler } else { ExpansionKind::Bernoulli };
        let data = aw_boundary_data(&ctx, &f, 3, kind);
        match data.at_zero {
            Values::Exact(v) => prop_assert!(v.iter().all(Zero::is_zero)),
            Values::Float(_) => prop_assert!(false, "exact input gave float data"),
        }
    }

    #[test]
    fn bernoulli_boundary_consistency(ctx in ctx_strategy(), c in prop::collection::vec(small_rat(), 1..6)) {
        let p = rho_poly(&ctx, &c);
        let k = c.len().div_ceil(2);
        let r = bernoulli_expansion(&ctx, &EntireFn::Poly(p.clone()), k).unwrap();
        prop_assert!(matches!(r.residual, Residual::Exact(ref v) if v.is_zero()));
        let recon = r.reconstruction.unwrap();
        for pt in [SpecialPoint::Zero, SpecialPoint::Eta] {
            prop_assert_eq!(eval_at(&ctx, &recon, &pt), eval_at(&ctx, &p, &pt));
        }
    }

    #[test]
    fn solver_is_linear(
        f1 in prop::collection::vec(small_rat(), 1..6),
        f2 in prop::collection::vec(small_rat(), 1..6),
        al in small_rat(),
        be in small_rat(),
        big_p in any::<bool>(),
        ones in any::<bool>(),
    ) {
        let p = if big_p { rat(4, 1) } else { rat(1, 4) };
        let d = if ones { DeltaSeq::ones(p, 10) } else { DeltaSeq::alsalam_half(p, 10) }.unwrap();
        let (f1, f2) = (ZPoly::new(f1), ZPoly::new(f2));
        let lhs = solve_difference(&f1.scale(&al).add(&f2.scale(&be)), &d).unwrap();
        let rhs = solve_difference(&f1, &d).unwrap().scale(&al).add(&solve_difference(&f2, &d).unwrap().scale(&be));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translate_commutes_with_derivative(
        c in prop::collection::vec(small_rat(), 1..8),
        big_p in any::<bool>(),
        ones in any::<bool>(),
    ) {
        let p = if big_p { rat(4, 1) } else { rat(1, 4) };
        let d = if ones { DeltaSeq::ones(p.clone(), 10) } else { DeltaSeq::alsalam_half(p.clone(), 10) }.unwrap();
        let h = ZPoly::new(c);
        let a = p_derivative(&dotplus_translate(&h, &d).unwrap(), 1, &p);
        let b = dotplus_translate(&p_derivative(&h, 1, &p), &d).unwrap();
        prop_assert_eq!(a, b);
    }
}
