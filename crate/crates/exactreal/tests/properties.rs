//! Property tests: enclosure soundness for exact arithmetic, precision-query
//! consistency, and decision safety for `separate`.

use exactreal::*;
use num_traits::Signed;
use proptest::prelude::*;

fn small_dyadic() -> impl Strategy<Value = Dyadic> {
    (-(1i64 << 20)..(1i64 << 20), -12i64..8).prop_map(|(m, e)| Dyadic::new(i128::from(m), e))
}

fn to_rat(d: &Dyadic) -> Rational {
    let num = num_bigint::BigInt::from(d.mantissa());
    if d.exponent() >= 0 {
        Rational::from(num << d.exponent() as usize)
    } else {
        Rational::new(num, num_bigint::BigInt::from(1) << (-d.exponent()) as usize)
    }
}

proptest! {
    // Exact rational evaluation of +,-,x expressions lies inside the
    // interval result, for intervals around randomized points.
    #[test]
    fn enclosure_soundness(a in small_dyadic(), b in small_dyadic(), c in small_dyadic(), w in 0i64..6) {
        let widen = |x: &Dyadic| DyadicInterval::point(*x).widen_pow2(10 + w);
        let (ia, ib, ic) = (widen(&a), widen(&b), widen(&c));
        let sum = ia.add_out(&ib, 64).mul_out(&ic, 64);
        let exact = (to_rat(&a) + to_rat(&b)) * to_rat(&c);
        prop_assert!(to_rat(&sum.lo()) <= exact && exact <= to_rat(&sum.hi()));

        let diff = ia.sub_out(&ic, 64);
        let exact2 = to_rat(&a) - to_rat(&c);
        prop_assert!(to_rat(&diff.lo()) <= exact2 && exact2 <= to_rat(&diff.hi()));
    }

    #[test]
    fn exact_ops_match_rationals(a in small_dyadic(), b in small_dyadic()) {
        let ia = DyadicInterval::point(a);
        let ib = DyadicInterval::point(b);
        let s = ia.add_exact(&ib).unwrap();
        prop_assert_eq!(to_rat(&s.lo()), to_rat(&a) + to_rat(&b));
        let p = ia.mul_exact(&ib).unwrap();
        prop_assert_eq!(to_rat(&p.lo()), to_rat(&a) * to_rat(&b));
    }

    #[test]
    fn division_encloses(a in small_dyadic(), b in small_dyadic()) {
        prop_assume!(!b.is_zero());
        let q = DyadicInterval::point(a).div_out(&DyadicInterval::point(b), 64).unwrap();
        let exact = to_rat(&a) / to_rat(&b);
        prop_assert!(to_rat(&q.lo()) <= exact && exact <= to_rat(&q.hi()));
        // Relative width is controlled by the significand size.
        let mag = q.mag().mag_exp().unwrap_or(0);
        prop_assert!(q.width_le_pow2(58 - mag.max(0)));
    }

    // |query(k) - query(k+j)| < 2^-k + 2^-(k+j)
    #[test]
    fn creal_query_consistency(n in -10000i64..10000, d in 1i64..10000, k in 0u32..40, j in 0u32..20) {
        let x = CReal::from_rational(rat(n, d));
        let a = to_rat(&x.query(k).unwrap());
        let b = to_rat(&x.query(k + j).unwrap());
        let bound = to_rat(&Dyadic::pow2(-i64::from(k))) + to_rat(&Dyadic::pow2(-i64::from(k + j)));
        prop_assert!((a - b).abs() < bound);
    }

    // separate never contradicts exact rational order.
    #[test]
    fn separate_is_safe(n1 in -500i64..500, n2 in -500i64..500, d in 1i64..60, k in 0u32..30) {
        let a = CReal::from_rational(rat(n1, d));
        let b = CReal::from_rational(rat(n2, d));
        match separate(&a, &b, k).unwrap() {
            Separation::Less => prop_assert!(rat(n1, d) < rat(n2, d)),
            Separation::Greater => prop_assert!(rat(n1, d) > rat(n2, d)),
            Separation::Undecided => {}
        }
    }

    // pow enclosures contain reference values on positive bases.
    #[test]
    fn pow_soundness(base in 1u32..400, qnum in 0u32..40, qden in 1u32..12) {
        let a = DyadicInterval::from_int(i64::from(base));
        let q = rat(i64::from(qnum), i64::from(qden));
        let qiv = rat_to_dyadic_interval(&q, -40).unwrap();
        let r = interval_pow(&a, &qiv, 30).unwrap();
        let reference = (base as f64).powf(qnum as f64 / qden as f64);
        prop_assert!(r.lo().to_f64() <= reference * (1.0 + 1e-9));
        prop_assert!(r.hi().to_f64() >= reference * (1.0 - 1e-9));
    }
}
