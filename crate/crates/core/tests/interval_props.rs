use proptest::prelude::*;
use qpoly_core::numeric::{interval_op, ratio, IntervalOp};
use qpoly_core::{DomainError, Rational, RationalInterval};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| ratio(n, d))
}

/// An interval together with a point inside it.
fn interval_with_point() -> impl Strategy<Value = (RationalInterval, Rational)> {
    (rational(), rational(), 0i64..=16).prop_map(|(a, b, t)| {
        let iv = RationalInterval::spanning(a, b);
        let x = iv.lo() + (iv.hi() - iv.lo()) * ratio(t, 16);
        (iv, x)
    })
}

fn op() -> impl Strategy<Value = IntervalOp> {
    prop_oneof![
        Just(IntervalOp::Add),
        Just(IntervalOp::Sub),
        Just(IntervalOp::Mul),
        Just(IntervalOp::Div),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn operations_enclose_pointwise_results(
        (a, x) in interval_with_point(),
        (b, y) in interval_with_point(),
        op in op(),
    ) {
        match interval_op(&a, &b, op) {
            Ok(r) => {
                let exact = match op {
                    IntervalOp::Add => &x + &y,
                    IntervalOp::Sub => &x - &y,
                    IntervalOp::Mul => &x * &y,
                    IntervalOp::Div => &x / &y,
                };
                prop_assert!(r.contains(&exact), "{a} {op:?} {b} = {r} misses {exact}");
            }
            Err(DomainError::DivisionByZeroInterval) => {
                prop_assert_eq!(op, IntervalOp::Div);
                prop_assert!(b.contains_zero());
            }
        }
    }

    #[test]
    fn outward_rounding_keeps_enclosure((a, x) in interval_with_point(), bits in 1u32..80) {
        let r = a.round_outward(bits);
        prop_assert!(r.contains(&x));
        prop_assert!(r.contains(a.lo()) && r.contains(a.hi()));
    }

    #[test]
    fn square_is_tighter_than_self_product((a, x) in interval_with_point()) {
        let sq = a.square();
        prop_assert!(sq.contains(&(&x * &x)));
        prop_assert!(sq.width() <= (&a * &a).width());
    }

    #[test]
    fn rationals_stay_normalised(n in -10_000i64..10_000, d in 1i64..10_000, g in 1i64..500) {
        let r = ratio(n * g, d * g);
        prop_assert_eq!(&r, &ratio(n, d));
        prop_assert!(r.denom() > &0.into());
        let neg = ratio(n, -d);
        prop_assert!(neg.denom() > &0.into());
        prop_assert_eq!(neg, -ratio(n, d));
    }
}
