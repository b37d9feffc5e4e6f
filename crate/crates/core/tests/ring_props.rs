use flagtangle_core::ring::SkeinScalar;
use num_bigint::BigInt;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = SkeinScalar> {
    (prop::collection::vec(-4i64..=4, 0..5), -3i64..=3, 0u32..3)
        .prop_map(|(c, low, k)| SkeinScalar::from_parts(c.into_iter().map(BigInt::from).collect(), low, k))
}

proptest! {
    #[test]
    fn eval_is_a_ring_map(a in scalar(), b in scalar(), q in prop::sample::select(vec![2i64, 3, 5, -2])) {
        prop_assert_eq!((&a + &b).eval(q).unwrap(), a.eval(q).unwrap() + b.eval(q).unwrap());
        prop_assert_eq!((&a * &b).eval(q).unwrap(), a.eval(q).unwrap() * b.eval(q).unwrap());
        prop_assert_eq!((&a - &b).eval(q).unwrap(), a.eval(q).unwrap() - b.eval(q).unwrap());
    }

    #[test]
    fn canonical_form_is_unique(a in scalar(), b in scalar()) {
        // equal values at enough points force equal rational functions
        let same = [2i64, 3, 4, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
            .iter()
            .all(|&q| a.eval(q).unwrap() == b.eval(q).unwrap());
        prop_assert_eq!(same, a == b);
        prop_assert_eq!(&a - &a, SkeinScalar::zero());
    }

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }
}
