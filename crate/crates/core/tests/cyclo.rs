use blockcert::cyclo::{sigma_k0, GaloisAutomorphism};
use blockcert::{Cyclotomic, Rational};
use proptest::prelude::*;

fn element(n: u64) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..n as i64, -5i64..=5, 1i64..=4), 0..6).prop_map(move |terms| {
        let terms: Vec<(i64, Rational)> = terms
            .into_iter()
            .map(|(k, a, b)| (k, Rational::new(a.into(), b.into())))
            .collect();
        Cyclotomic::from_powers(n, &terms)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in element(12), b in element(12), c in element(12)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn inverses(a in element(15)) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(&a * &inv, Cyclotomic::one(15));
    }

    #[test]
    fn galois_is_a_ring_automorphism(a in element(20), b in element(20), t in prop::sample::select(vec![1i64, 3, 7, 9, 11, 13, 17, 19])) {
        let s = GaloisAutomorphism::new(20, t).unwrap();
        prop_assert_eq!(s.apply(&(&a * &b)), &s.apply(&a) * &s.apply(&b));
        prop_assert_eq!(s.apply(&(&a + &b)), &s.apply(&a) + &s.apply(&b));
        let back = GaloisAutomorphism::new(20, t).unwrap().pow(3);
        prop_assert_eq!(back.apply(&s.apply(&a)), a);
    }

    #[test]
    fn lift_is_an_embedding(a in element(6), b in element(6)) {
        prop_assert_eq!((&a * &b).lift(30), &a.lift(30) * &b.lift(30));
        prop_assert!(a.lift(30).lies_in_subfield(6));
        prop_assert_eq!(a.lift(30), a);
    }

    #[test]
    fn serde_round_trip(a in element(21)) {
        let s = serde_json::to_string(&a).unwrap();
        let b: Cyclotomic = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn sigma_fixes_p_part() {
    let s = sigma_k0(2, 12);
    assert_eq!(s.apply(&Cyclotomic::zeta(4, 1)), Cyclotomic::zeta(4, 1));
    assert_eq!(s.apply(&Cyclotomic::zeta(3, 1)), Cyclotomic::zeta(3, 2));
}
