use num_bigint::BigInt;
use proptest::prelude::*;

use lrpuzzle::coeff::{LaurentCoeff, PolyCoeff, Ring, Sparse};

fn sparse(min_exp: i32) -> impl Strategy<Value = Sparse> {
    prop::collection::vec((prop::collection::vec(min_exp..3, 0..4), -5i64..6), 0..5)
        .prop_map(|terms| terms.into_iter().fold(Sparse::zero(), |acc, (e, c)| acc.add(&Sparse::monomial(e, c))))
}

fn poly() -> impl Strategy<Value = PolyCoeff> {
    sparse(0).prop_map(PolyCoeff)
}

fn laurent() -> impl Strategy<Value = LaurentCoeff> {
    sparse(-2).prop_map(LaurentCoeff)
}

fn ring_axioms<R: Ring>(a: &R, b: &R, c: &R) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.mul(&R::one()), a.clone());
    prop_assert!(a.sub(a).is_zero());
    prop_assert_eq!(a.mul(b).specialize(), a.specialize() * b.specialize());
    prop_assert_eq!(a.add(b).specialize(), a.specialize() + b.specialize());
    Ok(())
}

proptest! {
    #[test]
    fn polynomial_ring(a in poly(), b in poly(), c in poly()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn laurent_ring(a in laurent(), b in laurent(), c in laurent()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn polynomial_round_trip(a in poly()) {
        prop_assert_eq!(PolyCoeff::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn laurent_round_trip(a in laurent()) {
        prop_assert_eq!(LaurentCoeff::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn kt_factor_specializes_to_zero(i in 1usize..6, j in 1usize..6) {
        prop_assert_eq!(LaurentCoeff::kt_factor(i, j).specialize(), BigInt::from(0));
    }
}

#[test]
fn no_negative_exponents_in_polynomials() {
    assert!(PolyCoeff::parse("y1^-1").is_err());
    assert!(LaurentCoeff::parse("t1^-1").is_ok());
}
