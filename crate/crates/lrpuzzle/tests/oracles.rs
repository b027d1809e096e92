use num_bigint::BigInt;
use proptest::prelude::*;

use lrpuzzle::oracle::{flag_structure_constants, giambelli_expand, lr_expand, pieri_multiply, product_via_giambelli};
use lrpuzzle::schubert::{partition_to_string, FlagString, SchubertIndex};

fn grass_pair(nmax: usize) -> impl Strategy<Value = (usize, usize, Vec<usize>, Vec<usize>)> {
    (2..=nmax)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, k)| {
            let all = SchubertIndex::all(k, n);
            let len = all.len();
            (Just(n), Just(k), (0..len, 0..len).prop_map(move |(i, j)| (all[i].lambda.clone(), all[j].lambda.clone())))
        })
        .prop_map(|(n, k, (a, b))| (k, n, a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn giambelli_agrees_with_tableaux((k, n, a, b) in grass_pair(7)) {
        prop_assert_eq!(product_via_giambelli(&a, &b, k, n).unwrap(), lr_expand(&a, &b, k, n).unwrap());
    }

    #[test]
    fn flag_oracle_agrees_on_grassmannians((k, n, a, b) in grass_pair(6)) {
        let s = |l: &[usize]| partition_to_string(&SchubertIndex::new(k, n, l).unwrap());
        let fa = FlagString::parse(&[k], &s(&a)).unwrap();
        let fb = FlagString::parse(&[k], &s(&b)).unwrap();
        prop_assert_eq!(flag_structure_constants(&fa, &fb).unwrap(), lr_expand(&a, &b, k, n).unwrap().by_string());
    }

    #[test]
    fn tableaux_commute((k, n, a, b) in grass_pair(8)) {
        prop_assert_eq!(lr_expand(&a, &b, k, n).unwrap(), lr_expand(&b, &a, k, n).unwrap());
    }

    #[test]
    fn giambelli_of_a_class_is_itself((k, n, a, _b) in grass_pair(7)) {
        let e = giambelli_expand(&a, k, n).unwrap();
        prop_assert_eq!(e, lrpuzzle::oracle::SchurExpansion::single(&SchubertIndex::new(k, n, &a).unwrap()));
    }
}

#[test]
fn pieri_is_a_special_case() {
    for (k, n) in [(2, 5), (3, 6), (3, 7)] {
        for mu in SchubertIndex::all(k, n) {
            for p in 0..=n - k {
                let mut row = vec![0; k];
                row[0] = p;
                assert_eq!(pieri_multiply(p, &mu.lambda, k, n).unwrap(), lr_expand(&row, &mu.lambda, k, n).unwrap());
            }
        }
    }
}

#[test]
fn flag_oracle_is_commutative_with_unit() {
    for steps in [vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]] {
        let all = FlagString::all(&steps, 4).unwrap();
        let id = FlagString::identity(&steps, 4).unwrap();
        for a in &all {
            let unit = flag_structure_constants(a, &id).unwrap();
            assert_eq!(unit, [(a.as_string(), BigInt::from(1))].into());
            for b in &all {
                assert_eq!(flag_structure_constants(a, b).unwrap(), flag_structure_constants(b, a).unwrap());
            }
        }
    }
}

#[test]
fn point_class_pairs_with_identity_dual() {
    for steps in [vec![1, 3], vec![2, 3]] {
        for a in FlagString::all(&steps, 5).unwrap() {
            let m = flag_structure_constants(&a, &a.dual()).unwrap();
            let top = FlagString::identity(&steps, 5).unwrap().dual().as_string();
            assert_eq!(m.get(&top), Some(&BigInt::from(1)), "{}", a.as_string());
        }
    }
}
