use num_bigint::BigInt;
use proptest::prelude::*;

use lrpuzzle::oracle::lr_expand;
use lrpuzzle::quantum::{degree_condition, gw_invariant, quantum_product, vanishing_predicate};
use lrpuzzle::schubert::SchubertIndex;

fn pair(k: usize, n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>, usize)> {
    let all: Vec<Vec<usize>> = SchubertIndex::all(k, n).into_iter().map(|s| s.lambda).collect();
    let len = all.len();
    (0..len, 0..len, 0..=k.min(n - k)).prop_map(move |(a, b, d)| (all[a].clone(), all[b].clone(), d))
}

/// Third classes completing `a`, `b` to a triple of the right total degree.
fn thirds(k: usize, n: usize, a: &[usize], b: &[usize], d: usize) -> Vec<Vec<usize>> {
    let need = (k * (n - k) + d * n) as i64 - (a.iter().sum::<usize>() + b.iter().sum::<usize>()) as i64;
    SchubertIndex::all(k, n).into_iter().filter(|c| c.codim() as i64 == need).map(|c| c.lambda).collect()
}

fn symmetric(k: usize, n: usize, a: &[usize], b: &[usize], d: usize) -> Result<(), TestCaseError> {
    for c in thirds(k, n, a, b, d) {
        symmetric_triple(k, n, a, b, &c, d)?;
    }
    Ok(())
}

fn symmetric_triple(k: usize, n: usize, a: &[usize], b: &[usize], c: &[usize], d: usize) -> Result<(), TestCaseError> {
    let x = gw_invariant(a, b, c, k, n, d).unwrap();
    prop_assert_eq!(&x, &gw_invariant(b, a, c, k, n, d).unwrap());
    prop_assert_eq!(&x, &gw_invariant(a, c, b, k, n, d).unwrap());
    prop_assert_eq!(&x, &gw_invariant(c, b, a, k, n, d).unwrap());
    prop_assert!(x >= BigInt::from(0));
    if !degree_condition(a, b, c, k, n, d) {
        prop_assert_eq!(x, BigInt::from(0));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn invariants_symmetric_in_g25((a, b, d) in pair(2, 5)) {
        symmetric(2, 5, &a, &b, d)?;
    }

    #[test]
    fn invariants_symmetric_in_g36((a, b, d) in pair(3, 6)) {
        symmetric(3, 6, &a, &b, d)?;
    }
}

#[test]
fn vanishing_forces_zero() {
    let mut hits = 0;
    for (k, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let all: Vec<Vec<usize>> = SchubertIndex::all(k, n).into_iter().map(|s| s.lambda).collect();
        for d in 0..=k {
            for a in &all {
                for b in &all {
                    for c in &all {
                        if let Ok(true) = vanishing_predicate(&[a.clone(), b.clone(), c.clone()], k, n, d) {
                            assert_eq!(gw_invariant(a, b, c, k, n, d).unwrap(), BigInt::from(0), "{a:?} {b:?} {c:?} d={d}");
                            hits += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn degree_zero_layer_is_classical() {
    for (k, n) in [(2, 5), (3, 6)] {
        let all = SchubertIndex::all(k, n);
        for a in &all {
            for b in &all {
                let q = quantum_product(&a.lambda, &b.lambda, k, n).unwrap();
                let lr = lr_expand(&a.lambda, &b.lambda, k, n).unwrap();
                for nu in &all {
                    assert_eq!(q.get(0, &nu.lambda), lr.get(&nu.lambda));
                }
                for (d, nu) in q.terms.keys() {
                    let size: usize = nu.iter().sum();
                    assert_eq!(size + d * n, a.codim() + b.codim());
                }
            }
        }
    }
}

#[test]
fn hyperplane_times_point_in_g25() {
    let q = quantum_product(&[1], &[3, 3], 2, 5).unwrap();
    assert_eq!(q.terms.len(), 1);
    assert_eq!(q.get(1, &[2]), BigInt::from(1));
}
