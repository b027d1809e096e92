mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::codim;
use lrpuzzle::coeff::{IntCoeff, PolyCoeff, Ring};
use lrpuzzle::engine::{coefficient, count_fillings, enumerate_fillings, expand_product, neighbor, Filling, Neighbor};
use lrpuzzle::oracle::lr_tableaux;
use lrpuzzle::pieces::Theory;
use lrpuzzle::schubert::{binary_strings, partition_to_string, string_to_partition, SchubertIndex};

/// (n, alpha, beta) for a Grassmannian G(k, n) with n <= nmax.
fn grass_pair(nmax: usize) -> impl Strategy<Value = (usize, String, String)> {
    (2..=nmax)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, k)| {
            let all = binary_strings(k, n);
            let len = all.len();
            (Just(n), (0..len, 0..len).prop_map(move |(i, j)| (all[i].clone(), all[j].clone())))
        })
        .prop_map(|(n, (a, b))| (n, a, b))
}

fn boundary_char(s: &str, pos: usize) -> String {
    s[pos - 1..pos].to_string()
}

fn edges_consistent(f: &Filling) -> Result<(), String> {
    for idx in 0..f.cells.len() {
        for side in 0..3 {
            let here = f.outer_label(idx, side);
            let there = match neighbor(f.n, idx, side) {
                Neighbor::Cell(j, t) => f.label(j, t).to_string(),
                Neighbor::Alpha(p) => boundary_char(&f.alpha, p),
                Neighbor::Beta(p) => boundary_char(&f.beta, p),
                Neighbor::Gamma(p) => boundary_char(&f.gamma, p),
            };
            if here != there {
                return Err(format!("cell {idx} side {side}: {here} against {there}"));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fillings_are_consistent_distinct_and_counted((n, a, b) in grass_pair(6)) {
        let pieces = Theory::H.pieces();
        let fs = enumerate_fillings(n, &a, &b, &pieces, None).unwrap();
        for f in &fs {
            prop_assert_eq!(edges_consistent(f), Ok(()));
        }
        let distinct: BTreeSet<String> = fs.iter().map(|f| format!("{:?}", f.cells)).collect();
        prop_assert_eq!(distinct.len(), fs.len());

        let (pa, pb) = (string_to_partition(&a).unwrap(), string_to_partition(&b).unwrap());
        let mut expected = 0u64;
        for g in SchubertIndex::all(pa.k, n) {
            expected += lr_tableaux(&pa.lambda, &pb.lambda, &g.lambda, pa.k, n).unwrap();
        }
        prop_assert_eq!(fs.len() as u64, expected);
        prop_assert_eq!(count_fillings(&a, &b, &pieces, None).unwrap(), expected);
    }

    #[test]
    fn products_commute((_n, a, b) in grass_pair(6)) {
        for th in [Theory::H, Theory::K] {
            let ab = expand_product::<IntCoeff>(&a, &b, &th.pieces()).unwrap();
            let ba = expand_product::<IntCoeff>(&b, &a, &th.pieces()).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn k_fillings_are_consistent((n, a, b) in grass_pair(5)) {
        for th in [Theory::K, Theory::KAlt, Theory::HT] {
            for f in enumerate_fillings(n, &a, &b, &th.pieces(), None).unwrap() {
                prop_assert_eq!(edges_consistent(&f), Ok(()));
            }
        }
    }

    #[test]
    fn k_leading_term_is_cohomology((_n, a, b) in grass_pair(6)) {
        let k = expand_product::<IntCoeff>(&a, &b, &Theory::K.pieces()).unwrap();
        let h = expand_product::<IntCoeff>(&a, &b, &Theory::H.pieces()).unwrap();
        let target = codim(&a) + codim(&b);
        let lead: std::collections::BTreeMap<String, IntCoeff> =
            k.into_iter().filter(|(g, c)| codim(g) == target && !c.is_zero()).collect();
        prop_assert_eq!(lead, h);
    }

    #[test]
    fn equivariant_coefficients_are_homogeneous((_n, a, b) in grass_pair(5)) {
        let m = expand_product::<PolyCoeff>(&a, &b, &Theory::HT.pieces()).unwrap();
        for (g, c) in &m {
            let deg = (codim(&a) + codim(&b)) as i64 - codim(g) as i64;
            prop_assert!(deg >= 0);
            for (e, _) in c.0.terms() {
                prop_assert_eq!(e.iter().map(|&x| x as i64).sum::<i64>(), deg);
            }
        }
    }
}

#[test]
fn scaling_preserves_unit_coefficients() {
    let scale = |l: &[usize]| l.iter().map(|p| 2 * p).collect::<Vec<_>>();
    let mut checked = 0;
    for (k, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
        let classes = SchubertIndex::all(k, n);
        let big_n = k + 2 * (n - k);
        for a in &classes {
            for b in &classes {
                for g in &classes {
                    if lr_tableaux(&a.lambda, &b.lambda, &g.lambda, k, n).unwrap() != 1 {
                        continue;
                    }
                    let s = |x: &SchubertIndex| partition_to_string(&SchubertIndex::new(k, big_n, &scale(&x.lambda)).unwrap());
                    let c = coefficient::<IntCoeff>(&s(a), &s(b), &s(g), &Theory::H.pieces()).unwrap();
                    assert_eq!(c.0, BigInt::from(1), "{a:?} {b:?} {g:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn malformed_inputs_are_rejected() {
    let h = Theory::H.pieces();
    assert!(expand_product::<IntCoeff>("0101", "011", &h).is_err());
    assert!(expand_product::<IntCoeff>("0101", "0110", &Theory::H2.pieces()).is_ok());
    assert!(expand_product::<IntCoeff>("0121", "0121", &h).is_err());
    assert!(count_fillings("01", "01", &h, Some("101")).is_err());
}
