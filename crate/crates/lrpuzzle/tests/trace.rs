mod common;

use common::{ordered_pairs, spaces};
use lrpuzzle::engine::enumerate_fillings;
use lrpuzzle::pieces::Theory;
use lrpuzzle::trace::{check_branching, shapes, trace_filling, trace_tsv};

#[test]
fn readings_branch_consistently() {
    for th in [Theory::H, Theory::K, Theory::KAlt, Theory::HT, Theory::H2] {
        let r = th.steps();
        for sp in spaces(r, r + 1..=4) {
            for (a, b) in ordered_pairs(&sp) {
                let fs = enumerate_fillings(sp.n, &a, &b, &th.pieces(), None).unwrap();
                check_branching(&fs, th).unwrap_or_else(|e| panic!("{th} {a} * {b}: {e}"));
            }
        }
    }
}

#[test]
fn gashed_puzzle_shares_a_reading() {
    let fs = enumerate_fillings(3, "010", "010", &Theory::KT.pieces(), None).unwrap();
    assert_eq!(fs.len(), 3);
    assert!(check_branching(&fs, Theory::KT).is_err());
}

#[test]
fn one_reading_per_shape() {
    let fs = enumerate_fillings(5, "01010", "00101", &Theory::H.pieces(), None).unwrap();
    assert!(!fs.is_empty());
    for f in &fs {
        let t = trace_filling(f, Theory::H).unwrap();
        assert_eq!(t.len(), shapes(5).len());
        assert!(t.iter().all(|s| s.alpha.is_some() && s.beta.is_some()));
        assert_eq!(trace_tsv(&t).lines().count(), t.len());
    }
}
