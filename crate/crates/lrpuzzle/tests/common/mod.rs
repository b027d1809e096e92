#![allow(dead_code)]

use std::collections::BTreeMap;

use lrpuzzle::coeff::{IntCoeff, Ring};
use lrpuzzle::schubert::{flagstring_from_upperlower, FlagString, Space, UpperLowerIndex};

/// Every r-step space with `n` in `ns`.
pub fn spaces(r: usize, ns: impl IntoIterator<Item = usize>) -> Vec<Space> {
    let mut out = Vec::new();
    for n in ns {
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(s) = stack.pop() {
            if s.len() == r {
                out.push(Space { steps: s, n });
                continue;
            }
            for x in s.last().map_or(1, |l| l + 1)..n {
                let mut t = s.clone();
                t.push(x);
                stack.push(t);
            }
        }
    }
    out.sort_by(|a, b| (a.n, &a.steps).cmp(&(b.n, &b.steps)));
    out
}

/// Every ordered pair of classes of the space.
pub fn ordered_pairs(space: &Space) -> Vec<(String, String)> {
    let all: Vec<String> = FlagString::all(&space.steps, space.n).unwrap().iter().map(|f| f.as_string()).collect();
    all.iter().flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

pub fn ul(s: &str, steps: &[usize], n: usize) -> String {
    flagstring_from_upperlower(&UpperLowerIndex::parse(s).unwrap(), steps, n).unwrap().as_string()
}

pub fn ints(m: &BTreeMap<String, IntCoeff>) -> BTreeMap<String, i64> {
    m.iter().filter(|(_, c)| !c.is_zero()).map(|(g, c)| (g.clone(), c.to_i64().unwrap())).collect()
}

pub fn map<const N: usize>(entries: [(&str, i64); N]) -> BTreeMap<String, i64> {
    entries.iter().map(|(g, c)| (g.to_string(), *c)).collect()
}

pub fn codim(s: &str) -> usize {
    lrpuzzle::schubert::inversions(&lrpuzzle::schubert::parse_digits(s).unwrap())
}
