//! Reading (α, β) from partially completed puzzles along the degeneration order.
//!
//! A partial puzzle at step i consists of the first r complete rows plus the
//! first c (up, down) pairs of row r+1; the last pair of a row is placed
//! together with the row's final up triangle. Its frontier is read as follows:
//! the remaining NW boundary edges, then the exposed horizontal edges and the
//! leading edge from left to right, then the remaining NE boundary edges.
//! A horizontal edge labelled by a tree (A, B) is read as if a triangle with a
//! SW/NE edge A and a NW/SE edge B were glued beneath it.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::engine::{down_index, neighbor, up_index, Filling, Neighbor};
use crate::error::{Error, Result};
use crate::pieces::{display_label, Dangle, LabelTree, Theory};

/// One exposed item of the frontier, in left-to-right order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FrontierItem {
    Horizontal(String),
    Lead(String),
    /// Gash dangling southwest from the vertex at this position.
    DangleSw,
    /// Gash dangling southeast from the vertex at this position.
    DangleSe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialPuzzle {
    pub n: usize,
    /// Remaining NW boundary labels, from the SW corner upward.
    pub nw: Vec<String>,
    pub items: Vec<FrontierItem>,
    /// Remaining NE boundary labels, from the frontier downward.
    pub ne: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    /// None when no reading rule covers an exposed label.
    pub alpha: Option<String>,
    pub beta: Option<String>,
}

/// Staircase shapes (complete rows r, pairs c in row r+1) of the degeneration order.
pub fn shapes(n: usize) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (1..n).flat_map(|r| (0..r).map(move |c| (r, c))).collect();
    v.push((n, 0));
    v
}

/// Number of cells placed at shape (r, c).
pub fn placed_cells(r: usize, c: usize) -> usize {
    r * r + 2 * c
}

fn unfilled_label(f: &Filling, idx: usize, side: usize) -> String {
    let s = match neighbor(f.n, idx, side) {
        Neighbor::Cell(j, s) => f.label(j, s).to_string(),
        Neighbor::Gamma(c) => f.gamma[c - 1..c].to_string(),
        Neighbor::Alpha(i) => f.alpha[i - 1..i].to_string(),
        Neighbor::Beta(i) => f.beta[i - 1..i].to_string(),
    };
    display_label(&s).to_string()
}

fn dangle_at(f: &Filling, r: usize, c: usize) -> Option<Dangle> {
    if c == 0 || c >= r || r > f.n {
        return None;
    }
    f.cells[down_index(r, c)].part.dangle
}

fn push_dangle(items: &mut Vec<FrontierItem>, d: Option<Dangle>, sw: bool, se: bool) {
    match d {
        Some(Dangle::SouthWest) if sw => items.push(FrontierItem::DangleSw),
        Some(Dangle::SouthEast) if se => items.push(FrontierItem::DangleSe),
        _ => {}
    }
}

impl PartialPuzzle {
    /// Truncation of a complete filling to step `step` of the degeneration order.
    pub fn from_filling(f: &Filling, step: usize) -> Result<PartialPuzzle> {
        let n = f.n;
        let sh = shapes(n);
        let &(r, c) = sh.get(step).ok_or_else(|| Error::invalid(format!("step {step} out of range for n = {n}")))?;
        let mut items = Vec::new();
        let nw_len = if r == n {
            0
        } else if c >= 1 {
            n - r - 1
        } else {
            n - r
        };
        let nw = f.alpha[..nw_len].chars().map(String::from).collect();
        let ne = f.beta[r..].chars().map(String::from).collect();
        for cc in 1..=c {
            items.push(FrontierItem::Horizontal(unfilled_label(f, up_index(r + 1, cc), 2)));
            push_dangle(&mut items, dangle_at(f, r + 1, cc), true, true);
        }
        if c >= 1 {
            items.push(FrontierItem::Lead(unfilled_label(f, down_index(r + 1, c), 1)));
            push_dangle(&mut items, dangle_at(f, r, c), false, true);
        }
        for cc in c + 1..=r {
            items.push(FrontierItem::Horizontal(unfilled_label(f, up_index(r, cc), 2)));
            push_dangle(&mut items, dangle_at(f, r, cc), true, true);
        }
        Ok(PartialPuzzle { n, nw, items, ne })
    }
}

enum Edge {
    Digit(u8),
    Pair(u8, u8),
    TwoOverOneZero,
    TwoOneOverZero,
    KLead,
    Other,
}

fn classify(label: &str) -> Edge {
    if label == "10K" {
        return Edge::KLead;
    }
    let Ok(t) = label.parse::<LabelTree>() else { return Edge::Other };
    use LabelTree::*;
    match &t {
        Leaf(d) => Edge::Digit(*d),
        Node(a, b) => match (a.as_ref(), b.as_ref()) {
            (Leaf(a), Leaf(b)) => Edge::Pair(*a, *b),
            (Leaf(2), Node(x, y)) if **x == Leaf(1) && **y == Leaf(0) => Edge::TwoOverOneZero,
            (Node(x, y), Leaf(0)) if **x == Leaf(2) && **y == Leaf(1) => Edge::TwoOneOverZero,
            _ => Edge::Other,
        },
    }
}

fn split_tree(label: &str) -> Option<(String, String)> {
    match label.parse::<LabelTree>().ok()? {
        LabelTree::Leaf(_) => None,
        LabelTree::Node(a, b) => Some((a.to_string(), b.to_string())),
    }
}

enum AlphaEffect {
    /// The last `from` before position `at` becomes `to`.
    Prev { at: usize, from: u8, to: u8 },
    /// The first 1 at or after `at` is exchanged with the 0 to its left.
    Swap { at: usize },
}

/// The first `from` at or after position `at` in β becomes `to`.
struct BetaEffect {
    at: usize,
    from: u8,
    to: u8,
}

#[derive(Default)]
struct Reading {
    alpha: Vec<u8>,
    beta: Vec<u8>,
    alpha_fx: Vec<AlphaEffect>,
    beta_fx: Vec<BetaEffect>,
    alpha_err: Option<String>,
    beta_err: Option<String>,
}

impl Reading {
    fn sw_ne(&mut self, label: &str) {
        let bl = self.beta.len();
        match classify(label) {
            Edge::Digit(d) => self.alpha.push(d),
            Edge::Pair(a, b) if a > b => {
                self.alpha.push(b);
                self.beta_fx.push(BetaEffect { at: bl, from: a, to: b });
            }
            Edge::KLead => {
                self.alpha.push(0);
                self.alpha_fx.push(AlphaEffect::Swap { at: self.alpha.len() });
                self.beta_fx.push(BetaEffect { at: bl, from: 1, to: 0 });
            }
            Edge::TwoOverOneZero => {
                self.alpha.push(1);
                self.beta_fx.push(BetaEffect { at: bl, from: 2, to: 1 });
                self.beta_fx.push(BetaEffect { at: bl, from: 1, to: 0 });
            }
            Edge::TwoOneOverZero => {
                self.alpha.push(0);
                self.alpha_fx.push(AlphaEffect::Prev { at: self.alpha.len() - 1, from: 2, to: 1 });
                self.beta_fx.push(BetaEffect { at: bl, from: 2, to: 0 });
            }
            _ => {
                let msg = format!("no reading rule for a SW/NE edge labelled {label}");
                self.alpha_err.get_or_insert(msg.clone());
                self.beta_err.get_or_insert(msg);
            }
        }
    }

    fn nw_se(&mut self, label: &str) {
        match classify(label) {
            Edge::Digit(d) => self.beta.push(d),
            Edge::Pair(a, b) if a > b => {
                self.beta.push(a);
                self.alpha_fx.push(AlphaEffect::Prev { at: self.alpha.len(), from: b, to: a });
            }
            _ => {
                let msg = format!("no reading rule for a NW/SE edge labelled {label}");
                self.alpha_err.get_or_insert(msg.clone());
                self.beta_err.get_or_insert(msg);
            }
        }
    }

    fn horizontal(&mut self, label: &str) {
        match split_tree(label) {
            None if label.parse::<LabelTree>().is_ok() => {
                let d = label.as_bytes()[0] - b'0';
                self.alpha.push(d);
                self.beta.push(d);
            }
            None => {
                let msg = format!("no reading rule for a horizontal edge labelled {label}");
                self.alpha_err.get_or_insert(msg.clone());
                self.beta_err.get_or_insert(msg);
            }
            Some((a, b)) => {
                self.nw_se(&b);
                self.sw_ne(&a);
            }
        }
    }
}

fn digits(label: &str) -> Result<u8> {
    match label.as_bytes() {
        [d @ b'0'..=b'9'] => Ok(d - b'0'),
        _ => Err(Error::invalid(format!("boundary label {label} is not a digit"))),
    }
}

fn check_theory(p: &PartialPuzzle, theory: Theory) -> Result<()> {
    for it in &p.items {
        match it {
            FrontierItem::DangleSw | FrontierItem::DangleSe if theory != Theory::KT => {
                return Err(Error::invalid(format!("dangling gashes do not occur in theory {}", theory.tag())));
            }
            FrontierItem::Lead(l) if l == "10K" && theory != Theory::KAlt => {
                return Err(Error::invalid(format!("label 10K does not occur in theory {}", theory.tag())));
            }
            _ => {}
        }
    }
    Ok(())
}

fn build(p: &PartialPuzzle, theory: Theory) -> Result<Reading> {
    check_theory(p, theory)?;
    let mut rd = Reading::default();
    for l in &p.nw {
        rd.alpha.push(digits(l)?);
    }
    for it in &p.items {
        match it {
            FrontierItem::Horizontal(l) => rd.horizontal(display_label(l)),
            FrontierItem::Lead(l) => rd.sw_ne(display_label(l)),
            FrontierItem::DangleSw => rd.alpha_fx.push(AlphaEffect::Prev { at: rd.alpha.len(), from: 0, to: 1 }),
            FrontierItem::DangleSe => rd.beta_fx.push(BetaEffect { at: rd.beta.len(), from: 1, to: 0 }),
        }
    }
    for l in &p.ne {
        rd.beta.push(digits(l)?);
    }
    Ok(rd)
}

fn render(v: &[u8]) -> String {
    v.iter().map(|d| char::from(b'0' + d)).collect()
}

/// α of a partial puzzle.
pub fn read_alpha(p: &PartialPuzzle, theory: Theory) -> Result<String> {
    let mut rd = build(p, theory)?;
    if let Some(e) = rd.alpha_err {
        return Err(Error::unsupported(e));
    }
    for fx in &rd.alpha_fx {
        match *fx {
            AlphaEffect::Prev { at, from, to } => {
                let i = (0..at.min(rd.alpha.len()))
                    .rev()
                    .find(|&i| rd.alpha[i] == from)
                    .ok_or_else(|| Error::invalid(format!("no {from} precedes position {at} in α")))?;
                rd.alpha[i] = to;
            }
            AlphaEffect::Swap { at } => {
                let i = (at..rd.alpha.len())
                    .find(|&i| rd.alpha[i] == 1)
                    .ok_or_else(|| Error::invalid(format!("no 1 follows position {at} in α")))?;
                if i == 0 || rd.alpha[i - 1] != 0 {
                    return Err(Error::invalid("the first 1 after a 10K edge is not preceded by 0"));
                }
                rd.alpha.swap(i - 1, i);
            }
        }
    }
    Ok(render(&rd.alpha))
}

/// β of a partial puzzle.
pub fn read_beta(p: &PartialPuzzle, theory: Theory) -> Result<String> {
    let mut rd = build(p, theory)?;
    if let Some(e) = rd.beta_err {
        return Err(Error::unsupported(e));
    }
    for fx in &rd.beta_fx {
        let i = (fx.at..rd.beta.len())
            .find(|&i| rd.beta[i] == fx.from)
            .ok_or_else(|| Error::invalid(format!("no {} follows position {} in β", fx.from, fx.at)))?;
        rd.beta[i] = fx.to;
    }
    Ok(render(&rd.beta))
}

/// One (α, β) reading per step of the degeneration order.
pub fn trace_filling(f: &Filling, theory: Theory) -> Result<Vec<TraceStep>> {
    (0..shapes(f.n).len())
        .map(|step| {
            let p = PartialPuzzle::from_filling(f, step)?;
            Ok(TraceStep { step, alpha: read_alpha(&p, theory).ok(), beta: read_beta(&p, theory).ok() })
        })
        .collect()
}

/// TSV lines "step\talpha\tbeta"; undefined readings print as "-".
pub fn trace_tsv(steps: &[TraceStep]) -> String {
    steps.iter().map(|s| format!("{}\t{}\t{}\n", s.step, s.alpha.as_deref().unwrap_or("-"), s.beta.as_deref().unwrap_or("-"))).collect()
}

/// `(alpha, beta)` read from a partial puzzle.
type ReadingPair = (String, String);

/// Checks that the partial puzzles one step below any partial puzzle have
/// pairwise distinct readings. Returns the first offending step on failure.
/// Gashed puzzles and equivariant two-step puzzles can repeat a sibling's
/// reading, so this holds only for h, k, kalt, ht and h2.
pub fn check_branching(fillings: &[Filling], theory: Theory) -> std::result::Result<(), String> {
    let Some(first) = fillings.first() else { return Ok(()) };
    let sh = shapes(first.n);
    for step in 0..sh.len().saturating_sub(1) {
        let (r0, c0) = sh[step];
        let (r1, c1) = sh[step + 1];
        let (k0, k1) = (placed_cells(r0, c0), placed_cells(r1, c1));
        let mut children: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, ReadingPair>> = BTreeMap::new();
        for f in fillings {
            let key: Vec<usize> = f.cells.iter().map(|c| c.part_index).collect();
            let p = PartialPuzzle::from_filling(f, step + 1).map_err(|e| e.to_string())?;
            let reading = (read_alpha(&p, theory).map_err(|e| e.to_string())?, read_beta(&p, theory).map_err(|e| e.to_string())?);
            children.entry(key[..k0].to_vec()).or_default().insert(key[..k1].to_vec(), reading);
        }
        for kids in children.values() {
            let distinct: BTreeSet<&(String, String)> = kids.values().collect();
            if distinct.len() != kids.len() {
                return Err(format!("{} * {}: repeated child reading after step {step}", first.alpha, first.beta));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::enumerate_fillings;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn shape_count() {
        assert_eq!(shapes(1), vec![(1, 0)]);
        assert_eq!(shapes(4).len(), 7);
        assert_eq!(shapes(6).len(), 16);
    }

    #[test]
    fn figure_partial_puzzles() {
        use FrontierItem::*;
        let pa = PartialPuzzle {
            n: 5,
            nw: s(&["0"]),
            items: vec![Horizontal("1".into()), Lead("10".into()), Horizontal("0".into()), Horizontal("10".into())],
            ne: s(&["0", "0"]),
        };
        assert_eq!(read_alpha(&pa, Theory::H).unwrap(), "01001");
        let pb = PartialPuzzle {
            n: 5,
            nw: s(&["0"]),
            items: vec![Horizontal("10".into()), Lead("10".into()), Horizontal("0".into()), Horizontal("1".into())],
            ne: s(&["1", "1"]),
        };
        assert_eq!(read_beta(&pb, Theory::H).unwrap(), "00011");
    }

    #[test]
    fn basic_traces_end_at_gamma() {
        let fs = enumerate_fillings(4, "0101", "0101", &Theory::H.pieces(), None).unwrap();
        for f in &fs {
            let t = trace_filling(f, Theory::H).unwrap();
            assert_eq!(t.len(), 7);
            assert_eq!(t[0].alpha.as_deref(), Some("0101"));
            assert_eq!(t[0].beta.as_deref(), Some("0101"));
            assert_eq!(t[6].alpha.as_deref(), Some(f.gamma.as_str()));
            assert_eq!(t[6].beta.as_deref(), Some(f.gamma.as_str()));
        }
        check_branching(&fs, Theory::H).unwrap();
    }
}
