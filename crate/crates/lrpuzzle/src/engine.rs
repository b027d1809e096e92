//! Exhaustive puzzle filler on the size-n triangular grid.
//!
//! Cells are visited row by row: U(r,1), D(r,1), U(r,2), ..., U(r,r). Each cell
//! side has a slot holding the label that side must carry; placing a part checks
//! its own slots and writes its labels into the slots of unplaced neighbours.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::coeff::Ring;
use crate::error::{Error, Result};
use crate::pieces::{CoeffTag, Dangle, Orient, OrientedPart, PieceSet, Predicate};

/// Index of U(r,c) in row-major order (1-based r, c).
pub fn up_index(r: usize, c: usize) -> usize {
    (r - 1) * (r - 1) + 2 * (c - 1)
}

/// Index of D(r,c), immediately after U(r,c).
pub fn down_index(r: usize, c: usize) -> usize {
    up_index(r, c) + 1
}

/// (orientation, row, column) of a cell index.
pub fn cell_at(idx: usize) -> (Orient, usize, usize) {
    let mut r = 1;
    while r * r <= idx {
        r += 1;
    }
    let off = idx - (r - 1) * (r - 1);
    let orient = if off.is_multiple_of(2) { Orient::Up } else { Orient::Down };
    (orient, r, off / 2 + 1)
}

/// What lies across one side of a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighbor {
    /// (cell index, side index of that cell).
    Cell(usize, usize),
    /// Position (1-based) in α, read from the SW corner upward.
    Alpha(usize),
    /// Position in β, read from the apex downward.
    Beta(usize),
    /// Position in γ, read left to right.
    Gamma(usize),
}

pub fn neighbor(n: usize, idx: usize, side: usize) -> Neighbor {
    let (o, r, c) = cell_at(idx);
    match (o, side) {
        (Orient::Up, 0) if c == 1 => Neighbor::Alpha(n + 1 - r),
        (Orient::Up, 0) => Neighbor::Cell(down_index(r, c - 1), 1),
        (Orient::Up, 1) if c == r => Neighbor::Beta(r),
        (Orient::Up, 1) => Neighbor::Cell(down_index(r, c), 2),
        (Orient::Up, _) if r == n => Neighbor::Gamma(c),
        (Orient::Up, _) => Neighbor::Cell(down_index(r + 1, c), 0),
        (Orient::Down, 0) => Neighbor::Cell(up_index(r - 1, c), 2),
        (Orient::Down, 1) => Neighbor::Cell(up_index(r, c + 1), 0),
        (Orient::Down, _) => Neighbor::Cell(up_index(r, c), 1),
    }
}

/// Weight indices (i, j) of an equivariant piece whose top half is U(r,c).
pub fn eqvar_indices(n: usize, r: usize, c: usize) -> (usize, usize) {
    (c, n - r + c)
}

/// One placed part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlacedCell {
    pub row: usize,
    pub col: usize,
    pub part_index: usize,
    pub part: OrientedPart,
}

/// A complete puzzle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filling {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub cells: Vec<PlacedCell>,
}

impl Filling {
    /// Product of the piece factors.
    pub fn coefficient<R: Ring>(&self) -> Result<R> {
        let mut c = R::one();
        for cell in &self.cells {
            c = c.mul(&factor::<R>(self.n, cell.row, cell.col, cell.part.coeff)?);
        }
        Ok(c)
    }

    /// Weight positions (i, j) of the equivariant pieces, in cell order.
    pub fn eqvar_factors(&self) -> Vec<(usize, usize)> {
        self.cells.iter().filter(|c| c.part.coeff == CoeffTag::EqVar).map(|c| eqvar_indices(self.n, c.row, c.col)).collect()
    }

    pub fn sign(&self) -> i32 {
        self.cells.iter().filter(|c| c.part.coeff == CoeffTag::MinusOne).fold(1, |s, _| -s)
    }

    pub fn count_piece(&self, name: &str, set: &PieceSet) -> usize {
        self.cells.iter().filter(|c| c.part.part == 0 && set.pieces[c.part.piece].name == name).count()
    }

    /// Label of the given side as seen from inside the cell.
    pub fn label(&self, idx: usize, side: usize) -> &str {
        &self.cells[idx].part.labels[side]
    }

    /// Label of the given side as seen from the neighbouring cell.
    pub fn outer_label(&self, idx: usize, side: usize) -> &str {
        match &self.cells[idx].part.gash {
            Some((s, outer)) if *s == side => outer,
            _ => &self.cells[idx].part.labels[side],
        }
    }
}

fn factor<R: Ring>(n: usize, r: usize, c: usize, tag: CoeffTag) -> Result<R> {
    match tag {
        CoeffTag::One => Ok(R::one()),
        CoeffTag::MinusOne => Ok(R::one().neg()),
        CoeffTag::EqVar => {
            let (i, j) = eqvar_indices(n, r, c);
            R::eqvar(i, j).ok_or_else(|| Error::unsupported("equivariant pieces need a polynomial coefficient ring"))
        }
    }
}

const GASH: u8 = 0x80;

struct CompiledPart {
    orient: Orient,
    labels: [u8; 3],
    gash: Option<(usize, u8)>,
    dangle: Option<Dangle>,
    predicate: Option<Predicate>,
    coeff: CoeffTag,
}

/// A single (α, β, γ-filter) problem with label ids compiled to bytes.
struct Problem<'a> {
    n: usize,
    set: &'a PieceSet,
    parts: Vec<CompiledPart>,
    by_orient: [Vec<usize>; 2],
    boundary: Vec<bool>,
    gamma: Option<Vec<u8>>,
    initial: Vec<u8>,
    id0: u8,
    id1: u8,
    id01: u8,
}

impl<'a> Problem<'a> {
    fn new(alpha: &str, beta: &str, set: &'a PieceSet, gamma: Option<&str>) -> Result<Self> {
        let n = alpha.chars().count();
        if n == 0 || beta.chars().count() != n {
            return Err(Error::invalid(format!("boundary strings '{alpha}' and '{beta}' must be nonempty and of equal length")));
        }
        if let Some(g) = gamma {
            if g.chars().count() != n {
                return Err(Error::invalid(format!("gamma '{g}' must have length {n}")));
            }
        }
        if set.alphabet.len() >= GASH as usize {
            return Err(Error::unsupported("alphabet too large"));
        }
        let id = |l: &str| -> u8 { set.label_id(l).map(|i| i as u8 + 1).unwrap_or(0) };
        let boundary_id = |ch: char| -> Result<u8> {
            let s = ch.to_string();
            if !set.is_boundary(&s) {
                return Err(Error::invalid(format!("label '{s}' is not a boundary label of the {} puzzles", set.theory)));
            }
            Ok(id(&s))
        };
        let a: Vec<u8> = alpha.chars().map(boundary_id).collect::<Result<_>>()?;
        let b: Vec<u8> = beta.chars().map(boundary_id).collect::<Result<_>>()?;
        let g: Option<Vec<u8>> = gamma.map(|g| g.chars().map(boundary_id).collect::<Result<_>>()).transpose()?;
        let parts: Vec<CompiledPart> = set
            .oriented
            .iter()
            .map(|p| CompiledPart {
                orient: p.orient,
                labels: [id(&p.labels[0]), id(&p.labels[1]), id(&p.labels[2])],
                gash: p.gash.as_ref().map(|(s, l)| (*s, id(l))),
                dangle: p.dangle,
                predicate: p.predicate,
                coeff: p.coeff,
            })
            .collect();
        let by_orient = [
            (0..parts.len()).filter(|&i| parts[i].orient == Orient::Up).collect(),
            (0..parts.len()).filter(|&i| parts[i].orient == Orient::Down).collect(),
        ];
        let mut boundary = vec![false; set.alphabet.len() + 1];
        for l in &set.boundary {
            boundary[id(l) as usize] = true;
        }
        let mut initial = vec![0u8; 3 * n * n];
        for r in 1..=n {
            initial[3 * up_index(r, 1)] = a[n - r];
            initial[3 * up_index(r, r) + 1] = b[r - 1];
        }
        Ok(Problem { n, set, parts, by_orient, boundary, gamma: g, initial, id0: id("0"), id1: id("1"), id01: id("01") })
    }

    fn cells(&self) -> usize {
        self.n * self.n
    }

    fn key(&self, p: usize, slots: &[u8]) -> Vec<u8> {
        let (_, r, _) = cell_at(p);
        let end = ((r + 1) * (r + 1)).min(self.cells());
        let mut k = Vec::with_capacity(2 + 3 * (end - p));
        k.push(p as u8);
        k.extend_from_slice(&slots[3 * p..3 * end]);
        k
    }

    fn predicate_holds(&self, pred: Predicate, slots: &[u8], r: usize, c: usize) -> bool {
        match pred {
            Predicate::AfterEquivariant => r < self.n && self.id01 != 0 && slots[3 * down_index(r + 1, c)] == self.id01,
            Predicate::ZerosThenOne => {
                let tops = (c + 1..r).map(|cc| slots[3 * down_index(r, cc)] & !GASH);
                let beta = std::iter::once(slots[3 * up_index(r, r) + 1] & !GASH);
                let claimed = slots[3 * up_index(r, c + 1) + 1] & GASH != 0;
                !claimed && tops.chain(beta).next() == Some(self.id1)
            }
        }
    }

    /// Places part `pi` at cell `idx`, returning the new slots and the γ label
    /// written if the cell lies on the bottom row.
    fn place(&self, slots: &[u8], idx: usize, pi: usize) -> Option<(Vec<u8>, Option<u8>)> {
        let part = &self.parts[pi];
        let (_, r, c) = cell_at(idx);
        if let Some(pred) = part.predicate {
            if !self.predicate_holds(pred, slots, r, c) {
                return None;
            }
        }
        let mut st = slots.to_vec();
        let mut gamma = None;
        for s in 0..3 {
            let own = st[3 * idx + s];
            let label = part.labels[s];
            let gash = part.gash.filter(|(gs, _)| *gs == s).map(|(_, outer)| outer);
            if own != 0 {
                let expected = match gash {
                    Some(_) if own & GASH != 0 => return None,
                    Some(outer) => outer,
                    None => label,
                };
                if own & !GASH != expected {
                    return None;
                }
                continue;
            }
            match neighbor(self.n, idx, s) {
                Neighbor::Cell(j, sj) => {
                    st[3 * j + sj] = match gash {
                        Some(outer) => outer | GASH,
                        None => label,
                    };
                }
                Neighbor::Gamma(gc) => {
                    if gash.is_some() || !self.boundary[label as usize] {
                        return None;
                    }
                    if let Some(g) = &self.gamma {
                        if g[gc - 1] != label {
                            return None;
                        }
                    }
                    gamma = Some(label);
                }
                Neighbor::Alpha(_) | Neighbor::Beta(_) => return None,
            }
        }
        if let Some(d) = part.dangle {
            if r >= self.n {
                return None;
            }
            let (x, y) = match d {
                Dangle::SouthWest => ((down_index(r + 1, c), 1, self.id0), (up_index(r + 1, c + 1), 0, self.id1)),
                Dangle::SouthEast => ((up_index(r + 1, c + 1), 1, self.id0), (down_index(r + 1, c + 1), 2, self.id1)),
            };
            for (cell, side, l) in [x, y] {
                if st[3 * cell + side] != 0 {
                    return None;
                }
                st[3 * cell + side] = l | GASH;
            }
        }
        Some((st, gamma))
    }

    fn candidates(&self, idx: usize) -> &[usize] {
        match cell_at(idx).0 {
            Orient::Up => &self.by_orient[0],
            Orient::Down => &self.by_orient[1],
        }
    }

    fn count(&self, p: usize, slots: &[u8], memo: &mut HashMap<Vec<u8>, u64>) -> u64 {
        if p == self.cells() {
            return 1;
        }
        let key = self.key(p, slots);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0u64;
        for &pi in self.candidates(p) {
            if let Some((st, _)) = self.place(slots, p, pi) {
                total = total.saturating_add(self.count(p + 1, &st, memo));
            }
        }
        memo.insert(key, total);
        total
    }

    fn expand<R: Ring>(
        &self,
        p: usize,
        slots: &[u8],
        memo: &mut HashMap<Vec<u8>, Rc<BTreeMap<Vec<u8>, R>>>,
    ) -> Result<Rc<BTreeMap<Vec<u8>, R>>> {
        if p == self.cells() {
            let mut m = BTreeMap::new();
            m.insert(Vec::new(), R::one());
            return Ok(Rc::new(m));
        }
        let key = self.key(p, slots);
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let (_, r, c) = cell_at(p);
        let mut out: BTreeMap<Vec<u8>, R> = BTreeMap::new();
        for &pi in self.candidates(p) {
            let Some((st, g)) = self.place(slots, p, pi) else { continue };
            let sub = self.expand::<R>(p + 1, &st, memo)?;
            if sub.is_empty() {
                continue;
            }
            let f = factor::<R>(self.n, r, c, self.parts[pi].coeff)?;
            for (suffix, coeff) in sub.iter() {
                let mut k = Vec::with_capacity(suffix.len() + 1);
                k.extend(g);
                k.extend_from_slice(suffix);
                let v = coeff.mul(&f);
                let e = out.entry(k).or_insert_with(R::zero);
                e.add_assign(&v);
            }
        }
        out.retain(|_, v| !v.is_zero());
        let rc = Rc::new(out);
        memo.insert(key, rc.clone());
        Ok(rc)
    }

    fn decode(&self, ids: &[u8]) -> String {
        ids.iter().map(|&i| self.set.alphabet[i as usize - 1].as_str()).collect()
    }

    fn enumerate(
        &self,
        p: usize,
        slots: &[u8],
        stack: &mut Vec<usize>,
        gamma: &mut Vec<u8>,
        memo: &mut HashMap<Vec<u8>, u64>,
        out: &mut Vec<(Vec<usize>, Vec<u8>)>,
    ) {
        if p == self.cells() {
            out.push((stack.clone(), gamma.clone()));
            return;
        }
        for &pi in self.candidates(p) {
            let Some((st, g)) = self.place(slots, p, pi) else { continue };
            if self.count(p + 1, &st, memo) == 0 {
                continue;
            }
            stack.push(pi);
            gamma.extend(g);
            self.enumerate(p + 1, &st, stack, gamma, memo, out);
            if g.is_some() {
                gamma.pop();
            }
            stack.pop();
        }
    }
}

/// Every filling with NW boundary α, NE boundary β and, if given, S boundary γ,
/// in row-major placement order with catalog order at each cell.
pub fn enumerate_fillings(n: usize, alpha: &str, beta: &str, pieces: &PieceSet, gamma_filter: Option<&str>) -> Result<Vec<Filling>> {
    let prob = Problem::new(alpha, beta, pieces, gamma_filter)?;
    if prob.n != n {
        return Err(Error::invalid(format!("boundary strings have length {} but n = {n}", prob.n)));
    }
    let mut memo = HashMap::new();
    let mut raw = Vec::new();
    prob.enumerate(0, &prob.initial, &mut Vec::new(), &mut Vec::new(), &mut memo, &mut raw);
    Ok(raw
        .into_iter()
        .map(|(parts, gamma)| Filling {
            n,
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            gamma: prob.decode(&gamma),
            cells: parts
                .iter()
                .enumerate()
                .map(|(idx, &pi)| {
                    let (_, row, col) = cell_at(idx);
                    PlacedCell { row, col, part_index: pi, part: pieces.oriented[pi].clone() }
                })
                .collect(),
        })
        .collect())
}

/// Number of fillings (each counted once, regardless of sign or weight).
pub fn count_fillings(alpha: &str, beta: &str, pieces: &PieceSet, gamma_filter: Option<&str>) -> Result<u64> {
    let prob = Problem::new(alpha, beta, pieces, gamma_filter)?;
    Ok(prob.count(0, &prob.initial, &mut HashMap::new()))
}

/// The product σ_α·σ_β as a map γ → coefficient, zero entries removed.
pub fn expand_product<R: Ring>(alpha: &str, beta: &str, pieces: &PieceSet) -> Result<BTreeMap<String, R>> {
    expand_filtered(alpha, beta, pieces, None)
}

fn expand_filtered<R: Ring>(alpha: &str, beta: &str, pieces: &PieceSet, gamma: Option<&str>) -> Result<BTreeMap<String, R>> {
    let prob = Problem::new(alpha, beta, pieces, gamma)?;
    let m = prob.expand::<R>(0, &prob.initial, &mut HashMap::new())?;
    Ok(m.iter().map(|(k, v)| (prob.decode(k), v.clone())).collect())
}

/// The single coefficient of σ_γ in σ_α·σ_β.
pub fn coefficient<R: Ring>(alpha: &str, beta: &str, gamma: &str, pieces: &PieceSet) -> Result<R> {
    let m = expand_filtered::<R>(alpha, beta, pieces, Some(gamma))?;
    Ok(m.get(gamma).cloned().unwrap_or_else(R::zero))
}

/// Exponent-free view of an expansion with sums as BigInt, for tests and sweeps.
pub fn specialize_expansion<R: Ring>(m: &BTreeMap<String, R>) -> BTreeMap<String, BigInt> {
    m.iter().map(|(k, v)| (k.clone(), v.specialize())).filter(|(_, v)| *v != BigInt::from(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{IntCoeff, LaurentCoeff, PolyCoeff};
    use crate::pieces::*;

    fn ints(m: &BTreeMap<String, IntCoeff>) -> Vec<(String, i64)> {
        m.iter().map(|(k, v)| (k.clone(), v.to_i64().unwrap())).collect()
    }

    #[test]
    fn grid_indexing() {
        for n in 1..6 {
            let mut seen = vec![false; n * n];
            for r in 1..=n {
                for c in 1..=r {
                    let u = up_index(r, c);
                    assert_eq!(cell_at(u), (Orient::Up, r, c));
                    seen[u] = true;
                    if c < r {
                        assert_eq!(cell_at(down_index(r, c)), (Orient::Down, r, c));
                        seen[down_index(r, c)] = true;
                    }
                }
            }
            assert!(seen.iter().all(|&s| s));
            for idx in 0..n * n {
                for s in 0..3 {
                    if let Neighbor::Cell(j, sj) = neighbor(n, idx, s) {
                        assert_eq!(neighbor(n, j, sj), Neighbor::Cell(idx, s));
                    }
                }
            }
        }
    }

    #[test]
    fn basic_cohomology() {
        let p = pieces_cohomology_1step();
        let m = expand_product::<IntCoeff>("0101", "0101", &p).unwrap();
        assert_eq!(ints(&m), vec![("0110".into(), 1), ("1001".into(), 1)]);
        let f = enumerate_fillings(4, "0101", "0101", &p, None).unwrap();
        assert_eq!(f.len(), 2);
        let gs: Vec<&str> = f.iter().map(|x| x.gamma.as_str()).collect();
        assert!(gs.contains(&"0110") && gs.contains(&"1001"));
        assert_eq!(enumerate_fillings(6, "010101", "010101", &p, Some("101010")).unwrap().len(), 2);
        assert_eq!(enumerate_fillings(1, "1", "1", &p, None).unwrap().len(), 1);
        assert_eq!(coefficient::<IntCoeff>("01", "01", "01", &p).unwrap(), IntCoeff::from(1));
        assert_eq!(coefficient::<IntCoeff>("01", "01", "10", &p).unwrap(), IntCoeff::from(0));
        assert_eq!(coefficient::<IntCoeff>("10", "01", "10", &p).unwrap(), IntCoeff::from(1));
    }

    #[test]
    fn basic_k() {
        for v in [KVariant::Original, KVariant::Alternate] {
            let m = expand_product::<IntCoeff>("0101", "0101", &pieces_ktheory(v)).unwrap();
            assert_eq!(ints(&m), vec![("0110".into(), 1), ("1001".into(), 1), ("1010".into(), -1)], "{v:?}");
        }
    }

    #[test]
    fn basic_ht() {
        let m = expand_product::<PolyCoeff>("010", "010", &pieces_equivariant_1step()).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m["100"], PolyCoeff::one());
        assert_eq!(m["010"].to_string(), "y3 - y2");
    }

    #[test]
    fn basic_kt() {
        let set = pieces_equivariant_k_1step();
        let m = expand_product::<LaurentCoeff>("010", "010", &set).unwrap();
        let w = LaurentCoeff::t(2, 1).mul(&LaurentCoeff::t(3, -1));
        assert_eq!(m["100"], w);
        assert_eq!(m["010"], LaurentCoeff::one().sub(&w));
        let m = expand_product::<LaurentCoeff>("101", "101", &set).unwrap();
        let w = LaurentCoeff::t(1, 1).mul(&LaurentCoeff::t(2, -1));
        assert_eq!(m.len(), 2);
        assert_eq!(m["110"], w);
        assert_eq!(m["101"], LaurentCoeff::one().sub(&w));
        assert_eq!(enumerate_fillings(3, "101", "101", &set, None).unwrap().len(), 3);
    }

    #[test]
    fn bad_inputs() {
        let p = pieces_cohomology_1step();
        assert!(expand_product::<IntCoeff>("010", "01", &p).is_err());
        assert!(expand_product::<IntCoeff>("012", "010", &p).is_err());
        assert!(expand_product::<IntCoeff>("010", "010", &pieces_equivariant_1step()).is_err());
    }
}
