//! The Grassmannian Mondrian tableau game.
//!
//! Squares are intervals of basis vectors along the anti-diagonal of the
//! outer square, which always occupies `[1, m]`. Moving a square
//! "anti-diagonally up" shifts its interval by +1.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::schubert::{FlagString, SchubertIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub lo: usize,
    pub hi: usize,
}

impl Square {
    pub fn new(lo: usize, hi: usize) -> Self {
        Square { lo, hi }
    }

    pub fn side(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn contains(&self, o: &Square) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn strictly_contains(&self, o: &Square) -> bool {
        self.contains(o) && self != o
    }

    pub fn meets(&self, o: &Square) -> bool {
        self.lo.max(o.lo) <= self.hi.min(o.hi)
    }

    /// Overlapping or sharing a corner.
    pub fn meets_or_touches(&self, o: &Square) -> bool {
        self.lo.max(o.lo) <= self.hi.min(o.hi) + 1
    }

    pub fn span(&self, o: &Square) -> Square {
        Square::new(self.lo.min(o.lo), self.hi.max(o.hi))
    }

    pub fn intersect(&self, o: &Square) -> Option<Square> {
        let (lo, hi) = (self.lo.max(o.lo), self.hi.min(o.hi));
        (lo <= hi).then_some(Square::new(lo, hi))
    }

    fn shifted(&self, by: usize) -> Square {
        Square::new(self.lo + by, self.hi + by)
    }

    /// The square left after deleting basis vector `p`.
    fn without(&self, p: usize) -> Square {
        if p < self.lo {
            Square::new(self.lo - 1, self.hi - 1)
        } else if p <= self.hi {
            Square::new(self.lo, self.hi - 1)
        } else {
            *self
        }
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    A(usize),
    B(usize),
    D(usize),
    Outer,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::A(i) => write!(f, "A{i}"),
            Tag::B(i) => write!(f, "B{i}"),
            Tag::D(i) => write!(f, "D{i}"),
            Tag::Outer => write!(f, "O"),
        }
    }
}

/// `a[t]` is `A_{i+t}` and `b[t]` is `B_{t+1}`, where `i = d.len() + 1`;
/// `A_k = B_k` is the outer square `[1, m]` and is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MondrianTableau {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub a: Vec<Square>,
    pub b: Vec<Square>,
    pub d: Vec<Square>,
}

impl fmt::Display for MondrianTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.squares().iter().map(|(t, s)| format!("{t}:{s}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

enum Active {
    A,
    D(usize),
}

impl MondrianTableau {
    pub fn outer(&self) -> Square {
        Square::new(1, self.m)
    }

    fn first_a(&self) -> usize {
        self.d.len() + 1
    }

    pub fn squares(&self) -> Vec<(Tag, Square)> {
        let i = self.first_a();
        let mut v = vec![(Tag::Outer, self.outer())];
        v.extend(self.a.iter().enumerate().map(|(t, s)| (Tag::A(i + t), *s)));
        v.extend(self.b.iter().enumerate().map(|(t, s)| (Tag::B(t + 1), *s)));
        v.extend(self.d.iter().enumerate().map(|(t, s)| (Tag::D(t + 1), *s)));
        v
    }

    fn delete_basis(&mut self, p: usize) {
        for s in self.a.iter_mut().chain(self.b.iter_mut()).chain(self.d.iter_mut()) {
            *s = s.without(p);
        }
        self.m -= 1;
    }

    /// The 1-based index of the unnested D square, if any.
    pub fn unnested(&self) -> Option<usize> {
        (1..self.d.len()).find(|&j| !self.d[..j].iter().all(|s| self.d[j].contains(s))).map(|j| j + 1)
    }

    pub fn is_terminal(&self) -> bool {
        self.a.is_empty() && self.b.is_empty() && self.unnested().is_none()
    }

    /// The Schubert class of a terminal tableau: the j-th square of the flag
    /// `D_1 < ... < D_{k-1} < outer` has side `n-k+j-nu_j`.
    pub fn to_partition(&self) -> Result<SchubertIndex> {
        if !self.is_terminal() {
            return Err(Error::invalid(format!("tableau {self} is not terminal")));
        }
        let sides: Vec<usize> = self.d.iter().map(Square::side).chain(std::iter::once(self.m)).collect();
        let (n, k) = (self.n, self.k);
        let nu: Vec<usize> = sides
            .iter()
            .enumerate()
            .map(|(j, &s)| (n - k + j + 1).checked_sub(s))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::invalid(format!("terminal tableau {self} has an oversized square")))?;
        SchubertIndex::new(k, n, &nu)
    }

    /// The longest chain of nested squares of the tableau inside `s`: the
    /// dimension the tableau forces on `V` intersected with `s`.
    fn demand(&self, s: &Square) -> usize {
        let mut inside: Vec<Square> = self.squares().into_iter().map(|(_, q)| q).filter(|q| s.contains(q)).collect();
        inside.sort_by_key(Square::side);
        inside.dedup();
        let mut best = vec![1usize; inside.len()];
        for x in 0..inside.len() {
            for y in 0..x {
                if inside[x].strictly_contains(&inside[y]) {
                    best[x] = best[x].max(best[y] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Conditions (1)-(5) of admissibility. In the span condition the number
    /// of squares gained by the span is counted as the growth of the longest
    /// nested chain.
    pub fn check_admissible(&self) -> std::result::Result<(), String> {
        let (k, m) = (self.k, self.m);
        let outer = self.outer();
        let i = self.first_a();
        let err = |msg: String| Err(format!("{self}: {msg}"));
        if self.a.len() + 1 != k + 1 - i || self.b.len() != self.a.len() {
            return err(format!("expected {} A and B squares besides the outer square", k - i));
        }
        for (t, s) in self.squares() {
            if s.lo < 1 || s.lo > s.hi || s.hi > m {
                return err(format!("{t} lies outside the outer square"));
            }
        }
        let a_all: Vec<Square> = self.a.iter().copied().chain(std::iter::once(outer)).collect();
        if a_all.iter().any(|s| s.lo != 1) || a_all.windows(2).any(|w| !w[1].strictly_contains(&w[0])) {
            return err("A squares are not nested, distinct and left aligned".into());
        }
        if self.d.iter().any(|s| !a_all[0].strictly_contains(s)) {
            return err("A squares do not strictly contain every D square".into());
        }
        let b_all: Vec<Square> = self.b.iter().copied().chain(std::iter::once(outer)).collect();
        if b_all.iter().any(|s| s.hi != m) || b_all.windows(2).any(|w| !w[1].strictly_contains(&w[0])) {
            return err("B squares are not nested, distinct and right aligned".into());
        }
        // A_h pairs with B_{k-h+1} (must meet) and B_{k-h} (span).
        let a_of = |h: usize| if h == k { Some(outer) } else { self.a.get(h.wrapping_sub(i)).copied() };
        let b_of = |j: usize| {
            if j == k {
                Some(outer)
            } else if j >= 1 {
                self.b.get(j - 1).copied()
            } else {
                None
            }
        };
        for h in i..=k {
            if let (Some(a), Some(b)) = (a_of(h), b_of(k + 1 - h)) {
                if h > i && !a.meets(&b) {
                    return err(format!("A{h} and B{} do not meet", k + 1 - h));
                }
            }
            if let (Some(a), Some(b)) = (a_of(h), b_of(k - h)) {
                if !a.meets_or_touches(&b) {
                    return err(format!("A{h} and B{} neither meet nor touch", k - h));
                }
            }
        }
        if let Some(b) = self.b.last() {
            if self.d.iter().any(|s| b.contains(s)) {
                return err(format!("a D square lies in B{}", self.b.len()));
            }
        }
        let d = &self.d;
        if d.iter().enumerate().any(|(x, s)| d[..x].contains(s)) {
            return err("D squares are not distinct".into());
        }
        if let Some(j) = self.unnested() {
            let dj = d[j - 1];
            for h in 1..=d.len() {
                let dh = d[h - 1];
                if h < j && (dj.contains(&dh) || !(dh.lo < dj.lo && dh.hi < dj.hi)) {
                    return err(format!("D{h} is not strictly southwest of the unnested D{j}"));
                }
                if h > j && !dh.contains(&dj) {
                    return err(format!("D{h} does not contain the unnested D{j}"));
                }
            }
            for h in 1..=d.len() {
                for s in h + 1..=d.len() {
                    if h != j && s != j && !d[s - 1].contains(&d[h - 1]) {
                        return err(format!("D{s} does not contain D{h}"));
                    }
                }
            }
            if !d[j - 2].meets_or_touches(&dj) {
                return err(format!("D{} and D{j} share neither a square nor a corner", j - 1));
            }
        }
        let all: Vec<Square> = self.squares().into_iter().map(|(_, s)| s).collect();
        for (x, s1) in all.iter().enumerate() {
            for s2 in &all[x + 1..] {
                for (p, q) in [(s1, s2), (s2, s1)] {
                    let span = p.span(q);
                    let r = self.demand(&span) - self.demand(p);
                    if p.side() + r > span.side() {
                        return err(format!("span condition fails for {p} and {q}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_partition(lambda: &[usize], k: usize, n: usize) -> Result<Vec<usize>> {
    Ok(SchubertIndex::new(k, n, lambda)?.lambda)
}

/// The tableau of `sigma_lambda * sigma_mu` after the MM, OS and S rules, or
/// `None` when the MM rule shows the product vanishes.
pub fn init_product(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> Result<Option<MondrianTableau>> {
    let lam = check_partition(lambda, k, n)?;
    let mu = check_partition(mu, k, n)?;
    if k == 0 {
        return Ok(Some(MondrianTableau { k, n, m: n, a: vec![], b: vec![], d: vec![] }));
    }
    let a: Vec<Square> = (1..=k).map(|j| Square::new(1, n - k + j - lam[j - 1])).collect();
    let b: Vec<Square> = (1..=k).map(|j| Square::new(k - j + 1 + mu[j - 1], n)).collect();
    if (1..=k).any(|i| !a[i - 1].meets(&b[k - i])) {
        return Ok(None);
    }
    let outer = a[k - 1].intersect(&b[k - 1]).expect("MM rule guarantees the outer square");
    let mut t = MondrianTableau {
        k,
        n,
        m: n,
        a: a[..k - 1].iter().map(|s| s.intersect(&outer).expect("A squares meet the outer square")).collect(),
        b: b[..k - 1].iter().map(|s| s.intersect(&outer).expect("B squares meet the outer square")).collect(),
        d: vec![],
    };
    for p in (outer.hi + 1..=n).rev().chain((1..outer.lo).rev()) {
        t.delete_basis(p);
    }
    loop {
        let gap = (1..k).find_map(|i| {
            let (ai, bi) = (t.a[i - 1], t.b[k - i - 1]);
            (bi.lo > ai.hi + 1).then_some((ai.hi + 1, bi.lo - 1))
        });
        match gap {
            Some((lo, hi)) => (lo..=hi).rev().for_each(|p| t.delete_basis(p)),
            None => break,
        }
    }
    Ok(Some(t))
}

fn slide_to_touch(squares: &mut [Square], lead: usize, target: &Square) {
    let hi = squares[lead].hi;
    if hi + 1 < target.lo {
        let by = target.lo - 1 - hi;
        squares.iter_mut().for_each(|s| *s = s.shifted(by));
    }
}

/// One move of the game: Tableau 1, followed by Tableau 2 when admissible.
pub fn step(t: &MondrianTableau) -> Result<Vec<MondrianTableau>> {
    if t.is_terminal() {
        return Err(Error::invalid(format!("tableau {t} is terminal")));
    }
    let active = match t.unnested() {
        Some(j) => Active::D(j),
        None => Active::A,
    };
    let mut out = Vec::with_capacity(2);
    match active {
        Active::A => {
            let i = t.first_a();
            let k = t.k;
            let ai = t.a[0];
            let bi = t.b[k - i - 1];
            let moved_a = ai.shifted(1);
            let moved_d: Vec<Square> = t.d.iter().map(|s| if s.lo == ai.lo { s.shifted(1) } else { *s }).collect();

            let mut t1 = t.clone();
            t1.a.remove(0);
            t1.b.remove(k - i - 1);
            t1.d = moved_d.clone();
            let di = moved_a.intersect(&bi).ok_or_else(|| Error::invalid(format!("{t}: A{i} and B{} do not touch", k - i)))?;
            t1.d.push(di);
            if k - i >= 2 {
                let target = t1.b[k - i - 2];
                slide_to_touch(&mut t1.d, i - 1, &target);
            }
            out.push(t1);

            let next_side = t.a.get(1).map_or(t.m, Square::side);
            if next_side != ai.side() + 1 && bi.side() != t.m - i {
                let mut t2 = t.clone();
                t2.a[0] = moved_a;
                t2.d = moved_d;
                t2.delete_basis(1);
                out.push(t2);
            }
        }
        Active::D(j) => {
            let (prev, dj) = (t.d[j - 2], t.d[j - 1]);
            let moved: Vec<Square> =
                t.d.iter()
                    .enumerate()
                    .map(|(x, s)| if x + 1 == j - 1 || (x + 1 < j - 1 && s.lo == prev.lo) { s.shifted(1) } else { *s })
                    .collect();
            let moved_prev = moved[j - 2];

            let mut t1 = t.clone();
            t1.d = moved.clone();
            t1.d[j - 2] = moved_prev
                .intersect(&dj)
                .ok_or_else(|| Error::invalid(format!("{t}: D{} and D{j} share neither a square nor a corner", j - 1)))?;
            t1.d[j - 1] = prev.span(&dj);
            if j >= 3 {
                let target = t1.d[j - 2];
                slide_to_touch(&mut t1.d[..j - 2], j - 3, &target);
            }
            out.push(t1);

            let span = moved_prev.span(&dj);
            if dj.side() + (j - 1) <= span.side() && !moved_prev.contains(&dj) {
                let mut t2 = t.clone();
                t2.d = moved;
                out.push(t2);
            }
        }
    }
    for c in &out {
        c.check_admissible().map_err(|e| Error::invalid(format!("move from {t} gave an inadmissible tableau: {e}")))?;
    }
    Ok(out)
}

/// Every node of the game tree, depth first, with its depth.
pub fn game_tree(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> Result<Vec<(usize, MondrianTableau)>> {
    let Some(root) = init_product(lambda, mu, k, n)? else {
        return Ok(vec![]);
    };
    root.check_admissible().map_err(Error::invalid)?;
    let limit = n * k.max(1) * n * n.saturating_sub(1) / 2 + 1;
    let mut nodes = Vec::new();
    let mut stack = vec![(0usize, root)];
    while let Some((depth, t)) = stack.pop() {
        if depth > limit {
            return Err(Error::invalid(format!("game exceeded {limit} moves at {t}")));
        }
        if !t.is_terminal() {
            for c in step(&t)?.into_iter().rev() {
                stack.push((depth + 1, c));
            }
        }
        nodes.push((depth, t));
    }
    Ok(nodes)
}

/// The multiset of Schubert classes at the leaves of the game.
pub fn play(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> Result<BTreeMap<SchubertIndex, u64>> {
    let mut out = BTreeMap::new();
    for (_, t) in game_tree(lambda, mu, k, n)? {
        if t.is_terminal() {
            *out.entry(t.to_partition()?).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// One line per node: depth, then the squares.
pub fn trace_dump(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> Result<String> {
    let mut s = String::new();
    for (depth, t) in game_tree(lambda, mu, k, n)? {
        let leaf = if t.is_terminal() { format!("\t{}", t.to_partition()?) } else { String::new() };
        s.push_str(&format!("{depth}\t{t}{leaf}\n"));
    }
    Ok(s)
}

/// The class of the quantum variety `X_lambda^(d)` in `Fl(k-d, k+d; n)`.
pub fn quantum_tableau(lambda: &[usize], k: usize, n: usize, d: usize) -> Result<FlagString> {
    let lam = check_partition(lambda, k, n)?;
    if d > k || k + d > n {
        return Err(Error::invalid(format!("degree {d} is out of range for G({k},{n})")));
    }
    let p: Vec<usize> = (1..=k).map(|j| n - k + j - lam[j - 1]).collect();
    let mut digits = vec![0u8; n];
    for &q in &p {
        digits[q - 1] = 1;
    }
    for pos in (1..=n).rev().filter(|q| !p.contains(q)).take(d) {
        digits[pos - 1] = 1;
    }
    for &q in &p[d..] {
        digits[q - 1] = 2;
    }
    let steps: Vec<usize> = if d == 0 { vec![k] } else { vec![k - d, k + d] };
    if d == 0 {
        digits.iter_mut().for_each(|x| *x = if *x == 2 { 1 } else { 0 });
    }
    FlagString::new(&steps, &digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(v: &[(&[usize], u64)], k: usize, n: usize) -> BTreeMap<SchubertIndex, u64> {
        v.iter().map(|(l, c)| (SchubertIndex::new(k, n, l).unwrap(), *c)).collect()
    }

    #[test]
    fn sigma21_squared() {
        let got = play(&[2, 1], &[2, 1], 3, 6).unwrap();
        assert_eq!(got, classes(&[(&[3, 3], 1), (&[3, 2, 1], 2), (&[2, 2, 2], 1)], 3, 6));
    }

    #[test]
    fn sigma1_squared() {
        let got = play(&[1], &[1], 2, 4).unwrap();
        assert_eq!(got, classes(&[(&[2], 1), (&[1, 1], 1)], 2, 4));
    }

    #[test]
    fn must_meet_failure() {
        assert!(init_product(&[2, 2], &[2, 2], 2, 4).unwrap().is_none());
        assert!(play(&[2, 2], &[2, 2], 2, 4).unwrap().is_empty());
    }

    #[test]
    fn outer_square_rule() {
        let t = init_product(&[2, 1, 1], &[1, 1, 1], 3, 6).unwrap().unwrap();
        assert_eq!(t.m, 4);
    }

    #[test]
    fn quantum_tableaux() {
        assert_eq!(quantum_tableau(&[3, 2, 1], 3, 6, 1).unwrap().as_string(), "102021");
        assert_eq!(quantum_tableau(&[3, 2], 3, 6, 2).unwrap().as_string(), "101112");
        assert_eq!(quantum_tableau(&[2, 1], 2, 4, 0).unwrap().as_string(), "1010");
    }
}
