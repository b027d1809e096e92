//! Indexing of type-A Schubert classes: partitions, 0/1 strings, r-step flag
//! strings, upper/lower index notation and the degeneration order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Grassmannian Schubert class in G(k, n), given by a partition in a
/// k x (n-k) box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchubertIndex {
    pub k: usize,
    pub n: usize,
    pub lambda: Vec<usize>,
}

impl SchubertIndex {
    /// Builds an index, padding `lambda` with zeros to length k.
    pub fn new(k: usize, n: usize, lambda: &[usize]) -> Result<Self> {
        if k > n {
            return Err(Error::invalid(format!("k={k} exceeds n={n}")));
        }
        if lambda.len() > k && lambda[k..].iter().any(|&p| p != 0) {
            return Err(Error::invalid(format!("partition {lambda:?} has more than {k} parts")));
        }
        let mut parts: Vec<usize> = lambda.iter().copied().take(k).collect();
        parts.resize(k, 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("partition {lambda:?} is not weakly decreasing")));
        }
        if parts.first().is_some_and(|&p| p > n - k) {
            return Err(Error::invalid(format!("partition {lambda:?} does not fit a {k}x{} box", n - k)));
        }
        Ok(SchubertIndex { k, n, lambda: parts })
    }

    pub fn empty(k: usize, n: usize) -> Self {
        SchubertIndex { k, n, lambda: vec![0; k] }
    }

    /// |lambda|.
    pub fn codim(&self) -> usize {
        self.lambda.iter().sum()
    }

    /// Positions (1-based) of the ones: p_j = n - k + j - lambda_j.
    pub fn one_positions(&self) -> Vec<usize> {
        (1..=self.k).map(|j| self.n - self.k + j - self.lambda[j - 1]).collect()
    }

    /// The complementary partition, lambda^v_i = (n-k) - lambda_{k+1-i}.
    pub fn complement(&self) -> Self {
        let w = self.n - self.k;
        let lambda = (0..self.k).map(|i| w - self.lambda[self.k - 1 - i]).collect();
        SchubertIndex { k: self.k, n: self.n, lambda }
    }

    /// Comma-separated parts with trailing zeros dropped ("2,1"; "" for the empty partition).
    pub fn parts_string(&self) -> String {
        let nz: Vec<String> = self.lambda.iter().filter(|&&p| p > 0).map(|p| p.to_string()).collect();
        nz.join(",")
    }

    /// All partitions in the k x (n-k) box, in reverse lexicographic order of strings.
    pub fn all(k: usize, n: usize) -> Vec<SchubertIndex> {
        binary_strings(k, n).iter().map(|s| string_to_partition(s).expect("valid string")).collect()
    }
}

impl fmt::Display for SchubertIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts_string())
    }
}

/// Parses "2,1" (or "" / "0" for the empty partition) into parts.
pub fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| Error::invalid(format!("bad partition part '{p}' in '{s}'")))).collect()
}

/// Border walk from the NE corner to the SW corner: west step -> 0, south step -> 1.
pub fn partition_to_string(idx: &SchubertIndex) -> String {
    let mut s = vec![b'0'; idx.n];
    for p in idx.one_positions() {
        s[p - 1] = b'1';
    }
    String::from_utf8(s).expect("ascii")
}

pub fn string_to_partition(s: &str) -> Result<SchubertIndex> {
    let bytes = s.as_bytes();
    if bytes.is_empty() || bytes.iter().any(|&b| b != b'0' && b != b'1') {
        return Err(Error::invalid(format!("'{s}' is not a nonempty 0/1 string")));
    }
    let n = bytes.len();
    let ones: Vec<usize> = (0..n).filter(|&i| bytes[i] == b'1').map(|i| i + 1).collect();
    let k = ones.len();
    let lambda = ones.iter().enumerate().map(|(j, &p)| n - k + (j + 1) - p).collect();
    Ok(SchubertIndex { k, n, lambda })
}

/// Poincare duality on strings: reversal.
pub fn dual(s: &str) -> String {
    s.chars().rev().collect()
}

/// Number of pairs i < j with s_i > s_j; the codimension of a (flag) string class.
pub fn inversions(digits: &[u8]) -> usize {
    let mut count = 0;
    for i in 0..digits.len() {
        for j in i + 1..digits.len() {
            if digits[i] > digits[j] {
                count += 1;
            }
        }
    }
    count
}

/// All 0/1 strings of length n with k ones, in lexicographic order.
pub fn binary_strings(k: usize, n: usize) -> Vec<String> {
    flag_digit_strings(&[n - k, k])
}

/// All strings with `counts[d]` copies of digit d, in lexicographic order.
pub fn flag_digit_strings(counts: &[usize]) -> Vec<String> {
    fn rec(counts: &mut Vec<usize>, cur: &mut Vec<u8>, len: usize, out: &mut Vec<String>) {
        if cur.len() == len {
            out.push(cur.iter().map(|&d| (b'0' + d) as char).collect());
            return;
        }
        for d in 0..counts.len() {
            if counts[d] > 0 {
                counts[d] -= 1;
                cur.push(d as u8);
                rec(counts, cur, len, out);
                cur.pop();
                counts[d] += 1;
            }
        }
    }
    let len = counts.iter().sum();
    let mut out = Vec::new();
    rec(&mut counts.to_vec(), &mut Vec::with_capacity(len), len, &mut out);
    out
}

/// An r-step flag Schubert class as a string over digits 0..=r; larger digit
/// means smaller subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlagString {
    pub n: usize,
    pub steps: Vec<usize>,
    pub digits: Vec<u8>,
}

impl FlagString {
    /// Validates digit counts: digit r appears k_1 times, digit r-i+1 appears
    /// k_i - k_{i-1} times, digit 0 appears n - k_r times. Steps may start at 0
    /// or end at n (degenerate flag varieties used by the quantum reduction).
    pub fn new(steps: &[usize], digits: &[u8]) -> Result<Self> {
        let n = digits.len();
        let counts = step_digit_counts(steps, n)?;
        let mut seen = vec![0usize; counts.len()];
        for &d in digits {
            if d as usize >= counts.len() {
                return Err(Error::invalid(format!("digit {d} out of range for {} steps", steps.len())));
            }
            seen[d as usize] += 1;
        }
        if seen != counts {
            return Err(Error::invalid(format!("digit counts {seen:?} do not match steps {steps:?} (expected {counts:?})")));
        }
        Ok(FlagString { n, steps: steps.to_vec(), digits: digits.to_vec() })
    }

    pub fn parse(steps: &[usize], s: &str) -> Result<Self> {
        let digits = parse_digits(s)?;
        FlagString::new(steps, &digits)
    }

    pub fn r(&self) -> usize {
        self.steps.len()
    }

    pub fn codim(&self) -> usize {
        inversions(&self.digits)
    }

    pub fn dual(&self) -> FlagString {
        let mut digits = self.digits.clone();
        digits.reverse();
        FlagString { n: self.n, steps: self.steps.clone(), digits }
    }

    pub fn as_string(&self) -> String {
        digits_to_string(&self.digits)
    }

    /// The identity class: digits sorted ascending.
    pub fn identity(steps: &[usize], n: usize) -> Result<Self> {
        let counts = step_digit_counts(steps, n)?;
        let mut digits = Vec::with_capacity(n);
        for (d, &c) in counts.iter().enumerate() {
            digits.extend(std::iter::repeat_n(d as u8, c));
        }
        Ok(FlagString { n, steps: steps.to_vec(), digits })
    }

    /// Every class of the flag variety, in lexicographic order of strings.
    pub fn all(steps: &[usize], n: usize) -> Result<Vec<FlagString>> {
        let counts = step_digit_counts(steps, n)?;
        Ok(flag_digit_strings(&counts)
            .into_iter()
            .map(|s| FlagString { n, steps: steps.to_vec(), digits: parse_digits(&s).expect("digits") })
            .collect())
    }

    /// The minimal-length permutation omega (one-line, 1-based) of the class:
    /// reading the reversed string, list the positions of digit r, then r-1, ..., then 0.
    pub fn to_permutation(&self) -> Vec<usize> {
        let rev: Vec<u8> = self.digits.iter().rev().copied().collect();
        let mut w = Vec::with_capacity(self.n);
        for d in (0..=self.r() as u8).rev() {
            for (i, &x) in rev.iter().enumerate() {
                if x == d {
                    w.push(i + 1);
                }
            }
        }
        w
    }

    /// Inverse of `to_permutation` for permutations with descents only at the steps.
    pub fn from_permutation(steps: &[usize], w: &[usize]) -> Result<Self> {
        let n = w.len();
        let counts = step_digit_counts(steps, n)?;
        let r = steps.len();
        let mut rev = vec![0u8; n];
        let mut pos = 0;
        for d in (0..=r).rev() {
            for _ in 0..counts[d] {
                rev[w[pos] - 1] = d as u8;
                pos += 1;
            }
        }
        let digits: Vec<u8> = rev.into_iter().rev().collect();
        let fs = FlagString::new(steps, &digits)?;
        if fs.to_permutation() != w {
            return Err(Error::invalid(format!("permutation {w:?} is not minimal for steps {steps:?}")));
        }
        Ok(fs)
    }
}

impl fmt::Display for FlagString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_string())
    }
}

/// Expected multiplicity of each digit 0..=r.
pub fn step_digit_counts(steps: &[usize], n: usize) -> Result<Vec<usize>> {
    if steps.is_empty() {
        return Err(Error::invalid("at least one step is required"));
    }
    if steps.windows(2).any(|w| w[0] >= w[1]) || *steps.last().unwrap() > n {
        return Err(Error::invalid(format!("steps {steps:?} must increase and be at most n={n}")));
    }
    let r = steps.len();
    let mut counts = vec![0usize; r + 1];
    counts[r] = steps[0];
    for i in 1..r {
        counts[r - i] = steps[i] - steps[i - 1];
    }
    counts[0] = n - steps[r - 1];
    Ok(counts)
}

pub fn parse_digits(s: &str) -> Result<Vec<u8>> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::invalid(format!("'{s}' is not a digit string")));
    }
    Ok(t.bytes().map(|b| b - b'0').collect())
}

pub fn digits_to_string(d: &[u8]) -> String {
    d.iter().map(|&x| (b'0' + x) as char).collect()
}

/// The (delta; lambda) upper/lower index notation for r-step classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UpperLowerIndex {
    pub delta: Vec<usize>,
    pub lambda: Vec<usize>,
}

impl UpperLowerIndex {
    /// Parses "d1,...,dk|l1,...,lk".
    pub fn parse(s: &str) -> Result<Self> {
        let (d, l) = s.split_once('|').ok_or_else(|| Error::invalid(format!("'{s}' is not of the form d1,..,dk|l1,..,lk")))?;
        Ok(UpperLowerIndex { delta: parse_parts(d)?, lambda: parse_parts(l)? })
    }
}

impl fmt::Display for UpperLowerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.delta.iter().map(|x| x.to_string()).collect();
        let l: Vec<String> = self.lambda.iter().map(|x| x.to_string()).collect();
        write!(f, "{}|{}", d.join(","), l.join(","))
    }
}

/// Position p_j = n - k_r + j - lambda_j carries digit r + 1 - delta_j; all other positions are 0.
pub fn flagstring_from_upperlower(u: &UpperLowerIndex, steps: &[usize], n: usize) -> Result<FlagString> {
    let r = steps.len();
    let kr = *steps.last().ok_or_else(|| Error::invalid("empty steps"))?;
    if u.delta.len() != kr || u.lambda.len() != kr {
        return Err(Error::invalid(format!("index {u} must have {kr} entries in delta and lambda")));
    }
    if u.lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid(format!("lambda in {u} is not weakly decreasing")));
    }
    let mut digits = vec![0u8; n];
    let mut used = vec![false; n];
    for j in 1..=kr {
        let (d, l) = (u.delta[j - 1], u.lambda[j - 1]);
        if d == 0 || d > r {
            return Err(Error::invalid(format!("delta entry {d} outside 1..={r}")));
        }
        if l > n - kr + j - 1 {
            return Err(Error::invalid(format!("lambda entry {l} too large in {u}")));
        }
        let p = n - kr + j - l;
        if used[p - 1] {
            return Err(Error::invalid(format!("positions collide in {u}")));
        }
        used[p - 1] = true;
        digits[p - 1] = (r + 1 - d) as u8;
    }
    FlagString::new(steps, &digits)
}

pub fn upperlower_from_flagstring(f: &FlagString) -> UpperLowerIndex {
    let r = f.r();
    let kr = *f.steps.last().unwrap();
    let n = f.n;
    let pos: Vec<usize> = (0..n).filter(|&i| f.digits[i] != 0).map(|i| i + 1).collect();
    let mut delta = Vec::with_capacity(kr);
    let mut lambda = Vec::with_capacity(kr);
    for (j0, &p) in pos.iter().enumerate() {
        let j = j0 + 1;
        lambda.push(n - kr + j - p);
        delta.push(r + 1 - f.digits[p - 1] as usize);
    }
    UpperLowerIndex { delta, lambda }
}

/// The degeneration order: right partial factorizations of
/// w0 = (e_{n-1} ... e_1)(e_{n-1} ... e_2) ... (e_{n-1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationOrder {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
    /// The fixed reduced word of w0 (generator indices).
    pub word: Vec<usize>,
}

pub fn degeneration_order(n: usize) -> DegenerationOrder {
    let mut word = Vec::new();
    for start in 1..n {
        for i in (start..n).rev() {
            word.push(i);
        }
    }
    let mut perms = Vec::with_capacity(word.len() + 1);
    for cut in 0..=word.len() {
        let mut w: Vec<usize> = (1..=n).collect();
        // product of the first len-cut letters acting on positions
        for &g in &word[..word.len() - cut] {
            w.swap(g - 1, g);
        }
        perms.push(w);
    }
    DegenerationOrder { n, perms, word }
}

/// Number of inversions of a permutation.
pub fn perm_length(w: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                c += 1;
            }
        }
    }
    c
}

/// Parses a space descriptor "g(k,n)", "fl(a,b;n)", "fl(a,b,c;n)".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub steps: Vec<usize>,
    pub n: usize,
}

impl Space {
    pub fn grassmannian(k: usize, n: usize) -> Self {
        Space { steps: vec![k], n }
    }
    pub fn r(&self) -> usize {
        self.steps.len()
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || Error::usage(format!("bad space '{s}'; expected g(k,n) or fl(a,b;n)"));
        let (head, rest) = t.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let space = match head {
            "g" => {
                let (k, n) = body.split_once(',').ok_or_else(bad)?;
                Space { steps: vec![num(k)?], n: num(n)? }
            }
            "fl" => {
                let (ks, n) = body.split_once(';').ok_or_else(bad)?;
                let steps = ks.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Space { steps, n: num(n)? }
            }
            _ => return Err(bad()),
        };
        step_digit_counts(&space.steps, space.n).map_err(|e| Error::usage(e.to_string()))?;
        Ok(space)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.len() == 1 {
            write!(f, "g({},{})", self.steps[0], self.n)
        } else {
            let ks: Vec<String> = self.steps.iter().map(|k| k.to_string()).collect();
            write!(f, "fl({};{})", ks.join(","), self.n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_string_examples() {
        let idx = SchubertIndex::new(2, 5, &[2, 0]).unwrap();
        assert_eq!(partition_to_string(&idx), "01001");
        assert_eq!(partition_to_string(&SchubertIndex::new(2, 4, &[]).unwrap()), "0011");
        assert_eq!(string_to_partition("0101").unwrap().lambda, vec![1, 0]);
        assert_eq!(string_to_partition("1100").unwrap().lambda, vec![2, 2]);
        assert_eq!(string_to_partition("01001").unwrap(), idx);
    }

    #[test]
    fn border_walk_inverse_by_enumeration() {
        let target = SchubertIndex::new(3, 6, &[2, 1, 0]).unwrap();
        let hits: Vec<String> = binary_strings(3, 6).into_iter().filter(|s| string_to_partition(s).unwrap() == target).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(partition_to_string(&target), hits[0]);
    }

    #[test]
    fn dual_matches_complement() {
        for n in 1..=7 {
            for k in 0..=n {
                for s in binary_strings(k, n) {
                    let c = string_to_partition(&s).unwrap().complement();
                    assert_eq!(dual(&s), partition_to_string(&c));
                    assert_eq!(dual(&dual(&s)), s);
                }
            }
        }
        assert_eq!(dual("010212"), "212010");
    }

    #[test]
    fn upper_lower_examples() {
        let u = UpperLowerIndex { delta: vec![2, 1, 2], lambda: vec![2, 1, 0] };
        assert_eq!(flagstring_from_upperlower(&u, &[1, 3], 6).unwrap().as_string(), "010201");
        let u = UpperLowerIndex { delta: vec![2, 1, 1, 2], lambda: vec![2, 1, 0, 0] };
        let f = flagstring_from_upperlower(&u, &[2, 4], 6).unwrap();
        assert_eq!(f.as_string(), "102021");
        assert_eq!(upperlower_from_flagstring(&f), u);
        let u = UpperLowerIndex::parse("2,1,2,1|1,0,0,0").unwrap();
        let f = flagstring_from_upperlower(&u, &[2, 4], 6).unwrap();
        assert_eq!(f.as_string(), "010212");
        assert_eq!(upperlower_from_flagstring(&f.dual()).to_string(), "1,2,1,2|2,2,2,1");
    }

    #[test]
    fn upper_lower_collision_rejected() {
        let u = UpperLowerIndex { delta: vec![1, 1], lambda: vec![0, 1] };
        assert!(flagstring_from_upperlower(&u, &[2], 4).is_err());
    }

    #[test]
    fn degenerate_one_step_is_prefix() {
        let u = UpperLowerIndex { delta: vec![1, 1], lambda: vec![0, 0] };
        assert_eq!(flagstring_from_upperlower(&u, &[2], 4).unwrap().as_string(), "0011");
    }

    #[test]
    fn degeneration_order_shapes() {
        let d2 = degeneration_order(2);
        assert_eq!(d2.perms, vec![vec![2, 1], vec![1, 2]]);
        let d3 = degeneration_order(3);
        assert_eq!(d3.perms.len(), 4);
        assert_eq!(d3.perms.last().unwrap(), &vec![1, 2, 3]);
        let d4 = degeneration_order(4);
        assert_eq!(d4.perms.len(), 7);
        assert_eq!(d4.perms[0], vec![4, 3, 2, 1]);
        let figure: Vec<Vec<usize>> = ["4321", "4312", "4132", "4123", "1423", "1243", "1234"]
            .iter()
            .map(|s| s.bytes().map(|b| (b - b'0') as usize).collect())
            .collect();
        assert_eq!(d4.perms, figure);
        for n in 1..=6 {
            let d = degeneration_order(n);
            assert_eq!(d.perms.len(), n * (n - 1) / 2 + 1);
            for (i, w) in d.perms.iter().enumerate() {
                assert_eq!(perm_length(w), d.word.len() - i);
            }
        }
    }

    #[test]
    fn permutation_round_trip() {
        for steps in [vec![1, 3], vec![2, 4], vec![1, 2, 4]] {
            for f in FlagString::all(&steps, 6).unwrap() {
                let w = f.to_permutation();
                assert_eq!(perm_length(&w), f.codim());
                assert_eq!(FlagString::from_permutation(&steps, &w).unwrap(), f);
            }
        }
    }

    #[test]
    fn space_parsing() {
        assert_eq!("g(2,4)".parse::<Space>().unwrap(), Space::grassmannian(2, 4));
        assert_eq!("fl(1,3;6)".parse::<Space>().unwrap().steps, vec![1, 3]);
        assert!("g(5,4)".parse::<Space>().is_err());
        assert_eq!("fl(1,2,4;6)".parse::<Space>().unwrap().to_string(), "fl(1,2,4;6)");
    }
}
