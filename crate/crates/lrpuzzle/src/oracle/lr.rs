use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schubert::{partition_to_string, SchubertIndex};

/// Integer combination of Schubert classes of one Grassmannian, keyed by partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurExpansion {
    pub k: usize,
    pub n: usize,
    pub terms: BTreeMap<Vec<usize>, BigInt>,
}

impl SchurExpansion {
    pub fn zero(k: usize, n: usize) -> Self {
        SchurExpansion { k, n, terms: BTreeMap::new() }
    }

    pub fn single(idx: &SchubertIndex) -> Self {
        let mut e = SchurExpansion::zero(idx.k, idx.n);
        e.add(idx.lambda.clone(), BigInt::one());
        e
    }

    pub fn add(&mut self, lambda: Vec<usize>, c: BigInt) {
        let e = self.terms.entry(lambda.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn add_scaled(&mut self, other: &SchurExpansion, c: &BigInt) {
        for (l, v) in &other.terms {
            self.add(l.clone(), v * c);
        }
    }

    pub fn get(&self, lambda: &[usize]) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The same data keyed by 0/1 strings.
    pub fn by_string(&self) -> BTreeMap<String, BigInt> {
        self.terms
            .iter()
            .map(|(l, c)| (partition_to_string(&SchubertIndex { k: self.k, n: self.n, lambda: l.clone() }), c.clone()))
            .collect()
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let p: Vec<String> = l.iter().map(|x| x.to_string()).collect();
                format!("{c}*s({})", p.join(","))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn check(lambda: &[usize], k: usize, n: usize) -> Result<Vec<usize>> {
    Ok(SchubertIndex::new(k, n, lambda)?.lambda)
}

/// Number of LR skew tableaux of shape nu/lambda and content mu.
pub fn lr_tableaux(lambda: &[usize], mu: &[usize], nu: &[usize], k: usize, n: usize) -> Result<u64> {
    let (lambda, mu, nu) = (check(lambda, k, n)?, check(mu, k, n)?, check(nu, k, n)?);
    let size = |p: &[usize]| p.iter().sum::<usize>();
    if size(&nu) != size(&lambda) + size(&mu) || lambda.iter().zip(&nu).any(|(a, b)| a > b) {
        return Ok(0);
    }
    let mut grid: Vec<Vec<usize>> = (0..k).map(|i| vec![0; nu[i]]).collect();
    let mut content = vec![0usize; k + 1];
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (lambda[i]..nu[i]).rev().map(move |j| (i, j))).collect();
    let mut count = 0u64;
    fill(&cells, 0, &lambda, &mu, &mut grid, &mut content, &mut count);
    Ok(count)
}

fn fill(
    cells: &[(usize, usize)],
    at: usize,
    lambda: &[usize],
    mu: &[usize],
    grid: &mut [Vec<usize>],
    content: &mut [usize],
    count: &mut u64,
) {
    if at == cells.len() {
        *count += 1;
        return;
    }
    let (i, j) = cells[at];
    let k = mu.len();
    // Reading right to left, entries in a row may not increase.
    let hi = if j + 1 < grid[i].len() && j + 1 >= lambda[i] { grid[i][j + 1] } else { k };
    let lo = if i > 0 && j >= lambda[i - 1] && j < grid[i - 1].len() { grid[i - 1][j] + 1 } else { 1 };
    for v in lo..=hi.min(i + 1) {
        if content[v] >= mu[v - 1] || (v > 1 && content[v] + 1 > content[v - 1]) {
            continue;
        }
        grid[i][j] = v;
        content[v] += 1;
        fill(cells, at + 1, lambda, mu, grid, content, count);
        content[v] -= 1;
    }
    grid[i][j] = 0;
}

/// All partitions of the given size in the k x (n-k) box.
fn box_partitions(k: usize, n: usize, size: usize) -> Vec<Vec<usize>> {
    SchubertIndex::all(k, n).into_iter().filter(|s| s.codim() == size).map(|s| s.lambda).collect()
}

/// The product sigma_lambda * sigma_mu computed by LR tableaux.
pub fn lr_expand(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> Result<SchurExpansion> {
    let (lambda, mu) = (check(lambda, k, n)?, check(mu, k, n)?);
    let mut out = SchurExpansion::zero(k, n);
    let size = lambda.iter().sum::<usize>() + mu.iter().sum::<usize>();
    for nu in box_partitions(k, n, size) {
        let c = lr_tableaux(&lambda, &mu, &nu, k, n)?;
        if c > 0 {
            out.add(nu, BigInt::from(c));
        }
    }
    Ok(out)
}

/// sigma_p * sigma_mu by the Pieri rule, truncated to the box.
pub fn pieri_multiply(p: usize, mu: &[usize], k: usize, n: usize) -> Result<SchurExpansion> {
    let mu = check(mu, k, n)?;
    if p > n - k {
        return Err(Error::invalid(format!("special class sigma_{p} does not exist in G({k},{n})")));
    }
    let mut out = SchurExpansion::zero(k, n);
    let mut nu = Vec::with_capacity(k);
    pieri_rec(&mu, n - k, p, &mut nu, &mut out);
    Ok(out)
}

fn pieri_rec(mu: &[usize], width: usize, left: usize, nu: &mut Vec<usize>, out: &mut SchurExpansion) {
    let i = nu.len();
    if i == mu.len() {
        if left == 0 {
            out.add(nu.clone(), BigInt::one());
        }
        return;
    }
    let upper = if i == 0 { width } else { mu[i - 1] };
    for v in mu[i]..=upper.min(mu[i] + left) {
        nu.push(v);
        pieri_rec(mu, width, left - (v - mu[i]), nu, out);
        nu.pop();
    }
}

/// Applies sigma_p to every term of an expansion; p outside 0..=n-k gives zero.
pub fn pieri_apply(p: i64, e: &SchurExpansion) -> SchurExpansion {
    let mut out = SchurExpansion::zero(e.k, e.n);
    if p < 0 || p as usize > e.n - e.k {
        return out;
    }
    for (mu, c) in &e.terms {
        let prod = pieri_multiply(p as usize, mu, e.k, e.n).expect("valid terms");
        out.add_scaled(&prod, c);
    }
    out
}

/// Permutations of 0..k with their signs.
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in signed_permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // Inserting the largest letter at pos creates len-pos inversions.
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Giambelli determinant det(sigma_{lambda_i + j - i}) applied to sigma_mu,
/// each special factor multiplied in by Pieri.
pub fn product_via_giambelli(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> Result<SchurExpansion> {
    let (lambda, mu) = (check(lambda, k, n)?, check(mu, k, n)?);
    let start = SchurExpansion::single(&SchubertIndex { k, n, lambda: mu });
    let mut out = SchurExpansion::zero(k, n);
    for (perm, sign) in signed_permutations(k) {
        let mut e = start.clone();
        for i in 0..k {
            if e.terms.is_empty() {
                break;
            }
            e = pieri_apply(lambda[i] as i64 + perm[i] as i64 - i as i64, &e);
        }
        out.add_scaled(&e, &BigInt::from(sign));
    }
    Ok(out)
}

/// sigma_lambda written through the Giambelli determinant and reduced by Pieri.
pub fn giambelli_expand(lambda: &[usize], k: usize, n: usize) -> Result<SchurExpansion> {
    product_via_giambelli(lambda, &vec![0; k], k, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lr_examples() {
        assert_eq!(lr_tableaux(&[1], &[1], &[2], 2, 4).unwrap(), 1);
        assert_eq!(lr_tableaux(&[1], &[1], &[1, 1], 2, 4).unwrap(), 1);
        assert_eq!(lr_tableaux(&[0, 0], &[2, 1], &[2, 1], 2, 5).unwrap(), 1);
        assert_eq!(lr_tableaux(&[2, 1], &[2, 1], &[3, 3], 3, 6).unwrap(), 1);
        assert_eq!(lr_tableaux(&[2, 1], &[2, 1], &[3, 2, 1], 3, 6).unwrap(), 2);
        assert_eq!(lr_tableaux(&[2, 1], &[2, 1], &[2, 2, 2], 3, 6).unwrap(), 1);
        assert_eq!(lr_tableaux(&[2, 1], &[2, 1], &[4, 2], 3, 7).unwrap(), 1);
        assert!(lr_tableaux(&[3], &[1], &[3, 1], 2, 4).is_err());
    }

    #[test]
    fn pieri_examples() {
        let e = pieri_multiply(1, &[1, 0], 2, 4).unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.get(&[2, 0]), BigInt::one());
        assert_eq!(e.get(&[1, 1]), BigInt::one());
        let e = pieri_multiply(0, &[2, 1], 2, 5).unwrap();
        assert_eq!(e, SchurExpansion::single(&SchubertIndex::new(2, 5, &[2, 1]).unwrap()));
        let e = pieri_multiply(2, &[2, 1, 0], 3, 6).unwrap();
        assert_eq!(e, lr_expand(&[2], &[2, 1], 3, 6).unwrap());
        assert!(pieri_multiply(4, &[0, 0], 2, 5).is_err());
    }

    #[test]
    fn giambelli_examples() {
        for (lambda, k, n) in [(vec![3], 1, 4), (vec![1, 1], 2, 4), (vec![2, 1, 0], 3, 6), (vec![3, 2, 2], 3, 7)] {
            let e = giambelli_expand(&lambda, k, n).unwrap();
            assert_eq!(e, SchurExpansion::single(&SchubertIndex::new(k, n, &lambda).unwrap()));
        }
    }

    #[test]
    fn signed_permutation_count() {
        let p = signed_permutations(4);
        assert_eq!(p.len(), 24);
        assert_eq!(p.iter().map(|x| x.1).sum::<i64>(), 0);
    }
}
