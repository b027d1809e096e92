//! Indexing of Schubert classes in orthogonal Grassmannians and the
//! conversion between type B and type C structure constants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OGType {
    /// `OG(k, 2m+1)`; parts of lambda lie in `1..=m` and pair with `m`.
    B,
    /// `OG(k, 2m)`; parts of lambda lie in `0..m` and pair with `m-1`.
    D,
}

impl OGType {
    fn pair_sum(self, m: usize) -> usize {
        match self {
            OGType::B => m,
            OGType::D => m - 1,
        }
    }
}

fn strictly_decreasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

/// The partition associated to `lambda`: the integers `m-1, ..., 0` whose sum
/// with no part of `lambda` is `m` (type B) or `m-1` (type D).
pub fn associated(ty: OGType, lambda: &[usize], m: usize) -> Result<Vec<usize>> {
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    if !strictly_decreasing(lambda) {
        return Err(Error::invalid(format!("{lambda:?} is not strictly decreasing")));
    }
    let (lo, hi) = match ty {
        OGType::B => (1, m),
        OGType::D => (0, m - 1),
    };
    if lambda.iter().any(|&p| p < lo || p > hi) {
        return Err(Error::invalid(format!("parts of {lambda:?} must lie in {lo}..={hi}")));
    }
    let sum = ty.pair_sum(m);
    Ok((0..m).rev().filter(|&x| !lambda.iter().any(|&p| p + x == sum)).collect())
}

/// The type B associated partition: `m-1, ..., 0` with `m - lambda_i` removed.
pub fn associated_partition(lambda: &[usize], m: usize) -> Result<Vec<usize>> {
    associated(OGType::B, lambda, m)
}

/// Positions `i_j` (numbered `s+1..=m`) of the parts of `mu` in `tilde`.
fn positions(mu: &[usize], tilde: &[usize], s: usize) -> Result<Vec<usize>> {
    if !strictly_decreasing(mu) {
        return Err(Error::invalid(format!("{mu:?} is not strictly decreasing")));
    }
    mu.iter()
        .map(|p| {
            tilde
                .iter()
                .position(|t| t == p)
                .map(|x| s + 1 + x)
                .ok_or_else(|| Error::invalid(format!("{mu:?} is not a subpartition of {tilde:?}")))
        })
        .collect()
}

/// `(m-k)s + sum_{j=s+1}^k (m-k+j-i_j)` for type B.
pub fn discrepancy(lambda: &[usize], mu: &[usize], k: usize, m: usize) -> Result<usize> {
    Ok(OGIndex::new(OGType::B, k, m, lambda, mu)?.discrepancy())
}

/// A Schubert class `sigma_{lambda,mu}` of `OG(k, 2m+1)` or `OG(k, 2m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OGIndex {
    pub ty: OGType,
    pub k: usize,
    pub m: usize,
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    positions: Vec<usize>,
}

impl OGIndex {
    pub fn new(ty: OGType, k: usize, m: usize, lambda: &[usize], mu: &[usize]) -> Result<Self> {
        if k > m {
            return Err(Error::invalid(format!("k={k} exceeds m={m}")));
        }
        let s = lambda.len();
        if s + mu.len() != k {
            return Err(Error::invalid(format!("lambda and mu must have {k} parts in total")));
        }
        let tilde = associated(ty, lambda, m)?;
        let positions = positions(mu, &tilde, s)?;
        Ok(OGIndex { ty, k, m, lambda: lambda.to_vec(), mu: mu.to_vec(), positions })
    }

    /// Dimension of the ambient vector space.
    pub fn n(&self) -> usize {
        match self.ty {
            OGType::B => 2 * self.m + 1,
            OGType::D => 2 * self.m,
        }
    }

    pub fn s(&self) -> usize {
        self.lambda.len()
    }

    pub fn associated(&self) -> Vec<usize> {
        associated(self.ty, &self.lambda, self.m).expect("validated on construction")
    }

    pub fn discrepancy(&self) -> usize {
        let (m, k, s) = (self.m, self.k, self.s());
        (m - k) * s + self.positions.iter().enumerate().map(|(x, &i)| m - k + (s + 1 + x) - i).sum::<usize>()
    }

    pub fn codim(&self) -> usize {
        self.lambda.iter().sum::<usize>() + self.discrepancy()
    }

    /// For type D, whether `s` has the parity of `m`, which selects one of the
    /// two families of maximal isotropic subspaces.
    pub fn parity_family(&self) -> Option<bool> {
        (self.ty == OGType::D).then_some(self.s() % 2 == self.m % 2)
    }
}

impl fmt::Display for OGIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", j(&self.lambda), j(&self.mu))
    }
}

/// `b = 2^(s_w - s_u - s_v) c`, from `2^(s(u)+s(v)) b = 2^(s(w)) c`.
pub fn type_b_from_type_c(c: &BigInt, s_u: u32, s_v: u32, s_w: u32) -> BigRational {
    let e = i64::from(s_w) - i64::from(s_u) - i64::from(s_v);
    let pow = BigInt::from(1) << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(c * pow)
    } else {
        BigRational::new(c.clone(), pow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn associated_examples() {
        assert_eq!(associated_partition(&[6, 4], 6).unwrap(), vec![5, 4, 3, 1]);
        assert_eq!(associated_partition(&[], 3).unwrap(), vec![2, 1, 0]);
        assert_eq!(associated_partition(&[3], 4).unwrap(), vec![3, 2, 0]);
        assert!(associated_partition(&[4, 4], 6).is_err());
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(discrepancy(&[6, 4], &[], 2, 6).unwrap(), 8);
        assert!(discrepancy(&[6, 4], &[2], 3, 6).is_err());
        assert_eq!(OGIndex::new(OGType::B, 2, 6, &[6, 4], &[]).unwrap().to_string(), "6,4|");
    }

    #[test]
    fn b_from_c() {
        let r = |c: i64, u, v, w| type_b_from_type_c(&BigInt::from(c), u, v, w);
        assert_eq!(r(7, 0, 0, 0), BigRational::from_integer(7.into()));
        assert_eq!(r(4, 1, 1, 0), BigRational::from_integer(1.into()));
        assert_eq!(r(1, 0, 0, 2), BigRational::from_integer(4.into()));
        assert_eq!(r(1, 1, 0, 0), BigRational::new(1.into(), 2.into()));
    }
}
