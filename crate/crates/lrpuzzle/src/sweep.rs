//! Exhaustive comparison of independent product computations over a space.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{IntCoeff, LaurentCoeff, PolyCoeff, Ring};
use crate::engine::expand_product;
use crate::error::{Error, Result};
use crate::mondrian;
use crate::oracle::{flag_structure_constants, lr_expand, product_via_giambelli};
use crate::pieces::{RingKind, Theory};
use crate::schubert::{inversions, parse_digits, partition_to_string, string_to_partition, FlagString, Space};

/// One way of computing the cohomology structure constants of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Puzzles in a theory, specialized to ordinary cohomology.
    Puzzle(Theory),
    /// Littlewood-Richardson tableaux.
    Lr,
    /// Giambelli determinants with Pieri products.
    Giambelli,
    /// The Mondrian tableau game.
    Mondrian,
    /// Schubert polynomials.
    Flag,
}

impl Method {
    pub fn supports(self, space: &Space) -> bool {
        match self {
            Method::Puzzle(t) => t.steps() == space.r(),
            Method::Lr | Method::Giambelli | Method::Mondrian => space.r() == 1,
            Method::Flag => true,
        }
    }

    /// The product as string -> coefficient, zero entries omitted. Puzzle
    /// theories keep only the classes of the expected codimension, with
    /// equivariant parameters set to zero.
    pub fn product(self, a: &FlagString, b: &FlagString) -> Result<BTreeMap<String, BigInt>> {
        let (sa, sb) = (a.as_string(), b.as_string());
        let grass = |e: BTreeMap<Vec<usize>, BigInt>, k: usize, n: usize| -> Result<BTreeMap<String, BigInt>> {
            e.into_iter().map(|(l, c)| Ok((partition_to_string(&crate::schubert::SchubertIndex::new(k, n, &l)?), c))).collect()
        };
        match self {
            Method::Puzzle(t) => {
                let target = a.codim() + b.codim();
                let all = match t.ring() {
                    RingKind::Int => specialized::<IntCoeff>(&sa, &sb, t)?,
                    RingKind::Poly => specialized::<PolyCoeff>(&sa, &sb, t)?,
                    RingKind::Laurent => specialized::<LaurentCoeff>(&sa, &sb, t)?,
                };
                let mut out = BTreeMap::new();
                for (g, c) in all {
                    if inversions(&parse_digits(&g)?) == target && c != BigInt::from(0) {
                        out.insert(g, c);
                    }
                }
                Ok(out)
            }
            Method::Lr => {
                let (pa, pb) = (string_to_partition(&sa)?, string_to_partition(&sb)?);
                Ok(lr_expand(&pa.lambda, &pb.lambda, pa.k, pa.n)?.by_string())
            }
            Method::Giambelli => {
                let (pa, pb) = (string_to_partition(&sa)?, string_to_partition(&sb)?);
                Ok(product_via_giambelli(&pa.lambda, &pb.lambda, pa.k, pa.n)?.by_string())
            }
            Method::Mondrian => {
                let (pa, pb) = (string_to_partition(&sa)?, string_to_partition(&sb)?);
                let leaves = mondrian::play(&pa.lambda, &pb.lambda, pa.k, pa.n)?;
                grass(leaves.into_iter().map(|(s, c)| (s.lambda, BigInt::from(c))).collect(), pa.k, pa.n)
            }
            Method::Flag => flag_structure_constants(a, b),
        }
    }
}

fn specialized<R: Ring>(a: &str, b: &str, t: Theory) -> Result<BTreeMap<String, BigInt>> {
    Ok(expand_product::<R>(a, b, &t.pieces())?.into_iter().map(|(g, c)| (g, c.specialize())).collect())
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Puzzle(t) => write!(f, "puzzle:{t}"),
            Method::Lr => f.write_str("lr"),
            Method::Giambelli => f.write_str("giambelli"),
            Method::Mondrian => f.write_str("mondrian"),
            Method::Flag => f.write_str("flag"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;
    /// "lr", "giambelli", "mondrian", "flag", or "puzzle:<theory>".
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lr" => Ok(Method::Lr),
            "giambelli" => Ok(Method::Giambelli),
            "mondrian" => Ok(Method::Mondrian),
            "flag" => Ok(Method::Flag),
            _ => match s.strip_prefix("puzzle:") {
                Some(t) => Ok(Method::Puzzle(t.parse()?)),
                None => Err(Error::usage(format!("unknown method '{s}' (expected lr, giambelli, mondrian, flag or puzzle:<theory>)"))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub alpha: String,
    pub beta: String,
    pub expansions: Vec<(String, BTreeMap<String, String>)>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MISMATCH {} * {}", self.alpha, self.beta)?;
        for (m, e) in &self.expansions {
            writeln!(f, "{m}")?;
            for (g, c) in e {
                writeln!(f, "  {g}\t{c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepReport {
    Ok { products: usize },
    Mismatch(Counterexample),
}

/// Unordered pairs `(a, b)` of classes of the space, in string order.
pub fn class_pairs(space: &Space) -> Result<Vec<(FlagString, FlagString)>> {
    let all = FlagString::all(&space.steps, space.n)?;
    let mut v = Vec::new();
    for (x, a) in all.iter().enumerate() {
        for b in &all[x..] {
            v.push((a.clone(), b.clone()));
        }
    }
    Ok(v)
}

/// Compares every method on every pair of classes; reports the first
/// disagreement in pair order, independent of the thread count.
pub fn crosscheck(space: &Space, methods: &[Method]) -> Result<SweepReport> {
    if methods.len() < 2 {
        return Err(Error::usage("crosscheck needs at least two methods"));
    }
    if let Some(m) = methods.iter().find(|m| !m.supports(space)) {
        return Err(Error::usage(format!("method {m} does not apply to {space}")));
    }
    let pairs = class_pairs(space)?;
    let found = pairs
        .par_iter()
        .map(|(a, b)| -> Result<Option<Counterexample>> {
            let results: Vec<BTreeMap<String, BigInt>> = methods.iter().map(|m| m.product(a, b)).collect::<Result<_>>()?;
            if results.windows(2).all(|w| w[0] == w[1]) {
                return Ok(None);
            }
            Ok(Some(Counterexample {
                alpha: a.as_string(),
                beta: b.as_string(),
                expansions: methods
                    .iter()
                    .zip(&results)
                    .map(|(m, e)| (m.to_string(), e.iter().map(|(g, c)| (g.clone(), c.to_string())).collect()))
                    .collect(),
            }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(SweepReport::Ok { products: pairs.len() }),
        Some(Ok(Some(c))) => Ok(SweepReport::Mismatch(c)),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!("filtered above"),
    }
}

/// Display order for expansions: codimension descending, then string ascending.
pub fn display_order<V>(m: &BTreeMap<String, V>) -> Vec<(&String, &V)> {
    let mut v: Vec<(&String, &V)> = m.iter().collect();
    v.sort_by_key(|(g, _)| (std::cmp::Reverse(parse_digits(g).map(|d| inversions(&d)).unwrap_or(0)), (*g).clone()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree_on_g24() {
        let space: Space = "g(2,4)".parse().unwrap();
        let methods = [Method::Puzzle(Theory::H), Method::Lr, Method::Mondrian, Method::Flag, Method::Puzzle(Theory::K)];
        assert_eq!(crosscheck(&space, &methods).unwrap(), SweepReport::Ok { products: 21 });
    }

    #[test]
    fn rejects_mismatched_space() {
        let space: Space = "fl(1,2;3)".parse().unwrap();
        assert!(crosscheck(&space, &[Method::Lr, Method::Flag]).is_err());
        assert!("puzzle:q".parse::<Method>().is_err());
    }

    #[test]
    fn ordering() {
        let m: BTreeMap<String, i32> = [("0110".to_string(), 1), ("1001".to_string(), 1), ("1010".to_string(), 1)].into();
        let keys: Vec<&str> = display_order(&m).into_iter().map(|(g, _)| g.as_str()).collect();
        assert_eq!(keys, vec!["1010", "0110", "1001"]);
    }
}
