//! Three-point Gromov-Witten invariants of G(k,n) through two-step flag
//! varieties, and the small quantum product.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::coeff::IntCoeff;
use crate::engine::{expand_product, specialize_expansion};
use crate::error::{Error, Result};
use crate::mondrian::quantum_tableau;
use crate::oracle::flag_structure_constants;
use crate::pieces::Theory;
use crate::schubert::{FlagString, SchubertIndex};

/// Largest n at which two-step puzzle expansions are re-derived from
/// Schubert polynomials.
pub const ORACLE_CHECK_MAX_N: usize = 6;

/// `(d, nu) -> coefficient of q^d sigma_nu`, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantumExpansion {
    pub k: usize,
    pub n: usize,
    pub terms: BTreeMap<(usize, Vec<usize>), BigInt>,
}

impl QuantumExpansion {
    pub fn new(k: usize, n: usize) -> Self {
        QuantumExpansion { k, n, terms: BTreeMap::new() }
    }

    pub fn get(&self, d: usize, nu: &[usize]) -> BigInt {
        let idx = SchubertIndex::new(self.k, self.n, nu).map(|s| s.lambda).unwrap_or_default();
        self.terms.get(&(d, idx)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, d: usize, nu: Vec<usize>, c: &BigInt) {
        let key = (d, nu);
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if *e == BigInt::from(0) {
            self.terms.remove(&key);
        }
    }

    /// Largest degree present, if any.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(d, _)| *d).max()
    }
}

fn display_parts(nu: &[usize]) -> String {
    let s: Vec<String> = nu.iter().filter(|&&p| p > 0).map(usize::to_string).collect();
    if s.is_empty() {
        "0".into()
    } else {
        s.join(",")
    }
}

impl fmt::Display for QuantumExpansion {
    /// Lines "q^d<TAB>partition<TAB>coeff", by degree then codimension descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<(&(usize, Vec<usize>), &BigInt)> = self.terms.iter().collect();
        rows.sort_by(|a, b| {
            let ca: usize = a.0 .1.iter().sum();
            let cb: usize = b.0 .1.iter().sum();
            a.0 .0.cmp(&b.0 .0).then(cb.cmp(&ca)).then(b.0 .1.cmp(&a.0 .1))
        });
        for ((d, nu), c) in rows {
            writeln!(f, "q^{d}\t{}\t{c}", display_parts(nu))?;
        }
        Ok(())
    }
}

/// `|lambda| + |mu| + |nu| = k(n-k) + dn`.
pub fn degree_condition(lambda: &[usize], mu: &[usize], nu: &[usize], k: usize, n: usize, d: usize) -> bool {
    let s: usize = lambda.iter().chain(mu).chain(nu).sum();
    s == k * (n - k) + d * n
}

/// Degrees for which the two-step reduction target `Fl(k-d, k+d; n)` exists.
/// `(d, nu, coefficient)`.
type Term = (usize, Vec<usize>, BigInt);

fn degree_in_range(k: usize, n: usize, d: usize) -> bool {
    d <= k && k + d <= n
}

/// The two-step puzzle expansion of `a * b`, re-derived from the flag oracle
/// when `n <= ORACLE_CHECK_MAX_N`.
pub fn checked_flag_product(a: &FlagString, b: &FlagString) -> Result<BTreeMap<String, BigInt>> {
    let theory = if a.r() == 1 { Theory::H } else { Theory::H2 };
    let puzzles = specialize_expansion(&expand_product::<IntCoeff>(&a.as_string(), &b.as_string(), &theory.pieces())?);
    if a.n <= ORACLE_CHECK_MAX_N {
        let oracle = flag_structure_constants(a, b)?;
        if oracle != puzzles {
            return Err(Error::CrossCheck(format!(
                "{} puzzles for {a} * {b} give {puzzles:?}, Schubert polynomials give {oracle:?}",
                theory.tag()
            )));
        }
    }
    Ok(puzzles)
}

/// `I_d(sigma_lambda, sigma_mu, sigma_nu)` on G(k,n).
pub fn gw_invariant(lambda: &[usize], mu: &[usize], nu: &[usize], k: usize, n: usize, d: usize) -> Result<BigInt> {
    let (l, m, v) = (SchubertIndex::new(k, n, lambda)?, SchubertIndex::new(k, n, mu)?, SchubertIndex::new(k, n, nu)?);
    if !degree_condition(&l.lambda, &m.lambda, &v.lambda, k, n, d) {
        return Err(Error::invalid(format!("|{l}| + |{m}| + |{v}| != k(n-k) + dn for G({k},{n}), d={d}")));
    }
    if !degree_in_range(k, n, d) {
        return Ok(BigInt::from(0));
    }
    let prod = checked_flag_product(&quantum_tableau(&l.lambda, k, n, d)?, &quantum_tableau(&m.lambda, k, n, d)?)?;
    let target = quantum_tableau(&v.lambda, k, n, d)?.dual().as_string();
    Ok(prod.get(&target).cloned().unwrap_or_default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingError {
    TooFewPoints,
    NotSmallHalf,
    DegreeTooLarge,
    DimensionMismatch,
}

impl fmt::Display for VanishingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VanishingError::TooFewPoints => "at least three classes are required",
            VanishingError::NotSmallHalf => "the criterion needs 2k <= n",
            VanishingError::DegreeTooLarge => "the criterion needs d + k <= n",
            VanishingError::DimensionMismatch => "the classes do not satisfy the dimension equation",
        })
    }
}

/// True when the m-pointed invariant `I_d(sigma_{lambda^1}, ..., sigma_{lambda^m})`
/// is forced to vanish: `sum_j sum_i max(lambda^j_i - d, 0) > (k+d)(n-k-d)`.
pub fn vanishing_predicate(classes: &[Vec<usize>], k: usize, n: usize, d: usize) -> std::result::Result<bool, VanishingError> {
    let m = classes.len();
    if m < 3 {
        return Err(VanishingError::TooFewPoints);
    }
    if 2 * k > n {
        return Err(VanishingError::NotSmallHalf);
    }
    if d + k > n {
        return Err(VanishingError::DegreeTooLarge);
    }
    let total: usize = classes.iter().flatten().sum();
    if total != d * n + k * (n - k) + m - 3 {
        return Err(VanishingError::DimensionMismatch);
    }
    let excess: usize = classes.iter().flatten().map(|&p| p.saturating_sub(d)).sum();
    Ok(excess > (k + d) * (n - k - d))
}

/// `sigma_lambda * sigma_mu` in the small quantum cohomology of G(k,n).
pub fn quantum_product(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> Result<QuantumExpansion> {
    let l = SchubertIndex::new(k, n, lambda)?;
    let m = SchubertIndex::new(k, n, mu)?;
    let total = l.codim() + m.codim();
    let degrees: Vec<usize> = (0..=total / n.max(1)).filter(|&d| degree_in_range(k, n, d)).collect();
    let layers: Vec<Result<Vec<Term>>> = degrees
        .par_iter()
        .map(|&d| {
            let prod = checked_flag_product(&quantum_tableau(&l.lambda, k, n, d)?, &quantum_tableau(&m.lambda, k, n, d)?)?;
            let mut out = Vec::new();
            for nu in SchubertIndex::all(k, n).into_iter().filter(|nu| nu.codim() + d * n == total) {
                let target = quantum_tableau(&nu.complement().lambda, k, n, d)?.dual().as_string();
                if let Some(c) = prod.get(&target) {
                    out.push((d, nu.lambda, c.clone()));
                }
            }
            Ok(out)
        })
        .collect();
    let mut q = QuantumExpansion::new(k, n);
    for layer in layers {
        for (d, nu, c) in layer? {
            q.add(d, nu, &c);
        }
    }
    Ok(q)
}

/// Product of two quantum expansions, term by term.
pub fn multiply_expansions(x: &QuantumExpansion, y: &QuantumExpansion) -> Result<QuantumExpansion> {
    let mut out = QuantumExpansion::new(x.k, x.n);
    for ((d1, a), c1) in &x.terms {
        for ((d2, b), c2) in &y.terms {
            let p = quantum_product(a, b, x.k, x.n)?;
            for ((d3, nu), c3) in p.terms {
                out.add(d1 + d2 + d3, nu, &(c1 * c2 * c3));
            }
        }
    }
    Ok(out)
}
