//! Exact coefficient rings: integers, polynomials in y_1..y_n, and Laurent
//! polynomials in t_1..t_n (t_i standing for e^{y_i}).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Operations the puzzle engine needs from a coefficient ring.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Weight of an equivariant piece projecting to positions i < j, if the ring has one.
    fn eqvar(i: usize, j: usize) -> Option<Self>;
    /// Substitute y_i = 0 (resp. t_i = 1).
    fn specialize(&self) -> BigInt;

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// Arbitrary-precision integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntCoeff(pub BigInt);

impl IntCoeff {
    pub fn value(&self) -> &BigInt {
        &self.0
    }
    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

impl From<i64> for IntCoeff {
    fn from(v: i64) -> Self {
        IntCoeff(BigInt::from(v))
    }
}

impl fmt::Display for IntCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for IntCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Ring for IntCoeff {
    fn zero() -> Self {
        IntCoeff(BigInt::zero())
    }
    fn one() -> Self {
        IntCoeff(BigInt::one())
    }
    fn from_i64(v: i64) -> Self {
        IntCoeff(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        IntCoeff(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        IntCoeff(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        IntCoeff(-&self.0)
    }
    fn eqvar(_i: usize, _j: usize) -> Option<Self> {
        None
    }
    fn specialize(&self) -> BigInt {
        self.0.clone()
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }
}

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal
/// regardless of the number of variables in scope.
pub type Exponent = Vec<i32>;

fn trim(mut e: Exponent) -> Exponent {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exp(a: &[i32], b: &[i32]) -> Exponent {
    let len = a.len().max(b.len());
    let e = (0..len).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect();
    trim(e)
}

/// Sparse multivariate polynomial over Z; terms are kept in lexicographic order
/// of exponent vectors and no zero coefficient is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sparse {
    terms: BTreeMap<Exponent, BigInt>,
}

impl Sparse {
    pub fn zero() -> Self {
        Sparse { terms: BTreeMap::new() }
    }
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Sparse::zero().plus_term(Vec::new(), c.into())
    }
    /// The monomial prod v_i^{e_i} with coefficient c.
    pub fn monomial(e: Exponent, c: impl Into<BigInt>) -> Self {
        Sparse::zero().plus_term(e, c.into())
    }
    /// Coefficient c times the single variable v_i (1-based), raised to power p.
    pub fn var(i: usize, p: i32) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = p;
        Sparse::monomial(trim(e), 1)
    }
    fn plus_term(mut self, e: Exponent, c: BigInt) -> Self {
        self.add_term(trim(e), c);
        self
    }
    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    pub fn neg(&self) -> Self {
        Sparse { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Sparse::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(add_exp(ea, eb), ca * cb);
            }
        }
        out
    }
    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }
    /// Constant term.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigInt::zero)
    }
    /// Sum of all coefficients (every variable set to 1).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a + c)
    }
    /// Largest total degree among the terms (0 for the zero polynomial).
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as i64).sum::<i64>()).max().unwrap_or(0)
    }

    fn fmt_with(&self, var: char, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("{var}{}", i + 1)),
                    _ => factors.push(format!("{var}{}^{p}", i + 1)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }

    /// Parses the canonical printed form, e.g. "1 - t2*t3^-1" or "y3 - y2".
    pub fn parse(s: &str, var: char) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::invalid("empty coefficient"));
        }
        let bytes: Vec<char> = compact.chars().collect();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, &ch) in bytes.iter().enumerate() {
            let at_sign = (ch == '+' || ch == '-') && (i == 0 || bytes[i - 1] != '^');
            if at_sign {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if i != 0 {
                    return Err(Error::invalid(format!("bad coefficient '{s}'")));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::invalid(format!("bad coefficient '{s}'")));
        }
        pieces.push((neg, cur));
        let mut out = Sparse::zero();
        for (neg, term) in pieces {
            let mut coef = BigInt::one();
            let mut e: Exponent = Vec::new();
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix(var) {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((a, b)) => (a, b.parse::<i32>().map_err(|_| Error::invalid(format!("bad power in '{s}'")))?),
                        None => (rest, 1),
                    };
                    let i: usize = idx.parse().map_err(|_| Error::invalid(format!("bad variable in '{s}'")))?;
                    if i == 0 {
                        return Err(Error::invalid(format!("variables are 1-based in '{s}'")));
                    }
                    if e.len() < i {
                        e.resize(i, 0);
                    }
                    e[i - 1] += pow;
                } else {
                    let v: BigInt = factor.parse().map_err(|_| Error::invalid(format!("bad factor '{factor}' in '{s}'")))?;
                    coef *= v;
                }
            }
            if neg {
                coef = -coef;
            }
            out.add_term(trim(e), coef);
        }
        Ok(out)
    }
}

/// Polynomial in the equivariant parameters y_1..y_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyCoeff(pub Sparse);

/// Laurent polynomial in t_1..t_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentCoeff(pub Sparse);

impl PolyCoeff {
    /// y_i.
    pub fn y(i: usize) -> Self {
        PolyCoeff(Sparse::var(i, 1))
    }
    pub fn parse(s: &str) -> Result<Self> {
        let p = Sparse::parse(s, 'y')?;
        if p.has_negative_exponent() {
            return Err(Error::invalid(format!("negative exponent in polynomial '{s}'")));
        }
        Ok(PolyCoeff(p))
    }
}

impl LaurentCoeff {
    /// t_i^p.
    pub fn t(i: usize, p: i32) -> Self {
        LaurentCoeff(Sparse::var(i, p))
    }
    pub fn parse(s: &str) -> Result<Self> {
        Ok(LaurentCoeff(Sparse::parse(s, 't')?))
    }
    /// The generator factor 1 - t_i/t_j.
    pub fn kt_factor(i: usize, j: usize) -> Self {
        LaurentCoeff::one().sub(&LaurentCoeff::t(i, 1).mul(&LaurentCoeff::t(j, -1)))
    }
}

impl fmt::Display for PolyCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with('y', f)
    }
}

impl fmt::Display for LaurentCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with('t', f)
    }
}

impl Serialize for PolyCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for LaurentCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! sparse_ring {
    ($t:ident, $eqvar:expr, $spec:ident) => {
        impl Ring for $t {
            fn zero() -> Self {
                $t(Sparse::zero())
            }
            fn one() -> Self {
                $t(Sparse::constant(1))
            }
            fn from_i64(v: i64) -> Self {
                $t(Sparse::constant(v))
            }
            fn is_zero(&self) -> bool {
                self.0.is_zero()
            }
            fn add(&self, other: &Self) -> Self {
                $t(self.0.add(&other.0))
            }
            fn mul(&self, other: &Self) -> Self {
                $t(self.0.mul(&other.0))
            }
            fn neg(&self) -> Self {
                $t(self.0.neg())
            }
            fn eqvar(i: usize, j: usize) -> Option<Self> {
                Some($eqvar(i, j))
            }
            fn specialize(&self) -> BigInt {
                self.0.$spec()
            }
        }
    };
}

sparse_ring!(PolyCoeff, |i, j| PolyCoeff::y(j).sub(&PolyCoeff::y(i)), constant_term);
sparse_ring!(LaurentCoeff, LaurentCoeff::kt_factor, coefficient_sum);

/// First-order term of a generator factor 1 - t_i/t_j, namely y_j - y_i.
pub fn kt_factor_to_ht(f: &LaurentCoeff) -> Result<PolyCoeff> {
    if f.is_zero() {
        return Ok(PolyCoeff::zero());
    }
    let terms: Vec<(&Exponent, &BigInt)> = f.0.terms().collect();
    let reject = || Error::invalid(format!("'{f}' is not of the form 1 - t_i/t_j"));
    if terms.len() != 2 || !terms[0].0.is_empty() || !terms[0].1.is_one() || *terms[1].1 != BigInt::from(-1) {
        return Err(reject());
    }
    let e = terms[1].0;
    let pos: Vec<usize> = (0..e.len()).filter(|&x| e[x] == 1).collect();
    let negs: Vec<usize> = (0..e.len()).filter(|&x| e[x] == -1).collect();
    if pos.len() != 1 || negs.len() != 1 || e.iter().filter(|&&x| x != 0).count() != 2 {
        return Err(reject());
    }
    let (i, j) = (pos[0] + 1, negs[0] + 1);
    Ok(PolyCoeff::y(j).sub(&PolyCoeff::y(i)))
}

/// Substitute the equivariant parameters: y_i = 0 or t_i = 1.
pub fn specialize_to_ordinary<R: Ring>(c: &R) -> IntCoeff {
    IntCoeff(c.specialize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_examples() {
        let a = PolyCoeff::y(3).sub(&PolyCoeff::y(2));
        let b = PolyCoeff::y(2).sub(&PolyCoeff::y(3));
        assert!(a.add(&b).is_zero());
        let f = LaurentCoeff::kt_factor(2, 3).mul(&LaurentCoeff::t(3, 1));
        assert_eq!(f, LaurentCoeff::t(3, 1).sub(&LaurentCoeff::t(2, 1)));
        let p = PolyCoeff::y(3).sub(&PolyCoeff::y(2)).mul(&PolyCoeff::y(4).sub(&PolyCoeff::y(1)));
        assert_eq!(p.0.len(), 4);
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(specialize_to_ordinary(&PolyCoeff::y(3).sub(&PolyCoeff::y(2))), IntCoeff::from(0));
        assert_eq!(specialize_to_ordinary(&LaurentCoeff::kt_factor(2, 3)), IntCoeff::from(0));
        assert_eq!(specialize_to_ordinary(&PolyCoeff::from_i64(2)), IntCoeff::from(2));
    }

    #[test]
    fn kt_to_ht_examples() {
        let h = kt_factor_to_ht(&LaurentCoeff::kt_factor(2, 3)).unwrap();
        assert_eq!(h.to_string(), "y3 - y2");
        let h = kt_factor_to_ht(&LaurentCoeff::kt_factor(1, 2)).unwrap();
        assert_eq!(h, PolyCoeff::y(2).sub(&PolyCoeff::y(1)));
        assert!(kt_factor_to_ht(&LaurentCoeff::kt_factor(2, 2)).unwrap().is_zero());
        assert!(kt_factor_to_ht(&LaurentCoeff::from_i64(2)).is_err());
    }

    #[test]
    fn printing_and_parsing() {
        let f = LaurentCoeff::kt_factor(2, 3);
        assert_eq!(f.to_string(), "1 - t2*t3^-1");
        assert_eq!(LaurentCoeff::parse("1 - t2*t3^-1").unwrap(), f);
        let p = PolyCoeff::parse("-2*y1^2 + y3 - 7").unwrap();
        assert_eq!(PolyCoeff::parse(&p.to_string()).unwrap(), p);
        assert_eq!(PolyCoeff::zero().to_string(), "0");
        assert!(PolyCoeff::parse("y1^-1").is_err());
    }
}
