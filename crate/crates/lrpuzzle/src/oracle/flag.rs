//! Structure constants of partial flag varieties through Schubert polynomials
//! in H*(Fl(n)): sigma_u * sigma_v = sum over monomials x^m of S_u of x^m * sigma_v,
//! with each x_r acting by Monk's rule.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::schubert::{perm_length, FlagString};

type Perm = Vec<u8>;
type Poly = BTreeMap<Vec<u8>, i128>;
type Expansion = BTreeMap<Perm, i128>;
type ActionTable = HashMap<Vec<u8>, Expansion>;

/// Schubert polynomials of S_n and per-class caches of monomial actions.
pub struct FlagOracle {
    n: usize,
    schubert: HashMap<Perm, Poly>,
    actions: Mutex<HashMap<Perm, Arc<ActionTable>>>,
}

fn add_to<K: Ord + Clone>(m: &mut BTreeMap<K, i128>, k: &K, c: i128) {
    if c == 0 {
        return;
    }
    let e = m.entry(k.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        m.remove(k);
    }
}

/// Divided difference d_i (0-based i acts on variables i, i+1).
fn divided_difference(f: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (e, &c) in f {
        let (p, q) = (e[i], e[i + 1]);
        if p == q {
            continue;
        }
        let (hi, lo, sign) = if p > q { (p, q, 1) } else { (q, p, -1) };
        for j in 0..(hi - lo) {
            let mut m = e.clone();
            m[i] = hi - 1 - j;
            m[i + 1] = lo + j;
            add_to(&mut out, &m, sign * c);
        }
    }
    out
}

impl FlagOracle {
    pub fn new(n: usize) -> Self {
        let w0: Perm = (1..=n as u8).rev().collect();
        let top: Vec<u8> = (0..n).map(|i| (n - 1 - i) as u8).collect();
        let mut schubert = HashMap::new();
        schubert.insert(w0.clone(), Poly::from([(top, 1)]));
        let mut frontier = vec![w0];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..n.saturating_sub(1) {
                    if w[i] > w[i + 1] {
                        let mut v = w.clone();
                        v.swap(i, i + 1);
                        if !schubert.contains_key(&v) {
                            let p = divided_difference(&schubert[w], i);
                            schubert.insert(v.clone(), p);
                            next.push(v);
                        }
                    }
                }
            }
            frontier = next;
        }
        FlagOracle { n, schubert, actions: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn schubert_polynomial(&self, w: &[usize]) -> Option<BTreeMap<Vec<u8>, i128>> {
        let key: Perm = w.iter().map(|&x| x as u8).collect();
        self.schubert.get(&key).cloned()
    }

    /// x_r * sigma_w by Monk's rule (r 0-based).
    fn monk(&self, r: usize, w: &Perm, c: i128, out: &mut Expansion) {
        let n = self.n;
        let covers = |a: usize, b: usize| w[a] < w[b] && (a + 1..b).all(|m| w[m] < w[a] || w[m] > w[b]);
        for b in r + 1..n {
            if covers(r, b) {
                let mut v = w.clone();
                v.swap(r, b);
                add_to(out, &v, c);
            }
        }
        for a in 0..r {
            if covers(a, r) {
                let mut v = w.clone();
                v.swap(a, r);
                add_to(out, &v, -c);
            }
        }
    }

    /// x^m * sigma_v for every staircase exponent m of degree at most dim - l(v).
    fn actions_for(&self, v: &Perm) -> Arc<HashMap<Vec<u8>, Expansion>> {
        if let Some(a) = self.actions.lock().expect("cache lock").get(v) {
            return a.clone();
        }
        let n = self.n;
        let vl: Vec<usize> = v.iter().map(|&x| x as usize).collect();
        let budget = n * (n - 1) / 2 - perm_length(&vl);
        let mut table: HashMap<Vec<u8>, Expansion> = HashMap::new();
        let zero = vec![0u8; n];
        table.insert(zero.clone(), Expansion::from([(v.clone(), 1)]));
        let mut layer = vec![zero];
        for _deg in 0..budget {
            let mut next = Vec::new();
            for m in &layer {
                for r in 0..n - 1 {
                    if m[r] as usize >= n - 1 - r {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[r] += 1;
                    if table.contains_key(&m2) {
                        continue;
                    }
                    let mut out = Expansion::new();
                    for (w, &c) in &table[m] {
                        self.monk(r, w, c, &mut out);
                    }
                    table.insert(m2.clone(), out);
                    next.push(m2);
                }
            }
            layer = next;
        }
        let arc = Arc::new(table);
        self.actions.lock().expect("cache lock").insert(v.clone(), arc.clone());
        arc
    }

    /// sigma_u * sigma_v in H*(Fl(n)) (one-line permutations, 1-based).
    pub fn multiply_permutations(&self, u: &[usize], v: &[usize]) -> BTreeMap<Vec<usize>, i128> {
        let u: Perm = u.iter().map(|&x| x as u8).collect();
        let v: Perm = v.iter().map(|&x| x as u8).collect();
        let actions = self.actions_for(&v);
        let mut out = Expansion::new();
        for (m, &c) in &self.schubert[&u] {
            if let Some(e) = actions.get(m) {
                for (w, &d) in e {
                    add_to(&mut out, w, c * d);
                }
            }
        }
        out.into_iter().map(|(w, c)| (w.into_iter().map(|x| x as usize).collect(), c)).collect()
    }

    /// Structure constants of two classes of the same partial flag variety.
    pub fn structure_constants(&self, a: &FlagString, b: &FlagString) -> Result<BTreeMap<String, BigInt>> {
        if a.steps != b.steps || a.n != b.n || a.n != self.n {
            return Err(Error::invalid(format!("classes {a} and {b} do not live in the same flag variety")));
        }
        let prod = self.multiply_permutations(&a.to_permutation(), &b.to_permutation());
        let mut out = BTreeMap::new();
        for (w, c) in prod {
            let f = FlagString::from_permutation(&a.steps, &w)
                .map_err(|_| Error::CrossCheck(format!("{a} * {b} produced the non-coset permutation {w:?}")))?;
            if c < 0 {
                return Err(Error::CrossCheck(format!("{a} * {b} has negative coefficient {c} at {f}")));
            }
            out.insert(f.as_string(), BigInt::from(c));
        }
        Ok(out)
    }
}

fn shared(n: usize) -> Arc<FlagOracle> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FlagOracle>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(o) = cache.lock().expect("cache lock").get(&n) {
        return o.clone();
    }
    let o = Arc::new(FlagOracle::new(n));
    cache.lock().expect("cache lock").entry(n).or_insert(o).clone()
}

/// Exact structure constants c^w_{a,b} of a partial flag variety, keyed by string.
pub fn flag_structure_constants(a: &FlagString, b: &FlagString) -> Result<BTreeMap<String, BigInt>> {
    shared(a.n).structure_constants(a, b)
}
