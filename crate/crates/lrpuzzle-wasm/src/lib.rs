//! Browser bindings: puzzle drawings, product expansions, and the Mondrian
//! and quantum explorers. Every export returns a JSON string.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use lrpuzzle::coeff::{IntCoeff, LaurentCoeff, PolyCoeff, Ring};
use lrpuzzle::engine::{enumerate_fillings, expand_product};
use lrpuzzle::mondrian;
use lrpuzzle::pieces::{RingKind, Theory};
use lrpuzzle::quantum;
use lrpuzzle::render::render_svg;
use lrpuzzle::schubert::{parse_parts, FlagString, SchubertIndex, Space};
use lrpuzzle::sweep::display_order;

/// Largest n accepted from the page, to keep the tab responsive.
pub const MAX_N: usize = 8;

fn space(s: &str) -> Result<Space, String> {
    let sp: Space = s.parse().map_err(|e: lrpuzzle::Error| e.to_string())?;
    if sp.n > MAX_N {
        return Err(format!("n={} is larger than the demo limit {MAX_N}", sp.n));
    }
    Ok(sp)
}

fn theory(sp: &Space, t: &str) -> Result<Theory, String> {
    let th: Theory = t.parse().map_err(|e: lrpuzzle::Error| e.to_string())?;
    if th.steps() != sp.r() {
        return Err(format!("theory {th} applies to {}-step flags, not {sp}", th.steps()));
    }
    Ok(th)
}

fn class(sp: &Space, s: &str) -> Result<String, String> {
    FlagString::parse(&sp.steps, s).map(|f| f.as_string()).map_err(|e| e.to_string())
}

fn grass_partition(sp: &Space, s: &str) -> Result<SchubertIndex, String> {
    let [k] = sp.steps[..] else {
        return Err(format!("{sp} is not a Grassmannian"));
    };
    let parts = parse_parts(s).map_err(|e| e.to_string())?;
    SchubertIndex::new(k, sp.n, &parts).map_err(|e| e.to_string())
}

fn parts_text(p: &SchubertIndex) -> String {
    let s = p.parts_string();
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn strings<R: Ring>(m: BTreeMap<String, R>) -> BTreeMap<String, String> {
    m.into_iter().filter(|(_, c)| !c.is_zero()).map(|(g, c)| (g, c.to_string())).collect()
}

/// `{"terms": [{"class", "coeff"}]}` for a puzzle expansion.
pub fn expansion_json(space_s: &str, theory_s: &str, alpha: &str, beta: &str) -> Result<String, String> {
    let sp = space(space_s)?;
    let th = theory(&sp, theory_s)?;
    let (a, b) = (class(&sp, alpha)?, class(&sp, beta)?);
    let pieces = th.pieces();
    let m = match th.ring() {
        RingKind::Int => strings(expand_product::<IntCoeff>(&a, &b, &pieces).map_err(|e| e.to_string())?),
        RingKind::Poly => strings(expand_product::<PolyCoeff>(&a, &b, &pieces).map_err(|e| e.to_string())?),
        RingKind::Laurent => strings(expand_product::<LaurentCoeff>(&a, &b, &pieces).map_err(|e| e.to_string())?),
    };
    let terms: Vec<Value> = display_order(&m).into_iter().map(|(g, c)| json!({"class": g, "coeff": c})).collect();
    Ok(json!({"space": sp.to_string(), "theory": th.tag(), "alpha": a, "beta": b, "terms": terms}).to_string())
}

/// `{"puzzles": [{"gamma", "svg"}]}`, optionally for a single gamma.
pub fn puzzles_json(space_s: &str, theory_s: &str, alpha: &str, beta: &str, gamma: &str) -> Result<String, String> {
    let sp = space(space_s)?;
    let th = theory(&sp, theory_s)?;
    let (a, b) = (class(&sp, alpha)?, class(&sp, beta)?);
    let g = if gamma.trim().is_empty() { None } else { Some(class(&sp, gamma)?) };
    let fillings = enumerate_fillings(sp.n, &a, &b, &th.pieces(), g.as_deref()).map_err(|e| e.to_string())?;
    let puzzles: Vec<Value> = fillings.iter().map(|f| json!({"gamma": f.gamma, "svg": render_svg(f)})).collect();
    Ok(json!({"space": sp.to_string(), "theory": th.tag(), "alpha": a, "beta": b, "puzzles": puzzles}).to_string())
}

/// `{"terms": [{"class", "coeff"}], "trace": [...]}` for the Mondrian game.
pub fn mondrian_json(space_s: &str, lambda: &str, mu: &str) -> Result<String, String> {
    let sp = space(space_s)?;
    let (l, m) = (grass_partition(&sp, lambda)?, grass_partition(&sp, mu)?);
    let k = l.k;
    let leaves = mondrian::play(&l.lambda, &m.lambda, k, sp.n).map_err(|e| e.to_string())?;
    let mut rows: Vec<(&SchubertIndex, &u64)> = leaves.iter().collect();
    rows.sort_by(|x, y| y.0.lambda.cmp(&x.0.lambda));
    let trace = mondrian::trace_dump(&l.lambda, &m.lambda, k, sp.n).map_err(|e| e.to_string())?;
    Ok(json!({
        "space": sp.to_string(),
        "terms": rows.iter().map(|(p, c)| json!({"class": parts_text(p), "coeff": c.to_string()})).collect::<Vec<_>>(),
        "trace": trace.lines().collect::<Vec<_>>(),
    })
    .to_string())
}

/// `{"terms": [{"degree", "class", "coeff"}]}` for a small quantum product.
pub fn quantum_json(space_s: &str, lambda: &str, mu: &str) -> Result<String, String> {
    let sp = space(space_s)?;
    let (l, m) = (grass_partition(&sp, lambda)?, grass_partition(&sp, mu)?);
    let q = quantum::quantum_product(&l.lambda, &m.lambda, l.k, sp.n).map_err(|e| e.to_string())?;
    let terms: Vec<Value> = q
        .to_string()
        .lines()
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            json!({"degree": f[0].trim_start_matches("q^").parse::<usize>().unwrap_or(0), "class": f[1], "coeff": f[2]})
        })
        .collect();
    Ok(json!({"space": sp.to_string(), "terms": terms}).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = expandProduct)]
pub fn expand_product_js(space: &str, theory: &str, alpha: &str, beta: &str) -> Result<String, JsValue> {
    js(expansion_json(space, theory, alpha, beta))
}

#[wasm_bindgen(js_name = puzzleSvgs)]
pub fn puzzle_svgs_js(space: &str, theory: &str, alpha: &str, beta: &str, gamma: &str) -> Result<String, JsValue> {
    js(puzzles_json(space, theory, alpha, beta, gamma))
}

#[wasm_bindgen(js_name = playMondrian)]
pub fn play_mondrian_js(space: &str, lambda: &str, mu: &str) -> Result<String, JsValue> {
    js(mondrian_json(space, lambda, mu))
}

#[wasm_bindgen(js_name = quantumProduct)]
pub fn quantum_product_js(space: &str, lambda: &str, mu: &str) -> Result<String, JsValue> {
    js(quantum_json(space, lambda, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn expansion() {
        let v = parse(&expansion_json("g(1,3)", "ht", "010", "010").unwrap());
        assert_eq!(v["terms"][1]["coeff"], "y3 - y2");
    }

    #[test]
    fn puzzles() {
        let v = parse(&puzzles_json("g(2,4)", "h", "0101", "0101", "").unwrap());
        assert_eq!(v["puzzles"].as_array().unwrap().len(), 2);
        assert!(v["puzzles"][0]["svg"].as_str().unwrap().starts_with("<svg"));
        assert!(puzzles_json("g(2,4)", "h2", "0101", "0101", "").is_err());
        assert!(puzzles_json("g(2,9)", "h", "010000001", "010000001", "").is_err());
    }

    #[test]
    fn explorers() {
        let v = parse(&mondrian_json("g(3,6)", "2,1", "2,1").unwrap());
        assert_eq!(v["terms"][1]["class"], "3,2,1");
        assert_eq!(v["terms"][1]["coeff"], "2");
        let q = parse(&quantum_json("g(2,4)", "1", "2,2").unwrap());
        assert_eq!(q["terms"][0], json!({"degree": 1, "class": "1", "coeff": "1"}));
    }
}
