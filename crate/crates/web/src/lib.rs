//! Browser bindings: classify a triple on a tangent algebroid, evaluate a big
//! bracket, and compute the signature of the induced metric at a point.

use std::sync::Arc;

use hyperforge::algebroid::{self, AlgebroidSpec, Mu};
use hyperforge::coeff::{poly_parse, CoeffMatrix, RatFunc, Rational};
use hyperforge::hyperstruct::{self, SymplecticTriple};
use hyperforge::superalgebra::{GeneratorSet, SuperElem};
use wasm_bindgen::prelude::*;

fn parse_vars(csv: &str) -> Result<Vec<String>, String> {
    let vars: Vec<String> = csv.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    if vars.is_empty() {
        return Err("declare at least one variable".into());
    }
    Ok(vars)
}

fn parse_matrix(json: &str, vars: &[String], what: &str) -> Result<CoeffMatrix, String> {
    let rows: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(json).map_err(|e| format!("{what}: expected a JSON array of rows ({e})"))?;
    let d = vars.len();
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(format!("{what} must be {d}x{d}"));
    }
    let mut m = CoeffMatrix::zeros(d, d);
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let text = match cell {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(format!("{what}[{}][{}]: unexpected {other}", i + 1, j + 1)),
            };
            let f = poly_parse(&text, vars).map_err(|e| format!("{what}[{}][{}]: {e}", i + 1, j + 1))?;
            m.set(i, j, f);
        }
    }
    Ok(m)
}

fn tangent_triple(vars_csv: &str, forms: [&str; 3]) -> Result<SymplecticTriple, String> {
    let vars = parse_vars(vars_csv)?;
    let spec = AlgebroidSpec::tangent(vars.clone()).map_err(|e| e.to_string())?;
    let mu: Mu = algebroid::build_mu(&spec);
    let names = ["omega1", "omega2", "omega3"];
    let mut w = Vec::with_capacity(3);
    for (text, name) in forms.iter().zip(names) {
        w.push(parse_matrix(text, &vars, name)?);
    }
    hyperstruct::build_triple(&mu, [&w[0], &w[1], &w[2]]).map_err(|e| e.to_string())
}

/// Classification report for three forms on the tangent algebroid of the
/// coordinate space, as pretty JSON.
pub fn classify_triple(vars_csv: &str, w1: &str, w2: &str, w3: &str) -> Result<String, String> {
    let t = tangent_triple(vars_csv, [w1, w2, w3])?;
    let report = hyperstruct::classify(&t);
    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())
}

/// Signature `n₊,n₋` of the metric of an ε-hypersymplectic triple at a point.
pub fn metric_signature(vars_csv: &str, w1: &str, w2: &str, w3: &str, point_csv: &str) -> Result<String, String> {
    let t = tangent_triple(vars_csv, [w1, w2, w3])?;
    let eps = hyperstruct::epsilon_signature(&t).ok_or("the triple is not epsilon-hypersymplectic")?;
    let g = hyperstruct::metric_g(&t, &eps).map_err(|e| e.to_string())?;
    let point = parse_point(point_csv, t.rank())?;
    let (plus, minus) = hyperstruct::signature_at_point(&g, &point).map_err(|e| e.to_string())?;
    Ok(format!("({plus}, {minus})"))
}

fn parse_point(csv: &str, dim: usize) -> Result<Vec<Rational>, String> {
    let point = csv
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            poly_parse(s, &[])
                .and_then(|f| f.evaluate(&[]))
                .map_err(|e| format!("point coordinate `{s}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if point.len() != dim {
        return Err(format!("the point needs {dim} coordinates, got {}", point.len()));
    }
    Ok(point)
}

/// Evaluates `{a, b}` on the superalgebra with the given base variables and
/// fibre rank. Elements are sums of products of `thN`, `xiN`, `pN` and
/// coefficients such as `x^2` or `(1/2)`.
pub fn big_bracket(vars_csv: &str, rank: usize, a: &str, b: &str) -> Result<String, String> {
    let vars: Vec<String> =
        vars_csv.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    let gens = GeneratorSet::new(vars, rank).map_err(|e| e.to_string())?;
    let a = parse_super(&gens, a)?;
    let b = parse_super(&gens, b)?;
    Ok(a.bracket(&b).render())
}

fn split_terms(text: &str) -> Result<Vec<(bool, String)>, String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    let mut after_operand = false;
    let mut signed = false;
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err("unbalanced parentheses".into());
        }
        if depth == 0 && (c == '+' || c == '-') && !after_operand && current.trim().is_empty() {
            negative ^= c == '-';
            signed = true;
            continue;
        }
        if depth == 0 && (c == '+' || c == '-') && after_operand {
            terms.push((negative, std::mem::take(&mut current)));
            negative = c == '-';
            after_operand = false;
            signed = true;
            continue;
        }
        if !c.is_whitespace() {
            signed = false;
            after_operand = !matches!(c, '*' | '^' | '/' | '(');
        }
        current.push(c);
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if signed {
        return Err("dangling sign".into());
    }
    terms.push((negative, current));
    Ok(terms)
}

fn generator(gens: &Arc<GeneratorSet>, factor: &str) -> Result<Option<SuperElem>, String> {
    let (kind, index) = if let Some(i) = factor.strip_prefix("th") {
        ("th", i)
    } else if let Some(i) = factor.strip_prefix("xi") {
        ("xi", i)
    } else if let Some(i) = factor.strip_prefix('p') {
        ("p", i)
    } else {
        return Ok(None);
    };
    let Ok(i) = index.parse::<usize>() else { return Ok(None) };
    let bound = if kind == "p" { gens.dim() } else { gens.rank() };
    if i == 0 || i > bound {
        return Err(format!("{factor}: index must lie in 1..={bound}"));
    }
    Ok(Some(match kind {
        "th" => SuperElem::theta(gens, i),
        "xi" => SuperElem::xi(gens, i),
        _ => SuperElem::p(gens, i),
    }))
}

fn split_factors(term: &str) -> Vec<String> {
    let mut factors = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for c in term.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                factors.push(std::mem::take(&mut current));
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    factors.push(current);
    factors
}

fn parse_super(gens: &Arc<GeneratorSet>, text: &str) -> Result<SuperElem, String> {
    let mut sum = SuperElem::zero(gens);
    for (negative, term) in split_terms(text)? {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let mut product = SuperElem::scalar(gens, RatFunc::from_int(if negative { -1 } else { 1 }));
        for factor in split_factors(term) {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(format!("empty factor in `{term}`"));
            }
            let elem = match generator(gens, factor)? {
                Some(e) => e,
                None => {
                    let f = poly_parse(factor, gens.vars()).map_err(|e| format!("`{factor}`: {e}"))?;
                    SuperElem::scalar(gens, f)
                }
            };
            product = product.mul(&elem);
        }
        sum = sum.add(&product);
    }
    Ok(sum)
}

#[wasm_bindgen(js_name = classifyTriple)]
pub fn classify_triple_js(vars: &str, w1: &str, w2: &str, w3: &str) -> Result<String, JsValue> {
    classify_triple(vars, w1, w2, w3).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = metricSignature)]
pub fn metric_signature_js(vars: &str, w1: &str, w2: &str, w3: &str, point: &str) -> Result<String, JsValue> {
    metric_signature(vars, w1, w2, w3, point).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = bigBracket)]
pub fn big_bracket_js(vars: &str, rank: usize, a: &str, b: &str) -> Result<String, JsValue> {
    big_bracket(vars, rank, a, b).map_err(|e| JsValue::from_str(&e))
}
