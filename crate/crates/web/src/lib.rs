//! Browser bindings for the skewrank demo page.
//!
//! Each operation is a plain function returning JSON (or an error message),
//! so it can be tested natively; the `#[wasm_bindgen]` wrappers only convert
//! the error side into a JS exception.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use skewrank::cauchy::{
    factorial_cauchy, fc_det, inverse_binomial, rc_det, restricted_cauchy, SignedDeterminant, ZeroPattern,
};
use skewrank::exact::{parse_rationals, Matrix, Rational};
use skewrank::giambelli::{grank, hg_det_spec, hg_matrix, parse_cut, HgEntry};
use skewrank::rank::{jrank, min_strip_decomposition, rank_code, rank_diagonal, BorderStrip, SearchBounds};
use skewrank::schur::{skew_schur_spec, zrank};
use skewrank::shapes::diagonals;
use skewrank::SkewShape;

/// Shapes above this size are refused so the page stays responsive.
pub const MAX_CELLS: usize = 40;
/// The minimal strip search is exponential; above this it is skipped.
pub const MIN_STRIP_CELLS: usize = 28;

fn parse_shape(text: &str) -> Result<SkewShape, String> {
    let s: SkewShape = text.parse().map_err(|e: skewrank::Error| e.to_string())?;
    if s.size() > MAX_CELLS {
        return Err(format!("shape has {} cells; the demo accepts at most {MAX_CELLS}", s.size()));
    }
    Ok(s)
}

fn strip_json(st: &BorderStrip) -> Value {
    json!({
        "cells": st.cells().iter().map(|c| [c.row, c.col]).collect::<Vec<_>>(),
        "p": st.start().content(),
        "q": st.end().content(),
        "steps": st.to_string(),
    })
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Cells, the rank statistics, the reduced code and one minimal border
/// strip decomposition (`null` for shapes over [`MIN_STRIP_CELLS`]).
pub fn analyze(shape: &str) -> Result<String, String> {
    let s = parse_shape(shape)?;
    let bounds = SearchBounds { min_strip_cells: MIN_STRIP_CELLS, ..SearchBounds::default() };
    let min = min_strip_decomposition(&s, &bounds).ok();
    let code = s.reduced_code();
    let ranks = json!({
        "diagonal": rank_diagonal(&s),
        "code": rank_code(&s),
        "jt": jrank(&s),
        "min_strips": min.as_ref().map(|m| m.strips().len()),
        "zrank": zrank(&s),
    });
    let out = json!({
        "shape": s.to_string(),
        "rows": s.num_rows(),
        "cols": s.num_cols(),
        "cells": s.cells().iter().map(|c| [c.row, c.col]).collect::<Vec<_>>(),
        "diagonals": diagonals(&s).len(),
        "ranks": ranks,
        "code": { "top": code.top_string(), "bottom": code.bottom_string() },
        "min_strips": min.map(|m| m.strips().iter().map(strip_json).collect::<Vec<_>>()),
        "skew_schur": skew_schur_spec(&s).pretty(),
    });
    Ok(out.to_string())
}

/// The outside decomposition cut by `word` (one `U`/`R` per step of the
/// cutting strip) with its Giambelli-type matrix.
pub fn decompose(shape: &str, word: &str) -> Result<String, String> {
    let s = parse_shape(shape)?;
    let d = parse_cut(&s, word).map_err(|e| e.to_string())?;
    let hg = hg_matrix(&d);
    let n = hg.order();
    let entries: Vec<Vec<Value>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| match hg.entry(i, k) {
                    HgEntry::Zero => json!("0"),
                    HgEntry::One => json!("1"),
                    HgEntry::Ribbon(r) => json!(format!("s[{},{}] {}", hg.p[i], hg.q[k], r)),
                })
                .collect()
        })
        .collect();
    let det = hg_det_spec(&d);
    let target = skew_schur_spec(&s);
    let out = json!({
        "cut": d.cutting().word(),
        "strips": d.strips().iter().map(strip_json).collect::<Vec<_>>(),
        "p": hg.p,
        "q": hg.q,
        "matrix": entries,
        "grank": grank(&d),
        "det": det.pretty(),
        "skew_schur": target.pretty(),
        "identity": det == target,
    });
    Ok(out.to_string())
}

fn det_json(kind: &str, m: &Matrix<Rational>, d: &SignedDeterminant) -> Value {
    json!({
        "kind": kind,
        "matrix": matrix_json(m),
        "det": d.value.to_string(),
        "omega": d.omega,
        "sign": d.sign(),
        "predicted_sign": d.predicted_sign(),
    })
}

/// `kind` is `cauchy`, `factorial` or `binomial`; `a` and `b` are comma
/// separated (rationals for the first two, naturals for `binomial`).
pub fn determinant(kind: &str, a: &str, b: &str) -> Result<String, String> {
    let err = |e: skewrank::Error| e.to_string();
    let out = match kind {
        "cauchy" => {
            let m = restricted_cauchy(parse_rationals(a).map_err(err)?, parse_rationals(b).map_err(err)?).map_err(err)?;
            det_json(kind, m.entries(), &rc_det(&m).map_err(err)?)
        }
        "factorial" => {
            let m = factorial_cauchy(parse_rationals(a).map_err(err)?, parse_rationals(b).map_err(err)?).map_err(err)?;
            det_json(kind, m.entries(), &fc_det(&m).map_err(err)?)
        }
        "binomial" => {
            let naturals = |t: &str| -> Result<Vec<u64>, String> {
                t.split(',').map(|x| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"))).collect()
            };
            let r = inverse_binomial(&naturals(a)?, &naturals(b)?).map_err(err)?;
            let mut j = det_json(kind, r.entries(), &r.det);
            j["factorial_det"] = json!(r.factorial_det.to_string());
            j
        }
        other => return Err(format!("unknown determinant kind {other:?}")),
    };
    Ok(out.to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(shape: &str) -> Result<String, JsValue> {
    js(analyze(shape))
}

#[wasm_bindgen(js_name = decompose)]
pub fn decompose_js(shape: &str, word: &str) -> Result<String, JsValue> {
    js(decompose(shape, word))
}

#[wasm_bindgen(js_name = determinant)]
pub fn determinant_js(kind: &str, a: &str, b: &str) -> Result<String, JsValue> {
    js(determinant(kind, a, b))
}
