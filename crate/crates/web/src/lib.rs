//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns plain strings and numbers so the page needs
//! no glue beyond the generated module. Errors come back as message strings.

use degen_core::document;
use degen_core::families::{self, FamilyKind};
use degen_core::rational::{parse_rational, render_rational, to_f64, Rational};
use degen_core::suite::{self, SuiteConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest order the page may request for curves and verification.
pub const MAX_DEMO_ORDER: usize = 16;
const MAX_SAMPLES: usize = 2000;

fn optional_rational(s: &str) -> Result<Option<Rational>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(None);
    }
    parse_rational(s).map(Some).map_err(|e| e.to_string())
}

fn rational_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_rational(p).map_err(|e| e.to_string()))
        .collect()
}

fn demo_order(order: usize) -> Result<usize, String> {
    if order > MAX_DEMO_ORDER {
        return Err(format!("order {order} exceeds the demo limit of {MAX_DEMO_ORDER}"));
    }
    Ok(order)
}

/// Triangle (or Korobov / degenerate Bernoulli sequence) as a JSON document.
/// An empty `lambda` keeps λ symbolic; `r` is used only by the sequences.
#[wasm_bindgen]
pub fn triangle_json(kind: &str, order: usize, lambda: &str, r: usize) -> Result<String, String> {
    let lambda = optional_rational(lambda)?;
    let r = matches!(kind, "korobov" | "degbernoulli").then_some(r);
    document::table_document(kind, order, lambda.as_ref(), r)
        .map(|d| d.render_json())
        .map_err(|e| e.to_string())
}

/// Samples P_0..P_order of a family at the given λ over `samples + 1` evenly
/// spaced points of [x_min, x_max]. Values are exact until the final
/// conversion to floating point.
#[wasm_bindgen]
pub fn family_curves(
    family: &str,
    order: usize,
    lambda: &str,
    x_min: &str,
    x_max: &str,
    samples: usize,
) -> Result<String, String> {
    let order = demo_order(order)?;
    let kind = FamilyKind::from_name(family).map_err(|e| e.to_string())?;
    let lambda = parse_rational(lambda).map_err(|e| e.to_string())?;
    let lo = parse_rational(x_min).map_err(|e| e.to_string())?;
    let hi = parse_rational(x_max).map_err(|e| e.to_string())?;
    if hi <= lo || samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("need x_min < x_max and 1..={MAX_SAMPLES} samples"));
    }
    let fam = families::family(kind, order).map_err(|e| e.to_string())?;
    let step = (&hi - &lo) / Rational::from_integer(samples.into());
    let xs: Vec<Rational> = (0..=samples)
        .map(|i| &lo + &step * Rational::from_integer(i.into()))
        .collect();
    let curves: Vec<_> = fam
        .polys()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let specialized = p.specialize_lambda(&lambda);
            let ys: Vec<f64> = xs.iter().map(|x| to_f64(&p.evaluate(&lambda, x))).collect();
            json!({ "n": n, "text": specialized.to_string(), "symbolic": p.to_string(), "y": ys })
        })
        .collect();
    let out = json!({
        "family": family,
        "lambda": render_rational(&lambda),
        "x": xs.iter().map(to_f64).collect::<Vec<_>>(),
        "curves": curves,
    });
    Ok(out.to_string())
}

/// Runs the identity suite; `lambda_list` and `filter` are comma separated
/// and may be empty.
#[wasm_bindgen]
pub fn verify_json(order: usize, lambda_list: &str, filter: &str) -> Result<String, String> {
    let filter: Vec<String> = filter
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect();
    let config = SuiteConfig {
        order: demo_order(order)?,
        lambda_specializations: rational_list(lambda_list)?,
        identity_filter: (!filter.is_empty()).then_some(filter),
        include_optional: false,
    };
    let results = suite::run_suite(&config).map_err(|e| e.to_string())?;
    serde_json::to_string(&results).map_err(|e| e.to_string())
}

/// Identity ids and descriptions, for the page's filter list.
#[wasm_bindgen]
pub fn identity_list() -> String {
    let ids: Vec<_> = suite::registry()
        .iter()
        .map(|i| json!({ "id": i.id, "description": i.description, "optional": i.optional }))
        .collect();
    serde_json::Value::Array(ids).to_string()
}
