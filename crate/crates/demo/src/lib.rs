//! Browser bindings: three small computations returning JSON strings.

use parafermion::hamiltonian::baxter;
use parafermion::rp::check_rp;
use parafermion::rp::counterexample::{counterexample_f, single_bond_spec};
use parafermion::rp::trotter::trotter_errors;
use parafermion::{Representation, POSITIVITY_TOLERANCE};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest order offered for the power scan.
pub const MAX_SCAN_ORDER: u32 = 64;
/// Largest Trotter step count on the curve.
pub const MAX_STEPS: u32 = 4096;

fn text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `f(c^j)` for `j = 0..=n` on the single crossing bond.
pub fn power_values(order: u32) -> Result<String, String> {
    if !(2..=MAX_SCAN_ORDER).contains(&order) {
        return Err(format!("order must lie in 2..={MAX_SCAN_ORDER}"));
    }
    let rows = (0..=order)
        .map(|j| {
            let f = counterexample_f(order, j).map_err(text)?;
            let positive = f.re >= -POSITIVITY_TOLERANCE && f.im.abs() <= POSITIVITY_TOLERANCE;
            Ok(json!({"j": j, "value": [f.re, f.im], "positive": positive}))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({"n": order, "values": rows}).to_string())
}

/// Trotter error at `k = 1, 2, 4, …, max_k` on the single crossing bond.
pub fn trotter_curve(order: u32, max_k: u32) -> Result<String, String> {
    if max_k > MAX_STEPS {
        return Err(format!("at most {MAX_STEPS} steps"));
    }
    let spec = single_bond_spec(order).map_err(text)?;
    let rep = Representation::new(order, 2).map_err(text)?;
    let ks: Vec<u32> = (0..).map(|i| 1u32 << i).take_while(|&k| k <= max_k.max(1)).collect();
    let points = trotter_errors(&spec, &rep, &ks).map_err(text)?;
    Ok(json!({"n": order, "points": points}).to_string())
}

/// Builds the clock chain from comma-separated bond couplings and runs the
/// positivity check on it.
pub fn clock_chain(order: u32, couplings: &str, samples: usize, seed: u64) -> Result<String, String> {
    let t = couplings
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("bad coupling {s:?}: {e}")))
        .collect::<Result<Vec<_>, String>>()?;
    let sites = t.len() + 1;
    let spec = baxter(order, sites, &t).map_err(text)?;
    let rep = Representation::new(order, sites).map_err(text)?;
    let report = check_rp(&spec, &rep, samples, seed, POSITIVITY_TOLERANCE).map_err(text)?;
    Ok(json!({"n": order, "L": sites, "rule": spec.rule(), "report": report}).to_string())
}

#[wasm_bindgen(js_name = powerValues)]
pub fn power_values_js(order: u32) -> Result<String, JsValue> {
    power_values(order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = trotterCurve)]
pub fn trotter_curve_js(order: u32, max_k: u32) -> Result<String, JsValue> {
    trotter_curve(order, max_k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = clockChain)]
pub fn clock_chain_js(order: u32, couplings: &str, samples: u32, seed: u32) -> Result<String, JsValue> {
    clock_chain(order, couplings, samples as usize, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn powers_cover_every_exponent() {
        let v: Value = serde_json::from_str(&power_values(3).unwrap()).unwrap();
        let rows = v["values"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0]["positive"], true);
        assert_eq!(rows[1]["positive"], false);
        assert!(power_values(1).is_err());
    }

    #[test]
    fn curve_doubles_steps() {
        let v: Value = serde_json::from_str(&trotter_curve(3, 64).unwrap()).unwrap();
        let ks: Vec<u64> = v["points"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["k"].as_u64().unwrap())
            .collect();
        assert_eq!(ks, [1, 2, 4, 8, 16, 32, 64]);
    }

    #[test]
    fn chain_gate() {
        let good: Value = serde_json::from_str(&clock_chain(3, "0.5, -0.7, 0.5", 50, 1).unwrap()).unwrap();
        assert_eq!(good["rule"], "all_nonneg");
        assert!(good["report"]["violations"].as_array().unwrap().is_empty());
        let bad: Value = serde_json::from_str(&clock_chain(3, "0.5, 0.7, 0.5", 50, 1).unwrap()).unwrap();
        assert_eq!(bad["rule"], "none");
        assert!(clock_chain(3, "0.5, x", 10, 1).is_err());
        assert!(clock_chain(3, "0.5, -0.7, 0.4", 10, 1).is_err());
    }
}
