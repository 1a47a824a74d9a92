//! Browser bindings. Every export takes plain numbers and returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use zx_core::sharp::{incompleteness_witness, soundness_scan, supp_gap, supp_gap_float, ScanStatus, SharpParams};
use zx_core::Phase;

fn phase(num: i32, den: i32) -> Result<Phase, String> {
    Phase::try_new(num.into(), den.into()).map_err(|e| e.to_string())
}

fn grid(den: u32) -> Result<Vec<Phase>, String> {
    if !den.is_power_of_two() {
        return Err(format!("grid denominator {den} is not a power of two"));
    }
    Ok(Phase::dyadic_grid(den.trailing_zeros()))
}

pub fn witness_report(num: i32, den: i32) -> Result<Value, String> {
    let a = phase(num, den)?;
    let w = incompleteness_witness(a).map_err(|e| e.to_string())?;
    let g = supp_gap_float(a);
    Ok(json!({
        "alpha": a.to_string(),
        "lhs": w.lhs.pretty(),
        "rhs": w.rhs.pretty(),
        "equal": w.equal,
        "gap": w.gap.pretty(),
        "gap_float": [g.re, g.im],
        "consistent": w.consistent(),
    }))
}

pub fn gap_rows(den: u32) -> Result<Value, String> {
    let rows: Result<Vec<Value>, String> = grid(den)?
        .into_iter()
        .map(|a| {
            let g = supp_gap(a).map_err(|e| e.to_string())?;
            let f = supp_gap_float(a);
            Ok(json!({"alpha": a.to_string(), "exact": g.pretty(), "re": f.re, "im": f.im, "zero": g.is_zero()}))
        })
        .collect();
    Ok(Value::Array(rows?))
}

pub fn scan_report(k: u32, l: i32, den: u32) -> Result<Value, String> {
    if k == 0 {
        return Err("k must be at least 1".into());
    }
    let p = SharpParams::new(k as usize, l.into());
    let r = soundness_scan(p, &grid(den)?);
    let skipped: Vec<&str> =
        r.rows.iter().filter(|x| x.status == ScanStatus::Skipped).map(|x| x.rule.as_str()).collect();
    Ok(json!({
        "k": k,
        "l": l,
        "predicted_sound": p.predicted_sound(),
        "failing": r.failing_names(),
        "skipped": skipped,
    }))
}

fn out(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// Witness at `α = (num/den)·π`.
#[wasm_bindgen]
pub fn witness(num: i32, den: i32) -> Result<String, JsError> {
    out(witness_report(num, den))
}

/// The gap over `{jπ/den}`.
#[wasm_bindgen]
pub fn gap_table(den: u32) -> Result<String, JsError> {
    out(gap_rows(den))
}

/// One cell of the `(k, ℓ)` soundness grid on phases `jπ/den`.
#[wasm_bindgen]
pub fn scan_cell(k: u32, l: i32, den: u32) -> Result<String, JsError> {
    out(scan_report(k, l, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_json() {
        let v = witness_report(1, 4).unwrap();
        assert_eq!(v["equal"], false);
        assert_eq!(v["gap"], "2+2i");
        assert!(witness_report(1, 0).is_err());
    }

    #[test]
    fn gap_zeros() {
        let rows = gap_rows(8).unwrap();
        let zeros: Vec<&str> =
            rows.as_array().unwrap().iter().filter(|r| r["zero"] == true).map(|r| r["alpha"].as_str().unwrap()).collect();
        assert_eq!(zeros, ["0", "π/2", "π", "3π/2"]);
        assert!(gap_rows(6).is_err());
    }

    #[test]
    fn scan_cells() {
        let v = scan_report(1, -1, 4).unwrap();
        assert_eq!(v["predicted_sound"], false);
        let failing: Vec<&str> = v["failing"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        assert!(failing.contains(&"EU") && failing.contains(&"ZO"));
        let v = scan_report(1, 0, 4).unwrap();
        assert_eq!(v["failing"].as_array().unwrap().len(), 0);
    }
}
