//! Browser bindings: a cohomology table, the `τ`-orbit of vector ranks, and
//! the cheaper verification suites. Every export returns a JSON string.

use kleinring::commands::{cohomology_report, verify_report};
use kleinring::linalg::Zpn;
use kleinring::report::Config;
use kleinring::spec_lang::parse_spec;
use wasm_bindgen::prelude::*;

/// Suites fast enough to run on the page's main thread.
pub const BROWSER_SUITES: [&str; 4] = ["thm2.5", "prop2.3", "ranks", "shift"];

const PRECISION: u32 = 16;
const MAX_ORBIT: i32 = 4;

fn config(p: u64, window: (i64, i64)) -> Config {
    Config { p, precision: PRECISION, window }
}

pub fn cohomology_json(spec: &str, p: u64, from: i64, to: i64) -> Result<String, String> {
    if to - from > 24 {
        return Err("at most 25 degrees at a time".into());
    }
    cohomology_report(config(p, (from, to)), spec, from, to).map(|d| d.to_json()).map_err(|e| e.to_string())
}

pub fn tau_orbit_json(spec: &str, p: u64, steps: i32) -> Result<String, String> {
    let steps = steps.clamp(0, MAX_ORBIT);
    let ring = Zpn::new(p, PRECISION).map_err(|e| e.to_string())?;
    let lattice = parse_spec(p, spec).and_then(|d| d.build(ring)).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for k in -steps..=steps {
        let entry = match lattice.tau_power(k) {
            Ok(l) => serde_json::json!({ "k": k, "vector_rank": l.vector_rank().to_string() }),
            Err(e) => serde_json::json!({ "k": k, "error": e.to_string() }),
        };
        rows.push(entry);
    }
    Ok(serde_json::to_string_pretty(&rows).expect("orbit serializes"))
}

pub fn verify_json(suite: &str, p: u64) -> Result<String, String> {
    if !BROWSER_SUITES.contains(&suite) {
        return Err(format!("suite {suite} is not available here; try one of {}", BROWSER_SUITES.join(", ")));
    }
    verify_report(config(p, (-4, 4)), suite).map(|d| d.to_json()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn cohomology(spec: &str, p: u32, from: i32, to: i32) -> Result<String, JsValue> {
    cohomology_json(spec, p as u64, from as i64, to as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn tau_orbit(spec: &str, p: u32, steps: i32) -> Result<String, JsValue> {
    tau_orbit_json(spec, p as u64, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(suite: &str, p: u32) -> Result<String, JsValue> {
    verify_json(suite, p as u64).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_produce_json() {
        let doc: serde_json::Value = serde_json::from_str(&cohomology_json("A", 3, -1, 1).unwrap()).unwrap();
        assert_eq!(doc["table"].as_array().unwrap().len(), 3);
        let orbit: serde_json::Value = serde_json::from_str(&tau_orbit_json("R[pp]", 2, 1).unwrap()).unwrap();
        assert_eq!(orbit[1]["vector_rank"], "(1|1,0,0,0)");
        let doc: serde_json::Value = serde_json::from_str(&verify_json("prop2.3", 2).unwrap()).unwrap();
        assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
        assert!(verify_json("all", 2).is_err());
        assert!(cohomology_json("R[", 2, 0, 1).unwrap_err().contains("position 2"));
    }
}
