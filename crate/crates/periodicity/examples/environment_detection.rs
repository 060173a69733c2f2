//! A hidden environment qubit makes the system dynamics non-unitary; S_2 turns negative.

use periodicity::cli::{presets, run};
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (label, params) in [("coupled", json!({})), ("decoupled", json!({ "decoupled": true }))] {
        let cfg = presets::preset("cnot-env", params.as_object().unwrap())?;
        let r = run(&cfg)?.report;
        println!("{label:>9}: S_2 = {:+.4}, S_3 = {:+.4}, violated: {}", r.record(2).unwrap().s, r.record(3).unwrap().s, r.violation);
    }

    for phi in [0.0, 0.6, 1.2, 1.8, 2.4, std::f64::consts::PI] {
        let cfg = presets::preset("cnot-env", json!({ "phi": phi }).as_object().unwrap())?;
        println!("phi = {phi:.2}: S_2 = {:+.4}", run(&cfg)?.report.record(2).unwrap().s);
    }
    Ok(())
}
