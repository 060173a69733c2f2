//! A slowly drifting RXX angle breaks periodicity; S_n picks it up after a few cycles.

use periodicity::cli::{presets, run};
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for dtheta in [0.0, 1e-3, 3e-3] {
        let params = json!({ "dtheta": dtheta });
        let cfg = presets::preset("drift4q", params.as_object().unwrap())?;
        let out = run(&cfg)?;
        let r = &out.report;
        let s: Vec<String> = (2..=6).map(|n| format!("{:+.2e}", r.record(n).unwrap().s)).collect();
        let opt = r.optimized.as_ref().map_or(f64::NAN, |o| o.value);
        println!("dθ = {dtheta:.0e}: S_2..S_6 = [{}], optimized {opt:+.2e}, first violation {:?}", s.join(", "), r.first_violation_n);
    }
    Ok(())
}
