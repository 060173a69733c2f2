//! Classical reversible logic: S_n sits at 1/2 for one Toffoli and at 0 for two, and
//! depolarizing noise pulls it down.

use periodicity::cli::{presets, run};
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, p) in [("toffoli", 0.0), ("toffoli2", 0.0), ("toffoli", 0.02)] {
        let cfg = presets::preset(name, json!({ "p": p }).as_object().unwrap())?;
        let r = run(&cfg)?.report;
        let s: Vec<String> = [2, 5, 10, 20, 30].iter().map(|&n| format!("{:.5}", r.record(n).unwrap().s)).collect();
        println!("{name} p = {p}: S_2, S_5, S_10, S_20, S_30 = {}", s.join(", "));
    }
    Ok(())
}
