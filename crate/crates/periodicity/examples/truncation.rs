//! Long-n inequalities from a short measured series: plan L, then zero-fill and extrapolate.

use periodicity::bounds::{truncation_plan, xi_for_tolerance};
use periodicity::cli::{presets, run};
use periodicity::detection::{detect, extrapolate};
use serde_json::Map;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for xi in [1.0, 2.0, std::f64::consts::PI] {
        let p = truncation_plan(1000, xi)?;
        println!("n = 1000, ξ = {xi:.3}: measure L = {}, bound {:.3e}", p.l, p.error_bound);
    }
    println!("ξ for 1e-6 at n = 1000: {:.4}", xi_for_tolerance(1000, 1e-6)?);

    let full = run(&presets::preset("slow-env", &Map::new())?)?.series;
    let n_full = detect(&full, 200)?.records.iter().find(|r| r.violated).map(|r| r.n);
    println!("full series: first S_n violation at {n_full:?}");
    for l in [28, 65] {
        let x = extrapolate(&full.truncated(l + 1), 200)?;
        println!("measured to L = {l}: extrapolated first violation at {:?}", x.first_extrapolated_violation);
    }
    Ok(())
}
