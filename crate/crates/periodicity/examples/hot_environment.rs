//! Thermal qubits swapped with a hotter environment: S_2 and S_3 stay positive, the
//! optimized three-cycle bound does not. T_undetec tells how hot the bath had to be.

use periodicity::bounds::optimized_three_cycle;
use periodicity::cli::{presets, run};
use periodicity::linalg::DensityMatrix;
use periodicity::sim::gibbs_qubit;
use periodicity::thermo::{t_undetectable, UndetectabilityInput};
use serde_json::Map;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = presets::preset("hot-env", &Map::new())?;
    let out = run(&cfg)?;
    let v = out.series.values();
    println!("R_0..R_3 = {:.5?}", &v[..4]);
    println!("S_2 = {:+.5}, S_3 = {:+.5}", out.report.record(2).unwrap().s, out.report.record(3).unwrap().s);
    let o = optimized_three_cycle(v[0], v[1], v[2], v[3])?;
    println!("optimized: {:+.5} at (x, y) = ({:.3?}, {:.3?}), simplified {:+.5}", o.value, o.x_min, o.y_min, o.simplified_value);

    let rho: DensityMatrix = gibbs_qubit(0.6, 1.0).tensor(&gibbs_qubit(3.5, 1.0))?;
    let t = t_undetectable(&UndetectabilityInput { env_energies: vec![0.0, 1.0], rho_sys: rho })?;
    println!("T_undetec = {t:.6} (environment at T = {:.6})", 1.0 / 0.5);
    Ok(())
}
