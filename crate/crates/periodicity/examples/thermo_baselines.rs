//! One-cycle thermodynamic checks, and where they go blind while S_2 does not.

use periodicity::cli::presets;
use periodicity::linalg::random::random_unitary;
use periodicity::sim::{evolve, KrausChannel};
use periodicity::thermo::{
    jarzynski_moment, mean_work, passivity_gap, required_shots, second_law_gap, Dynamics, PassivityMap, WorkStatistics,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Map;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ws = WorkStatistics::from_unitary(vec![0.0, 0.4, 1.1, 1.5], 1.3, &random_unitary(&mut rng, 4))?;
    println!("Jarzynski moment {:.12}, <W> = {:.4}, shots needed ≈ {:.2}", jarzynski_moment(&ws), mean_work(&ws), required_shots(&ws));

    let ad = KrausChannel::amplitude_damping(0.3)?;
    for beta in [f64::INFINITY, 1.0] {
        let gap = second_law_gap(beta, &[0.0, 1.0], &Dynamics::from_channel(&ad))?;
        println!("second-law gap at β = {beta}: {gap:+.5}");
    }

    // pure start: tr[ρ_1(1 − ρ_0)] = 1 − R_1 can never go negative
    let e = presets::preset("cnot-env", &Map::new())?.resolve()?;
    let rhos = evolve(&e.rho0, &e.spec, &e.channels, 2)?;
    let r: Vec<f64> = rhos.iter().map(|s| e.rho0.matrix().trace_product(s.matrix()).map(|z| z.re)).collect::<Result<_, _>>()?;
    println!("cnot-env passivity gap (1 − x): {:+.5}", passivity_gap(&e.rho0, &rhos[1], PassivityMap::OneMinusX)?);
    println!("cnot-env S_2: {:+.5}", (3.0 * r[0] - 4.0 * r[1] + r[2]) / 8.0);
    Ok(())
}
