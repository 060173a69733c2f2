use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::channels::{apply_kraus, AppliedChannel};
use super::cycle::{cycle_unitary, CycleSpec, EnvMode};
use super::SimError;
use crate::linalg::{hs_overlap, ComplexMatrix, DensityMatrix};
use crate::series::{binomial_sigma, RecurrenceSeries, SeriesSource};

/// System-reduced states ρ_0..ρ_n.
pub fn evolve(
    rho0_sys: &DensityMatrix,
    spec: &CycleSpec,
    channels: &[AppliedChannel],
    n_cycles: usize,
) -> Result<Vec<DensityMatrix>, SimError> {
    spec.validate()?;
    if rho0_sys.dim() != 1 << spec.n_system_qubits {
        return Err(SimError::Dimension { expected: 1 << spec.n_system_qubits, got: rho0_sys.dim() });
    }
    let n = spec.n_qubits();
    let sys_dims = vec![2; spec.n_system_qubits];
    let rho0 = DensityMatrix::from_parts(rho0_sys.matrix().clone(), sys_dims.clone())?;
    let lifted: Vec<Vec<ComplexMatrix>> = channels
        .iter()
        .map(|c| c.lifted(n))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let keep: Vec<usize> = (0..spec.n_system_qubits).collect();
    let env = spec.env_state();
    let join = |sys: &DensityMatrix| -> Result<DensityMatrix, SimError> {
        Ok(match env {
            Some(e) => sys.tensor(e)?,
            None => sys.clone(),
        })
    };
    let fixed = if spec.has_drift() { None } else { Some(cycle_unitary(spec, 1)?) };

    let mut out = Vec::with_capacity(n_cycles + 1);
    out.push(rho0.clone());
    let mut joint = join(&rho0)?;
    for k in 1..=n_cycles {
        if spec.env_mode == EnvMode::ResetEachCycle && k > 1 {
            joint = join(&out[k - 1])?;
        }
        let u = match &fixed {
            Some(u) => u.clone(),
            None => cycle_unitary(spec, k)?,
        };
        let mut m = joint.matrix().conjugate_by(&u)?;
        for ops in &lifted {
            m = apply_kraus(ops, &m)?;
        }
        joint = DensityMatrix::from_parts(m, vec![2; n])?;
        let sys = if env.is_some() { joint.partial_trace(&keep)? } else { joint.clone() };
        out.push(sys);
    }
    Ok(out)
}

/// R_k = tr[ρ_0 ρ_k], exact.
pub fn recurrence_exact(rho0: &DensityMatrix, rhos: &[DensityMatrix]) -> Result<RecurrenceSeries, SimError> {
    let values = rhos.iter().map(|r| hs_overlap(rho0, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(RecurrenceSeries::exact(values)?)
}

/// evolve followed by recurrence_exact.
pub fn simulate_series(
    rho0_sys: &DensityMatrix,
    spec: &CycleSpec,
    channels: &[AppliedChannel],
    n_cycles: usize,
) -> Result<RecurrenceSeries, SimError> {
    let rhos = evolve(rho0_sys, spec, channels, n_cycles)?;
    recurrence_exact(&rhos[0], &rhos)
}

/// Finite-shot estimate: each R_k replaced by Binomial(shots, R_k)/shots.
pub fn recurrence_sampled(series: &RecurrenceSeries, shots: u64, seed: u64) -> Result<RecurrenceSeries, SimError> {
    if shots == 0 {
        return Err(SimError::Shots);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = shots as f64;
    let mut values = Vec::with_capacity(series.len());
    let mut sigmas = Vec::with_capacity(series.len());
    for &r in series.values() {
        let p = r.clamp(0.0, 1.0);
        let hits = Binomial::new(shots, p).map_err(|e| SimError::Sampling(e.to_string()))?.sample(&mut rng);
        let v = hits as f64 / s;
        values.push(v);
        sigmas.push(binomial_sigma(v, shots));
    }
    Ok(RecurrenceSeries::new(values, sigmas, Some(shots), SeriesSource::Sampled)?)
}

/// Thermal qubit diag(1, e^{−β·gap})/(1 + e^{−β·gap}); β = +∞ gives |0⟩⟨0|.
pub fn gibbs_qubit(beta: f64, gap: f64) -> DensityMatrix {
    let b = if beta == f64::INFINITY { 0.0 } else { (-beta * gap).exp() };
    let z = 1.0 + b;
    DensityMatrix::from_parts(ComplexMatrix::diag_real(&[1.0 / z, b / z]), vec![2]).expect("one qubit")
}
