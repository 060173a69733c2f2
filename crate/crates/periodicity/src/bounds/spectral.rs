use super::BoundsError;
use crate::linalg::{unitary_eig, ComplexMatrix, DensityMatrix, LinalgError};

/// ρ_0 in the eigenbasis of U: pair weights |ρ_ab|² and cos Δ_ab.
#[derive(Debug, Clone)]
pub struct SpectralForm {
    weights: Vec<f64>,
    phases: Vec<f64>,
}

impl SpectralForm {
    pub fn new(u: &ComplexMatrix, rho0: &DensityMatrix) -> Result<Self, BoundsError> {
        if u.dim() != rho0.dim() {
            return Err(LinalgError::DimensionMismatch(u.dim(), rho0.dim()).into());
        }
        let (lambda, v) = unitary_eig(u)?;
        let rt = v.adjoint().mul_unchecked(rho0.matrix()).mul_unchecked(&v);
        let n = u.dim();
        let mut weights = Vec::with_capacity(n * n);
        let mut phases = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let w = rt[(a, b)].norm_sqr();
                if w == 0.0 {
                    continue;
                }
                weights.push(w);
                phases.push((lambda[a] * lambda[b].conj()).arg());
            }
        }
        Ok(Self { weights, phases })
    }

    /// R_k = Σ |ρ_ab|² cos(kΔ_ab)
    pub fn recurrence(&self, k: usize) -> f64 {
        let kf = k as f64;
        self.weights.iter().zip(&self.phases).map(|(w, d)| w * (kf * d).cos()).sum()
    }

    /// S_n = Σ |ρ_ab|² (sin²(Δ_ab/2))^n
    pub fn sn(&self, n: usize) -> f64 {
        self.weights
            .iter()
            .zip(&self.phases)
            .map(|(w, d)| w * (0.5 * (1.0 - d.cos())).powi(n as i32))
            .sum()
    }
}

/// S_n straight from the spectrum of U, no recurrence series involved.
pub fn spectral_oracle(u: &ComplexMatrix, rho0: &DensityMatrix, n: usize) -> Result<f64, BoundsError> {
    Ok(SpectralForm::new(u, rho0)?.sn(n))
}
