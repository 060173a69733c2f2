//! Dense complex linear algebra for small registers.

mod density;
mod eigen;
mod matrix;
pub mod random;

use thiserror::Error;

pub use density::{hs_overlap, partial_trace, DensityMatrix, STATE_TOL};
pub use eigen::{hermitian_eig, matrix_fn, unitary_eig, HermitianEigen, MatrixFunction};
pub use matrix::{tensor_product, tensor_vec, ComplexMatrix, MAX_DIM};
pub use num_complex::Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("Hilbert dimension {dim} exceeds maximum {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("subsystem dims {dims:?} do not multiply to {dim}")]
    SubsystemDims { dims: Vec<usize>, dim: usize },
    #[error("invalid subsystem selection: {0}")]
    Subsystem(String),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("spectrum not strictly positive (min eigenvalue {0:e})")]
    Singular(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
}

#[cfg(test)]
mod tests {
    use super::random::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn purity(m: &ComplexMatrix) -> f64 {
        m.trace_product(m).unwrap().re
    }

    #[test]
    fn unitary_conserves_purity_and_shifted_purity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for dim in [2, 4, 8] {
            let u = random_unitary(&mut rng, dim);
            let rho = random_density(&mut rng, vec![dim]);
            let out = rho.matrix().conjugate_by(&u).unwrap();
            assert!((purity(rho.matrix()) - purity(&out)).abs() <= 1e-10);
            let a = 0.37 * dim as f64;
            let shift = ComplexMatrix::identity(dim).scale_real(a);
            let p0 = purity(&rho.matrix().sub(&shift).unwrap());
            let p1 = purity(&out.sub(&shift).unwrap());
            assert!((p0 - p1).abs() <= 1e-10);
        }
    }

    #[test]
    fn one_cycle_overlap_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let u = random_unitary(&mut rng, 4);
            let rho = random_density(&mut rng, vec![4]);
            let rf = rho.matrix().conjugate_by(&u).unwrap();
            let gap = rho.matrix().trace_product(&rho.matrix().sub(&rf).unwrap()).unwrap().re;
            assert!(gap >= -1e-12);
            let r0 = random_traceless(&mut rng, 4);
            let r1 = r0.conjugate_by(&u).unwrap();
            assert!(r0.trace_product(&r0.sub(&r1).unwrap()).unwrap().re >= -1e-12);
        }
    }
}
