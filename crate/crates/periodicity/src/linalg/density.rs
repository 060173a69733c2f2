use num_complex::Complex64;

use super::{tensor_product, tensor_vec, ComplexMatrix, LinalgError};

/// Tolerance used when validating density matrices.
pub const STATE_TOL: f64 = 1e-10;

/// Hermitian, unit-trace, PSD matrix together with its tensor factor dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self, LinalgError> {
        let rho = Self::from_parts(matrix, subsystem_dims)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Build without the eigenvalue check. Used for states produced by trace-preserving
    /// maps, where validity holds by construction.
    pub fn from_parts(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self, LinalgError> {
        let prod: usize = subsystem_dims.iter().product();
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) || prod != matrix.dim() {
            return Err(LinalgError::SubsystemDims { dims: subsystem_dims, dim: matrix.dim() });
        }
        Ok(Self { matrix, subsystem_dims })
    }

    pub fn validate(&self) -> Result<(), LinalgError> {
        if !self.matrix.is_hermitian(STATE_TOL) {
            return Err(LinalgError::InvalidState("not Hermitian".into()));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(LinalgError::InvalidState(format!("trace {tr}")));
        }
        if !self.matrix.is_psd(STATE_TOL) {
            return Err(LinalgError::InvalidState("negative eigenvalue".into()));
        }
        Ok(())
    }

    /// |ψ⟩⟨ψ| after normalising ψ.
    pub fn pure(psi: &[Complex64], subsystem_dims: Vec<usize>) -> Result<Self, LinalgError> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(LinalgError::InvalidState("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::from_parts(ComplexMatrix::outer(&v), subsystem_dims)
    }

    /// Computational basis state of a qubit register; `bits[0]` is qubit 0 (most significant).
    pub fn basis(bits: &[u8]) -> Result<Self, LinalgError> {
        let n = bits.len();
        let mut idx = 0usize;
        for &b in bits {
            if b > 1 {
                return Err(LinalgError::InvalidState(format!("bit value {b}")));
            }
            idx = (idx << 1) | b as usize;
        }
        let dim = 1usize << n;
        let mut m = ComplexMatrix::zeros(dim);
        m[(idx, idx)] = Complex64::new(1.0, 0.0);
        Self::from_parts(m, vec![2; n])
    }

    /// Product of single-qubit pure states given as amplitude pairs.
    pub fn product_pure(qubits: &[[Complex64; 2]]) -> Result<Self, LinalgError> {
        let mut v = vec![Complex64::new(1.0, 0.0)];
        for q in qubits {
            v = tensor_vec(&v, q);
        }
        Self::pure(&v, vec![2; qubits.len()])
    }

    pub fn maximally_mixed(subsystem_dims: Vec<usize>) -> Result<Self, LinalgError> {
        let dim: usize = subsystem_dims.iter().product();
        Self::from_parts(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64), subsystem_dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn purity(&self) -> f64 {
        hs_overlap(self, self).unwrap_or(f64::NAN)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, LinalgError> {
        let m = tensor_product(&self.matrix, &other.matrix)?;
        let mut dims = self.subsystem_dims.clone();
        dims.extend_from_slice(&other.subsystem_dims);
        Self::from_parts(m, dims)
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self, LinalgError> {
        partial_trace(self, keep)
    }
}

/// Reduced state on the subsystems listed in `keep` (returned in ascending subsystem order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix, LinalgError> {
    let dims = &rho.subsystem_dims;
    let m = dims.len();
    if keep.is_empty() {
        return Err(LinalgError::Subsystem("empty keep set".into()));
    }
    let mut kept = vec![false; m];
    for &k in keep {
        if k >= m || kept[k] {
            return Err(LinalgError::Subsystem(format!("index {k} for {m} subsystems")));
        }
        kept[k] = true;
    }
    let keep_dims: Vec<usize> = (0..m).filter(|&i| kept[i]).map(|i| dims[i]).collect();
    let dk: usize = keep_dims.iter().product();
    let dim = rho.dim();

    // strides of each subsystem in the full and reduced index
    let mut stride = vec![1usize; m];
    for i in (0..m.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * dims[i + 1];
    }
    let mut kstride = vec![0usize; m];
    let mut acc = 1;
    for i in (0..m).rev() {
        if kept[i] {
            kstride[i] = acc;
            acc *= dims[i];
        }
    }
    let split = |idx: usize| -> (usize, usize) {
        let (mut kidx, mut tidx) = (0, 0);
        for i in 0..m {
            let d = (idx / stride[i]) % dims[i];
            if kept[i] {
                kidx += d * kstride[i];
            } else {
                tidx = tidx * dims[i] + d;
            }
        }
        (kidx, tidx)
    };
    let parts: Vec<(usize, usize)> = (0..dim).map(split).collect();

    let mut out = ComplexMatrix::zeros(dk);
    let src = rho.matrix.as_slice();
    for i in 0..dim {
        let (ki, ti) = parts[i];
        for j in 0..dim {
            let (kj, tj) = parts[j];
            if ti == tj {
                out[(ki, kj)] += src[i * dim + j];
            }
        }
    }
    DensityMatrix::from_parts(out, keep_dims)
}

/// Re tr[a·b]
pub fn hs_overlap(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, LinalgError> {
    Ok(a.matrix.trace_product(&b.matrix)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_density, random_hermitian};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn product_state_trace_out() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_density(&mut rng, vec![2]);
        let b = random_density(&mut rng, vec![4]);
        let ab = a.tensor(&b).unwrap();
        let back = ab.partial_trace(&[0]).unwrap();
        assert!(back.matrix().max_abs_diff(a.matrix()).unwrap() < 1e-15);
        let back_b = ab.partial_trace(&[1]).unwrap();
        assert!(back_b.matrix().max_abs_diff(b.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn bell_state_reduces_to_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let bell = DensityMatrix::pure(&[Complex64::new(s, 0.0), z, z, Complex64::new(s, 0.0)], vec![2, 2]).unwrap();
        let r = bell.partial_trace(&[0]).unwrap();
        assert!(r.matrix().max_abs_diff(&ComplexMatrix::diag_real(&[0.5, 0.5])).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_duality() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let rho = random_density(&mut rng, vec![2, 2, 2]);
            let a = random_hermitian(&mut rng, 4);
            let red = rho.partial_trace(&[0, 1]).unwrap();
            let lhs = red.matrix().trace_product(&a).unwrap();
            let big = tensor_product(&a, &ComplexMatrix::identity(2)).unwrap();
            let rhs = rho.matrix().trace_product(&big).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
            red.validate().unwrap();
        }
    }

    #[test]
    fn partial_trace_middle_qubit() {
        let rho = DensityMatrix::basis(&[1, 0, 1]).unwrap();
        let r = rho.partial_trace(&[0, 2]).unwrap();
        assert_eq!(r, DensityMatrix::basis(&[1, 1]).unwrap());
    }

    #[test]
    fn invalid_keep_index() {
        let rho = DensityMatrix::basis(&[0, 1]).unwrap();
        assert!(rho.partial_trace(&[2]).is_err());
        assert!(rho.partial_trace(&[]).is_err());
        assert!(rho.partial_trace(&[0, 0]).is_err());
    }

    #[test]
    fn overlaps() {
        let p0 = DensityMatrix::basis(&[0]).unwrap();
        let p1 = DensityMatrix::basis(&[1]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert_eq!(hs_overlap(&p0, &p0).unwrap(), 1.0);
        assert_eq!(hs_overlap(&p0, &p1).unwrap(), 0.0);
        assert_eq!(hs_overlap(&mixed, &mixed).unwrap(), 0.5);
        assert!(hs_overlap(&p0, &mixed.tensor(&mixed).unwrap()).is_err());
    }

    #[test]
    fn validation_rejects_bad_states() {
        let m = ComplexMatrix::diag_real(&[1.2, -0.2]);
        assert!(DensityMatrix::new(m, vec![2]).is_err());
        let m = ComplexMatrix::diag_real(&[0.5, 0.4]);
        assert!(DensityMatrix::new(m, vec![2]).is_err());
        assert!(DensityMatrix::from_parts(ComplexMatrix::identity(4), vec![2, 3]).is_err());
    }
}
