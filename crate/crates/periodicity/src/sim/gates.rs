use num_complex::Complex64;

use super::SimError;
use crate::linalg::{ComplexMatrix, MAX_DIM};

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    /// exp[+i(θ/2) σ_x⊗σ_x]
    Rxx,
    /// exp(−iθ SWAP) = cos θ I − i sin θ SWAP
    Pswap,
    Cnot,
    Toffoli,
    Cswap,
    Custom(ComplexMatrix),
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::Rxx | GateKind::Pswap | GateKind::Cnot => 2,
            GateKind::Toffoli | GateKind::Cswap => 3,
            GateKind::Custom(m) => m.dim().trailing_zeros() as usize,
        }
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Rxx | GateKind::Pswap)
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Rxx => "rxx",
            GateKind::Pswap => "pswap",
            GateKind::Cnot => "cnot",
            GateKind::Toffoli => "toffoli",
            GateKind::Cswap => "cswap",
            GateKind::Custom(_) => "custom",
        }
    }
}

/// One gate in a cycle. For rotations the angle in cycle k (k ≥ 1) is θ₀ + (k−1)·drift.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    pub kind: GateKind,
    /// Qubit indices; for controlled gates the controls come first.
    pub targets: Vec<usize>,
    pub theta0: f64,
    pub drift: f64,
}

impl GateSpec {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Self {
        Self { kind, targets, theta0: 0.0, drift: 0.0 }
    }

    pub fn rotation(kind: GateKind, targets: Vec<usize>, theta0: f64) -> Self {
        Self { kind, targets, theta0, drift: 0.0 }
    }

    pub fn with_drift(mut self, drift: f64) -> Self {
        self.drift = drift;
        self
    }

    pub fn angle(&self, k: usize) -> f64 {
        self.theta0 + (k.max(1) - 1) as f64 * self.drift
    }

    pub fn validate(&self, n_qubits: usize) -> Result<(), SimError> {
        if let GateKind::Custom(m) = &self.kind {
            if !m.dim().is_power_of_two() || m.dim() < 2 {
                return Err(SimError::Gate(format!("custom matrix dimension {} is not 2^m", m.dim())));
            }
            if !m.is_unitary(1e-10) {
                return Err(SimError::Gate("custom matrix is not unitary".into()));
            }
        }
        let arity = self.kind.arity();
        if self.targets.len() != arity {
            return Err(SimError::Gate(format!(
                "{} expects {arity} targets, got {}",
                self.kind.name(),
                self.targets.len()
            )));
        }
        for (i, &t) in self.targets.iter().enumerate() {
            if t >= n_qubits {
                return Err(SimError::Gate(format!("target {t} outside register of {n_qubits}")));
            }
            if self.targets[..i].contains(&t) {
                return Err(SimError::Gate(format!("repeated target {t}")));
            }
        }
        if !self.theta0.is_finite() || !self.drift.is_finite() {
            return Err(SimError::Gate("angle must be finite".into()));
        }
        Ok(())
    }

    /// Matrix on the gate's own qubits (targets[0] most significant).
    pub fn local_matrix(&self, k: usize) -> ComplexMatrix {
        let theta = self.angle(k);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let z = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        match &self.kind {
            GateKind::Rx => mat(2, vec![re(c), im(-s), im(-s), re(c)]),
            GateKind::Ry => mat(2, vec![re(c), re(-s), re(s), re(c)]),
            GateKind::Rz => mat(2, vec![Complex64::from_polar(1.0, -theta / 2.0), z, z, Complex64::from_polar(1.0, theta / 2.0)]),
            GateKind::Rxx => {
                let mut m = ComplexMatrix::identity(4).scale_real(c);
                for i in 0..4 {
                    m[(i, 3 - i)] = im(s);
                }
                m
            }
            GateKind::Pswap => {
                let (ct, st) = (theta.cos(), theta.sin());
                let mut m = ComplexMatrix::identity(4).scale_real(ct);
                m[(0, 0)] = Complex64::from_polar(1.0, -theta);
                m[(3, 3)] = Complex64::from_polar(1.0, -theta);
                m[(1, 2)] = im(-st);
                m[(2, 1)] = im(-st);
                m
            }
            GateKind::Cnot => permutation(4, |i| if i >= 2 { i ^ 1 } else { i }),
            GateKind::Toffoli => permutation(8, |i| if i >= 6 { i ^ 1 } else { i }),
            GateKind::Cswap => permutation(8, |i| match i {
                5 => 6,
                6 => 5,
                _ => i,
            }),
            GateKind::Custom(m) => m.clone(),
        }
    }
}

fn mat(dim: usize, data: Vec<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_vec(dim, data).expect("fixed gate shape")
}

fn permutation(dim: usize, f: impl Fn(usize) -> usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(f(i), i)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Lift an operator on `targets` to the full register (qubit 0 most significant).
pub fn embed(local: &ComplexMatrix, targets: &[usize], n_qubits: usize) -> Result<ComplexMatrix, SimError> {
    let dim = 1usize.checked_shl(n_qubits as u32).filter(|&d| d <= MAX_DIM).ok_or(SimError::Register(n_qubits))?;
    let t = targets.len();
    if local.dim() != 1 << t {
        return Err(SimError::Gate(format!("operator of dim {} on {t} qubits", local.dim())));
    }
    let shifts: Vec<usize> = targets.iter().map(|&q| n_qubits - 1 - q).collect();
    let mask: usize = shifts.iter().map(|s| 1 << s).sum();
    let sub = |i: usize| -> usize {
        shifts.iter().fold(0, |acc, &s| (acc << 1) | ((i >> s) & 1))
    };
    let mut full = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let li = sub(i);
        let rest = i & !mask;
        for lj in 0..local.dim() {
            let a = local[(li, lj)];
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut j = rest;
            for (b, &s) in shifts.iter().enumerate() {
                if (lj >> (t - 1 - b)) & 1 == 1 {
                    j |= 1 << s;
                }
            }
            full[(i, j)] = a;
        }
    }
    Ok(full)
}

/// Full-register unitary of gate `g` in cycle `k`.
pub fn gate_unitary(g: &GateSpec, k: usize, n_qubits: usize) -> Result<ComplexMatrix, SimError> {
    g.validate(n_qubits)?;
    embed(&g.local_matrix(k), &g.targets, n_qubits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor_product;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    /// exp(A) by truncated Taylor series.
    fn expm_series(a: &ComplexMatrix) -> ComplexMatrix {
        let mut term = ComplexMatrix::identity(a.dim());
        let mut sum = term.clone();
        for j in 1..40 {
            term = term.matmul(a).unwrap().scale_real(1.0 / j as f64);
            sum = sum.add(&term).unwrap();
        }
        sum
    }

    #[test]
    fn zero_rotation_is_identity() {
        for kind in [GateKind::Rx, GateKind::Ry, GateKind::Rz] {
            let u = gate_unitary(&GateSpec::rotation(kind, vec![0], 0.0), 1, 1).unwrap();
            assert!(u.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-16);
        }
    }

    #[test]
    fn rxx_at_pi_against_series() {
        let g = GateSpec::rotation(GateKind::Rxx, vec![0, 1], std::f64::consts::PI);
        let u = gate_unitary(&g, 1, 2).unwrap();
        let xx = tensor_product(&pauli_x(), &pauli_x()).unwrap();
        assert!(u.max_abs_diff(&xx.scale(Complex64::new(0.0, 1.0))).unwrap() < 1e-15);
        for theta in [0.3, 1.1, -2.0] {
            let g = GateSpec::rotation(GateKind::Rxx, vec![0, 1], theta);
            let series = expm_series(&xx.scale(Complex64::new(0.0, theta / 2.0)));
            assert!(gate_unitary(&g, 1, 2).unwrap().max_abs_diff(&series).unwrap() < 1e-13);
        }
    }

    #[test]
    fn rx_against_series() {
        let theta = 0.77;
        let u = gate_unitary(&GateSpec::rotation(GateKind::Rx, vec![0], theta), 1, 1).unwrap();
        let series = expm_series(&pauli_x().scale(Complex64::new(0.0, -theta / 2.0)));
        assert!(u.max_abs_diff(&series).unwrap() < 1e-14);
    }

    #[test]
    fn pswap_against_series() {
        let theta = 0.9;
        let swap = permutation(4, |i| match i {
            1 => 2,
            2 => 1,
            _ => i,
        });
        let series = expm_series(&swap.scale(Complex64::new(0.0, -theta)));
        let u = gate_unitary(&GateSpec::rotation(GateKind::Pswap, vec![0, 1], theta), 1, 2).unwrap();
        assert!(u.max_abs_diff(&series).unwrap() < 1e-14);
    }

    #[test]
    fn toffoli_truth_table() {
        let u = gate_unitary(&GateSpec::new(GateKind::Toffoli, vec![0, 1, 2]), 1, 3).unwrap();
        assert_eq!(u[(0b111, 0b110)], Complex64::new(1.0, 0.0));
        assert_eq!(u[(0b101, 0b101)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn cnot_with_reversed_roles() {
        // control qubit 1, target qubit 0: |01⟩ → |11⟩
        let u = gate_unitary(&GateSpec::new(GateKind::Cnot, vec![1, 0]), 1, 2).unwrap();
        assert_eq!(u[(0b11, 0b01)], Complex64::new(1.0, 0.0));
        assert_eq!(u[(0b10, 0b10)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn involutions() {
        for (kind, t) in [
            (GateKind::Cnot, vec![2, 0]),
            (GateKind::Toffoli, vec![1, 2, 0]),
            (GateKind::Cswap, vec![0, 2, 1]),
        ] {
            let u = gate_unitary(&GateSpec::new(kind, t), 1, 3).unwrap();
            assert!(u.matmul(&u).unwrap().max_abs_diff(&ComplexMatrix::identity(8)).unwrap() == 0.0);
        }
    }

    #[test]
    fn embedding_on_spread_targets_matches_kron() {
        let ry = GateSpec::rotation(GateKind::Ry, vec![0], 0.4).local_matrix(1);
        let full = embed(&ry, &[1], 3).unwrap();
        let i2 = ComplexMatrix::identity(2);
        let want = tensor_product(&tensor_product(&i2, &ry).unwrap(), &i2).unwrap();
        assert_eq!(full, want);
    }

    #[test]
    fn drift_schedule() {
        let g = GateSpec::rotation(GateKind::Rxx, vec![0, 1], 0.3).with_drift(1e-3);
        assert_eq!(g.angle(1), 0.3);
        assert!((g.angle(5) - 0.304).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(gate_unitary(&GateSpec::new(GateKind::Cnot, vec![0]), 1, 2).is_err());
        assert!(gate_unitary(&GateSpec::new(GateKind::Cnot, vec![0, 0]), 1, 2).is_err());
        assert!(gate_unitary(&GateSpec::new(GateKind::Cnot, vec![0, 2]), 1, 2).is_err());
        let bad = ComplexMatrix::diag_real(&[1.0, 2.0]);
        assert!(gate_unitary(&GateSpec::new(GateKind::Custom(bad), vec![0]), 1, 1).is_err());
    }
}
