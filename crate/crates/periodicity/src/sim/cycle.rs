use super::gates::{gate_unitary, GateSpec};
use super::SimError;
use crate::linalg::{ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnvMode {
    /// The environment carries its state from cycle to cycle.
    #[default]
    Persistent,
    /// The environment is re-prepared every cycle (a Markovian map on the system).
    ResetEachCycle,
}

/// One driving period. System qubits are 0..n_system, environment qubits follow.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleSpec {
    pub n_system_qubits: usize,
    pub n_env_qubits: usize,
    /// Applied in list order: the first gate acts first.
    pub gates: Vec<GateSpec>,
    pub env_initial: Option<DensityMatrix>,
    pub env_mode: EnvMode,
}

impl CycleSpec {
    pub fn closed(n_system_qubits: usize, gates: Vec<GateSpec>) -> Self {
        Self { n_system_qubits, n_env_qubits: 0, gates, env_initial: None, env_mode: EnvMode::Persistent }
    }

    pub fn with_env(n_system_qubits: usize, gates: Vec<GateSpec>, env_initial: DensityMatrix, env_mode: EnvMode) -> Self {
        let n_env_qubits = env_initial.subsystem_dims().len();
        Self { n_system_qubits, n_env_qubits, gates, env_initial: Some(env_initial), env_mode }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_system_qubits + self.n_env_qubits
    }

    pub fn has_drift(&self) -> bool {
        self.gates.iter().any(|g| g.drift != 0.0)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_system_qubits == 0 {
            return Err(SimError::Spec("at least one system qubit is required".into()));
        }
        for g in &self.gates {
            g.validate(self.n_qubits())?;
        }
        match (&self.env_initial, self.n_env_qubits) {
            (None, 0) => {}
            (Some(e), n) if e.subsystem_dims() == vec![2; n].as_slice() => {}
            _ => return Err(SimError::Spec("env_initial must describe exactly n_env_qubits qubits".into())),
        }
        Ok(())
    }

    pub(crate) fn env_state(&self) -> Option<&DensityMatrix> {
        self.env_initial.as_ref().filter(|_| self.n_env_qubits > 0)
    }
}

/// U_k = G_m ··· G_2 G_1 for gates listed G_1..G_m.
pub fn cycle_unitary(spec: &CycleSpec, k: usize) -> Result<ComplexMatrix, SimError> {
    let n = spec.n_qubits();
    let mut u = ComplexMatrix::identity(1 << n);
    for g in &spec.gates {
        u = gate_unitary(g, k, n)?.mul_unchecked(&u);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::GateKind;

    #[test]
    fn empty_cycle_is_identity() {
        let spec = CycleSpec::closed(2, vec![]);
        assert_eq!(cycle_unitary(&spec, 1).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn drift_free_cycle_is_periodic() {
        let spec = CycleSpec::closed(
            2,
            vec![
                GateSpec::rotation(GateKind::Rx, vec![0], 0.2),
                GateSpec::rotation(GateKind::Rxx, vec![0, 1], 0.5),
            ],
        );
        assert_eq!(cycle_unitary(&spec, 1).unwrap(), cycle_unitary(&spec, 7).unwrap());
    }

    #[test]
    fn cnot_squared() {
        let spec = CycleSpec::closed(2, vec![GateSpec::new(GateKind::Cnot, vec![0, 1])]);
        let u = cycle_unitary(&spec, 1).unwrap();
        assert_eq!(u.matmul(&u).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn list_order_is_application_order() {
        // X-flip qubit 1 then CNOT(1→0): |00⟩ → |01⟩ → |11⟩
        let x = GateSpec::rotation(GateKind::Rx, vec![1], std::f64::consts::PI);
        let spec = CycleSpec::closed(2, vec![x, GateSpec::new(GateKind::Cnot, vec![1, 0])]);
        let u = cycle_unitary(&spec, 1).unwrap();
        assert!((u[(0b11, 0b00)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        let spec = CycleSpec::closed(1, vec![GateSpec::new(GateKind::Cnot, vec![0, 1])]);
        assert!(spec.validate().is_err());
        let mut spec = CycleSpec::with_env(1, vec![], DensityMatrix::basis(&[0]).unwrap(), EnvMode::Persistent);
        assert!(spec.validate().is_ok());
        spec.n_env_qubits = 2;
        assert!(spec.validate().is_err());
    }
}
