use num_complex::Complex64;

use super::{gates::embed, SimError};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelLabel {
    AmplitudeDamping(f64),
    Depolarizing(f64),
    Dephasing(f64),
    Custom,
}

/// Kraus representation on a small block of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    label: ChannelLabel,
}

fn probability(name: &str, p: f64) -> Result<(), SimError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SimError::Channel(format!("{name} = {p} outside [0, 1]")));
    }
    Ok(())
}

impl KrausChannel {
    pub fn new(operators: Vec<ComplexMatrix>, label: ChannelLabel) -> Result<Self, SimError> {
        let dim = operators.first().map(|k| k.dim()).ok_or_else(|| SimError::Channel("no Kraus operators".into()))?;
        if !dim.is_power_of_two() || operators.iter().any(|k| k.dim() != dim) {
            return Err(SimError::Channel("Kraus operators must share a 2^m dimension".into()));
        }
        let mut sum = ComplexMatrix::zeros(dim);
        for k in &operators {
            sum = sum.add(&k.adjoint().mul_unchecked(k))?;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(dim))? > 1e-10 {
            return Err(SimError::Channel("Σ K†K ≠ I".into()));
        }
        Ok(Self { operators, label })
    }

    /// K0 = diag(1, √(1−γ)), K1 = √γ |0⟩⟨1|
    pub fn amplitude_damping(gamma: f64) -> Result<Self, SimError> {
        probability("gamma", gamma)?;
        let z = Complex64::new(0.0, 0.0);
        let k0 = ComplexMatrix::diag_real(&[1.0, (1.0 - gamma).sqrt()]);
        let k1 = ComplexMatrix::from_vec(2, vec![z, Complex64::new(gamma.sqrt(), 0.0), z, z])?;
        Self::new(vec![k0, k1], ChannelLabel::AmplitudeDamping(gamma))
    }

    /// ρ → (1−p)ρ + p I/2
    pub fn depolarizing(p: f64) -> Result<Self, SimError> {
        probability("p", p)?;
        let [i, x, y, z] = paulis();
        let a = (1.0 - 0.75 * p).sqrt();
        let b = (p / 4.0).sqrt();
        Self::new(vec![i.scale_real(a), x.scale_real(b), y.scale_real(b), z.scale_real(b)], ChannelLabel::Depolarizing(p))
    }

    /// Off-diagonals shrink by (1−p).
    pub fn dephasing(p: f64) -> Result<Self, SimError> {
        probability("p", p)?;
        let [i, _, _, z] = paulis();
        Self::new(
            vec![i.scale_real((1.0 - p / 2.0).sqrt()), z.scale_real((p / 2.0).sqrt())],
            ChannelLabel::Dephasing(p),
        )
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn label(&self) -> ChannelLabel {
        self.label
    }

    pub fn n_qubits(&self) -> usize {
        self.operators[0].dim().trailing_zeros() as usize
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix, SimError> {
        apply_kraus(&self.operators, rho)
    }
}

fn paulis() -> [ComplexMatrix; 4] {
    let z = Complex64::new(0.0, 0.0);
    let i1 = Complex64::new(0.0, 1.0);
    [
        ComplexMatrix::identity(2),
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2"),
        ComplexMatrix::from_vec(2, vec![z, -i1, i1, z]).expect("2x2"),
        ComplexMatrix::diag_real(&[1.0, -1.0]),
    ]
}

pub(crate) fn apply_kraus(ops: &[ComplexMatrix], rho: &ComplexMatrix) -> Result<ComplexMatrix, SimError> {
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in ops {
        out = out.add(&rho.conjugate_by(k)?)?;
    }
    Ok(out)
}

/// A channel applied independently to each listed qubit after every cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct AppliedChannel {
    pub channel: KrausChannel,
    pub qubits: Vec<usize>,
}

impl AppliedChannel {
    pub fn new(channel: KrausChannel, qubits: Vec<usize>) -> Self {
        Self { channel, qubits }
    }

    /// Full-register Kraus sets, one per target block.
    pub(crate) fn lifted(&self, n_qubits: usize) -> Result<Vec<Vec<ComplexMatrix>>, SimError> {
        let width = self.channel.n_qubits();
        if width != 1 && self.qubits.len() != width {
            return Err(SimError::Channel(format!("{width}-qubit channel needs exactly {width} targets")));
        }
        let blocks: Vec<Vec<usize>> = if width == 1 {
            self.qubits.iter().map(|&q| vec![q]).collect()
        } else {
            vec![self.qubits.clone()]
        };
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if let Some(&q) = b.iter().find(|&&q| q >= n_qubits) {
                return Err(SimError::Channel(format!("qubit {q} outside register of {n_qubits}")));
            }
            let ops = self.channel.operators.iter().map(|k| embed(k, &b, n_qubits)).collect::<Result<_, _>>()?;
            out.push(ops);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random::random_density, DensityMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trace_preservation_checked() {
        let bad = vec![ComplexMatrix::identity(2).scale_real(0.5)];
        assert!(KrausChannel::new(bad, ChannelLabel::Custom).is_err());
        assert!(KrausChannel::amplitude_damping(1.5).is_err());
        assert!(KrausChannel::depolarizing(-0.1).is_err());
    }

    #[test]
    fn unital_channels_fix_maximally_mixed() {
        let mixed = ComplexMatrix::identity(2).scale_real(0.5);
        for ch in [KrausChannel::depolarizing(0.3).unwrap(), KrausChannel::dephasing(0.7).unwrap()] {
            assert!(ch.apply(&mixed).unwrap().max_abs_diff(&mixed).unwrap() <= 1e-12);
        }
        let ad = KrausChannel::amplitude_damping(0.2).unwrap();
        assert!(ad.apply(&mixed).unwrap().max_abs_diff(&mixed).unwrap() > 1e-3);
    }

    #[test]
    fn depolarizing_shrinks_towards_identity() {
        let p = 0.4;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_density(&mut rng, vec![2]);
        let out = KrausChannel::depolarizing(p).unwrap().apply(rho.matrix()).unwrap();
        let want = rho.matrix().scale_real(1.0 - p).add(&ComplexMatrix::identity(2).scale_real(p / 2.0)).unwrap();
        assert!(out.max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn amplitude_damping_decays_excited_state() {
        let one = DensityMatrix::basis(&[1]).unwrap();
        let out = KrausChannel::amplitude_damping(0.25).unwrap().apply(one.matrix()).unwrap();
        assert!((out[(0, 0)].re - 0.25).abs() < 1e-15);
        assert!((out[(1, 1)].re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn lifted_channel_targets() {
        let ch = AppliedChannel::new(KrausChannel::dephasing(0.1).unwrap(), vec![0, 2]);
        let lifted = ch.lifted(3).unwrap();
        assert_eq!(lifted.len(), 2);
        assert_eq!(lifted[0][0].dim(), 8);
        assert!(AppliedChannel::new(KrausChannel::dephasing(0.1).unwrap(), vec![3]).lifted(3).is_err());
    }
}
