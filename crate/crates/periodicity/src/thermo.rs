//! One-cycle thermodynamic bounds used as baselines: Jarzynski moment, second law,
//! passivity and the hot-environment undetectability temperature.

use thiserror::Error;

use crate::linalg::{hermitian_eig, ComplexMatrix, DensityMatrix, LinalgError};
use crate::sim::KrausChannel;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThermoError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("state is rank deficient (smallest eigenvalue {0:e})")]
    RankDeficient(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

const ROW_TOL: f64 = 1e-10;
const LOG_DOMAIN: f64 = 700.0;

/// Two-point-measurement statistics of a single drive.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkStatistics {
    pub energies: Vec<f64>,
    pub populations: Vec<f64>,
    /// transitions[i][j] = p_{i→j}
    pub transitions: Vec<Vec<f64>>,
    pub beta: f64,
}

/// Boltzmann weights; β = +∞ puts everything in the lowest level.
pub fn gibbs_populations(energies: &[f64], beta: f64) -> Vec<f64> {
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    if beta == f64::INFINITY {
        let ground = energies.iter().filter(|&&e| e == e_min).count() as f64;
        return energies.iter().map(|&e| if e == e_min { 1.0 / ground } else { 0.0 }).collect();
    }
    let w: Vec<f64> = energies.iter().map(|&e| (-beta * (e - e_min)).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

impl WorkStatistics {
    pub fn new(energies: Vec<f64>, populations: Vec<f64>, transitions: Vec<Vec<f64>>, beta: f64) -> Result<Self, ThermoError> {
        let d = energies.len();
        if d == 0 || populations.len() != d || transitions.len() != d || transitions.iter().any(|r| r.len() != d) {
            return Err(ThermoError::InvalidInput("inconsistent dimensions".into()));
        }
        if (populations.iter().sum::<f64>() - 1.0).abs() > ROW_TOL || populations.iter().any(|&p| p < 0.0) {
            return Err(ThermoError::InvalidInput("populations must be a distribution".into()));
        }
        for (i, row) in transitions.iter().enumerate() {
            if (row.iter().sum::<f64>() - 1.0).abs() > ROW_TOL || row.iter().any(|&p| p < 0.0) {
                return Err(ThermoError::InvalidInput(format!("transition row {i} is not stochastic")));
            }
        }
        Ok(Self { energies, populations, transitions, beta })
    }

    /// Gibbs start at β, p_{i→j} = |⟨j|U|i⟩|².
    pub fn from_unitary(energies: Vec<f64>, beta: f64, u: &ComplexMatrix) -> Result<Self, ThermoError> {
        if u.dim() != energies.len() {
            return Err(LinalgError::DimensionMismatch(u.dim(), energies.len()).into());
        }
        let d = energies.len();
        let transitions = (0..d).map(|i| (0..d).map(|j| u[(j, i)].norm_sqr()).collect()).collect();
        let populations = gibbs_populations(&energies, beta);
        Self::new(energies, populations, transitions, beta)
    }

    fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let d = self.energies.len();
        (0..d).flat_map(move |i| {
            (0..d).map(move |j| (self.populations[i] * self.transitions[i][j], self.energies[j] - self.energies[i]))
        })
    }
}

/// ⟨⟨e^{−βW}⟩⟩ = Σ p_i p_{i→j} e^{−β(E_j−E_i)}
pub fn jarzynski_moment(ws: &WorkStatistics) -> f64 {
    let exps: Vec<(f64, f64)> = ws.terms().filter(|(p, _)| *p > 0.0).map(|(p, w)| (p, -ws.beta * w)).collect();
    let max = exps.iter().map(|(_, e)| *e).fold(f64::NEG_INFINITY, f64::max);
    if max > LOG_DOMAIN {
        let lse: f64 = exps.iter().map(|(p, e)| p.ln() + e - max).map(f64::exp).sum::<f64>().ln() + max;
        return lse.exp();
    }
    exps.iter().map(|(p, e)| p * e.exp()).sum()
}

/// ⟨W⟩ = Σ p_i p_{i→j}(E_j − E_i)
pub fn mean_work(ws: &WorkStatistics) -> f64 {
    ws.terms().map(|(p, w)| p * w).sum()
}

/// ln N with N = e^{β⟨W⟩}.
pub fn ln_required_shots(ws: &WorkStatistics) -> f64 {
    ws.beta * mean_work(ws)
}

/// N = e^{β⟨W⟩}; +∞ once the exponent passes the f64 range.
pub fn required_shots(ws: &WorkStatistics) -> f64 {
    ln_required_shots(ws).exp()
}

/// Either closed or open one-cycle dynamics on the full system.
#[derive(Debug, Clone)]
pub enum Dynamics {
    Unitary(ComplexMatrix),
    Kraus(Vec<ComplexMatrix>),
}

impl Dynamics {
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix, ThermoError> {
        match self {
            Dynamics::Unitary(u) => Ok(rho.conjugate_by(u)?),
            Dynamics::Kraus(ops) => {
                let mut out = ComplexMatrix::zeros(rho.dim());
                for k in ops {
                    out = out.add(&rho.conjugate_by(k)?)?;
                }
                Ok(out)
            }
        }
    }

    pub fn from_channel(ch: &KrausChannel) -> Self {
        Dynamics::Kraus(ch.operators().to_vec())
    }
}

/// tr[ρ_f H] − tr[ρ_β H] for a diagonal H and ρ_f the image of ρ_β.
pub fn second_law_gap(beta: f64, energies: &[f64], dynamics: &Dynamics) -> Result<f64, ThermoError> {
    let rho_beta = ComplexMatrix::diag_real(&gibbs_populations(energies, beta));
    let h = ComplexMatrix::diag_real(energies);
    let rho_f = dynamics.apply(&rho_beta)?;
    Ok(rho_f.trace_product(&h)?.re - rho_beta.trace_product(&h)?.re)
}

/// Monotone-decreasing maps F used to build B = F(ρ_0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PassivityMap {
    NegLog,
    OneMinusX,
    /// 1/(x + ε)
    ReciprocalReg(f64),
}

impl PassivityMap {
    pub const DEFAULT_REG: f64 = 1e-6;
}

/// tr[ρ_f B] − tr[ρ_0 B], B = F(ρ_0).
pub fn passivity_gap(rho0: &DensityMatrix, rhof: &DensityMatrix, f: PassivityMap) -> Result<f64, ThermoError> {
    if rho0.dim() != rhof.dim() {
        return Err(LinalgError::DimensionMismatch(rho0.dim(), rhof.dim()).into());
    }
    let eig = hermitian_eig(rho0.matrix())?;
    let b = match f {
        PassivityMap::NegLog => {
            let min = eig.values[0];
            if min <= 1e-14 {
                return Err(ThermoError::RankDeficient(min));
            }
            eig.map(|x| -x.ln())
        }
        PassivityMap::OneMinusX => eig.map(|x| 1.0 - x),
        PassivityMap::ReciprocalReg(eps) => eig.map(|x| 1.0 / (x.max(0.0) + eps)),
    };
    Ok(rhof.matrix().trace_product(&b)?.re - rho0.matrix().trace_product(&b)?.re)
}

#[derive(Debug, Clone)]
pub struct UndetectabilityInput {
    pub env_energies: Vec<f64>,
    pub rho_sys: DensityMatrix,
}

/// Eigenvalues closer than this count as one level of −ln ρ.
pub const LEVEL_MERGE_TOL: f64 = 1e-9;

/// (max E_env − min E_env) / smallest gap between distinct eigenvalues of −ln ρ_sys.
/// +∞ when −ln ρ_sys has a single distinct level.
pub fn t_undetectable(u: &UndetectabilityInput) -> Result<f64, ThermoError> {
    if u.env_energies.is_empty() {
        return Err(ThermoError::InvalidInput("no environment levels".into()));
    }
    let eig = hermitian_eig(u.rho_sys.matrix())?;
    if eig.values[0] <= 1e-14 {
        return Err(ThermoError::RankDeficient(eig.values[0]));
    }
    let mut b: Vec<f64> = eig.values.iter().map(|&p| -p.ln()).collect();
    b.sort_by(f64::total_cmp);
    let mut levels: Vec<f64> = Vec::with_capacity(b.len());
    for x in b {
        if levels.last().is_none_or(|&l| x - l > LEVEL_MERGE_TOL) {
            levels.push(x);
        }
    }
    let span = u.env_energies.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - u.env_energies.iter().copied().fold(f64::INFINITY, f64::min);
    if span == 0.0 {
        return Ok(0.0);
    }
    let gap = levels.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    Ok(if gap.is_finite() { span / gap } else { f64::INFINITY })
}

/// −ln ρ spectrum, ascending (diagnostics).
pub fn log_spectrum(rho: &DensityMatrix) -> Result<Vec<f64>, ThermoError> {
    let eig = hermitian_eig(rho.matrix())?;
    if eig.values[0] <= 1e-14 {
        return Err(ThermoError::RankDeficient(eig.values[0]));
    }
    let mut b: Vec<f64> = eig.values.iter().map(|&p| -p.ln()).collect();
    b.sort_by(f64::total_cmp);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_density, random_pure, random_unitary};
    use crate::sim::gibbs_qubit;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    #[test]
    fn jarzynski_identity_by_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let d = 4;
            let energies: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..3.0)).collect();
            let ws = WorkStatistics::from_unitary(energies, rng.random_range(0.1..4.0), &random_unitary(&mut rng, d)).unwrap();
            assert!((jarzynski_moment(&ws) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn identity_drive() {
        let ws = WorkStatistics::from_unitary(vec![0.0, 1.0], 1.0, &ComplexMatrix::identity(2)).unwrap();
        assert!((jarzynski_moment(&ws) - 1.0).abs() < 1e-15);
        assert_eq!(mean_work(&ws), 0.0);
        assert_eq!(required_shots(&ws), 1.0);
    }

    #[test]
    fn cold_flip_needs_exponentially_many_shots() {
        let ws = WorkStatistics::from_unitary(vec![0.0, 1.0], 20.0, &sigma_x()).unwrap();
        let p1 = (-20f64).exp() / (1.0 + (-20f64).exp());
        let w = (1.0 - p1) - p1;
        assert!((mean_work(&ws) - w).abs() < 1e-15);
        assert!((w - 10f64.tanh()).abs() < 1e-15);
        assert!((ln_required_shots(&ws) - 20.0 * w).abs() < 1e-12);
        assert!(required_shots(&ws) > 4e8);
        assert!((jarzynski_moment(&ws) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn log_domain_moment() {
        let ws = WorkStatistics::new(vec![0.0, 1.0], vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![1.0, 0.0]], 800.0).unwrap();
        let m = jarzynski_moment(&ws);
        assert!(m.is_infinite() || m > 1e300);
    }

    #[test]
    fn stochasticity_checked() {
        assert!(WorkStatistics::new(vec![0.0, 1.0], vec![0.5, 0.5], vec![vec![0.9, 0.0], vec![0.0, 1.0]], 1.0).is_err());
        assert!(WorkStatistics::new(vec![0.0, 1.0], vec![0.7, 0.5], vec![vec![1.0, 0.0], vec![0.0, 1.0]], 1.0).is_err());
    }

    #[test]
    fn second_law_under_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let e: Vec<f64> = (0..4).map(|_| rng.random_range(0.0..2.0)).collect();
            let u = random_unitary(&mut rng, 4);
            assert!(second_law_gap(rng.random_range(0.0..5.0), &e, &Dynamics::Unitary(u)).unwrap() >= -1e-10);
        }
    }

    #[test]
    fn ground_state_is_blind() {
        let ad = KrausChannel::amplitude_damping(0.6).unwrap();
        let gap = second_law_gap(f64::INFINITY, &[0.0, 1.0], &Dynamics::from_channel(&ad)).unwrap();
        assert!(gap >= -1e-10);
    }

    #[test]
    fn damping_violates_second_law_at_finite_temperature() {
        let ad = KrausChannel::amplitude_damping(0.3).unwrap();
        let gap = second_law_gap(1.0, &[0.0, 1.0], &Dynamics::from_channel(&ad)).unwrap();
        let p1 = (-1f64).exp() / (1.0 + (-1f64).exp());
        assert!((gap - (-0.3 * p1)).abs() < 1e-15);
        assert!(gap < 0.0);
    }

    #[test]
    fn passivity_under_unitaries_and_unital_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let rho = random_density(&mut rng, vec![2]);
            let u = random_unitary(&mut rng, 2);
            let rf = DensityMatrix::from_parts(rho.matrix().conjugate_by(&u).unwrap(), vec![2]).unwrap();
            let dep = KrausChannel::depolarizing(rng.random()).unwrap();
            let rd = DensityMatrix::from_parts(dep.apply(rho.matrix()).unwrap(), vec![2]).unwrap();
            for f in [PassivityMap::NegLog, PassivityMap::OneMinusX, PassivityMap::ReciprocalReg(1e-6)] {
                assert!(passivity_gap(&rho, &rf, f).unwrap() >= -1e-10);
                assert!(passivity_gap(&rho, &rd, f).unwrap() >= -1e-10);
            }
        }
    }

    #[test]
    fn pure_states_trivially_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ad = KrausChannel::amplitude_damping(0.5).unwrap();
        for _ in 0..50 {
            let rho = random_pure(&mut rng, vec![2]);
            let rf = DensityMatrix::from_parts(ad.apply(rho.matrix()).unwrap(), vec![2]).unwrap();
            let gap = passivity_gap(&rho, &rf, PassivityMap::OneMinusX).unwrap();
            assert!(gap >= -1e-10);
            let overlap = rho.matrix().trace_product(rf.matrix()).unwrap().re;
            assert!((gap - (1.0 - overlap)).abs() < 1e-10);
        }
        assert!(matches!(
            passivity_gap(&random_pure(&mut rng, vec![2]), &random_pure(&mut rng, vec![2]), PassivityMap::NegLog),
            Err(ThermoError::RankDeficient(_))
        ));
    }

    #[test]
    fn hot_environment_threshold() {
        let rho = gibbs_qubit(0.6, 1.0).tensor(&gibbs_qubit(3.5, 1.0)).unwrap();
        let b = log_spectrum(&rho).unwrap();
        let want = [0.467, 1.067, 3.968, 4.568];
        for (x, y) in b.iter().zip(want) {
            assert!((x - y).abs() < 1e-3, "{b:?}");
        }
        let t = t_undetectable(&UndetectabilityInput { env_energies: vec![0.0, 1.0], rho_sys: rho }).unwrap();
        assert!((t - 1.0 / 0.6).abs() < 1e-9);
        assert!(2.0 > t);
    }

    #[test]
    fn degenerate_and_trivial_cases() {
        let mixed = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        let t = t_undetectable(&UndetectabilityInput { env_energies: vec![0.0, 1.0], rho_sys: mixed }).unwrap();
        assert_eq!(t, f64::INFINITY);
        let t = t_undetectable(&UndetectabilityInput { env_energies: vec![0.5], rho_sys: gibbs_qubit(1.0, 1.0) }).unwrap();
        assert_eq!(t, 0.0);
        let pure = DensityMatrix::basis(&[0]).unwrap();
        assert!(t_undetectable(&UndetectabilityInput { env_energies: vec![0.0, 1.0], rho_sys: pure }).is_err());
    }
}
