use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{presets, CliError};
use crate::bounds::{truncation_plan, xi_for_tolerance, TruncationPlan};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::sim::{gibbs_qubit, AppliedChannel, CycleSpec, EnvMode, GateKind, GateSpec, KrausChannel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub params: Map<String, Value>,
    pub circuit: CircuitConfig,
    pub initial_state: InitialState,
    #[serde(default)]
    pub channels: Vec<ChannelConfig>,
    /// 0 means exact probabilities.
    #[serde(default)]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    pub n_cycles: usize,
    #[serde(default)]
    pub bounds: BoundsConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitConfig {
    pub n_system_qubits: usize,
    /// First listed acts first.
    pub gates: Vec<GateConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub env: Option<EnvConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvConfig {
    pub n_qubits: usize,
    pub state: InitialState,
    #[serde(default)]
    pub mode: EnvModeConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvModeConfig {
    #[default]
    Persistent,
    Reset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateConfig {
    pub gate: String,
    /// Controls first for controlled gates.
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drift: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixConfig>,
}

impl GateConfig {
    pub fn fixed(gate: &str, qubits: Vec<usize>) -> Self {
        Self { gate: gate.into(), qubits, theta: None, drift: None, matrix: None }
    }

    pub fn rotation(gate: &str, qubits: Vec<usize>, theta: f64) -> Self {
        Self { theta: Some(theta), ..Self::fixed(gate, qubits) }
    }

    pub fn drifting(gate: &str, qubits: Vec<usize>, theta: f64, drift: f64) -> Self {
        Self { theta: Some(theta), drift: Some(drift), ..Self::fixed(gate, qubits) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    pub real: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
}

impl MatrixConfig {
    fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        let d = self.real.len();
        if let Some(im) = &self.imag {
            if im.len() != d || im.iter().any(|r| r.len() != d) {
                return Err(CliError::Input("imag part must match real part".into()));
            }
        }
        if self.real.iter().any(|r| r.len() != d) {
            return Err(CliError::Input("matrix must be square".into()));
        }
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let im = self.imag.as_ref().map_or(0.0, |m| m[i][j]);
                data.push(Complex64::new(self.real[i][j], im));
            }
        }
        ComplexMatrix::from_vec(d, data).map_err(|e| CliError::Input(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    /// |0…0⟩
    Zeros,
    /// e.g. "110", qubit 0 first
    Basis { bits: String },
    /// One of "0", "1", "+", "-", "+i", "-i" per qubit.
    Product { factors: Vec<String> },
    /// Independent thermal qubits with unit gap.
    Gibbs { betas: Vec<f64> },
    Density(MatrixConfig),
}

fn factor(label: &str) -> Result<[Complex64; 2], CliError> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    Ok(match label {
        "0" => [c(1.0, 0.0), c(0.0, 0.0)],
        "1" => [c(0.0, 0.0), c(1.0, 0.0)],
        "+" => [c(h, 0.0), c(h, 0.0)],
        "-" => [c(h, 0.0), c(-h, 0.0)],
        "+i" => [c(h, 0.0), c(0.0, h)],
        "-i" => [c(h, 0.0), c(0.0, -h)],
        _ => return Err(CliError::Input(format!("unknown product factor {label:?}"))),
    })
}

impl InitialState {
    pub fn to_density(&self, n_qubits: usize) -> Result<DensityMatrix, CliError> {
        let count = |got: usize| {
            if got == n_qubits {
                Ok(())
            } else {
                Err(CliError::Input(format!("initial state covers {got} qubits, register has {n_qubits}")))
            }
        };
        let input = |e: crate::linalg::LinalgError| CliError::Input(e.to_string());
        match self {
            InitialState::Zeros => DensityMatrix::basis(&vec![0; n_qubits]).map_err(input),
            InitialState::Basis { bits } => {
                count(bits.len())?;
                let b = bits
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(CliError::Input(format!("bad basis string {bits:?}"))),
                    })
                    .collect::<Result<Vec<u8>, _>>()?;
                DensityMatrix::basis(&b).map_err(input)
            }
            InitialState::Product { factors } => {
                count(factors.len())?;
                let f = factors.iter().map(|s| factor(s)).collect::<Result<Vec<_>, _>>()?;
                DensityMatrix::product_pure(&f).map_err(input)
            }
            InitialState::Gibbs { betas } => {
                count(betas.len())?;
                if let Some(b) = betas.iter().find(|b| b.is_nan() || **b < 0.0) {
                    return Err(CliError::Input(format!("beta = {b} must be nonnegative")));
                }
                let mut rho = gibbs_qubit(betas[0], 1.0);
                for &b in &betas[1..] {
                    rho = rho.tensor(&gibbs_qubit(b, 1.0)).map_err(input)?;
                }
                Ok(rho)
            }
            InitialState::Density(m) => {
                let mat = m.to_matrix()?;
                if mat.dim() != 1 << n_qubits {
                    return Err(CliError::Input(format!("density matrix has dimension {}, need {}", mat.dim(), 1 << n_qubits)));
                }
                DensityMatrix::new(mat, vec![2; n_qubits]).map_err(input)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    /// amplitude_damping (gamma), depolarizing (p) or dephasing (p)
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub qubits: Vec<usize>,
}

impl ChannelConfig {
    fn to_channel(&self) -> Result<AppliedChannel, CliError> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| CliError::Input(format!("channel {} needs {name}", self.kind)))
        };
        let ch = match self.kind.as_str() {
            "amplitude_damping" => KrausChannel::amplitude_damping(need(self.gamma, "gamma")?),
            "depolarizing" => KrausChannel::depolarizing(need(self.p, "p")?),
            "dephasing" => KrausChannel::dephasing(need(self.p, "p")?),
            other => return Err(CliError::Input(format!("unknown channel kind {other:?}"))),
        }
        .map_err(|e| CliError::Input(e.to_string()))?;
        Ok(AppliedChannel::new(ch, self.qubits.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsConfig {
    /// Largest S_n evaluated; defaults to n_cycles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sn_max: Option<usize>,
    #[serde(default = "yes")]
    pub optimized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<TruncationConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extrapolate_to: Option<usize>,
}

fn yes() -> bool {
    true
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self { sn_max: None, optimized: true, truncation: None, extrapolate_to: None }
    }
}

/// Exactly one of ξ or a target error ε.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

/// Config after validation, ready to simulate.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub label: Option<String>,
    pub rho0: DensityMatrix,
    pub spec: CycleSpec,
    pub channels: Vec<AppliedChannel>,
    pub n_cycles: usize,
    pub shots: u64,
    pub seed: u64,
    pub sn_max: usize,
    pub optimized: bool,
    pub truncation: Option<TruncationPlan>,
    pub extrapolate_to: Option<usize>,
}

fn gate_kind(g: &GateConfig) -> Result<GateKind, CliError> {
    Ok(match g.gate.to_ascii_lowercase().as_str() {
        "rx" => GateKind::Rx,
        "ry" => GateKind::Ry,
        "rz" => GateKind::Rz,
        "rxx" => GateKind::Rxx,
        "pswap" => GateKind::Pswap,
        "cnot" | "cx" => GateKind::Cnot,
        "toffoli" | "ccx" => GateKind::Toffoli,
        "cswap" | "fredkin" => GateKind::Cswap,
        "custom" => {
            let m = g.matrix.as_ref().ok_or_else(|| CliError::Input("custom gate needs a matrix".into()))?;
            GateKind::Custom(m.to_matrix()?)
        }
        other => return Err(CliError::Input(format!("unknown gate {other:?}"))),
    })
}

fn gate_spec(g: &GateConfig) -> Result<GateSpec, CliError> {
    let kind = gate_kind(g)?;
    if g.matrix.is_some() && !matches!(kind, GateKind::Custom(_)) {
        return Err(CliError::Input(format!("gate {} does not take a matrix", g.gate)));
    }
    if kind.is_rotation() {
        let theta = g.theta.ok_or_else(|| CliError::Input(format!("gate {} needs theta", g.gate)))?;
        Ok(GateSpec::rotation(kind, g.qubits.clone(), theta).with_drift(g.drift.unwrap_or(0.0)))
    } else {
        if g.theta.is_some() || g.drift.is_some() {
            return Err(CliError::Input(format!("gate {} takes no angle", g.gate)));
        }
        Ok(GateSpec::new(kind, g.qubits.clone()))
    }
}

impl ExperimentConfig {
    /// Reads JSON text. A named `experiment` that matches a preset supplies every field
    /// the file leaves out; `params` are passed to that preset.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
        let Value::Object(mut obj) = raw else {
            return Err(CliError::Input("config must be a JSON object".into()));
        };
        let name = match obj.get("experiment") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(CliError::Input("experiment must be a string".into())),
        };
        let merged = match name.as_deref().filter(|n| presets::names().contains(n)) {
            Some(n) => {
                let params = match obj.remove("params") {
                    None | Some(Value::Null) => Map::new(),
                    Some(Value::Object(m)) => m,
                    Some(_) => return Err(CliError::Input("params must be an object".into())),
                };
                let base = presets::preset(n, &params)?;
                let Value::Object(mut base) = serde_json::to_value(base).map_err(|e| CliError::Runtime(e.to_string()))?
                else {
                    unreachable!("configs serialize to objects")
                };
                for (k, v) in obj {
                    base.insert(k, v);
                }
                Value::Object(base)
            }
            None if name.is_some() && !obj.contains_key("circuit") => {
                return Err(CliError::Input(format!("unknown preset {:?}", name.unwrap_or_default())));
            }
            _ => Value::Object(obj),
        };
        serde_json::from_value(merged).map_err(|e| CliError::Input(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks every reference and builds the simulation inputs. All failures are input errors.
    pub fn resolve(&self) -> Result<Experiment, CliError> {
        let c = &self.circuit;
        if c.n_system_qubits == 0 {
            return Err(CliError::Input("n_system_qubits must be at least 1".into()));
        }
        let gates = c.gates.iter().map(gate_spec).collect::<Result<Vec<_>, _>>()?;
        let spec = match &c.env {
            None => CycleSpec::closed(c.n_system_qubits, gates),
            Some(env) => {
                if env.n_qubits == 0 {
                    return Err(CliError::Input("env.n_qubits must be at least 1".into()));
                }
                let mode = match env.mode {
                    EnvModeConfig::Persistent => EnvMode::Persistent,
                    EnvModeConfig::Reset => EnvMode::ResetEachCycle,
                };
                CycleSpec::with_env(c.n_system_qubits, gates, env.state.to_density(env.n_qubits)?, mode)
            }
        };
        spec.validate().map_err(|e| CliError::Input(e.to_string()))?;
        let n = spec.n_qubits();
        if n > crate::linalg::MAX_DIM.trailing_zeros() as usize {
            return Err(CliError::Input(format!("{n} qubits exceed the simulator limit")));
        }
        let channels = self.channels.iter().map(|ch| ch.to_channel()).collect::<Result<Vec<_>, _>>()?;
        for ch in &channels {
            if let Some(q) = ch.qubits.iter().find(|&&q| q >= n) {
                return Err(CliError::Input(format!("channel qubit {q} outside register of {n}")));
            }
            if ch.qubits.is_empty() {
                return Err(CliError::Input("channel lists no qubits".into()));
            }
        }
        let rho0 = self.initial_state.to_density(c.n_system_qubits)?;
        if self.n_cycles < 2 {
            return Err(CliError::Input("n_cycles must be at least 2".into()));
        }
        let b = &self.bounds;
        let sn_max = b.sn_max.unwrap_or(self.n_cycles);
        if sn_max < 2 || sn_max > self.n_cycles {
            return Err(CliError::Input(format!("sn_max = {sn_max} must lie in [2, n_cycles = {}]", self.n_cycles)));
        }
        if let Some(to) = b.extrapolate_to {
            if to < self.n_cycles {
                return Err(CliError::Input("extrapolate_to must be at least n_cycles".into()));
            }
        }
        let truncation = match &b.truncation {
            None => None,
            Some(t) => {
                let target = b.extrapolate_to.unwrap_or(sn_max);
                let xi = match (t.xi, t.epsilon) {
                    (Some(xi), None) => xi,
                    (None, Some(eps)) => xi_for_tolerance(target, eps).map_err(|e| CliError::Input(e.to_string()))?,
                    _ => return Err(CliError::Input("truncation needs exactly one of xi, epsilon".into())),
                };
                Some(truncation_plan(target, xi).map_err(|e| CliError::Input(e.to_string()))?)
            }
        };
        Ok(Experiment {
            label: self.experiment.clone(),
            rho0,
            spec,
            channels,
            n_cycles: self.n_cycles,
            shots: self.shots,
            seed: self.seed,
            sn_max,
            optimized: b.optimized,
            truncation,
            extrapolate_to: b.extrapolate_to,
        })
    }
}
