//! Built-in experiments. Each takes a small set of named numeric parameters.

use serde_json::{Map, Value};

use super::config::{
    BoundsConfig, ChannelConfig, CircuitConfig, EnvConfig, EnvModeConfig, ExperimentConfig, GateConfig, InitialState,
};
use super::CliError;

const PRESETS: [(&str, &str); 7] = [
    ("drift4q", "4 qubits, RX layer then RXX chain whose angle drifts by dtheta per cycle"),
    ("cnot-env", "2 qubits coupled to one environment qubit through a CNOT (phi, decoupled)"),
    ("santiago-like", "RY on both qubits then CNOT, amplitude damping and shot noise"),
    ("hot-env", "thermal qubit pair swapped with a hotter environment qubit"),
    ("slow-env", "one qubit entangled each cycle with a persistent environment qubit (eps)"),
    ("toffoli", "|110⟩ under a single Toffoli per cycle (optional depolarizing p)"),
    ("toffoli2", "|110⟩ under two Toffolis per cycle (optional depolarizing p)"),
];

pub fn names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

pub fn list() -> &'static [(&'static str, &'static str)] {
    &PRESETS
}

/// Reads parameters with defaults and rejects any name the preset does not know.
struct Params<'a> {
    preset: &'a str,
    raw: &'a Map<String, Value>,
    known: Vec<&'static str>,
}

impl<'a> Params<'a> {
    fn new(preset: &'a str, raw: &'a Map<String, Value>) -> Self {
        Self { preset, raw, known: Vec::new() }
    }

    fn num(&mut self, key: &'static str, default: f64) -> Result<f64, CliError> {
        self.known.push(key);
        match self.raw.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_f64()
                .ok_or_else(|| CliError::Input(format!("{}: parameter {key} must be a number", self.preset))),
        }
    }

    fn flag(&mut self, key: &'static str, default: bool) -> Result<bool, CliError> {
        self.known.push(key);
        match self.raw.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_bool()
                .ok_or_else(|| CliError::Input(format!("{}: parameter {key} must be a boolean", self.preset))),
        }
    }

    fn finish(self) -> Result<Map<String, Value>, CliError> {
        if let Some(k) = self.raw.keys().find(|k| !self.known.contains(&k.as_str())) {
            return Err(CliError::Input(format!("{}: unknown parameter {k:?} (known: {:?})", self.preset, self.known)));
        }
        Ok(self.raw.clone())
    }
}

fn base(name: &str, params: Map<String, Value>, circuit: CircuitConfig, initial_state: InitialState, n_cycles: usize) -> ExperimentConfig {
    ExperimentConfig {
        experiment: Some(name.into()),
        params,
        circuit,
        initial_state,
        channels: vec![],
        shots: 0,
        seed: 0,
        n_cycles,
        bounds: BoundsConfig::default(),
    }
}

fn env(n_qubits: usize, state: InitialState) -> Option<EnvConfig> {
    Some(EnvConfig { n_qubits, state, mode: EnvModeConfig::Persistent })
}

fn depolarize_all(cfg: &mut ExperimentConfig, p: f64) {
    if p > 0.0 {
        let qubits = (0..cfg.circuit.n_system_qubits).collect();
        cfg.channels.push(ChannelConfig { kind: "depolarizing".into(), gamma: None, p: Some(p), qubits });
    }
}

pub fn preset(name: &str, raw: &Map<String, Value>) -> Result<ExperimentConfig, CliError> {
    let mut p = Params::new(name, raw);
    let cfg = match name {
        "drift4q" => {
            let rx = p.num("rx", 0.1)?;
            let theta0 = p.num("theta0", 0.3)?;
            let dtheta = p.num("dtheta", 1e-3)?;
            let mut gates: Vec<GateConfig> = (0..4).map(|q| GateConfig::rotation("rx", vec![q], rx)).collect();
            gates.extend((0..3).map(|q| GateConfig::drifting("rxx", vec![q, q + 1], theta0, dtheta)));
            let circuit = CircuitConfig { n_system_qubits: 4, gates, env: None };
            base(name, p.finish()?, circuit, InitialState::Zeros, 10)
        }
        "cnot-env" => {
            let phi = p.num("phi", 1.8)?;
            let decoupled = p.flag("decoupled", false)?;
            let mut gates = vec![GateConfig::fixed("cnot", vec![1, 0]), GateConfig::rotation("ry", vec![2], phi)];
            if !decoupled {
                gates.push(GateConfig::fixed("cnot", vec![0, 2]));
            }
            let circuit = CircuitConfig { n_system_qubits: 2, gates, env: env(1, InitialState::Zeros) };
            let state = InitialState::Product { factors: vec!["+".into(), "0".into()] };
            base(name, p.finish()?, circuit, state, 10)
        }
        "santiago-like" => {
            let theta = p.num("theta", 1.0)?;
            let gamma = p.num("gamma", 0.01)?;
            let shots = p.num("shots", 4096.0)?;
            let gates = vec![
                GateConfig::rotation("ry", vec![0], theta),
                GateConfig::rotation("ry", vec![1], theta),
                GateConfig::fixed("cnot", vec![0, 1]),
            ];
            let circuit = CircuitConfig { n_system_qubits: 2, gates, env: None };
            let mut cfg = base(name, p.finish()?, circuit, InitialState::Zeros, 60);
            if gamma > 0.0 {
                cfg.channels.push(ChannelConfig {
                    kind: "amplitude_damping".into(),
                    gamma: Some(gamma),
                    p: None,
                    qubits: vec![0, 1],
                });
            }
            if shots < 0.0 || shots.fract() != 0.0 {
                return Err(CliError::Input("santiago-like: shots must be a nonnegative integer".into()));
            }
            cfg.shots = shots as u64;
            cfg
        }
        "hot-env" => {
            let beta_h = p.num("beta_h", 0.6)?;
            let beta_c = p.num("beta_c", 3.5)?;
            let beta_e = p.num("beta_e", 0.5)?;
            let coupling = p.num("coupling", 1.6)?;
            let gates = vec![
                GateConfig::rotation("pswap", vec![0, 1], coupling),
                GateConfig::rotation("pswap", vec![1, 2], coupling),
            ];
            let circuit =
                CircuitConfig { n_system_qubits: 2, gates, env: env(1, InitialState::Gibbs { betas: vec![beta_e] }) };
            base(name, p.finish()?, circuit, InitialState::Gibbs { betas: vec![beta_h, beta_c] }, 10)
        }
        "slow-env" => {
            let eps = p.num("eps", 0.25)?;
            let gates = vec![GateConfig::rotation("ry", vec![1], eps), GateConfig::fixed("cnot", vec![0, 1])];
            let circuit = CircuitConfig { n_system_qubits: 1, gates, env: env(1, InitialState::Zeros) };
            let state = InitialState::Product { factors: vec!["+".into()] };
            base(name, p.finish()?, circuit, state, 200)
        }
        "toffoli" | "toffoli2" => {
            let dep = p.num("p", 0.0)?;
            let copies = if name == "toffoli" { 1 } else { 2 };
            let gates = vec![GateConfig::fixed("toffoli", vec![0, 1, 2]); copies];
            let circuit = CircuitConfig { n_system_qubits: 3, gates, env: None };
            let mut cfg = base(name, p.finish()?, circuit, InitialState::Basis { bits: "110".into() }, 30);
            depolarize_all(&mut cfg, dep);
            cfg
        }
        other => return Err(CliError::Input(format!("unknown preset {other:?}; try `presets --list`"))),
    };
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn all_presets_resolve() {
        for n in names() {
            let c = preset(n, &Map::new()).unwrap();
            c.resolve().unwrap_or_else(|e| panic!("{n}: {e}"));
            assert_eq!(c.experiment.as_deref(), Some(n));
        }
    }

    #[test]
    fn parameters() {
        let m = |v: Value| v.as_object().unwrap().clone();
        let c = preset("cnot-env", &m(json!({"decoupled": true}))).unwrap();
        assert_eq!(c.circuit.gates.len(), 2);
        let c = preset("toffoli", &m(json!({"p": 0.02}))).unwrap();
        assert_eq!(c.channels.len(), 1);
        let c = preset("santiago-like", &m(json!({"gamma": 0.0, "shots": 0}))).unwrap();
        assert!(c.channels.is_empty());
        assert_eq!(c.shots, 0);
        assert!(preset("santiago-like", &m(json!({"shots": 1.5}))).is_err());
        assert!(preset("hot-env", &m(json!({"beta_h": "hot"}))).is_err());
        assert!(preset("toffoli", &m(json!({"q": 1}))).is_err());
    }
}
