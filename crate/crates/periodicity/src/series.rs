use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Values slightly outside [0, 1] from rounding are tolerated up to this margin.
const RANGE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesSource {
    Exact,
    Sampled,
    Ingested,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("series is empty")]
    Empty,
    #[error("values and sigmas differ in length ({0} vs {1})")]
    Length(usize, usize),
    #[error("R_{k} = {value} outside [0, 1]")]
    OutOfRange { k: usize, value: f64 },
    #[error("sigma_{k} = {value} is negative or not finite")]
    BadSigma { k: usize, value: f64 },
}

/// Binomial standard error of a frequency estimate, with v clamped to [1/(2s), 1 − 1/(2s)]
/// so that 0 and 1 outcomes still carry an error.
pub fn binomial_sigma(value: f64, shots: u64) -> f64 {
    let s = shots as f64;
    let floor = 1.0 / (2.0 * s);
    let v = value.clamp(floor, 1.0 - floor);
    (v * (1.0 - v) / s).sqrt()
}

/// Recurrence probabilities R_0..R_n with standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceSeries {
    values: Vec<f64>,
    sigmas: Vec<f64>,
    shots: Option<u64>,
    source: SeriesSource,
}

impl RecurrenceSeries {
    pub fn new(
        values: Vec<f64>,
        sigmas: Vec<f64>,
        shots: Option<u64>,
        source: SeriesSource,
    ) -> Result<Self, SeriesError> {
        if values.is_empty() {
            return Err(SeriesError::Empty);
        }
        if values.len() != sigmas.len() {
            return Err(SeriesError::Length(values.len(), sigmas.len()));
        }
        for (k, &v) in values.iter().enumerate() {
            if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&v) {
                return Err(SeriesError::OutOfRange { k, value: v });
            }
        }
        for (k, &s) in sigmas.iter().enumerate() {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(SeriesError::BadSigma { k, value: s });
            }
        }
        Ok(Self { values, sigmas, shots, source })
    }

    /// Noise-free series (all sigmas zero).
    pub fn exact(values: Vec<f64>) -> Result<Self, SeriesError> {
        let n = values.len();
        Self::new(values, vec![0.0; n], None, SeriesSource::Exact)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn shots(&self) -> Option<u64> {
        self.shots
    }

    pub fn source(&self) -> SeriesSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest cycle index present.
    pub fn last_cycle(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.sigmas.iter().all(|&s| s == 0.0)
    }

    /// First `len` points (R_0..R_{len-1}).
    pub fn truncated(&self, len: usize) -> Self {
        let len = len.min(self.values.len()).max(1);
        Self {
            values: self.values[..len].to_vec(),
            sigmas: self.sigmas[..len].to_vec(),
            shots: self.shots,
            source: self.source,
        }
    }
}
