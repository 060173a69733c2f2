//! Violation verdicts on measured or simulated recurrence series.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{
    optimized_three_cycle, simplified_gradient, sn_coefficients, truncated_sn, truncation_error_bound,
    BoundShape, BoundsError, InequalityCoefficients,
};
use crate::series::RecurrenceSeries;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DetectionError {
    #[error("series has {got} points, need {need}")]
    InsufficientData { need: usize, got: usize },
    #[error("measured range L = {0} is below 2")]
    MeasuredRange(usize),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionConfig {
    /// Violation requires S < −threshold·σ.
    pub threshold: f64,
    /// Margin used when σ = 0.
    pub exact_tol: f64,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self { threshold: 3.0, exact_tol: 1e-12 }
    }
}

impl DetectionConfig {
    pub fn violated(&self, value: f64, sigma: f64) -> bool {
        if sigma > 0.0 {
            value < -self.threshold * sigma
        } else {
            value < -self.exact_tol
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnRecord {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "sigma_S")]
    pub sigma_s: f64,
    /// S/σ when σ > 0.
    pub z: Option<f64>,
    pub violated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Governing {
    /// R0 ≥ R2 and S_2 ≥ 0: verdict from the simplified value and its σ.
    Simplified,
    /// Outside that regime: the curvature alone already signals a violation (or not).
    Shape,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizedRecord {
    /// min over (x, y) of the three-cycle form; −∞ if unbounded, NaN if degenerate.
    pub value: f64,
    pub simplified_value: f64,
    /// delta-method σ of the simplified value.
    pub sigma: f64,
    pub shape: BoundShape,
    pub governing: Governing,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionReport {
    pub records: Vec<SnRecord>,
    pub optimized: Option<OptimizedRecord>,
    /// Smallest n with a violated record; the optimized bound counts as n = 3.
    pub first_violation_n: Option<usize>,
}

impl DetectionReport {
    pub fn any_violation(&self) -> bool {
        self.first_violation_n.is_some()
    }

    pub fn record(&self, n: usize) -> Option<&SnRecord> {
        self.records.iter().find(|r| r.n == n)
    }
}

/// S = Σ w_k R̂_k, σ_S = √(Σ w_k² σ_k²).
pub fn propagate(w: &InequalityCoefficients, r: &RecurrenceSeries) -> Result<(f64, f64), DetectionError> {
    if r.len() < w.len() {
        return Err(DetectionError::InsufficientData { need: w.len(), got: r.len() });
    }
    let (mut s, mut var) = (0.0, 0.0);
    for ((w, v), sg) in w.w.iter().zip(r.values()).zip(r.sigmas()) {
        s += w * v;
        var += w * w * sg * sg;
    }
    Ok((s, var.sqrt()))
}

fn optimized_record(r: &RecurrenceSeries, cfg: &DetectionConfig) -> Result<OptimizedRecord, DetectionError> {
    let v = r.values();
    let q = [v[0], v[1], v[2], v[3]];
    let o = optimized_three_cycle(q[0], q[1], q[2], q[3])?;
    let g = simplified_gradient(q);
    let sigma = g.iter().zip(r.sigmas()).map(|(g, s)| (g * s).powi(2)).sum::<f64>().sqrt();
    let (governing, violated) = if o.simplified_applicable {
        (Governing::Simplified, cfg.violated(o.simplified_value, sigma))
    } else {
        // here D < 0 or R1 > R0: a cheaper inequality already fails, judge it with σ too
        let s2 = (3.0 * q[0] - 4.0 * q[1] + q[2]) / 8.0;
        let s2_sigma = (((3.0 * r.sigmas()[0]).powi(2) + (4.0 * r.sigmas()[1]).powi(2) + r.sigmas()[2].powi(2))
            .sqrt())
            / 8.0;
        let d02_sigma = (r.sigmas()[0].powi(2) + r.sigmas()[2].powi(2)).sqrt();
        let v = matches!(o.shape, BoundShape::Hyperbolic | BoundShape::Concave)
            && (cfg.violated(s2, s2_sigma) || cfg.violated(q[0] - q[2], d02_sigma) || o.shape == BoundShape::Concave);
        (Governing::Shape, v)
    };
    Ok(OptimizedRecord {
        value: o.value,
        simplified_value: o.simplified_value,
        sigma,
        shape: o.shape,
        governing,
        violated,
    })
}

pub fn detect(r: &RecurrenceSeries, n_max: usize) -> Result<DetectionReport, DetectionError> {
    detect_with(r, n_max, &DetectionConfig::default())
}

/// S_n for n = 2..=n_max, plus the optimized three-cycle record when n_max ≥ 3.
pub fn detect_with(r: &RecurrenceSeries, n_max: usize, cfg: &DetectionConfig) -> Result<DetectionReport, DetectionError> {
    if n_max < 2 || r.len() < n_max + 1 {
        return Err(DetectionError::InsufficientData { need: n_max.max(2) + 1, got: r.len() });
    }
    let mut records = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let (s, sigma_s) = propagate(&sn_coefficients(n)?, r)?;
        records.push(SnRecord {
            n,
            s,
            sigma_s,
            z: (sigma_s > 0.0).then(|| s / sigma_s),
            violated: cfg.violated(s, sigma_s),
        });
    }
    let optimized = if n_max >= 3 { Some(optimized_record(r, cfg)?) } else { None };
    let mut first = records.iter().find(|x| x.violated).map(|x| x.n);
    if optimized.as_ref().is_some_and(|o| o.violated) {
        first = Some(first.map_or(3, |n| n.min(3)));
    }
    Ok(DetectionReport { records, optimized, first_violation_n: first })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtrapolatedPoint {
    pub n: usize,
    /// S_n with R_k = 0 for k > L.
    #[serde(rename = "S_trunc")]
    pub s_trunc: f64,
    #[serde(rename = "sigma_S")]
    pub sigma_s: f64,
    /// erfc(ξ) + e^{−ξ²}/√(πn), ξ = L/√n.
    pub bound: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtrapolationReport {
    pub measured_l: usize,
    pub points: Vec<ExtrapolatedPoint>,
    pub first_extrapolated_violation: Option<usize>,
}

impl ExtrapolationReport {
    pub fn point(&self, n: usize) -> Option<&ExtrapolatedPoint> {
        self.points.iter().find(|p| p.n == n)
    }
}

pub fn extrapolate(r: &RecurrenceSeries, n_max: usize) -> Result<ExtrapolationReport, DetectionError> {
    extrapolate_with(r, n_max, &DetectionConfig::default())
}

/// Zero-filled S_n^(L) for n = L..=n_max. A point counts as violated only if
/// S + bound < −threshold·σ.
pub fn extrapolate_with(
    r: &RecurrenceSeries,
    n_max: usize,
    cfg: &DetectionConfig,
) -> Result<ExtrapolationReport, DetectionError> {
    let l = r.last_cycle();
    if l < 2 {
        return Err(DetectionError::MeasuredRange(l));
    }
    let mut points = Vec::new();
    for n in l..=n_max {
        let s = truncated_sn(r, n)?;
        let w = sn_coefficients(n)?;
        let sigma_s = w.w.iter().zip(r.sigmas()).map(|(w, s)| (w * s).powi(2)).sum::<f64>().sqrt();
        let bound = truncation_error_bound(n, l as f64 / (n as f64).sqrt());
        points.push(ExtrapolatedPoint { n, s_trunc: s, sigma_s, bound, violated: cfg.violated(s + bound, sigma_s) });
    }
    let first = points.iter().find(|p| p.violated).map(|p| p.n);
    Ok(ExtrapolationReport { measured_l: l, points, first_extrapolated_violation: first })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::sn_coefficients;
    use crate::linalg::random::{random_density, random_unitary};
    use crate::series::SeriesSource;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    fn unitary_series(seed: u64, dim: usize, n: usize) -> RecurrenceSeries {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(&mut rng, dim);
        let rho = random_density(&mut rng, vec![dim]);
        let mut cur = rho.matrix().clone();
        let mut v = vec![rho.purity()];
        for _ in 0..n {
            cur = cur.conjugate_by(&u).unwrap();
            v.push(rho.matrix().trace_product(&cur).unwrap().re);
        }
        RecurrenceSeries::exact(v).unwrap()
    }

    #[test]
    fn exact_series_has_zero_sigma() {
        let r = unitary_series(1, 4, 5);
        let (_, sigma) = propagate(&sn_coefficients(5).unwrap(), &r).unwrap();
        assert_eq!(sigma, 0.0);
    }

    #[test]
    fn uniform_sigma_for_s2() {
        let s = 0.01;
        let r = RecurrenceSeries::new(vec![1.0, 0.9, 0.7], vec![s; 3], Some(1000), SeriesSource::Ingested).unwrap();
        let (v, sigma) = propagate(&sn_coefficients(2).unwrap(), &r).unwrap();
        assert!((v - 0.0125).abs() < 1e-15);
        assert!((sigma - s * 26f64.sqrt() / 8.0).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_sigma() {
        let w = sn_coefficients(6).unwrap();
        let mean = [1.0, 0.8, 0.65, 0.5, 0.45, 0.4, 0.42];
        let sig = [0.01, 0.02, 0.015, 0.01, 0.03, 0.02, 0.01];
        let r = RecurrenceSeries::new(mean.to_vec(), sig.to_vec(), None, SeriesSource::Ingested).unwrap();
        let (_, sigma) = propagate(&w, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let samples: Vec<f64> = (0..10_000)
            .map(|_| {
                mean.iter()
                    .zip(&sig)
                    .zip(&w.w)
                    .map(|((m, s), w)| w * Normal::new(*m, *s).unwrap().sample(&mut rng))
                    .sum()
            })
            .collect();
        let mu = samples.iter().sum::<f64>() / samples.len() as f64;
        let sd = (samples.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (samples.len() - 1) as f64).sqrt();
        assert!((sd - sigma).abs() / sigma < 0.1);
    }

    #[test]
    fn unitary_series_never_flags() {
        for seed in 0..30 {
            let r = unitary_series(seed, 4, 20);
            let rep = detect(&r, 20).unwrap();
            assert!(!rep.any_violation(), "seed {seed}");
        }
    }

    #[test]
    fn hand_computed_s2() {
        let r = RecurrenceSeries::exact(vec![1.0, 0.9, 0.7]).unwrap();
        let rep = detect(&r, 2).unwrap();
        assert!((rep.records[0].s - 0.0125).abs() < 1e-15);
        assert!(rep.optimized.is_none());
    }

    #[test]
    fn insufficient_data() {
        let r = RecurrenceSeries::exact(vec![1.0, 0.9]).unwrap();
        assert!(detect(&r, 2).is_err());
        assert!(extrapolate(&r, 5).is_err());
    }

    #[test]
    fn extrapolation_respects_bound_on_unitary_series() {
        for seed in 0..10 {
            let r = unitary_series(100 + seed, 8, 30);
            let rep = extrapolate(&r, 225).unwrap();
            assert!(rep.points.iter().all(|p| p.s_trunc >= -p.bound - 1e-12));
            assert!(rep.first_extrapolated_violation.is_none());
        }
    }

    #[test]
    fn extrapolation_at_measured_length_is_exact() {
        let r = unitary_series(5, 4, 12);
        let rep = extrapolate(&r, 12).unwrap();
        let full = propagate(&sn_coefficients(12).unwrap(), &r).unwrap().0;
        assert_eq!(rep.points[0].s_trunc, full);
        assert_eq!(rep.points[0].bound, truncation_error_bound(12, 12.0 / 12f64.sqrt()));
    }
}
