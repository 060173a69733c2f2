use std::path::Path;

use num_rational::Ratio;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::io::{coeffs_csv, ensure_dir, fmt_real, series_csv, to_json, write_atomic, IngestedSeries};
use super::CliError;
use crate::bounds::{gaussian_sn_coefficients, sn_coefficients, sn_rational, InequalityCoefficients, TruncationPlan, EXACT_ORDER_LIMIT};
use crate::detection::{detect, extrapolate, DetectionReport, ExtrapolationReport, OptimizedRecord, SnRecord};
use crate::series::{RecurrenceSeries, SeriesSource};
use crate::sim::{recurrence_sampled, simulate_series};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationBlock {
    pub n: usize,
    pub xi: f64,
    #[serde(rename = "L")]
    pub l: usize,
    pub error_bound: f64,
    /// Whether the available series reaches R_L.
    pub covered: bool,
}

/// Everything written to report.json.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub experiment: Option<String>,
    pub timestamp: Option<String>,
    pub source: SeriesSource,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub measured_cycles: usize,
    pub records: Vec<SnRecord>,
    pub optimized: Option<OptimizedRecord>,
    pub first_violation_n: Option<usize>,
    pub extrapolation: Option<ExtrapolationReport>,
    pub truncation: Option<TruncationBlock>,
    pub violation: bool,
}

impl Report {
    pub fn record(&self, n: usize) -> Option<&SnRecord> {
        self.records.iter().find(|r| r.n == n)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.violation)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.experiment {
            out.push_str(&format!("experiment {e}\n"));
        }
        let source = format!("{:?}", self.source).to_lowercase();
        out.push_str(&format!("{source} series, R_0..R_{}\n", self.measured_cycles));
        let worst = self.records.iter().min_by(|a, b| a.s.total_cmp(&b.s));
        if let Some(w) = worst {
            out.push_str(&format!("min S_n at n = {}: {:.6e} (sigma {:.3e})\n", w.n, w.s, w.sigma_s));
        }
        if let Some(o) = &self.optimized {
            out.push_str(&format!(
                "optimized 3-cycle: {:.6e} (simplified {:.6e}, {:?}){}\n",
                o.value,
                o.simplified_value,
                o.shape,
                if o.violated { " violated" } else { "" }
            ));
        }
        match self.first_violation_n {
            Some(n) => out.push_str(&format!("first violation at n = {n}\n")),
            None => out.push_str("no violation in measured range\n"),
        }
        if let Some(x) = &self.extrapolation {
            match x.first_extrapolated_violation {
                Some(n) => out.push_str(&format!("extrapolated first violation at n = {n}\n")),
                None => out.push_str("no extrapolated violation\n"),
            }
        }
        if let Some(t) = &self.truncation {
            out.push_str(&format!("truncation: n = {}, xi = {}, L = {}, bound {:.3e}\n", t.n, t.xi, t.l, t.error_bound));
        }
        out
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        ensure_dir(dir)?;
        write_atomic(&dir.join("report.json"), &to_json(self)?)
    }
}

/// Options shared by run and analyze.
#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub sn_max: Option<usize>,
    pub optimized: bool,
    pub extrapolate_to: Option<usize>,
    pub truncation: Option<TruncationPlan>,
}

pub fn analyze_series(
    series: &RecurrenceSeries,
    opts: &AnalysisOptions,
    experiment: Option<String>,
    timestamp: Option<String>,
    seed: Option<u64>,
) -> Result<Report, CliError> {
    let l = series.last_cycle();
    if l < 2 {
        return Err(CliError::Input(format!("series needs at least R_0..R_2, got R_0..R_{l}")));
    }
    let sn_max = opts.sn_max.unwrap_or(l);
    if sn_max < 2 || sn_max > l {
        return Err(CliError::Input(format!("sn_max = {sn_max} must lie in [2, {l}]")));
    }
    let DetectionReport { records, optimized, .. } = detect(series, sn_max).map_err(|e| CliError::Input(e.to_string()))?;
    let optimized = optimized.filter(|_| opts.optimized);
    let mut first = records.iter().find(|r| r.violated).map(|r| r.n);
    if optimized.as_ref().is_some_and(|o| o.violated) {
        first = Some(first.map_or(3, |n| n.min(3)));
    }
    let extrapolation = match opts.extrapolate_to {
        Some(to) if to < l => return Err(CliError::Input(format!("extrapolate_to = {to} is below L = {l}"))),
        Some(to) => Some(extrapolate(series, to).map_err(|e| CliError::Input(e.to_string()))?),
        None => None,
    };
    let truncation = opts.truncation.as_ref().map(|t| TruncationBlock {
        n: t.n,
        xi: t.xi,
        l: t.l,
        error_bound: t.error_bound,
        covered: t.l <= l,
    });
    let violation = first.is_some() || extrapolation.as_ref().is_some_and(|x| x.first_extrapolated_violation.is_some());
    Ok(Report {
        experiment,
        timestamp,
        source: series.source(),
        shots: series.shots(),
        seed,
        measured_cycles: l,
        records,
        optimized,
        first_violation_n: first,
        extrapolation,
        truncation,
        violation,
    })
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// What the detector saw: exact, or shot-sampled when shots > 0.
    pub series: RecurrenceSeries,
    /// The noise-free series behind a sampled run.
    pub exact: Option<RecurrenceSeries>,
    pub report: Report,
}

impl RunOutput {
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        ensure_dir(dir)?;
        write_atomic(&dir.join("series.csv"), &series_csv(&self.series))?;
        if let Some(e) = &self.exact {
            write_atomic(&dir.join("series_exact.csv"), &series_csv(e))?;
        }
        self.report.write(dir)
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput, CliError> {
    let e = cfg.resolve()?;
    let exact = simulate_series(&e.rho0, &e.spec, &e.channels, e.n_cycles).map_err(|x| CliError::Runtime(x.to_string()))?;
    let (series, exact, seed) = if e.shots > 0 {
        let s = recurrence_sampled(&exact, e.shots, e.seed).map_err(|x| CliError::Runtime(x.to_string()))?;
        (s, Some(exact), Some(e.seed))
    } else {
        (exact, None, None)
    };
    let opts = AnalysisOptions {
        sn_max: Some(e.sn_max),
        optimized: e.optimized,
        extrapolate_to: e.extrapolate_to,
        truncation: e.truncation,
    };
    let report = analyze_series(&series, &opts, e.label, None, seed)?;
    Ok(RunOutput { series, exact, report })
}

/// Analysis of an ingested series; the series is echoed back as series.csv.
pub fn analyze(input: &IngestedSeries, opts: &AnalysisOptions) -> Result<Report, CliError> {
    analyze_series(&input.series, opts, input.label.clone(), input.timestamp.clone(), None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffListing {
    pub n: usize,
    pub gaussian: bool,
    pub exact: Option<Vec<Ratio<i128>>>,
    pub coefficients: InequalityCoefficients,
}

impl CoeffListing {
    /// Exact fractions on the first line when available, decimals on the next.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(ex) = &self.exact {
            out.push_str(&ex.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "));
            out.push('\n');
        }
        out.push_str(&self.coefficients.w.iter().map(|x| fmt_real(*x)).collect::<Vec<_>>().join(", "));
        out.push('\n');
        out
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        ensure_dir(dir)?;
        write_atomic(&dir.join("coeffs.csv"), &coeffs_csv(&self.coefficients))
    }
}

pub fn coeffs(n: usize, gaussian: bool) -> Result<CoeffListing, CliError> {
    if n < 2 {
        return Err(CliError::Input(format!("n = {n}: need n ≥ 2")));
    }
    let input = |e: crate::bounds::BoundsError| CliError::Input(e.to_string());
    let coefficients = if gaussian { gaussian_sn_coefficients(n) } else { sn_coefficients(n) }.map_err(input)?;
    let exact = if !gaussian && n <= EXACT_ORDER_LIMIT { Some(sn_rational(n).map_err(input)?) } else { None };
    Ok(CoeffListing { n, gaussian, exact, coefficients })
}
