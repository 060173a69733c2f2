use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use super::CliError;
use crate::bounds::InequalityCoefficients;
use crate::series::{binomial_sigma, RecurrenceSeries, SeriesSource};

/// 17 significant digits, enough to recover every f64 exactly.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty JSON whose floats are written with 17 significant digits.
struct SigFigFormatter(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident$(($arg:ident: $t:ty))?),*) => {$(
        fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $t)?) -> std::io::Result<()> {
            self.0.$name(w $(, $arg)?)
        }
    )*};
}

impl Formatter for SigFigFormatter {
    delegate!(
        begin_array, end_array, begin_array_value(first: bool), end_array_value,
        begin_object, end_object, begin_object_key(first: bool), begin_object_value, end_object_value
    );

    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        w.write_all(fmt_real(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Non-finite floats become null.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| CliError::Runtime(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Runtime(e.to_string()))
}

/// Write to a temporary file in the same directory, then rename over the target.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io = |e: std::io::Error| CliError::Runtime(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))
}

pub fn series_csv(s: &RecurrenceSeries) -> String {
    let mut out = String::from("k,R,sigma\n");
    for (k, (v, sg)) in s.values().iter().zip(s.sigmas()).enumerate() {
        out.push_str(&format!("{k},{},{}\n", fmt_real(*v), fmt_real(*sg)));
    }
    out
}

pub fn coeffs_csv(w: &InequalityCoefficients) -> String {
    let mut out = String::from("k,w\n");
    for (k, x) in w.w.iter().enumerate() {
        out.push_str(&format!("{k},{}\n", fmt_real(*x)));
    }
    out
}

/// A series read from disk plus whatever labels came with it.
#[derive(Debug, Clone, PartialEq)]
pub struct IngestedSeries {
    pub series: RecurrenceSeries,
    pub label: Option<String>,
    pub timestamp: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSeries {
    #[serde(rename = "R")]
    r: Vec<f64>,
    #[serde(default)]
    sigma: Option<Vec<f64>>,
    #[serde(default)]
    shots: Option<u64>,
    #[serde(default)]
    source: Option<String>,
    #[serde(default)]
    timestamp: Option<String>,
}

fn infer_sigmas(values: &[f64], shots: &[Option<u64>]) -> Result<Vec<f64>, CliError> {
    values
        .iter()
        .zip(shots)
        .map(|(&v, s)| match s {
            Some(0) => Err(CliError::Input("shots must be positive".into())),
            Some(s) => Ok(binomial_sigma(v, *s)),
            None => Ok(0.0),
        })
        .collect()
}

fn build(values: Vec<f64>, sigmas: Vec<f64>, shots: Option<u64>) -> Result<RecurrenceSeries, CliError> {
    RecurrenceSeries::new(values, sigmas, shots, SeriesSource::Ingested).map_err(|e| CliError::Input(e.to_string()))
}

pub fn parse_series_json(text: &str) -> Result<IngestedSeries, CliError> {
    let j: JsonSeries = serde_json::from_str(text).map_err(|e| CliError::Input(format!("series: {e}")))?;
    let sigmas = match j.sigma {
        Some(s) => s,
        None => infer_sigmas(&j.r, &vec![j.shots; j.r.len()])?,
    };
    Ok(IngestedSeries { series: build(j.r, sigmas, j.shots)?, label: j.source, timestamp: j.timestamp })
}

/// Header `k,R[,sigma][,shots]`; rows must run k = 0, 1, 2, …
pub fn parse_series_csv(text: &str) -> Result<IngestedSeries, CliError> {
    let bad = |m: String| CliError::Input(format!("series: {m}"));
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (ck, cr) = match (col("k"), col("R")) {
        (Some(k), Some(r)) => (k, r),
        _ => return Err(bad("header must contain k and R".into())),
    };
    let (cs, cn) = (col("sigma"), col("shots"));
    let mut values = Vec::new();
    let mut sigmas: Vec<Option<f64>> = Vec::new();
    let mut shots: Vec<Option<u64>> = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let cell = |c: Option<usize>| c.and_then(|c| rec.get(c)).filter(|s| !s.is_empty());
        let field = |c: usize, what: &str| cell(Some(c)).ok_or_else(|| bad(format!("row {row}: missing {what}")));
        let k: usize = field(ck, "k")?.parse().map_err(|_| bad(format!("row {row}: bad k")))?;
        if k != row {
            return Err(bad(format!("row {row}: expected k = {row}, found {k}")));
        }
        values.push(field(cr, "R")?.parse::<f64>().map_err(|_| bad(format!("row {row}: bad R")))?);
        sigmas.push(cell(cs).map(|s| s.parse::<f64>()).transpose().map_err(|_| bad(format!("row {row}: bad sigma")))?);
        shots.push(cell(cn).map(|s| s.parse::<u64>()).transpose().map_err(|_| bad(format!("row {row}: bad shots")))?);
    }
    let inferred = infer_sigmas(&values, &shots)?;
    let sigmas = sigmas.into_iter().zip(inferred).map(|(s, i)| s.unwrap_or(i)).collect();
    let common = shots.first().copied().flatten().filter(|s| shots.iter().all(|x| *x == Some(*s)));
    Ok(IngestedSeries { series: build(values, sigmas, common)?, label: None, timestamp: None })
}

/// JSON when the file name ends in .json or the text opens with `{`, otherwise CSV.
pub fn read_series(path: &Path) -> Result<IngestedSeries, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) || text.trim_start().starts_with('{');
    let mut s = if is_json { parse_series_json(&text)? } else { parse_series_csv(&text)? };
    if s.label.is_none() {
        s.label = path.file_name().map(|n| n.to_string_lossy().into_owned());
    }
    Ok(s)
}
