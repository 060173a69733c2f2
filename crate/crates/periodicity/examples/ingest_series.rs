//! Re-analysis of a measured series with shot counts: σ is inferred per point.

use periodicity::cli::io::parse_series_csv;
use periodicity::cli::{analyze, AnalysisOptions};

const MEASURED: &str = "k,R,shots
0,0.991,4096
1,0.702,4096
2,0.455,4096
3,0.311,4096
4,0.298,4096
5,0.352,4096
6,0.430,4096
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = parse_series_csv(MEASURED)?;
    let opts = AnalysisOptions { optimized: true, extrapolate_to: Some(12), ..Default::default() };
    let report = analyze(&input, &opts)?;
    for r in &report.records {
        println!("S_{} = {:+.5} ± {:.5}{}", r.n, r.s, r.sigma_s, if r.violated { "  violated" } else { "" });
    }
    print!("{}", report.summary());
    Ok(())
}
