//! S_n weights: exact fractions, the generic stencil recipe and the Gaussian form.

use periodicity::bounds::{expand_stencil, gaussian_sn_coefficients, sn_coefficients, sn_rational, StencilSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=4 {
        let w: Vec<String> = sn_rational(n)?.iter().map(|r| r.to_string()).collect();
        println!("S_{n}: {}", w.join(", "));
    }

    // (1 − A_+)^{n−1} with shift 1, rescaled by 2/4^n, lands on the same weights
    let n = 6;
    let recipe = expand_stencil(&StencilSpec::forward_difference(n - 1)).scaled(2.0 / 4f64.powi(n as i32));
    let closed = sn_coefficients(n)?;
    let gap = recipe.w.iter().zip(&closed.w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("recipe vs closed form at n = {n}: max |Δw| = {gap:.1e}");

    let n = 400;
    let exact = sn_coefficients(n)?;
    let approx = gaussian_sn_coefficients(n)?;
    for k in [0, 5, 20, 40] {
        println!("n = {n}, k = {k:>2}: exact {:+.6e}  gaussian {:+.6e}", exact.w[k], approx.w[k]);
    }
    Ok(())
}
