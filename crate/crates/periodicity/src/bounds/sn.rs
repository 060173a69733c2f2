use num_rational::Ratio;

use super::{BoundsError, InequalityCoefficients};

/// Orders up to this use exact rational arithmetic.
pub const EXACT_ORDER_LIMIT: usize = 30;
/// Default ceiling on n for the S_n family.
pub const MAX_SN_ORDER: usize = 10_000;

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

fn check_order(n: usize) -> Result<(), BoundsError> {
    if n == 0 || n > MAX_SN_ORDER {
        return Err(BoundsError::Order { n, max: MAX_SN_ORDER });
    }
    Ok(())
}

/// Exact S_n weights: w_0 = C(2n,n)/4^n, w_k = 2(−1)^k C(2n,n+k)/4^n. Reduced fractions.
pub fn sn_rational(n: usize) -> Result<Vec<Ratio<i128>>, BoundsError> {
    if n == 0 || n > EXACT_ORDER_LIMIT {
        return Err(BoundsError::Order { n, max: EXACT_ORDER_LIMIT });
    }
    let denom: i128 = 1 << (2 * n);
    let n64 = n as u64;
    Ok((0..=n64)
        .map(|k| {
            let c = binomial(2 * n64, n64 + k) as i128;
            let num = if k == 0 {
                c
            } else if k % 2 == 0 {
                2 * c
            } else {
                -2 * c
            };
            Ratio::new(num, denom)
        })
        .collect())
}

fn ratio_to_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Normalised S_n weights (Σ|w| = 1, signs (−1)^k).
pub fn sn_coefficients(n: usize) -> Result<InequalityCoefficients, BoundsError> {
    check_order(n)?;
    let w = if n <= EXACT_ORDER_LIMIT {
        sn_rational(n)?.iter().map(ratio_to_f64).collect()
    } else {
        sn_float(n)
    };
    Ok(InequalityCoefficients { w, normalized: true })
}

/// C(2n,n+k)/4^n by the ratio C(2n,n+k+1)/C(2n,n+k) = (n−k)/(n+k+1), starting from
/// C(2n,n)/4^n = Π_{j≤n} (2j−1)/(2j).
fn sn_float(n: usize) -> Vec<f64> {
    let mut central = 1.0;
    for j in 1..=n {
        central *= (2 * j - 1) as f64 / (2 * j) as f64;
    }
    let mut w = Vec::with_capacity(n + 1);
    w.push(central);
    let mut c = central;
    for k in 0..n {
        c *= (n - k) as f64 / (n + k + 1) as f64;
        let sign = if (k + 1) % 2 == 0 { 2.0 } else { -2.0 };
        w.push(sign * c);
    }
    w
}

/// Large-n form: w_0 = 1/√(πn), w_k = 2(−1)^k e^{−k²/n}/√(πn). Not renormalised.
pub fn gaussian_sn_coefficients(n: usize) -> Result<InequalityCoefficients, BoundsError> {
    check_order(n)?;
    let nf = n as f64;
    let base = 1.0 / (std::f64::consts::PI * nf).sqrt();
    let w = (0..=n)
        .map(|k| {
            if k == 0 {
                base
            } else {
                let kf = k as f64;
                let sign = if k % 2 == 0 { 2.0 } else { -2.0 };
                sign * base * (-kf * kf / nf).exp()
            }
        })
        .collect();
    Ok(InequalityCoefficients { w, normalized: false })
}

/// All S_1..S_n weight vectors, reusing one table.
pub fn sn_table(n_max: usize) -> Result<Vec<InequalityCoefficients>, BoundsError> {
    (1..=n_max).map(sn_coefficients).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{expand_stencil, StencilSpec};

    fn r(n: i128, d: i128) -> Ratio<i128> {
        Ratio::new(n, d)
    }

    #[test]
    fn golden_rationals() {
        assert_eq!(sn_rational(2).unwrap(), vec![r(3, 8), r(-1, 2), r(1, 8)]);
        assert_eq!(sn_rational(3).unwrap(), vec![r(10, 32), r(-15, 32), r(6, 32), r(-1, 32)]);
        assert_eq!(
            sn_rational(4).unwrap(),
            vec![r(35, 128), r(-56, 128), r(28, 128), r(-8, 128), r(1, 128)]
        );
    }

    #[test]
    fn exact_rationals_sum_to_zero_and_one() {
        for n in 1..=EXACT_ORDER_LIMIT {
            let w = sn_rational(n).unwrap();
            let s: Ratio<i128> = w.iter().copied().sum();
            let a: Ratio<i128> = w.iter().map(|x| if *x < r(0, 1) { -*x } else { *x }).sum();
            assert_eq!(s, r(0, 1));
            assert_eq!(a, r(1, 1));
        }
    }

    #[test]
    fn recipe_matches_closed_form() {
        for n in 1..=20usize {
            let raw = expand_stencil(&StencilSpec::forward_difference(n - 1));
            let scaled = raw.scaled(2.0 / 4f64.powi(n as i32));
            let sn = sn_coefficients(n).unwrap();
            assert_eq!(scaled.len(), sn.len());
            for (a, b) in scaled.w.iter().zip(&sn.w) {
                assert!((a - b).abs() <= 1e-13, "n = {n}");
            }
        }
    }

    #[test]
    fn float_path_agrees_with_exact_at_boundary() {
        for n in [20usize, 25, 30] {
            let exact = sn_coefficients(n).unwrap();
            let float = sn_float(n);
            for (a, b) in exact.w.iter().zip(&float) {
                assert!((a - b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn large_order_normalisation() {
        for n in [31usize, 100, 1000, 10_000] {
            let w = sn_coefficients(n).unwrap();
            assert!((w.abs_sum() - 1.0).abs() <= 1e-12, "n = {n}");
            assert!(w.sum().abs() <= 1e-12);
            for (k, x) in w.w.iter().enumerate() {
                assert!(*x == 0.0 || (x.signum() > 0.0) == (k % 2 == 0));
            }
        }
        assert!(sn_coefficients(MAX_SN_ORDER + 1).is_err());
        assert!(sn_coefficients(0).is_err());
    }

    #[test]
    fn gaussian_limit() {
        let g = gaussian_sn_coefficients(400).unwrap();
        assert!((g.w[0] - 0.028209).abs() < 1e-6);
        let n = 1000;
        let g = gaussian_sn_coefficients(n).unwrap();
        let e = sn_coefficients(n).unwrap();
        let worst = g.w.iter().zip(&e.w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst <= 5e-4);
        let nf = n as f64;
        assert!(g.w[n].abs() <= (-nf).exp() * 2.0 / (std::f64::consts::PI * nf).sqrt());
    }

    #[test]
    fn gaussian_error_rate_shrinks() {
        let scaled: Vec<f64> = [100usize, 400, 1600]
            .iter()
            .map(|&n| {
                let g = gaussian_sn_coefficients(n).unwrap();
                let e = sn_coefficients(n).unwrap();
                n as f64 * g.w.iter().zip(&e.w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
            })
            .collect();
        assert!(scaled[0] > scaled[1] && scaled[1] > scaled[2], "{scaled:?}");
    }
}
