use super::BoundsError;

/// Curvature class of L(x, y) over the stencil parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundShape {
    /// Positive-definite Hessian: a unique minimum.
    Convex,
    /// Negative-definite Hessian; only possible when R1 > R0, itself a violation.
    Concave,
    /// Saddle; D < 0 means R0 < R2 or S_2 < 0.
    Hyperbolic,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizedBoundResult {
    pub x_min: Option<f64>,
    pub y_min: Option<f64>,
    /// min L(x, y); −∞ when unbounded below, NaN when degenerate.
    pub value: f64,
    /// R0² − R0(R1+R3) − (R1−R2)² + R1R3
    pub simplified_value: f64,
    /// Hessian determinant ∂²ₓL·∂²ᵧL − (∂ₓ∂ᵧL)² = (R0−R2)(3R0−4R1+R2).
    pub discriminant: f64,
    pub shape: BoundShape,
    /// True when R0 ≥ R2 and S_2 ≥ 0, the regime where the simplified form is a detector.
    pub simplified_applicable: bool,
}

impl OptimizedBoundResult {
    /// Whether the three-cycle data are inconsistent with unitary periodic driving.
    /// `margin` is how far below zero a value must fall.
    pub fn violated(&self, margin: f64) -> bool {
        match self.shape {
            BoundShape::Hyperbolic | BoundShape::Concave => true,
            BoundShape::Convex => self.value < -margin,
            BoundShape::Degenerate => false,
        }
    }
}

/// L(x, y) from the stencil (1, x, y) with shift 1.
pub fn three_cycle_form(r: [f64; 4], x: f64, y: f64) -> f64 {
    let [r0, r1, r2, r3] = r;
    -y * r3 + (-x + 2.0 * y - x * y) * r2 + (-1.0 + 2.0 * x - y - (x - y) * (x - y)) * r1
        + (1.0 - x + x * x + y * y - x * y) * r0
}

struct Quadratic {
    cx: f64,
    cy: f64,
    lxx: f64,
    lyy: f64,
    lxy: f64,
}

fn quadratic(r: [f64; 4]) -> Quadratic {
    let [r0, r1, r2, r3] = r;
    Quadratic {
        cx: -r0 + 2.0 * r1 - r2,
        cy: -r1 + 2.0 * r2 - r3,
        lxx: 2.0 * (r0 - r1),
        lyy: 2.0 * (r0 - r1),
        lxy: -(r0 - 2.0 * r1 + r2),
    }
}

pub fn simplified_three_cycle(r: [f64; 4]) -> f64 {
    let [r0, r1, r2, r3] = r;
    r0 * r0 - r0 * (r1 + r3) - (r1 - r2) * (r1 - r2) + r1 * r3
}

/// Gradient of the simplified value in (R0, R1, R2, R3).
pub fn simplified_gradient(r: [f64; 4]) -> [f64; 4] {
    let [r0, r1, r2, r3] = r;
    [2.0 * r0 - r1 - r3, -r0 - 2.0 * (r1 - r2) + r3, 2.0 * (r1 - r2), -r0 + r1]
}

pub fn optimized_three_cycle(r0: f64, r1: f64, r2: f64, r3: f64) -> Result<OptimizedBoundResult, BoundsError> {
    let r = [r0, r1, r2, r3];
    for (k, &v) in r.iter().enumerate() {
        if !(-1e-9..=1.0 + 1e-9).contains(&v) {
            return Err(BoundsError::InvalidInput(format!("R{k} = {v} outside [0, 1]")));
        }
    }
    let q = quadratic(r);
    let disc = (r0 - r2) * (3.0 * r0 - 4.0 * r1 + r2);
    let tol = 1e-12 * r0.powi(2).max(1.0);
    let s2 = (3.0 * r0 - 4.0 * r1 + r2) / 8.0;
    let simplified_value = simplified_three_cycle(r);
    let simplified_applicable = r0 - r2 >= 0.0 && s2 >= 0.0;

    let mut out = OptimizedBoundResult {
        x_min: None,
        y_min: None,
        value: f64::NAN,
        simplified_value,
        discriminant: disc,
        shape: BoundShape::Degenerate,
        simplified_applicable,
    };
    if disc < -tol {
        out.shape = BoundShape::Hyperbolic;
        out.value = f64::NEG_INFINITY;
    } else if disc > tol && q.lxx < 0.0 {
        out.shape = BoundShape::Concave;
        out.value = f64::NEG_INFINITY;
    } else if disc > tol {
        // ∂ₓL = cx + lxx x + lxy y = 0, ∂ᵧL = cy + lxy x + lyy y = 0
        let det = q.lxx * q.lyy - q.lxy * q.lxy;
        if det.abs() <= tol {
            return Ok(out);
        }
        let x = (-q.cx * q.lyy + q.cy * q.lxy) / det;
        let y = (-q.cy * q.lxx + q.cx * q.lxy) / det;
        out.shape = BoundShape::Convex;
        out.x_min = Some(x);
        out.y_min = Some(y);
        out.value = three_cycle_form(r, x, y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{expand_stencil, StencilSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn form_matches_recipe() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let r: [f64; 4] = std::array::from_fn(|_| rng.random());
            let (x, y) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let w = expand_stencil(&StencilSpec::new(vec![1.0, x, y], 1).unwrap());
            let direct: f64 = w.w.iter().zip(r).map(|(a, b)| a * b).sum();
            assert!((direct - three_cycle_form(r, x, y)).abs() < 1e-12);
        }
    }

    #[test]
    fn s2_is_a_member() {
        let r = [1.0, 0.8, 0.5, 0.3];
        let s2 = (3.0 * r[0] - 4.0 * r[1] + r[2]) / 8.0;
        assert!((three_cycle_form(r, -1.0, 0.0) - 8.0 * s2).abs() < 1e-15);
    }

    #[test]
    fn identity_saturates() {
        let o = optimized_three_cycle(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(o.simplified_value, 0.0);
        assert_eq!(o.shape, BoundShape::Degenerate);
        assert!(!o.violated(0.0));
    }

    #[test]
    fn convex_minimum_dominates_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut convex = 0;
        for _ in 0..500 {
            let r: [f64; 4] = std::array::from_fn(|_| rng.random());
            let o = optimized_three_cycle(r[0], r[1], r[2], r[3]).unwrap();
            if o.shape != BoundShape::Convex {
                continue;
            }
            convex += 1;
            for _ in 0..100 {
                let (x, y) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
                assert!(o.value <= three_cycle_form(r, x, y) + 1e-9);
            }
        }
        assert!(convex > 50);
    }

    #[test]
    fn minimum_equals_closed_form_ratio() {
        let r = [0.9, 0.7, 0.45, 0.35];
        let o = optimized_three_cycle(r[0], r[1], r[2], r[3]).unwrap();
        let pref = (2.0 * r[0] - r[1] - 2.0 * r[2] + r[3]) / o.discriminant;
        assert!((o.value - pref * o.simplified_value).abs() < 1e-13);
    }

    #[test]
    fn saddle_when_s2_negative() {
        let o = optimized_three_cycle(1.0, 0.9, 0.2, 0.5).unwrap();
        assert_eq!(o.shape, BoundShape::Hyperbolic);
        assert!(o.violated(0.0));
    }

    #[test]
    fn concave_when_r1_exceeds_r0() {
        let o = optimized_three_cycle(0.5, 0.6, 0.7, 0.4).unwrap();
        assert_eq!(o.shape, BoundShape::Concave);
        assert!(o.violated(0.0));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(optimized_three_cycle(1.2, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let r = [0.93, 0.71, 0.52, 0.44];
        let g = simplified_gradient(r);
        for i in 0..4 {
            let h = 1e-6;
            let mut a = r;
            let mut b = r;
            a[i] += h;
            b[i] -= h;
            let fd = (simplified_three_cycle(a) - simplified_three_cycle(b)) / (2.0 * h);
            assert!((fd - g[i]).abs() < 1e-8);
        }
    }
}
