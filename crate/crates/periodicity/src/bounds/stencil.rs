use super::BoundsError;
use crate::series::RecurrenceSeries;

/// r_0 = Σ_j α_j ρ_j compared against its image M cycles later.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilSpec {
    alpha: Vec<f64>,
    shift: usize,
}

impl StencilSpec {
    pub fn new(alpha: Vec<f64>, shift: usize) -> Result<Self, BoundsError> {
        if alpha.is_empty() || alpha.iter().all(|&a| a == 0.0) {
            return Err(BoundsError::Stencil("alpha must have a nonzero entry".into()));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(BoundsError::Stencil("alpha must be finite".into()));
        }
        if shift == 0 {
            return Err(BoundsError::Stencil("shift M must be at least 1".into()));
        }
        Ok(Self { alpha, shift })
    }

    /// (1 − A₊)^order: alternating binomial weights, shift 1.
    pub fn forward_difference(order: usize) -> Self {
        let mut alpha = vec![1.0];
        for _ in 0..order {
            let mut next = vec![0.0; alpha.len() + 1];
            for (j, &a) in alpha.iter().enumerate() {
                next[j] += a;
                next[j + 1] -= a;
            }
            alpha = next;
        }
        Self { alpha, shift: 1 }
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    /// N, the highest stencil index.
    pub fn order(&self) -> usize {
        self.alpha.len() - 1
    }
}

/// Weights of Σ_k w_k R_k ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCoefficients {
    pub w: Vec<f64>,
    /// true when scaled so that Σ|w_k| = 1.
    pub normalized: bool,
}

impl InequalityCoefficients {
    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.w.iter().sum()
    }

    pub fn abs_sum(&self) -> f64 {
        self.w.iter().map(|w| w.abs()).sum()
    }

    pub fn normalize(&self) -> Self {
        let s = self.abs_sum();
        Self { w: self.w.iter().map(|w| w / s).collect(), normalized: true }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { w: self.w.iter().map(|w| w * factor).collect(), normalized: false }
    }
}

/// Raw weights from expanding tr[r_0(r_0 − r_M)] ≥ 0 with tr[ρ_m ρ_{m+k}] → R_k:
/// w_k = Σ_{i,j} α_i α_j ([|i−j| = k] − [|j+M−i| = k]), k = 0..N+M.
pub fn expand_stencil(s: &StencilSpec) -> InequalityCoefficients {
    let n = s.order();
    let m = s.shift as isize;
    let mut w = vec![0.0; n + s.shift + 1];
    for (i, &ai) in s.alpha.iter().enumerate() {
        for (j, &aj) in s.alpha.iter().enumerate() {
            let p = ai * aj;
            w[(i as isize - j as isize).unsigned_abs()] += p;
            w[(j as isize + m - i as isize).unsigned_abs()] -= p;
        }
    }
    InequalityCoefficients { w, normalized: false }
}

/// Σ_k w_k R_k
pub fn evaluate_inequality(w: &InequalityCoefficients, r: &RecurrenceSeries) -> Result<f64, BoundsError> {
    if r.len() < w.len() {
        return Err(BoundsError::SeriesTooShort { need: w.len(), got: r.len() });
    }
    Ok(dot(&w.w, r.values()))
}

pub(crate) fn dot(w: &[f64], r: &[f64]) -> f64 {
    w.iter().zip(r).map(|(a, b)| a * b).sum()
}
