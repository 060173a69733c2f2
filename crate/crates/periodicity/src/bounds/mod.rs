//! Periodicity inequalities: coefficient generation, truncation and the three-cycle bound.

mod erfc;
mod optimized;
mod sn;
mod spectral;
mod stencil;
mod truncation;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use erfc::{erf, erfc};
pub use optimized::{
    optimized_three_cycle, simplified_gradient, simplified_three_cycle, three_cycle_form, BoundShape,
    OptimizedBoundResult,
};
pub use sn::{gaussian_sn_coefficients, sn_coefficients, sn_rational, sn_table, EXACT_ORDER_LIMIT, MAX_SN_ORDER};
pub use spectral::{spectral_oracle, SpectralForm};
pub use stencil::{evaluate_inequality, expand_stencil, InequalityCoefficients, StencilSpec};
pub use truncation::{truncated_sn, truncation_error_bound, truncation_plan, xi_for_tolerance, TruncationPlan};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("invalid stencil: {0}")]
    Stencil(String),
    #[error("order n = {n} outside 1..={max}")]
    Order { n: usize, max: usize },
    #[error("series has {got} points, need {need}")]
    SeriesTooShort { need: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
