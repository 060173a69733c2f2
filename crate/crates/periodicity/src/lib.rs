pub mod bounds;
pub mod cli;
pub mod detection;
pub mod linalg;
pub mod series;
pub mod sim;
pub mod thermo;

pub use series::{binomial_sigma, RecurrenceSeries, SeriesError, SeriesSource};
