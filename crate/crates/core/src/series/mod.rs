//! Exact truncated Laurent series in `q` and power series in `x` over them.

mod bivariate;
mod laurent;

pub use bivariate::BivariateSeries;
pub use laurent::LaurentSeries;
