//! Linear recurrences in `N` and q-difference equations in `x`, checked by
//! substituting independently computed series.

mod fe;
mod hrec;
mod jrec;

pub use fe::{FeTarget, FunctionalEquation};
pub use hrec::{
    check_basic_relations, check_h_recurrence, check_shift_closure, check_uniqueness, HFamily,
    CATALOG_PARAMETERS,
};
pub use jrec::{check_as_printed, check_reduced, ReducedRecurrence};

use crate::error::Result;
use crate::qfactor::exact_poly;
use crate::report::{compare, Mismatch};
use crate::series::LaurentSeries;

/// Defaults for recurrence sweeps.
pub const DEFAULT_N_MAX: i64 = 40;
pub const DEFAULT_QPREC: i64 = 260;

/// A Laurent polynomial as `(coefficient, exponent)` pairs.
pub type Poly = Vec<(i64, i64)>;

/// Lowest exponent of a polynomial (0 if empty).
pub(crate) fn low(p: &[(i64, i64)]) -> i64 {
    p.iter().map(|&(_, e)| e).min().unwrap_or(0)
}

/// Checks `coeffs(N)[0] s_N = sum_{l >= 1} coeffs(N)[l] s_{N-l}` for each
/// `N` in `ns`, comparing below `order`.
pub(crate) fn check_linear(
    ns: impl IntoIterator<Item = i64>,
    order: i64,
    label: &str,
    coeffs: impl Fn(i64) -> Vec<Poly>,
    seq: impl Fn(i64) -> LaurentSeries,
) -> Result<Option<Mismatch>> {
    for n in ns {
        let cs = coeffs(n);
        let lhs = &exact_poly(&cs[0]) * &seq(n);
        let mut rhs = LaurentSeries::zero(lhs.prec());
        for (lag, c) in cs.iter().enumerate().skip(1) {
            if c.is_empty() {
                continue;
            }
            rhs = &rhs + &(&exact_poly(c) * &seq(n - lag as i64));
        }
        if let Some(m) = compare(&lhs, &rhs, order)? {
            return Ok(Some(m.with_context(format!("{label}={n}"))));
        }
    }
    Ok(None)
}
