//! Sum sides: the triple sums `H_l`, the generalised sums `h_{c,d,N}`, the
//! double sums `J`, and the single-sum forms they reduce to.

mod forms;
mod h;
mod j;
mod products;

pub use forms::*;
pub use h::{h_cd, HSeries, HcdTable, RAW_COEFF_LIMIT};
pub use j::{j_coeff, j5, j8, JFamily, JTable};
pub use products::*;

use crate::error::Result;
use crate::series::LaurentSeries;

/// `1 / prod_{i<n} (1 + c q^(base + step i))` for `n = 0..=n_max`.
pub(crate) fn recip_table(
    c: i64,
    base: i64,
    step: i64,
    n_max: usize,
    prec: i64,
) -> Result<Vec<LaurentSeries>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut cur = LaurentSeries::one(prec);
    out.push(cur.clone());
    for i in 0..n_max as i64 {
        cur = cur.div_binomial(c, base + step * i)?;
        out.push(cur.clone());
    }
    Ok(out)
}
