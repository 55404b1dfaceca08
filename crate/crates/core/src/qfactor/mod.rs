//! q-Pochhammer symbols, finite/infinite products and basic hypergeometric series.

mod classical;
mod phi;
mod product;

pub use classical::{Classical, GRID_EXPONENTS};
pub use phi::{euler_exp_sum, phi, QParam};
pub use product::{
    exact_poly, poch, poch_recip_guarded, product_side, sum_terms, FactorProduct, Length,
    PochhammerSpec, EXACT_PREC,
};
