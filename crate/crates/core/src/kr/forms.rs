//! Single-sum and mixed forms that the triple and double sums reduce to.

use crate::error::{Error, Result};
use crate::qfactor::{phi, sum_terms, FactorProduct, PochhammerSpec, QParam};
use crate::series::{BivariateSeries, LaurentSeries};

use super::{recip_table, HSeries, JFamily};

fn fin(base: i64, step: i64, n: u64) -> PochhammerSpec {
    PochhammerSpec::finite(base, step, n)
}

fn inf(base: i64, step: i64) -> PochhammerSpec {
    PochhammerSpec::infinite(base, step)
}

/// `fp * sum`, where `sum(p)` produces a series known below `p`. Both
/// factors are computed far enough out for the product to be known below
/// `prec`.
pub(crate) fn product_times(
    fp: &FactorProduct,
    prec: i64,
    sum: impl FnOnce(i64) -> Result<LaurentSeries>,
) -> Result<LaurentSeries> {
    let Some(pv) = fp.valuation()? else {
        return Ok(LaurentSeries::zero(prec));
    };
    let s = sum(prec - pv.min(0))?;
    let sv = s.valuation().unwrap_or(0);
    let p = fp.eval(prec - sv.min(0))?;
    let out = &p * &s;
    if out.prec() < prec {
        return Err(Error::InsufficientPrecision {
            wanted: prec,
            got: out.prec(),
        });
    }
    Ok(out.truncate(prec))
}

/// The value at `x = 1` of a solution of the second-order q-difference
/// equation with shifts 2, 4, 6 and parameters `a`, `b`:
/// `(q^(2b+a-2); q^4)_inf sum_n (q^(3b-6); q^6)_n q^(n^2 + (a+1)n)
///   / ((q^(b-2), q^2; q^2)_n (q^(2b+a-2); q^4)_n)`.
///
/// The infinite product is folded into each term as `(q^(2b+a-2+4n); q^4)_inf`,
/// which stays defined when `2b + a - 2 <= 0`.
pub fn prop1_rhs(a: i64, b: i64, prec: i64) -> Result<LaurentSeries> {
    let c = 2 * b + a - 2;
    let burn_in = 2 * (a.unsigned_abs() + b.unsigned_abs()) + 4;
    sum_terms(prec, burn_in, |n| {
        let ni = n as i64;
        FactorProduct::new()
            .mul(inf(c + 4 * ni, 4))
            .mul(fin(3 * b - 6, 6, n))
            .q_power(ni * ni + (a + 1) * ni)
            .div(fin(b - 2, 2, n))
            .div(fin(2, 2, n))
    })
}

/// Closed form at `a = 0`: `(q^(3b); q^12)_inf / (q^2, q^b; q^4)_inf`.
pub fn prop1_closed(b: i64, prec: i64) -> Result<LaurentSeries> {
    super::prop1_closed_product(b).eval(prec)
}

/// `sum_n (q^(3b-6); q^6)_n q^(n^2+n) / ((q^(b-2), q^2; q^2)_n (q^(2b-2); q^4)_n)`.
pub fn remark_lhs(b: i64, prec: i64) -> Result<LaurentSeries> {
    sum_terms(prec, 2 * b.unsigned_abs() + 4, |n| {
        let ni = n as i64;
        FactorProduct::new()
            .mul(fin(3 * b - 6, 6, n))
            .q_power(ni * ni + ni)
            .div(fin(b - 2, 2, n))
            .div(fin(2, 2, n))
            .div(fin(2 * b - 2, 4, n))
    })
}

fn check_prop2_a(a: i64) -> Result<()> {
    if a <= -6 && a % 3 == 0 {
        return Err(Error::BadParameter(format!(
            "a = {a}: a must not be a multiple of 3 when a <= -6"
        )));
    }
    Ok(())
}

/// `(q^u1, q^u2; q^6)_n (-1)^n q^(5n) / (q^l1, q^l2; q^6)_n`.
fn prop2_coeff(u: (i64, i64), l: (i64, i64), n: u64) -> FactorProduct {
    FactorProduct::new()
        .scalar(if n.is_multiple_of(2) { 1 } else { -1 })
        .q_power(5 * n as i64)
        .mul_all([fin(u.0, 6, n), fin(u.1, 6, n)])
        .div_all([fin(l.0, 6, n), fin(l.1, 6, n)])
}

fn prop2_params(a: i64, b: i64, c: i64) -> [((i64, i64), (i64, i64)); 2] {
    [
        ((b - 5, c - 5), (6, a + 6)),
        ((b - 2, c - 2), (9, a + 9)),
    ]
}

/// The solution of the q-difference equation with shifts 3, 6 and
/// parameters `a`, `b`, `c`, with `A(0) = alpha0` and `A'(0) = alpha1`,
/// as a series in `x` up to `x^xcap`.
pub fn prop2_rhs(
    a: i64,
    b: i64,
    c: i64,
    alpha0: i64,
    alpha1: i64,
    xcap: u32,
    qprec: i64,
) -> Result<BivariateSeries> {
    check_prop2_a(a)?;
    let slack = 8 + (a.abs() + b.abs() + c.abs());
    let work = qprec + slack;
    let half = xcap as usize / 2;
    // (-x^2 q^5; q^6)_inf = sum_m q^(3m^2 + 2m) x^(2m) / (q^6; q^6)_m
    let r6 = recip_table(-1, 6, 6, half, work)?;
    let euler: Vec<LaurentSeries> = (0..=half as i64)
        .map(|m| r6[m as usize].shift(3 * m * m + 2 * m))
        .collect();
    let mut comps = Vec::new();
    for (parity, (alpha, (u, l))) in [alpha0, alpha1].into_iter().zip(prop2_params(a, b, c)).enumerate() {
        if alpha == 0 {
            continue;
        }
        let coeffs: Vec<LaurentSeries> = (0..=half as u64)
            .map(|n| prop2_coeff(u, l, n).eval(work))
            .collect::<Result<_>>()?;
        for big_n in 0..=half {
            let deg = 2 * big_n + parity;
            if deg > xcap as usize {
                break;
            }
            let mut acc = LaurentSeries::zero(work);
            for m in 0..=big_n {
                acc = &acc + &(&euler[m] * &coeffs[big_n - m]);
            }
            comps.push((deg as u32, acc.scale_i64(alpha)));
        }
    }
    Ok(BivariateSeries::from_components(comps, xcap, qprec))
}

/// `prop2_rhs` at `x = 1`:
/// `alpha0 (-q^5;q^6)_inf 2phi1[q^(b-5), q^(c-5); q^(a+6); q^6, -q^5]
///  + alpha1 (-q^5;q^6)_inf 2phi1[q^(b-2), q^(c-2); q^(a+9); q^6, -q^5]`.
pub fn prop2_at_one(a: i64, b: i64, c: i64, alpha0: i64, alpha1: i64, prec: i64) -> Result<LaurentSeries> {
    check_prop2_a(a)?;
    let pre = FactorProduct::new().mul(inf(5, 6).negated());
    let mut acc = LaurentSeries::zero(prec);
    for (alpha, (u, l)) in [alpha0, alpha1].into_iter().zip(prop2_params(a, b, c)) {
        if alpha == 0 {
            continue;
        }
        let burn_in = 4 + (a.unsigned_abs() + b.unsigned_abs() + c.unsigned_abs()) / 6;
        let series = product_times(&pre, prec, |p| sum_terms(p, burn_in, |n| prop2_coeff(u, l, n)))?;
        acc = &acc + &series.scale_i64(alpha);
    }
    Ok(acc)
}

/// `(-q;q)_inf (-q^5;q^6)_inf 2phi1[q^-1, q; q^4; q^6, -q^5]`.
pub fn h10_kummer_lhs(prec: i64) -> Result<LaurentSeries> {
    let pre = FactorProduct::new().mul_all([inf(1, 1).negated(), inf(5, 6).negated()]);
    product_times(&pre, prec, |p| {
        phi(&[QParam::q(-1), QParam::q(1)], &[QParam::q(4)], 6, -1, 5, p)
    })
}

/// `(-q^2;q)_inf (-q^5;q^6)_inf 2phi1[q^3, q; q^8; q^6, -q^5]`.
pub fn h11_kummer_lhs(prec: i64) -> Result<LaurentSeries> {
    let pre = FactorProduct::new().mul_all([inf(2, 1).negated(), inf(5, 6).negated()]);
    product_times(&pre, prec, |p| {
        phi(&[QParam::q(3), QParam::q(1)], &[QParam::q(8)], 6, -1, 5, p)
    })
}

/// `(-q^p; q)_inf J(1)` with `p` the family's base exponent.
pub fn j_with_prefactor(family: JFamily, prec: i64) -> Result<LaurentSeries> {
    let pre = FactorProduct::new().mul(inf(family.p(), 1).negated());
    product_times(&pre, prec, |p| family.at_one(p))
}

/// The four single-sum reductions of the asymmetric companions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    H4,
    H5,
    H8,
    H9,
}

impl Reduction {
    pub const ALL: [Reduction; 4] = [Reduction::H4, Reduction::H5, Reduction::H8, Reduction::H9];

    pub fn ell(self) -> u8 {
        match self {
            Reduction::H4 => 4,
            Reduction::H5 => 5,
            Reduction::H8 => 8,
            Reduction::H9 => 9,
        }
    }
}

/// The single-sum expression for `H_l(1)`.
pub fn thm2_rhs(which: Reduction, prec: i64) -> Result<LaurentSeries> {
    match which {
        Reduction::H4 => {
            let pre = FactorProduct::new().mul(inf(3, 4));
            product_times(&pre, prec, |p| {
                sum_terms(p, 3, |n| {
                    let ni = n as i64;
                    FactorProduct::new()
                        .mul(fin(3, 6, n))
                        .q_power(ni * ni)
                        .div_all([fin(1, 2, n), fin(2, 2, n), fin(3, 4, n)])
                })
            })
        }
        Reduction::H9 => {
            let pre = FactorProduct::new().mul(inf(5, 4));
            product_times(&pre, prec, |p| {
                sum_terms(p, 3, |n| {
                    let ni = n as i64;
                    FactorProduct::new()
                        .mul(fin(3, 6, n))
                        .q_power(ni * ni + 2 * ni)
                        .div_all([fin(1, 2, n), fin(2, 2, n), fin(5, 4, n)])
                })
            })
        }
        Reduction::H5 => {
            let lead = FactorProduct::new().mul(inf(-1, 4)).eval(prec)?;
            let pre = FactorProduct::new().mul(inf(3, 4));
            let rest = product_times(&pre, prec, |p| {
                sum_terms(p, 3, |n| {
                    let ni = n as i64;
                    FactorProduct::new()
                        .poly(&[(1, 0), (1, 2 * ni - 4), (1, 2 * ni - 1)])
                        .mul(fin(-3, 6, n))
                        .q_power(ni * ni + 4 * ni + 3)
                        .div_binomial(-1, 2 * ni + 2)
                        .div_all([fin(-1, 2, n), fin(2, 2, n), fin(3, 4, n)])
                })
            })?;
            Ok(&lead + &rest)
        }
        Reduction::H8 => {
            let lead = FactorProduct::new().mul(inf(1, 4)).eval(prec)?;
            let pre = FactorProduct::new().mul(inf(5, 4));
            let rest = product_times(&pre, prec, |p| {
                sum_terms(p, 3, |n| {
                    let ni = n as i64;
                    FactorProduct::new()
                        .poly(&[(1, 0), (1, 2 * ni), (1, 2 * ni + 1)])
                        .mul(fin(3, 6, n))
                        .q_power(ni * ni + 2 * ni + 1)
                        .div_binomial(-1, 2 * ni + 2)
                        .div_all([fin(1, 2, n), fin(2, 2, n), fin(5, 4, n)])
                })
            })?;
            Ok(&lead + &rest)
        }
    }
}

/// `sum_r (-1)^r (-1;q^6)_r q^(r^2+2r) / ((-1;q)_{2r} (-q^2, q^2; q^2)_r)`.
///
/// The leading factors `2` of `(-1;q^6)_r` and `(-1;q)_{2r}` cancel, so for
/// `r >= 1` the ratio is taken as `(-q^6;q^6)_{r-1} / (-q;q)_{2r-1}`.
pub fn h1_final_lhs(prec: i64) -> Result<LaurentSeries> {
    sum_terms(prec, 2, |r| {
        let ri = r as i64;
        let (num, den) = if r == 0 {
            (fin(6, 6, 0), fin(1, 1, 0))
        } else {
            (fin(6, 6, r - 1), fin(1, 1, 2 * r - 1))
        };
        FactorProduct::new()
            .scalar(if r % 2 == 0 { 1 } else { -1 })
            .q_power(ri * ri + 2 * ri)
            .mul(num.negated())
            .div(den.negated())
            .div_all([fin(2, 2, r).negated(), fin(2, 2, r)])
    })
}

/// `sum_r (-1;q^6)_r (-q;q^2)_r q^(r^2+2r) / ((-1;q^2)_r (q^2;q^2)_{2r})`,
/// with `(-1;q^6)_r / (-1;q^2)_r = (-q^6;q^6)_{r-1} / (-q^2;q^2)_{r-1}`.
pub fn ms_112_lhs(prec: i64) -> Result<LaurentSeries> {
    sum_terms(prec, 2, |r| {
        let ri = r as i64;
        let k = r.saturating_sub(1);
        FactorProduct::new()
            .q_power(ri * ri + 2 * ri)
            .mul(fin(6, 6, k).negated())
            .mul(fin(1, 2, r).negated())
            .div(fin(2, 2, k).negated())
            .div(fin(2, 2, 2 * r))
    })
}

/// `sum_n (-q^2;q^2)_n (q^3;q^6)_n q^(n^2+3n) / ((q;q^2)_n (q^4;q^4)_n (q^6;q^4)_n)`.
pub fn ms_130_lhs(prec: i64) -> Result<LaurentSeries> {
    sum_terms(prec, 2, |n| {
        let ni = n as i64;
        FactorProduct::new()
            .q_power(ni * ni + 3 * ni)
            .mul_all([fin(2, 2, n).negated(), fin(3, 6, n)])
            .div_all([fin(1, 2, n), fin(4, 4, n), fin(6, 4, n)])
    })
}

/// The same sum written as
/// `(1 - q^2) sum_n (-q^2;q^2)_n (q^3;q^6)_n q^(n^2+3n) / ((q;q^2)_n (q^2;q^2)_{2n+1})`.
pub fn ms_130_alt_lhs(prec: i64) -> Result<LaurentSeries> {
    let s = sum_terms(prec, 2, |n| {
        let ni = n as i64;
        FactorProduct::new()
            .q_power(ni * ni + 3 * ni)
            .mul_all([fin(2, 2, n).negated(), fin(3, 6, n)])
            .div_all([fin(1, 2, n), fin(2, 2, 2 * n + 1)])
    })?;
    Ok(s.mul_binomial(-1, 2))
}

/// The triple sum
/// `sum (1 + q^(2N+2) - q^(3N+5)) q^(N(N-1)/2 + i + j^2 + 2j + 2k)
///   / ((q;q)_i (q^2;q^2)_j (q^3;q^3)_k)`, `N = i + 2j + 3k`.
pub fn sec5_lhs(prec: i64) -> Result<LaurentSeries> {
    let h = HSeries::raw_half(1, 2, 2)?;
    let cap = h.x_bound(prec, 0);
    let series = h.series(cap, prec)?;
    let mut acc = LaurentSeries::zero(prec);
    for (n, comp) in series.components() {
        let n = n as i64;
        let weight = LaurentSeries::from_terms(&[(1, 0), (1, 2 * n + 2), (-1, 3 * n + 5)], prec);
        acc = &acc + &(comp * &weight);
    }
    Ok(acc)
}

/// `(-q;q)_inf J_{12,0}(1) + q^2 (-q^3;q)_inf J_{12,2}(1) - q^5 (-q^4;q)_inf J_{12,3}(1)`.
pub fn sec5_via_j(prec: i64) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::zero(prec);
    for (a, sign, shift) in [(0u8, 1, 0), (2, 1, 2), (3, -1, 5)] {
        let t = j_with_prefactor(JFamily::J12(a), prec - shift)?.shift(shift);
        acc = &acc + &t.scale_i64(sign);
    }
    Ok(acc)
}

/// The triple sum with linear form `i - 3j - 3k`, at `x = 1`.
pub fn sec6_at_one(prec: i64) -> Result<LaurentSeries> {
    HSeries::raw(1, -3, -3)?.at_one(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kr;

    #[test]
    fn prop1_zero_a_matches_closed_form() {
        for b in [1, 3] {
            assert_eq!(prop1_rhs(0, b, 60).unwrap(), prop1_closed(b, 60).unwrap(), "b={b}");
        }
    }

    #[test]
    fn prop1_feeds_h3() {
        let h3 = HSeries::Catalog(3).at_one(50).unwrap();
        assert_eq!(prop1_rhs(2, 3, 50).unwrap(), h3);
    }

    #[test]
    fn remark_literal_at_three() {
        assert_eq!(remark_lhs(3, 60).unwrap(), kr::remark_product(3).eval(60).unwrap());
    }

    #[test]
    fn prop2_degenerate_and_bad_a() {
        let z = prop2_rhs(-2, 4, 6, 0, 0, 6, 30).unwrap();
        assert!(z.components().next().is_none());
        assert!(matches!(prop2_rhs(-6, 4, 6, 1, 0, 6, 30), Err(Error::BadParameter(_))));
        assert!(prop2_at_one(-7, 4, 6, 1, 0, 30).is_ok());
    }

    #[test]
    fn prop2_reproduces_j10() {
        let prec = 60;
        let j = JFamily::J10.series(10, prec).unwrap();
        let a = prop2_rhs(-2, 4, 6, 1, 0, 10, prec).unwrap();
        assert_eq!(a.first_mismatch(&j), None);
        assert_eq!(prop2_at_one(-2, 4, 6, 1, 0, prec).unwrap(), JFamily::J10.at_one(prec).unwrap());
    }

    #[test]
    fn thm2_h5_constant_structure() {
        // n = 0: (q^-1;q^4)_inf + (q^3;q^4)_inf q^3 (1 + q^-4 + q^-1) / (1 - q^2)
        let t = thm2_rhs(Reduction::H5, 3).unwrap();
        assert_eq!(t, HSeries::Catalog(5).at_one(3).unwrap());
        // the two q^-1 terms cancel
        let lead = FactorProduct::new().mul(inf(-1, 4)).eval(3).unwrap();
        assert_eq!(lead.offset(), -1);
        assert_eq!(t.offset(), 0);
    }

    #[test]
    fn thm2_low_order() {
        for r in Reduction::ALL {
            let h = HSeries::Catalog(r.ell()).at_one(40).unwrap();
            assert_eq!(thm2_rhs(r, 40).unwrap(), h, "{r:?}");
        }
    }

    #[test]
    fn sec5_routes_agree() {
        assert_eq!(sec5_lhs(30).unwrap(), sec5_via_j(30).unwrap());
    }

    #[test]
    fn sec6_against_h9() {
        let prec = 20;
        let s = sec6_at_one(prec).unwrap();
        let h9 = HSeries::Catalog(9).at_one(prec + 1).unwrap();
        let expect = &h9 * &LaurentSeries::from_terms(&[(1, -1), (1, 0), (1, 1)], prec + 1);
        assert_eq!(s, expect.truncate(prec));
    }

    #[test]
    fn mclaughlin_sills_forms() {
        let prec = 50;
        assert_eq!(h1_final_lhs(prec).unwrap(), kr::h1_final_product().eval(prec).unwrap());
        assert_eq!(ms_112_lhs(prec).unwrap(), kr::ms_112_product().eval(prec).unwrap());
        let p = kr::ms_130_product().eval(prec).unwrap();
        assert_eq!(ms_130_lhs(prec).unwrap(), p);
        assert_eq!(ms_130_alt_lhs(prec).unwrap(), p);
    }
}
