use crate::error::{Error, Result};
use crate::series::{BivariateSeries, LaurentSeries};

use super::recip_table;
use super::HSeries;

/// The double sums
/// `J(x) = sum_{j,k} q^((2j+3k)(2j+3k-1)/2 + j^2 + lj j + lk k) x^(2j+2k)
///         / ((-q^p;q)_{2j+3k} (q^2;q^2)_j (q^3;q^3)_k)`.
///
/// Collecting `M = j + k` gives `J(x) = sum_M j_M q^(3M^2 + cM) x^(2M)` with
/// `j_M = sum_{k<=M} q^((3k^2 + tk)/2) / ((-q^p;q)_{2M+k} (q^2;q^2)_{M-k} (q^3;q^3)_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JFamily {
    J10,
    J11,
    J12(u8),
}

impl JFamily {
    pub fn j12(a: u8) -> Result<Self> {
        if matches!(a, 0 | 2 | 3) {
            Ok(JFamily::J12(a))
        } else {
            Err(Error::BadParameter(format!("J12,{a} is not one of J12,0 J12,2 J12,3")))
        }
    }

    pub fn label(&self) -> String {
        match self {
            JFamily::J10 => "J10".into(),
            JFamily::J11 => "J11".into(),
            JFamily::J12(a) => format!("J12,{a}"),
        }
    }

    /// `(p, lj, lk)`.
    fn params(&self) -> (i64, i64, i64) {
        match *self {
            JFamily::J10 => (1, 2, 4),
            JFamily::J11 => (2, 4, 5),
            JFamily::J12(a) => {
                let a = a as i64;
                (a + 1, 2 * a + 2, 3 * a + 2)
            }
        }
    }

    /// Base exponent `p` of the `(-q^p;q)` factor.
    pub fn p(&self) -> i64 {
        self.params().0
    }

    /// `c` in `q^(3M^2 + cM)`.
    pub fn c(&self) -> i64 {
        self.params().1 - 1
    }

    /// `t` in `q^((3k^2 + tk)/2)`.
    pub fn t(&self) -> i64 {
        let (_, lj, lk) = self.params();
        2 * (lk - lj) - 1
    }

    /// Number of `M` with `3M^2 + cM < qprec`.
    pub fn m_bound(&self, qprec: i64) -> i64 {
        let c = self.c();
        let mut m = 0;
        while 3 * m * m + c * m < qprec {
            m += 1;
        }
        m
    }

    pub fn table(&self, m_max: i64, qprec: i64) -> Result<JTable> {
        JTable::new(*self, m_max, qprec)
    }

    /// `J(x)` up to `x^xcap` (odd components vanish).
    pub fn series(&self, xcap: u32, qprec: i64) -> Result<BivariateSeries> {
        let m_max = xcap as i64 / 2;
        let tab = self.table(m_max, qprec)?;
        let c = self.c();
        Ok(BivariateSeries::from_components(
            (0..=m_max).map(|m| ((2 * m) as u32, tab.get(m).shift(3 * m * m + c * m))),
            xcap,
            qprec,
        ))
    }

    /// `J(1)`, known below `qprec`.
    pub fn at_one(&self, qprec: i64) -> Result<LaurentSeries> {
        let m_max = self.m_bound(qprec);
        let xcap = (2 * m_max.max(0)) as u32;
        Ok(self.series(xcap, qprec)?.eval_x1())
    }
}

/// `j_M` for `M = 0..=m_max`.
#[derive(Clone, Debug)]
pub struct JTable {
    family: JFamily,
    qprec: i64,
    values: Vec<LaurentSeries>,
}

impl JTable {
    pub fn new(family: JFamily, m_max: i64, qprec: i64) -> Result<Self> {
        let m_max = m_max.max(0);
        let (p, t) = (family.p(), family.t());
        let rp = recip_table(1, p, 1, 3 * m_max as usize, qprec)?;
        let r2 = recip_table(-1, 2, 2, m_max as usize, qprec)?;
        let r3 = recip_table(-1, 3, 3, m_max as usize, qprec)?;
        let values = (0..=m_max)
            .map(|m| {
                let mut acc = LaurentSeries::zero(qprec);
                for k in 0..=m {
                    let e = (3 * k * k + t * k) / 2;
                    if e >= qprec {
                        break;
                    }
                    let rel = qprec - e;
                    let term = &(&rp[(2 * m + k) as usize].truncate(rel)
                        * &r2[(m - k) as usize].truncate(rel))
                        * &r3[k as usize].truncate(rel);
                    acc = &acc + &term.shift(e);
                }
                acc
            })
            .collect();
        Ok(Self {
            family,
            qprec,
            values,
        })
    }

    pub fn family(&self) -> JFamily {
        self.family
    }

    pub fn m_max(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    /// `j_M`, exactly zero for negative `M`. Panics beyond `m_max`.
    pub fn get(&self, m: i64) -> LaurentSeries {
        if m < 0 {
            return LaurentSeries::zero(self.qprec);
        }
        self.values[m as usize].clone()
    }
}

/// A single `j_M` known below `qprec`.
pub fn j_coeff(family: JFamily, m: i64, qprec: i64) -> Result<LaurentSeries> {
    if m < 0 {
        return Ok(LaurentSeries::zero(qprec));
    }
    Ok(JTable::new(family, m, qprec)?.get(m))
}

/// `H(x) - x q^s H(x q^2)`.
fn shifted_difference(h: HSeries, s: i64, xcap: u32, qprec: i64) -> Result<BivariateSeries> {
    let base = h.series(xcap, qprec)?;
    let tail = base
        .substitute(2)
        .mul_poly(&BivariateSeries::polynomial(&[(1, 1, s)], xcap, qprec));
    Ok(base.sub(&tail))
}

/// `J_5(x) = H_5(x) - x q^3 H_5(x q^2)`.
pub fn j5(xcap: u32, qprec: i64) -> Result<BivariateSeries> {
    shifted_difference(HSeries::Catalog(5), 3, xcap, qprec)
}

/// `J_8(x) = H_8(x) - x q H_8(x q^2)`.
pub fn j8(xcap: u32, qprec: i64) -> Result<BivariateSeries> {
    shifted_difference(HSeries::Catalog(8), 1, xcap, qprec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfactor::{FactorProduct, PochhammerSpec};

    #[test]
    fn derived_constants() {
        assert_eq!((JFamily::J10.c(), JFamily::J10.t()), (1, 3));
        assert_eq!((JFamily::J11.c(), JFamily::J11.t()), (3, 1));
        assert_eq!((JFamily::J12(0).c(), JFamily::J12(0).t()), (1, -1));
        assert_eq!((JFamily::J12(2).c(), JFamily::J12(2).t()), (5, 3));
    }

    #[test]
    fn boundary_values() {
        for f in [JFamily::J10, JFamily::J11, JFamily::J12(0), JFamily::J12(2), JFamily::J12(3)] {
            assert_eq!(j_coeff(f, 0, 30).unwrap(), LaurentSeries::one(30));
            assert!(j_coeff(f, -1, 30).unwrap().is_zero());
            assert_eq!(f.series(0, 30).unwrap().component(0).unwrap(), LaurentSeries::one(30));
        }
    }

    #[test]
    fn j10_first_coefficient() {
        let prec = 4;
        let k0 = FactorProduct::new()
            .div(PochhammerSpec::finite(1, 1, 2).negated())
            .div(PochhammerSpec::finite(2, 2, 1));
        let k1 = FactorProduct::new()
            .q_power(3)
            .div(PochhammerSpec::finite(1, 1, 3).negated())
            .div(PochhammerSpec::finite(3, 3, 1));
        let expect = &k0.eval(prec).unwrap() + &k1.eval(prec).unwrap();
        assert_eq!(j_coeff(JFamily::J10, 1, prec).unwrap(), expect);
    }

    #[test]
    fn double_sum_matches_collected_form() {
        // direct enumeration over (j, k) for a few x-degrees
        let prec = 40;
        for f in [JFamily::J10, JFamily::J11, JFamily::J12(2)] {
            let (p, lj, lk) = f.params();
            let s = f.series(6, prec).unwrap();
            for m in 0..=3i64 {
                let mut acc = LaurentSeries::zero(prec);
                for k in 0..=m {
                    let j = m - k;
                    let n = 2 * j + 3 * k;
                    let e = n * (n - 1) / 2 + j * j + lj * j + lk * k;
                    let t = FactorProduct::new()
                        .q_power(e)
                        .div(PochhammerSpec::finite(p, 1, n as u64).negated())
                        .div(PochhammerSpec::finite(2, 2, j as u64))
                        .div(PochhammerSpec::finite(3, 3, k as u64));
                    acc = &acc + &t.eval(prec).unwrap();
                }
                assert_eq!(s.component(2 * m as u32).unwrap(), acc, "{} M={m}", f.label());
                assert!(s.component(2 * m as u32 + 1).is_none_or(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn j5_low_components() {
        let prec = 4;
        let j = j5(1, prec).unwrap();
        assert_eq!(j.component(0).unwrap(), LaurentSeries::one(prec));
        let h1 = HSeries::Catalog(5).series(1, prec).unwrap().component(1).unwrap();
        assert_eq!(j.component(1).unwrap(), &h1 - &LaurentSeries::monomial(1, 3, prec));
    }

    #[test]
    fn h8_splits_into_j8_and_h9() {
        let prec = 60;
        let h8 = HSeries::Catalog(8).at_one(prec).unwrap();
        let h9 = HSeries::Catalog(9).at_one(prec).unwrap();
        let cap = HSeries::Catalog(8).x_bound(prec, 0);
        let j8_1 = j8(cap, prec).unwrap().eval_x1();
        assert_eq!(h8, &j8_1 + &h9.shift(1).truncate(prec));
    }
}
