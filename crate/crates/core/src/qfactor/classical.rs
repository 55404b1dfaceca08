//! The classical summation and transformation formulas, specialised so that
//! every free parameter is a power of `q`.

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

use super::phi::{euler_exp_sum, phi, QParam};
use super::product::{FactorProduct, PochhammerSpec};

/// Exponents `alpha` used for the specialisations `a = q^alpha`.
pub const GRID_EXPONENTS: [i64; 6] = [-1, 0, 1, 2, 3, 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classical {
    /// `1phi0[a; q, x] = (ax;q)_inf / (x;q)_inf`
    QBinomial,
    /// `1phi0[0; q, x] = 1 / (x;q)_inf`
    Euler1,
    /// `sum (-1)^n q^(n(n-1)/2) x^n / (q;q)_n = (x;q)_inf`
    Euler2,
    /// Heine's first transformation of a 2phi1.
    Heine,
    /// The q-Kummer (Bailey-Daum) summation.
    BaileyDaum,
    /// Hall's transformation of a balanced-argument 3phi2.
    Hall,
}

impl Classical {
    pub const ALL: [Classical; 6] = [
        Classical::QBinomial,
        Classical::Euler1,
        Classical::Euler2,
        Classical::Heine,
        Classical::BaileyDaum,
        Classical::Hall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Classical::QBinomial => "qbinomial",
            Classical::Euler1 => "euler1",
            Classical::Euler2 => "euler2",
            Classical::Heine => "heine",
            Classical::BaileyDaum => "bailey-daum",
            Classical::Hall => "hall",
        }
    }

    /// Parameter names, in the order the exponent vector is read.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Classical::QBinomial => &["a", "x"],
            Classical::Euler1 | Classical::Euler2 => &["x"],
            Classical::Heine => &["a", "b", "c", "x"],
            Classical::BaileyDaum => &["a", "b"],
            Classical::Hall => &["a", "b", "c", "d", "e"],
        }
    }

    fn check_arity(self, p: &[i64]) -> Result<()> {
        if p.len() != self.parameters().len() {
            return Err(Error::BadParameter(format!(
                "{} takes {} exponents, got {}",
                self.name(),
                self.parameters().len(),
                p.len()
            )));
        }
        Ok(())
    }

    pub fn lhs(self, p: &[i64], prec: i64) -> Result<LaurentSeries> {
        self.check_arity(p)?;
        let q = QParam::q;
        match self {
            Classical::QBinomial => phi(&[q(p[0])], &[], 1, 1, p[1], prec),
            Classical::Euler1 => phi(&[QParam::Zero], &[], 1, 1, p[0], prec),
            Classical::Euler2 => euler_exp_sum(1, p[0], prec),
            Classical::Heine => phi(&[q(p[0]), q(p[1])], &[q(p[2])], 1, 1, p[3], prec),
            Classical::BaileyDaum => {
                let (a, b) = (p[0], p[1]);
                phi(&[q(a), q(b)], &[q(a + 1 - b)], 1, -1, 1 - b, prec)
            }
            Classical::Hall => {
                let (a, b, c, d, e) = (p[0], p[1], p[2], p[3], p[4]);
                phi(&[q(a), q(b), q(c)], &[q(d), q(e)], 1, 1, d + e - a - b - c, prec)
            }
        }
    }

    pub fn rhs(self, p: &[i64], prec: i64) -> Result<LaurentSeries> {
        self.check_arity(p)?;
        let inf = PochhammerSpec::infinite;
        let q = QParam::q;
        match self {
            Classical::QBinomial => FactorProduct::new()
                .mul(inf(p[0] + p[1], 1))
                .div(inf(p[1], 1))
                .eval(prec),
            Classical::Euler1 => FactorProduct::new().div(inf(p[0], 1)).eval(prec),
            Classical::Euler2 => FactorProduct::new().mul(inf(p[0], 1)).eval(prec),
            Classical::Heine => {
                let (a, b, c, x) = (p[0], p[1], p[2], p[3]);
                let series = phi(&[q(c - b), q(x)], &[q(a + x)], 1, 1, b, prec_with_slack(prec, b))?;
                let pre = FactorProduct::new()
                    .mul_all([inf(b, 1), inf(a + x, 1)])
                    .div_all([inf(c, 1), inf(x, 1)]);
                product_times(pre, &series, prec)
            }
            Classical::BaileyDaum => {
                let (a, b) = (p[0], p[1]);
                FactorProduct::new()
                    .mul_all([inf(a + 1, 2), inf(a + 2 - 2 * b, 2), inf(2, 2)])
                    .div_all([inf(1 - b, 1).negated(), inf(a + 1 - b, 1), inf(1, 1)])
                    .eval(prec)
            }
            Classical::Hall => {
                let (a, b, c, d, e) = (p[0], p[1], p[2], p[3], p[4]);
                let (deab, debc, deabc) = (d + e - a - b, d + e - b - c, d + e - a - b - c);
                let series = phi(
                    &[q(d - b), q(e - b), q(deabc)],
                    &[q(deab), q(debc)],
                    1,
                    1,
                    b,
                    prec_with_slack(prec, b),
                )?;
                let pre = FactorProduct::new()
                    .mul_all([inf(b, 1), inf(deab, 1), inf(debc, 1)])
                    .div_all([inf(d, 1), inf(e, 1), inf(deabc, 1)]);
                product_times(pre, &series, prec)
            }
        }
    }

    /// Base exponents of the step-1 infinite products dividing the product
    /// side.
    fn product_denominators(self, p: &[i64]) -> Vec<i64> {
        match self {
            Classical::QBinomial | Classical::Euler1 => vec![p[p.len() - 1]],
            Classical::Euler2 => vec![],
            Classical::Heine => vec![p[2], p[3]],
            Classical::BaileyDaum => vec![p[0] + 1 - p[1], 1],
            Classical::Hall => vec![p[3], p[4], p[3] + p[4] - p[0] - p[1] - p[2]],
        }
    }

    /// Whether both sides are well defined at the specialisation: no
    /// divergent argument, no vanishing denominator factor. A pole of the
    /// product side is rejected even when a zero elsewhere would formally
    /// cancel it, since the specialised value is then a limit.
    pub fn is_admissible(self, p: &[i64]) -> bool {
        self.check_arity(p).is_ok()
            && self.product_denominators(p).iter().all(|&e| e >= 1)
            && self.lhs(p, 1).is_ok()
            && self.rhs(p, 1).is_ok()
    }

    /// All admissible exponent vectors over `GRID_EXPONENTS`, in
    /// lexicographic order.
    pub fn grid(self) -> Vec<Vec<i64>> {
        let arity = self.parameters().len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; arity];
        loop {
            let p: Vec<i64> = idx.iter().map(|&i| GRID_EXPONENTS[i]).collect();
            if self.is_admissible(&p) {
                out.push(p);
            }
            // odometer
            let mut pos = arity;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < GRID_EXPONENTS.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// The series factor on a right-hand side may be multiplied by a product
/// of negative valuation; compute it a little further out.
fn prec_with_slack(prec: i64, arg_exp: i64) -> i64 {
    prec + 2 * arg_exp.unsigned_abs() as i64 + 8
}

fn product_times(pre: FactorProduct, series: &LaurentSeries, prec: i64) -> Result<LaurentSeries> {
    let s_off = series.valuation().unwrap_or(0);
    let pre = pre.eval(prec - s_off.min(0))?;
    let out = &pre * series;
    if out.prec() < prec {
        return Err(Error::InsufficientPrecision {
            wanted: prec,
            got: out.prec(),
        });
    }
    Ok(out.truncate(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_second_at_q() {
        // sum (-1)^n q^(n(n+1)/2)/(q;q)_n = (q;q)_inf = 1 - q - q^2 + q^5 + ...
        let lhs = Classical::Euler2.lhs(&[1], 6).unwrap();
        assert_eq!(lhs, LaurentSeries::from_terms(&[(1, 0), (-1, 1), (-1, 2), (1, 5)], 6));
        assert_eq!(lhs, Classical::Euler2.rhs(&[1], 6).unwrap());
    }

    #[test]
    fn heine_all_ones_is_degenerate() {
        // the upper parameter 1 kills every term past n = 0 ...
        assert_eq!(Classical::Heine.lhs(&[0, 0, 0, 0], 10).unwrap(), LaurentSeries::one(10));
        // ... and formally cancelling (1;q)_inf/(1;q)_inf gives 1 on the
        // other side too, but such a point is a limit and stays off the grid
        assert_eq!(Classical::Heine.rhs(&[0, 0, 0, 0], 10).unwrap(), LaurentSeries::one(10));
        assert!(!Classical::Heine.is_admissible(&[0, 0, 0, 0]));
        // here the formal cancellation is wrong: the sum side is not zero
        let p = [-1, -1, 5, -1];
        assert!(Classical::Heine.rhs(&p, 10).unwrap().is_zero());
        assert!(!Classical::Heine.lhs(&p, 10).unwrap().is_zero());
        assert!(!Classical::Heine.is_admissible(&p));
    }

    #[test]
    fn grids_are_nonempty_and_pass_at_low_order() {
        for id in Classical::ALL {
            let grid = id.grid();
            assert!(!grid.is_empty(), "{}", id.name());
            for p in grid.iter().step_by(7) {
                let l = id.lhs(p, 25).unwrap();
                let r = id.rhs(p, 25).unwrap();
                assert_eq!(l, r, "{} at {:?}", id.name(), p);
            }
        }
    }

    #[test]
    fn wrong_arity_rejected() {
        assert!(matches!(Classical::Hall.lhs(&[1, 2], 5), Err(Error::BadParameter(_))));
    }
}
