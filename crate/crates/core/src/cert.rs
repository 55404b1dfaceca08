//! Telescoping certificates for the single-sum recurrences of the `J`
//! coefficients: for each family an explicit `g(k, M)` with
//! `L_M f(k, .) = g(k+1, M) - g(k, M)`.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kr::{JFamily, JTable};
use crate::qfactor::{exact_poly, FactorProduct, PochhammerSpec};
use crate::report::{compare, Mismatch};
use crate::series::LaurentSeries;

/// A `(f, g)` pair with the recurrence operator they certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    family: JFamily,
}

pub const DEFAULT_K_MAX: i64 = 30;
pub const DEFAULT_M_MAX: i64 = 30;
pub const DEFAULT_QPREC: i64 = 300;

impl Certificate {
    pub const ALL: [Certificate; 4] = [
        Certificate { family: JFamily::J10 },
        Certificate { family: JFamily::J11 },
        Certificate { family: JFamily::J12(0) },
        Certificate { family: JFamily::J12(2) },
    ];

    pub fn new(family: JFamily) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.family == family)
            .ok_or_else(|| Error::BadParameter(format!("no certificate for {}", family.label())))
    }

    pub fn family(&self) -> JFamily {
        self.family
    }

    /// `(s, u, w)`: `f` carries `(-q;q)_{2M+k+s}`, `g` divides by
    /// `(1+q^(2M+k+u))(1+q^(2M+k+u-1))(1+q^(2M+k+u-2))` and carries `q^w`.
    fn shape(&self) -> (i64, i64, i64) {
        match self.family {
            JFamily::J10 => (0, 3, 6),
            JFamily::J11 => (1, 4, 7),
            JFamily::J12(0) => (0, 3, 10),
            _ => (2, 5, 6),
        }
    }

    /// `(alpha, beta, gamma, delta, epsilon)` of the operator
    /// `(1-q^(6M+alpha))(1-q^(6M+beta)) S^2 - (1+q^gamma-q^(6M+delta)-q^(6M+epsilon)) S + q^gamma`.
    fn operator(&self) -> (i64, i64, i64, i64, i64) {
        match self.family {
            JFamily::J10 => (10, 12, 2, 7, 11),
            JFamily::J11 => (12, 14, 2, 9, 13),
            JFamily::J12(0) => (10, 12, 4, 9, 11),
            _ => (12, 16, 2, 11, 13),
        }
    }

    /// The polynomial factor of `g`.
    fn p(&self, k: i64, m: i64) -> Vec<(i64, i64)> {
        let (m2, m4, m6, m8) = (2 * m, 4 * m, 6 * m, 8 * m);
        match self.family {
            JFamily::J10 => vec![
                (1, m4 + 2),
                (-1, m4 + 3 * k - 1),
                (-1, m4 + 3 * k),
                (-1, m6 + 4 * k + 2),
                (1, m6 + k + 3),
                (1, m6 + k + 4),
                (1, m8 + 2 * k + 6),
                (-1, m8 + 2 * k + 8),
            ],
            JFamily::J11 => vec![
                (1, m4 + 1),
                (-1, m4 + 3 * k),
                (-1, m4 + 3 * k + 2),
                (-1, m6 + 4 * k + 4),
                (1, m6 + k + 4),
                (1, m6 + k + 5),
                (1, m8 + 2 * k + 8),
                (-1, m8 + 2 * k + 10),
            ],
            JFamily::J12(0) => vec![
                (1, m2 + 2 * k - 6),
                (-1, m2 + 2 * k - 4),
                (1, m4),
                (-1, m4 + 3 * k - 2),
                (-1, m4 + 3 * k - 1),
                (1, m6 + k + 2),
                (1, m6 + k + 3),
                (-1, m6 + 4 * k),
            ],
            _ => vec![
                (1, m4 + 2),
                (-1, m4 + 3 * k + 3),
                (-1, m4 + 3 * k + 4),
                (1, m6 + k + 6),
                (1, m6 + k + 7),
                (-1, m6 + 4 * k + 8),
            ],
        }
    }

    fn f_exponent(&self, k: i64) -> i64 {
        (3 * k * k + self.family.t() * k) / 2
    }

    /// `f(k, M) = q^((3k^2+tk)/2) / ((-q;q)_{2M+k+s} (q^2;q^2)_{M-k} (q^3;q^3)_k)`,
    /// zero for `k > M` or `k < 0`.
    pub fn f_term(&self, k: i64, m: i64) -> FactorProduct {
        if k < 0 || k > m {
            return FactorProduct::new().scalar(0);
        }
        let (s, _, _) = self.shape();
        FactorProduct::new()
            .q_power(self.f_exponent(k))
            .div(PochhammerSpec::finite(1, 1, (2 * m + k + s) as u64).negated())
            .div(PochhammerSpec::finite(2, 2, (m - k) as u64))
            .div(PochhammerSpec::finite(3, 3, k as u64))
    }

    /// `g(k, M)` with the pole of `1/D` at `k = M+1, M+2` cancelled against
    /// `(q^2;q^2)_{M-k}`: `1/((q^2;q^2)_{M-k} D) = -q^(-4k) / (q^2;q^2)_{M-k+2}`.
    pub fn g_cert(&self, k: i64, m: i64) -> FactorProduct {
        if k <= 0 || m - k + 2 < 0 {
            return FactorProduct::new().scalar(0);
        }
        let (s, u, w) = self.shape();
        let b = 2 * m + k;
        FactorProduct::new()
            .scalar(-1)
            .q_power(w + self.f_exponent(k) - 4 * k)
            .poly(&self.p(k, m))
            .mul_binomial(-1, 3 * k)
            .div(PochhammerSpec::finite(1, 1, (b + s) as u64).negated())
            .div(PochhammerSpec::finite(2, 2, (m - k + 2) as u64))
            .div(PochhammerSpec::finite(3, 3, k as u64))
            .div_binomial(1, b + u)
            .div_binomial(1, b + u - 1)
            .div_binomial(1, b + u - 2)
    }

    /// `g(k, M)` exactly as written, dividing by `D = (q^2k - q^(2M+2))(q^(2M+4) - q^2k)`.
    /// Only defined for `k <= M`.
    pub fn g_literal(&self, k: i64, m: i64, prec: i64) -> Result<LaurentSeries> {
        if k > m {
            return Err(Error::NonUnitLeading {
                exp: 2 * k,
                coeff: "0".into(),
            });
        }
        if k <= 0 {
            return Ok(LaurentSeries::zero(prec));
        }
        let (_, u, w) = self.shape();
        let b = 2 * m + k;
        let rest = FactorProduct::new()
            .q_power(w)
            .poly(&self.p(k, m))
            .mul_binomial(-1, 3 * k)
            .div_binomial(1, b + u)
            .div_binomial(1, b + u - 1)
            .div_binomial(1, b + u - 2);
        // 1/D has valuation -4k
        let work = prec + 8 * k + 8;
        let d = LaurentSeries::from_terms(
            &[(1, 2 * m + 2 * k + 4), (-1, 4 * k), (-1, 4 * m + 6), (1, 2 * m + 2 * k + 2)],
            work,
        );
        let f = self.f_term(k, m).eval(work)?;
        Ok((&(&rest.eval(work)? * &d.inv()?) * &f).truncate(prec))
    }

    /// `(lead, mid, tail)` of the operator at `M`, as exact polynomials.
    fn operator_polys(&self, m: i64) -> [LaurentSeries; 3] {
        let (a, b, g, d, e) = self.operator();
        let m6 = 6 * m;
        [
            exact_poly(&[(1, 0), (-1, m6 + a), (-1, m6 + b), (1, 2 * m6 + a + b)]),
            exact_poly(&[(1, 0), (1, g), (-1, m6 + d), (-1, m6 + e)]),
            exact_poly(&[(1, g)]),
        ]
    }

    /// The factor with `j_M = prefactor * sum_k f(k, M)`.
    pub fn prefactor(&self) -> FactorProduct {
        match self.family {
            JFamily::J10 => FactorProduct::new(),
            JFamily::J11 => FactorProduct::new().mul_binomial(1, 1),
            JFamily::J12(a) => FactorProduct::new().mul(PochhammerSpec::finite(1, 1, a as u64).negated()),
        }
    }
}

/// Tables of `f` and `g` over a rectangle, shared by the checks.
struct Grid {
    f: Vec<Vec<LaurentSeries>>,
    g: Vec<Vec<LaurentSeries>>,
    prec: i64,
}

impl Grid {
    fn new(c: &Certificate, k_max: i64, m_max: i64, prec: i64) -> Result<Self> {
        let f = (0..=m_max + 2)
            .into_par_iter()
            .map(|m| (0..=k_max).map(|k| c.f_term(k, m).eval(prec)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let g = (0..=m_max)
            .into_par_iter()
            .map(|m| (0..=k_max + 1).map(|k| c.g_cert(k, m).eval(prec)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { f, g, prec })
    }

    fn f(&self, k: i64, m: i64) -> &LaurentSeries {
        &self.f[m as usize][k as usize]
    }

    fn g(&self, k: i64, m: i64) -> &LaurentSeries {
        &self.g[m as usize][k as usize]
    }
}

fn telescoped(c: &Certificate, grid: &Grid, k: i64, m: i64) -> LaurentSeries {
    let [lead, mid, tail] = c.operator_polys(m);
    let lhs = &(&lead * grid.f(k, m + 2)) - &(&mid * grid.f(k, m + 1));
    (&lhs + &(&tail * grid.f(k, m))).truncate(grid.prec)
}

/// `L_M f(k, .) = g(k+1, M) - g(k, M)` for `0 <= k <= k_max`, `0 <= M <= m_max`.
pub fn check_telescoping(c: &Certificate, k_max: i64, m_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    let grid = Grid::new(c, k_max, m_max, qprec)?;
    let cells: Vec<(i64, i64)> = (0..=m_max).flat_map(|m| (0..=k_max).map(move |k| (k, m))).collect();
    let found = cells
        .par_iter()
        .map(|&(k, m)| {
            let lhs = telescoped(c, &grid, k, m);
            let rhs = grid.g(k + 1, m) - grid.g(k, m);
            Ok(compare(&lhs, &rhs, qprec)?.map(|x| ((m, k), x.with_context(format!("k={k},M={m}")))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().min_by_key(|(pos, _)| *pos).map(|(_, x)| x))
}

/// The regularised certificate agrees with the literal one wherever the
/// latter is defined (`k <= M`).
pub fn check_regularisation(c: &Certificate, m_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    for m in 0..=m_max {
        for k in 0..=m {
            let lit = c.g_literal(k, m, qprec)?;
            let reg = c.g_cert(k, m).eval(qprec)?;
            if let Some(x) = compare(&lit, &reg, qprec)? {
                return Ok(Some(x.with_context(format!("k={k},M={m}"))));
            }
        }
    }
    Ok(None)
}

/// Summing over `k`: the sum of `f` reproduces `j_M`, the certificate
/// vanishes at both ends, and the telescoped sum collapses to zero.
pub fn check_summed_recurrence(c: &Certificate, m_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    let k_max = m_max + 3;
    let grid = Grid::new(c, k_max, m_max, qprec)?;
    let pref = c.prefactor().eval(qprec)?;
    let j = JTable::new(c.family, m_max + 2, qprec)?;
    let zero = LaurentSeries::zero(qprec);
    for m in 0..=m_max + 2 {
        let s = (0..=m).fold(LaurentSeries::zero(qprec), |acc, k| {
            &acc + &c.f_term(k, m).eval(qprec).expect("f evaluates")
        });
        if let Some(x) = compare(&(&pref * &s).truncate(qprec), &j.get(m), qprec)? {
            return Ok(Some(x.with_context(format!("sum f, M={m}"))));
        }
    }
    for m in 0..=m_max {
        for (k, what) in [(0, "g(0,M)"), (m + 3, "g(M+3,M)")] {
            if let Some(x) = compare(grid.g(k, m), &zero, qprec)? {
                return Ok(Some(x.with_context(format!("{what}, M={m}"))));
            }
        }
        let total = (0..=m + 2).fold(LaurentSeries::zero(qprec), |acc, k| &acc + &telescoped(c, &grid, k, m));
        if let Some(x) = compare(&total, &zero, qprec)? {
            return Ok(Some(x.with_context(format!("sum over k, M={m}"))));
        }
    }
    Ok(None)
}

/// Valuations of `g(k, M)` over `ks` (`None` for an identically zero term).
pub fn tail_valuations(c: &Certificate, m: i64, ks: RangeInclusive<i64>) -> Result<Vec<(i64, Option<i64>)>> {
    ks.map(|k| Ok((k, c.g_cert(k, m).valuation()?))).collect()
}

/// Valuations of `g(k, M)` are strictly increasing over `ks` (a zero term
/// counts as infinite).
pub fn check_valuation_growth(c: &Certificate, m: i64, ks: RangeInclusive<i64>) -> Result<Option<Mismatch>> {
    let vals = tail_valuations(c, m, ks)?;
    let key = |v: Option<i64>| v.unwrap_or(i64::MAX);
    for w in vals.windows(2) {
        let ((_, a), (k, b)) = (w[0], w[1]);
        if a.is_some() && key(b) <= key(a) {
            return Ok(Some(Mismatch {
                exp: key(b),
                lhs: format!("{b:?}"),
                rhs: format!("> {a:?}"),
                at: Some(format!("valuation at k={k},M={m}")),
            }));
        }
    }
    Ok(None)
}

/// The certificate dies off in `k`: valuations grow on the checked range
/// and the last term is invisible below `qprec`.
pub fn check_vanishing_tail(c: &Certificate, m: i64, ks: RangeInclusive<i64>, qprec: i64) -> Result<Option<Mismatch>> {
    let last = *ks.end();
    if let Some(x) = check_valuation_growth(c, m, ks)? {
        return Ok(Some(x));
    }
    match c.g_cert(last, m).valuation()? {
        Some(v) if v < qprec => Ok(Some(Mismatch {
            exp: v,
            lhs: v.to_string(),
            rhs: format!(">= {qprec}"),
            at: Some(format!("valuation at k={last},M={m}")),
        })),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_vanishes_at_k0() {
        for c in Certificate::ALL {
            for m in 0..6 {
                assert_eq!(c.g_cert(0, m).valuation().unwrap(), None);
            }
        }
    }

    #[test]
    fn f_vanishes_past_m() {
        let c = Certificate::new(JFamily::J10).unwrap();
        assert_eq!(c.f_term(4, 3).valuation().unwrap(), None);
        assert!(c.f_term(3, 3).valuation().unwrap().is_some());
    }

    #[test]
    fn j10_cell_1_0() {
        let c = Certificate::new(JFamily::J10).unwrap();
        assert_eq!(check_telescoping(&c, 1, 0, 80).unwrap(), None);
    }

    #[test]
    fn small_grids_pass() {
        for c in Certificate::ALL {
            assert_eq!(check_telescoping(&c, 6, 6, 60).unwrap(), None, "{:?}", c);
            assert_eq!(check_summed_recurrence(&c, 5, 60).unwrap(), None, "{:?}", c);
            assert_eq!(check_regularisation(&c, 5, 60).unwrap(), None, "{:?}", c);
        }
    }

    #[test]
    fn telescoping_is_not_vacuous() {
        // both sides are genuinely nonzero at small cells, including the
        // regularised pole cells k = M+1, M+2
        let c = Certificate::new(JFamily::J10).unwrap();
        for (k, m) in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 1)] {
            assert!(c.g_cert(k, m).valuation().unwrap().is_some(), "k={k},M={m}");
        }
        let grid = Grid::new(&c, 3, 1, 40).unwrap();
        assert!(!telescoped(&c, &grid, 1, 0).is_zero());
    }

    #[test]
    fn tail_grows_then_vanishes() {
        let c = Certificate::new(JFamily::J10).unwrap();
        let v = tail_valuations(&c, 0, 0..=4).unwrap();
        assert_eq!(v[0].1, None);
        assert!(v[1].1.is_some() && v[2].1.is_some());
        assert_eq!(v[3].1, None);
        assert_eq!(check_vanishing_tail(&c, 0, 1..=20, 300).unwrap(), None);
        assert_eq!(check_valuation_growth(&c, 12, 1..=12).unwrap(), None);
    }

    #[test]
    fn literal_certificate_undefined_at_pole() {
        let c = Certificate::new(JFamily::J11).unwrap();
        assert!(matches!(c.g_literal(3, 2, 40), Err(Error::NonUnitLeading { .. })));
    }

    #[test]
    fn no_j12_3_certificate() {
        assert!(Certificate::new(JFamily::J12(3)).is_err());
    }
}
