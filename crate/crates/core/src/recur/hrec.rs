use crate::error::{Error, Result};
use crate::kr::HcdTable;
use crate::qfactor::exact_poly;
use crate::report::{compare, Mismatch};
use crate::series::LaurentSeries;

use super::{check_linear, low, Poly};

/// The four-term recurrence valid for every `(c, d)`, and the three-term
/// families valid on lines of parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HFamily {
    Long,
    /// `d = 0`
    D0,
    /// `d = -1`
    DM1,
    /// `c = d + 3/2`
    CD32,
}

/// The `(2c, d)` pairs behind the catalog series, with the family each uses.
pub const CATALOG_PARAMETERS: [(HFamily, i64, i64); 7] = [
    (HFamily::CD32, 5, 1),
    (HFamily::D0, -1, 0),
    (HFamily::D0, 2, 0),
    (HFamily::D0, 1, 0),
    (HFamily::D0, 0, 0),
    (HFamily::DM1, -4, -1),
    (HFamily::DM1, -1, -1),
];

impl HFamily {
    pub const ALL: [HFamily; 4] = [HFamily::Long, HFamily::D0, HFamily::DM1, HFamily::CD32];

    pub fn name(self) -> &'static str {
        match self {
            HFamily::Long => "LONG",
            HFamily::D0 => "D0",
            HFamily::DM1 => "DM1",
            HFamily::CD32 => "CD32",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    pub fn validate(self, two_c: i64, d: i64) -> Result<()> {
        let ok = match self {
            HFamily::Long => true,
            HFamily::D0 => d == 0,
            HFamily::DM1 => d == -1,
            HFamily::CD32 => two_c == 2 * d + 3,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParameterMismatch(format!(
                "{} does not apply at 2c={two_c}, d={d}",
                self.name()
            )))
        }
    }

    /// Coefficients at `N`: entry 0 multiplies `h_N`, entry `l` multiplies
    /// `h_{N-l}`.
    pub fn coefficients(self, two_c: i64, d: i64, n: i64) -> Vec<Poly> {
        let lhs = vec![(1, 0), (-1, 2 * n)];
        match self {
            HFamily::Long => vec![
                lhs,
                vec![(1, 0), (1, 1)],
                vec![(1, two_c - 1), (-1, 1)],
                vec![(-1, two_c - 1), (-1, two_c), (-1, 2 * n - 3 + 3 * d)],
                vec![(1, two_c)],
            ],
            HFamily::D0 => vec![
                lhs,
                vec![(1, 0), (1, 2 * n - 1)],
                vec![(1, two_c - 1), (1, 2 * n - 2)],
                vec![(-1, two_c - 1)],
            ],
            HFamily::DM1 => vec![
                lhs,
                vec![(1, 1), (1, 2 * n - 2)],
                vec![(1, two_c - 1), (1, 2 * n - 4)],
                vec![(-1, two_c)],
            ],
            HFamily::CD32 => vec![
                lhs,
                vec![(1, 0), (1, 1), (-1, d + 1), (1, 2 * n - 1 + d)],
                vec![(-1, 1), (1, d + 1), (1, d + 2), (1, 2 * n - 2 + 2 * d)],
                vec![(-1, d + 2)],
            ],
        }
    }

    /// `a` in the trailing coefficient `-q^a` of a three-term family.
    fn trailing_exponent(self, two_c: i64, d: i64) -> Option<i64> {
        match self {
            HFamily::Long => None,
            HFamily::D0 => Some(two_c - 1),
            HFamily::DM1 => Some(two_c),
            HFamily::CD32 => Some(d + 2),
        }
    }
}

/// Extra precision so that negative coefficient exponents never push a
/// product below the comparison order.
fn slack(two_c: i64, d: i64) -> i64 {
    8 + two_c.abs() + 3 * d.abs()
}

/// Checks the family recurrence on `h_{c,d,N}` for `0 <= N <= n_max`.
pub fn check_h_recurrence(
    family: HFamily,
    two_c: i64,
    d: i64,
    n_max: i64,
    qprec: i64,
) -> Result<Option<Mismatch>> {
    family.validate(two_c, d)?;
    let tab = HcdTable::new(two_c, d, n_max, qprec + slack(two_c, d))?;
    check_linear(0..=n_max, qprec, "N", |n| family.coefficients(two_c, d, n), |n| tab.get(n))
}

/// Iterating a three-term family once more must reproduce the long
/// recurrence coefficient by coefficient. Checked as an exact polynomial
/// identity for `1 <= N <= n_max`, then on the actual `h` values.
pub fn check_shift_closure(two_c: i64, d: i64, family: HFamily, n_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    family.validate(two_c, d)?;
    let a = family
        .trailing_exponent(two_c, d)
        .ok_or_else(|| Error::ParameterMismatch("LONG has no shorter form".into()))?;
    let p = |t: &[(i64, i64)]| exact_poly(t);
    let lift = two_c - a;
    for n in 1..=n_max {
        let cur = family.coefficients(two_c, d, n);
        let prev = family.coefficients(two_c, d, n - 1);
        let long = HFamily::Long.coefficients(two_c, d, n);
        let shift = exact_poly(&[(1, lift)]);
        let iter = [
            &p(&cur[1]) + &p(&[(1, lift), (-1, lift + 2 * n - 2)]),
            &p(&cur[2]) - &(&shift * &p(&prev[1])),
            -&(&p(&[(1, a)]) + &(&shift * &p(&prev[2]))),
            p(&[(1, two_c)]),
        ];
        for (lag, got) in iter.iter().enumerate() {
            let want = p(&long[lag + 1]);
            if let Some((e, l, r)) = got.first_mismatch(&want, 1 + top(got).max(top(&want))) {
                return Ok(Some(Mismatch {
                    exp: e,
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                    at: Some(format!("N={n},lag={}", lag + 1)),
                }));
            }
        }
    }
    check_h_recurrence(HFamily::Long, two_c, d, n_max.saturating_sub(1), qprec)
}

/// One past the highest stored exponent of an exact polynomial.
fn top(p: &LaurentSeries) -> i64 {
    p.offset() + p.coeffs().len() as i64
}

/// Rebuilds `h_N` from the three-term family and the initial conditions
/// alone, and compares with the direct sums.
pub fn check_uniqueness(family: HFamily, two_c: i64, d: i64, n_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    family.validate(two_c, d)?;
    let loss = (1..=n_max.max(1))
        .flat_map(|n| family.coefficients(two_c, d, n).into_iter().skip(1))
        .map(|c| -low(&c))
        .max()
        .unwrap_or(0)
        .max(0);
    let work = qprec + loss * (n_max + 1);
    let mut built: Vec<LaurentSeries> = Vec::new();
    let get = |b: &Vec<LaurentSeries>, n: i64| {
        if n < 0 {
            LaurentSeries::zero(work)
        } else {
            b[n as usize].clone()
        }
    };
    for n in 0..=n_max {
        if n == 0 {
            built.push(LaurentSeries::one(work));
            continue;
        }
        let cs = family.coefficients(two_c, d, n);
        let mut rhs = LaurentSeries::zero(work);
        for (lag, c) in cs.iter().enumerate().skip(1) {
            rhs = &rhs + &(&exact_poly(c) * &get(&built, n - lag as i64));
        }
        built.push(rhs.div_binomial(-1, 2 * n)?);
    }
    let tab = HcdTable::new(two_c, d, n_max, qprec)?;
    for n in 0..=n_max {
        if let Some(m) = compare(&built[n as usize], &tab.get(n), qprec)? {
            return Ok(Some(m.with_context(format!("N={n}"))));
        }
    }
    Ok(None)
}

/// The three first-order relations between neighbouring parameters:
/// `h_{c,d,N} - h_{c,d,N-1} = q^N h_{c-1,d-1,N}`,
/// `h_{c,d,N} - h_{c,d+2,N} = -q^(3d+3) h_{c,d+2,N-3}`,
/// `h_{c,d,N} - h_{c+2,d,N} = q^(2c-1) h_{c,d,N-2}`.
pub fn check_basic_relations(two_c: i64, d: i64, n_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    let work = qprec + slack(two_c, d) + 3 * (d + 2).abs() + 4;
    let base = HcdTable::new(two_c, d, n_max, work)?;
    let down = HcdTable::new(two_c - 2, d - 1, n_max, work)?;
    let dshift = HcdTable::new(two_c, d + 2, n_max, work)?;
    let cshift = HcdTable::new(two_c + 4, d, n_max, work)?;
    for n in 0..=n_max {
        let h = base.get(n);
        let rels = [
            (&h - &base.get(n - 1), down.get(n).shift(n)),
            (&h - &dshift.get(n), -&dshift.get(n - 3).shift(3 * d + 3)),
            (&h - &cshift.get(n), base.get(n - 2).shift(two_c - 1)),
        ];
        for (i, (l, r)) in rels.iter().enumerate() {
            if let Some(m) = compare(l, r, qprec)? {
                return Ok(Some(m.with_context(format!("relation {},N={n}", i + 1))));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_validate_parameters() {
        assert!(HFamily::D0.validate(3, 1).is_err());
        assert!(HFamily::DM1.validate(3, 0).is_err());
        assert!(HFamily::CD32.validate(3, 1).is_err());
        assert!(HFamily::CD32.validate(5, 1).is_ok());
        assert!(HFamily::Long.validate(-7, 4).is_ok());
    }

    #[test]
    fn base_case_is_trivial() {
        // (1 - q^0) h_0 = 0 and every lagged term vanishes
        for f in HFamily::ALL {
            let cs = f.coefficients(5, 1, 0);
            assert!(exact_poly(&cs[0]).is_zero());
        }
    }

    #[test]
    fn small_instances_pass() {
        assert_eq!(check_h_recurrence(HFamily::D0, -1, 0, 10, 60).unwrap(), None);
        assert_eq!(check_h_recurrence(HFamily::Long, 5, 1, 10, 60).unwrap(), None);
        assert_eq!(check_basic_relations(0, 0, 6, 40).unwrap(), None);
    }

    #[test]
    fn wrong_family_is_caught() {
        // the d = 0 recurrence does not hold at d = 1
        let cs = |n| HFamily::D0.coefficients(5, 1, n);
        let tab = HcdTable::new(5, 1, 8, 60).unwrap();
        assert!(check_linear(0..=8, 40, "N", cs, |n| tab.get(n)).unwrap().is_some());
    }
}
