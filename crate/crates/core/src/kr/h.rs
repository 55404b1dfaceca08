use crate::error::{Error, Result};
use crate::series::{BivariateSeries, LaurentSeries};

use super::recip_table;

/// Bound on the coefficients of a raw linear form, which keeps the
/// truncation analysis honest.
pub const RAW_COEFF_LIMIT: i64 = 12;

/// One of the triple sums `H_l(x; q)`.
///
/// For `l <= 9` (and raw forms) the summand is
/// `(-1)^k q^(N(N-1) + 3k^2 + A(i,j,k)) x^N / ((q;q)_i (q^4;q^4)_j (q^6;q^6)_k)`
/// with `N = i + 2j + 3k`; for `l = 10, 11` it is
/// `q^(N(N-1)/2 + j^2 + A(i,j,k)) x^N / ((q;q)_i (q^2;q^2)_j (q^3;q^3)_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HSeries {
    Catalog(u8),
    Raw { a_i: i64, a_j: i64, a_k: i64 },
    /// A raw linear form on the half-quadratic shape of `H_10`, `H_11`.
    RawHalf { a_i: i64, a_j: i64, a_k: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Quadratic,
    Half,
}

impl HSeries {
    pub fn new(ell: u8) -> Result<Self> {
        if (1..=11).contains(&ell) {
            Ok(HSeries::Catalog(ell))
        } else {
            Err(Error::BadParameter(format!("no series H_{ell}")))
        }
    }

    pub fn raw(a_i: i64, a_j: i64, a_k: i64) -> Result<Self> {
        if [a_i, a_j, a_k].iter().any(|a| a.abs() > RAW_COEFF_LIMIT) {
            return Err(Error::BadParameter(format!(
                "raw linear form ({a_i}, {a_j}, {a_k}) exceeds |a| <= {RAW_COEFF_LIMIT}"
            )));
        }
        Ok(HSeries::Raw { a_i, a_j, a_k })
    }

    pub fn raw_half(a_i: i64, a_j: i64, a_k: i64) -> Result<Self> {
        Self::raw(a_i, a_j, a_k)?;
        Ok(HSeries::RawHalf { a_i, a_j, a_k })
    }

    pub fn label(&self) -> String {
        match *self {
            HSeries::Catalog(ell) => format!("H{ell}"),
            HSeries::Raw { a_i, a_j, a_k } => format!("H[{a_i},{a_j},{a_k}]"),
            HSeries::RawHalf { a_i, a_j, a_k } => format!("H/2[{a_i},{a_j},{a_k}]"),
        }
    }

    /// Coefficients of the linear form `A(i, j, k)`.
    pub fn linear(&self) -> (i64, i64, i64) {
        match *self {
            HSeries::Catalog(ell) => match ell {
                1 => (1, 6, 6),
                2 => (2, 2, 6),
                3 => (4, 6, 12),
                4 => (1, 3, 3),
                5 => (2, -1, 3),
                6 => (1, 0, 0),
                7 => (2, 4, 6),
                8 => (1, 1, 3),
                9 => (3, 5, 9),
                10 => (1, 2, 4),
                11 => (2, 4, 5),
                _ => unreachable!("validated on construction"),
            },
            HSeries::Raw { a_i, a_j, a_k } | HSeries::RawHalf { a_i, a_j, a_k } => (a_i, a_j, a_k),
        }
    }

    fn shape(&self) -> Shape {
        match self {
            HSeries::Catalog(10 | 11) | HSeries::RawHalf { .. } => Shape::Half,
            _ => Shape::Quadratic,
        }
    }

    /// Denominator steps for the `i`, `j`, `k` summation variables.
    fn steps(&self) -> (i64, i64, i64) {
        match self.shape() {
            Shape::Quadratic => (1, 4, 6),
            Shape::Half => (1, 2, 3),
        }
    }

    /// Exponent of `q` in the `(i, j, k)` summand.
    pub fn exponent(&self, i: i64, j: i64, k: i64) -> i64 {
        let n = i + 2 * j + 3 * k;
        let (a, b, c) = self.linear();
        let lin = a * i + b * j + c * k;
        match self.shape() {
            Shape::Quadratic => n * (n - 1) + 3 * k * k + lin,
            Shape::Half => n * (n - 1) / 2 + j * j + lin,
        }
    }

    fn sign(&self, k: i64) -> i64 {
        match self.shape() {
            Shape::Quadratic if k % 2 == 1 => -1,
            _ => 1,
        }
    }

    /// A lower bound for the exponent of every summand of x-degree `n`,
    /// after the substitution `x -> x q^m`.
    fn exponent_floor(&self, n: i64, m: i64) -> i64 {
        let (a, b, c) = self.linear();
        // a linear form on the simplex i + 2j + 3k = n is minimal at a vertex
        let lin = (a * n).min((b * n).div_euclid(2)).min((c * n).div_euclid(3));
        let quad = match self.shape() {
            Shape::Quadratic => n * (n - 1),
            Shape::Half => n * (n - 1) / 2,
        };
        quad + lin + m * n
    }

    /// The least `n` such that every summand of x-degree `>= n` has
    /// q-exponent `>= qprec` once `x` is replaced by `q^m` (`m >= 0`).
    pub fn x_bound(&self, qprec: i64, m: i64) -> u32 {
        let m = m.max(0);
        let mut last_low = -1i64;
        let mut n = 0i64;
        // past `limit` even the crude bound n(n-1)/2 - 12n clears qprec
        let mut limit = 0i64;
        while limit * (limit - 1) / 2 - RAW_COEFF_LIMIT * limit < qprec {
            limit += 1;
        }
        while n <= limit {
            if self.exponent_floor(n, m) < qprec {
                last_low = n;
            }
            n += 1;
        }
        (last_low + 1) as u32
    }

    /// `H(x; q)` with x-components up to `xcap`, known below `qprec`.
    pub fn series(&self, xcap: u32, qprec: i64) -> Result<BivariateSeries> {
        let cap = xcap as i64;
        let (s1, s2, s3) = self.steps();
        // terms with negative exponent need their reciprocals further out
        let min_e = (0..=cap)
            .map(|n| self.exponent_floor(n, 0))
            .min()
            .unwrap_or(0)
            .min(0);
        let work = qprec - min_e;
        let r1 = recip_table(-1, s1, s1, cap as usize, work)?;
        let r2 = recip_table(-1, s2, s2, (cap / 2) as usize, work)?;
        let r3 = recip_table(-1, s3, s3, (cap / 3) as usize, work)?;
        let mut components = Vec::new();
        for n in 0..=cap {
            let mut acc = LaurentSeries::zero(qprec);
            for k in 0..=n / 3 {
                for j in 0..=(n - 3 * k) / 2 {
                    let i = n - 2 * j - 3 * k;
                    let e = self.exponent(i, j, k);
                    if e >= qprec {
                        continue;
                    }
                    let rel = qprec - e;
                    let t = &(&r1[i as usize].truncate(rel) * &r2[j as usize].truncate(rel))
                        * &r3[k as usize].truncate(rel);
                    let t = t.shift(e);
                    acc = if self.sign(k) < 0 { &acc - &t } else { &acc + &t };
                }
            }
            components.push((n as u32, acc));
        }
        Ok(BivariateSeries::from_components(components, xcap, qprec))
    }

    /// `H(q^m; q)` for `m >= 0`, known below `qprec`.
    pub fn at_q_power(&self, m: i64, qprec: i64) -> Result<LaurentSeries> {
        if m < 0 {
            return Err(Error::BadParameter(format!("x = q^{m} is outside the checked range")));
        }
        let cap = self.x_bound(qprec, m).saturating_sub(1);
        Ok(self.series(cap, qprec)?.substitute(m).eval_x1())
    }

    /// `H(1; q)`, known below `qprec`.
    pub fn at_one(&self, qprec: i64) -> Result<LaurentSeries> {
        self.at_q_power(0, qprec)
    }

    /// `(2c, d, m)` such that the x^N coefficient is `h_{c,d,N} q^(N^2 + mN)`,
    /// when the series has that shape.
    pub fn structure(&self) -> Option<(i64, i64, i64)> {
        if self.shape() != Shape::Quadratic {
            return None;
        }
        let (a, b, c) = self.linear();
        let k_coeff = c - 3 * a;
        if k_coeff % 3 != 0 {
            return None;
        }
        Some((b - 2 * a + 1, k_coeff / 3, a - 1))
    }
}

/// The generalised sums
/// `h_{c,d,N} = sum_{j,k} (-1)^k q^(3k^2 + (2c-1)j + 3dk) / ((q;q)_{N-2j-3k} (q^4;q^4)_j (q^6;q^6)_k)`
/// for `N = 0..=n_max`, with `2c` and `d` integers.
#[derive(Clone, Debug)]
pub struct HcdTable {
    two_c: i64,
    d: i64,
    qprec: i64,
    values: Vec<LaurentSeries>,
}

impl HcdTable {
    pub fn new(two_c: i64, d: i64, n_max: i64, qprec: i64) -> Result<Self> {
        let n_max = n_max.max(0);
        let exp = |j: i64, k: i64| 3 * k * k + (two_c - 1) * j + 3 * d * k;
        let mut min_e = 0i64;
        for k in 0..=n_max / 3 {
            for j in 0..=(n_max - 3 * k) / 2 {
                min_e = min_e.min(exp(j, k));
            }
        }
        let work = qprec - min_e;
        let r1 = recip_table(-1, 1, 1, n_max as usize, work)?;
        let r4 = recip_table(-1, 4, 4, (n_max / 2) as usize, work)?;
        let r6 = recip_table(-1, 6, 6, (n_max / 3) as usize, work)?;

        // t[m] collects the (j, k) with 2j + 3k = m; h_N = sum_m t[m] / (q;q)_{N-m}
        let mut t = Vec::with_capacity(n_max as usize + 1);
        for m in 0..=n_max {
            let mut acc = LaurentSeries::zero(qprec);
            for k in (0..=m / 3).filter(|k| (m - 3 * k) % 2 == 0) {
                let j = (m - 3 * k) / 2;
                let e = exp(j, k);
                if e >= qprec {
                    continue;
                }
                let rel = qprec - e;
                let term = (&r4[j as usize].truncate(rel) * &r6[k as usize].truncate(rel)).shift(e);
                acc = if k % 2 == 1 { &acc - &term } else { &acc + &term };
            }
            t.push(acc);
        }
        let mut values = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            let mut acc = LaurentSeries::zero(qprec);
            for (m, tm) in t.iter().enumerate().take(n as usize + 1) {
                if tm.is_zero() {
                    continue;
                }
                acc = &acc + &(&r1[n as usize - m] * tm);
            }
            values.push(acc.truncate(qprec));
        }
        Ok(Self {
            two_c,
            d,
            qprec,
            values,
        })
    }

    pub fn two_c(&self) -> i64 {
        self.two_c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn qprec(&self) -> i64 {
        self.qprec
    }

    pub fn n_max(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    /// `h_N`, exactly zero for negative `N`. Panics beyond `n_max`.
    pub fn get(&self, n: i64) -> LaurentSeries {
        if n < 0 {
            return LaurentSeries::zero(self.qprec);
        }
        self.values[n as usize].clone()
    }
}

/// A single `h_{c,d,N}` known below `qprec`.
pub fn h_cd(two_c: i64, d: i64, n: i64, qprec: i64) -> Result<LaurentSeries> {
    if n < 0 {
        return Ok(LaurentSeries::zero(qprec));
    }
    Ok(HcdTable::new(two_c, d, n, qprec)?.get(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_degree_zero_is_one() {
        for ell in 1..=11 {
            let h = HSeries::new(ell).unwrap().series(0, 30).unwrap();
            assert_eq!(h.component(0).unwrap(), LaurentSeries::one(30));
        }
    }

    #[test]
    fn h1_at_one_small() {
        let h = HSeries::new(1).unwrap().at_one(7).unwrap();
        assert_eq!(
            h,
            LaurentSeries::from_terms(&[(1, 0), (1, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6)], 7)
        );
    }

    #[test]
    fn h6_at_one_prec_two() {
        let h = HSeries::new(6).unwrap().at_one(2).unwrap();
        assert_eq!(h, LaurentSeries::from_terms(&[(1, 0), (1, 1)], 2));
    }

    #[test]
    fn h_cd_boundary_values() {
        assert!(h_cd(5, 1, -3, 20).unwrap().is_zero());
        assert_eq!(h_cd(5, 1, 0, 20).unwrap(), LaurentSeries::one(20));
        // only j = k = 0 contributes at N = 1
        assert_eq!(
            h_cd(5, 1, 1, 5).unwrap(),
            LaurentSeries::from_terms(&[(1, 0), (1, 1), (1, 2), (1, 3), (1, 4)], 5)
        );
    }

    #[test]
    fn structures_match_known_parameters() {
        let s = |ell| HSeries::new(ell).unwrap().structure();
        assert_eq!(s(1), Some((5, 1, 0)));
        assert_eq!(s(3), Some((-1, 0, 3)));
        assert_eq!(s(4), Some((2, 0, 0)));
        assert_eq!(s(5), Some((-4, -1, 1)));
        assert_eq!(s(6), Some((-1, -1, 0)));
        assert_eq!(s(7), Some((1, 0, 1)));
        assert_eq!(s(8), Some((0, 0, 0)));
        assert_eq!(s(9), Some((0, 0, 2)));
        assert_eq!(s(10), None);
        assert_eq!(HSeries::raw(1, -3, -3).unwrap().structure(), Some((-4, -2, 0)));
    }

    #[test]
    fn raw_bound_enforced() {
        assert!(HSeries::raw(13, 0, 0).is_err());
        assert!(HSeries::new(12).is_err());
    }
}
