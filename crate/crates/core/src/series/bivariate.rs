use std::collections::BTreeMap;

use super::LaurentSeries;

/// A power series in `x` whose coefficients are truncated Laurent series in `q`.
///
/// Components are trusted for x-exponents up to `xcap` and q-exponents below
/// `qprec`. Missing keys at or below `xcap` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    components: BTreeMap<u32, LaurentSeries>,
    xcap: u32,
    qprec: i64,
}

impl BivariateSeries {
    pub fn zero(xcap: u32, qprec: i64) -> Self {
        Self {
            components: BTreeMap::new(),
            xcap,
            qprec,
        }
    }

    /// Collects components, dropping keys above `xcap`, zero components, and
    /// anything at or above `qprec`.
    pub fn from_components(
        components: impl IntoIterator<Item = (u32, LaurentSeries)>,
        xcap: u32,
        qprec: i64,
    ) -> Self {
        let mut out = Self::zero(xcap, qprec);
        for (n, c) in components {
            out.insert(n, c);
        }
        out
    }

    /// A polynomial in `x` with monomial q-coefficients, from
    /// `(x_degree, coefficient, q_exponent)` triples.
    pub fn polynomial(terms: &[(u32, i64, i64)], xcap: u32, qprec: i64) -> Self {
        let mut out = Self::zero(xcap, qprec);
        for &(n, c, e) in terms {
            let t = LaurentSeries::monomial(c, e, qprec);
            out.accumulate(n, &t);
        }
        out
    }

    fn insert(&mut self, n: u32, c: LaurentSeries) {
        if n > self.xcap {
            return;
        }
        let c = c.truncate(self.qprec);
        if c.is_zero() {
            self.components.remove(&n);
        } else {
            self.components.insert(n, c);
        }
    }

    fn accumulate(&mut self, n: u32, c: &LaurentSeries) {
        if n > self.xcap {
            return;
        }
        let sum = match self.components.get(&n) {
            Some(old) => old + c,
            None => c.clone(),
        };
        self.insert(n, sum);
    }

    pub fn xcap(&self) -> u32 {
        self.xcap
    }

    pub fn qprec(&self) -> i64 {
        self.qprec
    }

    /// Coefficient of `x^n` (zero if absent); `None` above `xcap`.
    pub fn component(&self, n: u32) -> Option<LaurentSeries> {
        if n > self.xcap {
            return None;
        }
        Some(
            self.components
                .get(&n)
                .cloned()
                .unwrap_or_else(|| LaurentSeries::zero(self.qprec)),
        )
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &LaurentSeries)> {
        self.components.iter().map(|(&n, c)| (n, c))
    }

    fn min_offset(&self) -> i64 {
        self.components
            .values()
            .map(LaurentSeries::offset)
            .min()
            .unwrap_or(0)
    }

    /// The substitution `x -> x q^m`: component `N` is multiplied by `q^(mN)`.
    /// For negative `m` the q-precision drops by `|m| * xcap`.
    pub fn substitute(&self, m: i64) -> Self {
        let qprec = self.qprec + (m * self.xcap as i64).min(0);
        Self::from_components(
            self.components
                .iter()
                .map(|(&n, c)| (n, c.shift(m * n as i64))),
            self.xcap,
            qprec,
        )
    }

    /// Product with a polynomial `p` in `x`. The cap of `self` is kept and
    /// x-powers beyond it are dropped.
    pub fn mul_poly(&self, p: &BivariateSeries) -> Self {
        let slack = self.min_offset().min(p.min_offset()).min(0);
        let qprec = self.qprec.min(p.qprec) + slack;
        let mut out = Self::zero(self.xcap, qprec);
        for (&d, pc) in &p.components {
            for (&n, fc) in &self.components {
                let k = n + d;
                if k > self.xcap {
                    break;
                }
                out.accumulate(k, &(fc * pc));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.xcap.min(other.xcap), self.qprec.min(other.qprec));
        for (&n, c) in self.components.iter().chain(&other.components) {
            out.accumulate(n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.xcap.min(other.xcap), self.qprec.min(other.qprec));
        for (&n, c) in &self.components {
            out.accumulate(n, c);
        }
        for (&n, c) in &other.components {
            out.accumulate(n, &-c);
        }
        out
    }

    /// Evaluation at `x = 1`. Callers must ensure that components above
    /// `xcap` only contribute at or above `qprec`.
    pub fn eval_x1(&self) -> LaurentSeries {
        self.components
            .values()
            .fold(LaurentSeries::zero(self.qprec), |acc, c| &acc + c)
            .truncate(self.qprec)
    }

    /// Restricts to x-powers `<= xcap` and q-exponents below `qprec`.
    pub fn truncate(&self, xcap: u32, qprec: i64) -> Self {
        Self::from_components(self.components.clone(), xcap.min(self.xcap), qprec.min(self.qprec))
    }

    /// Lowest `x`-power whose components differ below the joint precision.
    pub fn first_mismatch(&self, other: &Self) -> Option<(u32, (i64, num_bigint::BigInt, num_bigint::BigInt))> {
        let cap = self.xcap.min(other.xcap);
        let qprec = self.qprec.min(other.qprec);
        (0..=cap).find_map(|n| {
            let a = self.component(n)?;
            let b = other.component(n)?;
            a.first_mismatch(&b, qprec).map(|m| (n, m))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, i64, i64)], xcap: u32) -> BivariateSeries {
        BivariateSeries::polynomial(terms, xcap, 50)
    }

    #[test]
    fn substitute_scales_by_degree() {
        let x = poly(&[(1, 1, 0)], 4);
        assert_eq!(x.substitute(2), poly(&[(1, 1, 2)], 4));
        let one = poly(&[(0, 1, 0)], 4);
        assert_eq!(one.substitute(7), one);
        let x2 = poly(&[(2, 1, 0)], 4);
        assert_eq!(x2.substitute(3), poly(&[(2, 1, 6)], 4));
    }

    #[test]
    fn mul_poly_basic() {
        let a = poly(&[(0, 1, 0), (1, 1, 0)], 2);
        let b = poly(&[(0, 1, 0), (1, -1, 0)], 2);
        assert_eq!(a.mul_poly(&b), poly(&[(0, 1, 0), (2, -1, 0)], 2));
        let one = poly(&[(0, 1, 0)], 9);
        assert_eq!(a.mul_poly(&one), a);
    }

    #[test]
    fn mul_poly_respects_cap() {
        let xq = poly(&[(1, 1, 1)], 1);
        let sq = xq.mul_poly(&xq);
        assert_eq!(sq.xcap(), 1);
        assert_eq!(sq.components().count(), 0);
    }

    #[test]
    fn eval_at_one() {
        let f = poly(&[(0, 1, 0), (1, 1, 1)], 3);
        assert_eq!(f.eval_x1(), LaurentSeries::from_terms(&[(1, 0), (1, 1)], 50));
        assert!(BivariateSeries::zero(3, 8).eval_x1().is_zero());
        let squares: Vec<_> = (0..=3u32).map(|n| (n, 1, (n * n) as i64)).collect();
        let g = BivariateSeries::polynomial(&squares, 3, 10);
        assert_eq!(
            g.eval_x1(),
            LaurentSeries::from_terms(&[(1, 0), (1, 1), (1, 4), (1, 9)], 10)
        );
    }

    #[test]
    fn substitute_then_eval_matches_componentwise_shift() {
        let f = poly(&[(0, 2, -1), (1, 1, 3), (3, -4, 0)], 5);
        let direct = f.substitute(3).eval_x1();
        let manual = f
            .components()
            .fold(LaurentSeries::zero(50), |acc, (n, c)| &acc + &c.shift(3 * n as i64));
        assert_eq!(direct, manual);
    }
}
