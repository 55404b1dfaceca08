use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// Precision assigned to exact Laurent polynomials; large enough that the
/// min-rule in multiplication is always decided by the other operand.
pub const EXACT_PREC: i64 = 1 << 40;

/// An exact Laurent polynomial from `(coefficient, exponent)` pairs.
pub fn exact_poly(terms: &[(i64, i64)]) -> LaurentSeries {
    LaurentSeries::from_terms(terms, EXACT_PREC)
}

/// Length of a q-shifted factorial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// `(s q^a; q^m)_n = prod_{i<n} (1 - s q^(a + m i))` with `s = +-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub sign: i8,
    pub base_exp: i64,
    pub step: i64,
    pub length: Length,
}

impl PochhammerSpec {
    pub fn finite(base_exp: i64, step: i64, n: u64) -> Self {
        Self {
            sign: 1,
            base_exp,
            step,
            length: Length::Finite(n),
        }
    }

    pub fn infinite(base_exp: i64, step: i64) -> Self {
        Self {
            sign: 1,
            base_exp,
            step,
            length: Length::Infinite,
        }
    }

    /// Same product with base `-q^a`.
    pub fn negated(mut self) -> Self {
        self.sign = -self.sign;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.step < 1 {
            return match self.length {
                Length::Infinite => Err(Error::IllFormedInfinite { step: self.step }),
                Length::Finite(_) => Err(Error::BadParameter(format!(
                    "Pochhammer step must be positive, got {}",
                    self.step
                ))),
            };
        }
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::BadParameter(format!("base sign {}", self.sign)));
        }
        Ok(())
    }

    /// Binomials `(c, e)` meaning `1 + c q^e`, stopping once `e >= limit`
    /// for infinite products (those factors are 1 to relative precision).
    fn binomials(&self, limit: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        let c = -(self.sign as i64);
        let count = match self.length {
            Length::Finite(n) => n,
            Length::Infinite => {
                if self.base_exp >= limit {
                    0
                } else {
                    ((limit - self.base_exp + self.step - 1) / self.step) as u64
                }
            }
        };
        (0..count).map(move |i| (c, self.base_exp + self.step * i as i64))
    }

    /// Exponents of factors below zero, which fix the valuation.
    fn negative_exponent_sum(&self) -> i64 {
        self.binomials(0).map(|(_, e)| e.min(0)).sum()
    }
}

/// A quotient of q-shifted factorials times a Laurent polynomial and a
/// power of `q`. Evaluation tracks precision so that the result is known
/// below the requested order.
#[derive(Clone, Debug, Default)]
pub struct FactorProduct {
    scalar: i64,
    shift: i64,
    poly: Option<Vec<(i64, i64)>>,
    numer: Vec<PochhammerSpec>,
    denom: Vec<PochhammerSpec>,
}

impl FactorProduct {
    pub fn new() -> Self {
        Self {
            scalar: 1,
            ..Default::default()
        }
    }

    pub fn scalar(mut self, c: i64) -> Self {
        self.scalar *= c;
        self
    }

    pub fn q_power(mut self, e: i64) -> Self {
        self.shift += e;
        self
    }

    /// Multiplies by the Laurent polynomial `sum c q^e`.
    pub fn poly(mut self, terms: &[(i64, i64)]) -> Self {
        let merged = match self.poly.take() {
            None => terms.to_vec(),
            Some(old) => {
                let mut out = Vec::with_capacity(old.len() * terms.len());
                for &(c1, e1) in &old {
                    for &(c2, e2) in terms {
                        out.push((c1 * c2, e1 + e2));
                    }
                }
                out
            }
        };
        self.poly = Some(merged);
        self
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(mut self, p: PochhammerSpec) -> Self {
        self.numer.push(p);
        self
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(mut self, p: PochhammerSpec) -> Self {
        self.denom.push(p);
        self
    }

    /// Multiplies by `(1 + c q^e)`.
    pub fn mul_binomial(self, c: i64, e: i64) -> Self {
        self.mul(binomial_spec(c, e))
    }

    /// Divides by `(1 + c q^e)`.
    pub fn div_binomial(self, c: i64, e: i64) -> Self {
        self.div(binomial_spec(c, e))
    }

    pub fn mul_all(mut self, ps: impl IntoIterator<Item = PochhammerSpec>) -> Self {
        self.numer.extend(ps);
        self
    }

    pub fn div_all(mut self, ps: impl IntoIterator<Item = PochhammerSpec>) -> Self {
        self.denom.extend(ps);
        self
    }

    /// Removes Pochhammer symbols that occur identically in the numerator
    /// and the denominator.
    fn cancelled(&self) -> (Vec<PochhammerSpec>, Vec<PochhammerSpec>) {
        let mut numer = self.numer.clone();
        let mut denom = Vec::with_capacity(self.denom.len());
        for d in &self.denom {
            match numer.iter().position(|n| n == d) {
                Some(i) => {
                    numer.swap_remove(i);
                }
                None => denom.push(*d),
            }
        }
        (numer, denom)
    }

    /// Zero checks and the exact valuation, shared by `eval` and `valuation`.
    fn analyse(&self) -> Result<Analysis> {
        for p in self.numer.iter().chain(&self.denom) {
            p.validate()?;
        }
        let (numer, denom) = self.cancelled();
        let mut scalar = BigInt::from(self.scalar);
        let mut valuation = self.shift;

        // Zero and constant factors first; they decide whether there is
        // anything to compute at all.
        for p in &denom {
            for (c, e) in p.binomials(1) {
                if e == 0 {
                    return Err(match 1 + c {
                        0 => Error::ZeroSeries { prec: 0 },
                        d => Error::NonUnitLeading {
                            exp: 0,
                            coeff: d.to_string(),
                        },
                    });
                }
                valuation -= e.min(0);
            }
        }
        let mut zero = self.scalar == 0;
        for p in &numer {
            for (c, e) in p.binomials(1) {
                if e == 0 {
                    if c == -1 {
                        zero = true;
                    }
                    scalar *= 1 + c;
                }
            }
            valuation += p.negative_exponent_sum();
        }
        let mut lift = self.shift;
        let poly = match &self.poly {
            Some(t) => {
                let p = exact_poly(t);
                match p.valuation() {
                    Some(v) => {
                        valuation += v;
                        lift += v;
                        Some(p.shift(-v))
                    }
                    None => {
                        zero = true;
                        None
                    }
                }
            }
            None => None,
        };
        Ok(Analysis {
            numer,
            denom,
            scalar,
            valuation: if zero { None } else { Some(valuation) },
            lift,
            poly,
        })
    }

    /// Exact valuation of the product, `None` if it vanishes identically.
    pub fn valuation(&self) -> Result<Option<i64>> {
        Ok(self.analyse()?.valuation)
    }

    /// Evaluates the product, known below `prec`.
    pub fn eval(&self, prec: i64) -> Result<LaurentSeries> {
        let Analysis {
            numer,
            denom,
            scalar,
            valuation,
            lift,
            poly,
        } = self.analyse().map_err(|e| match e {
            Error::ZeroSeries { .. } => Error::ZeroSeries { prec },
            e => e,
        })?;
        let Some(valuation) = valuation else {
            return Ok(LaurentSeries::zero(prec));
        };
        let rel = prec - valuation;
        if rel <= 0 {
            return Ok(LaurentSeries::zero(prec));
        }

        let mut acc = LaurentSeries::one(rel);
        for p in &denom {
            for (c, e) in p.binomials(rel) {
                if e < rel {
                    acc = acc.div_binomial(c, e)?;
                }
            }
        }
        for p in &numer {
            for (c, e) in p.binomials(rel) {
                if e != 0 && e < rel {
                    acc = acc.mul_binomial(c, e);
                }
            }
        }
        if let Some(p) = poly {
            acc = &acc * &p;
        }
        let out = acc.scale(&scalar).shift(lift);
        debug_assert_eq!(out.prec(), prec);
        Ok(out)
    }
}

struct Analysis {
    numer: Vec<PochhammerSpec>,
    denom: Vec<PochhammerSpec>,
    scalar: BigInt,
    valuation: Option<i64>,
    lift: i64,
    poly: Option<LaurentSeries>,
}

/// Sums `term(0) + term(1) + ...` below `prec`. Beyond `burn_in` the caller
/// guarantees that term valuations never decrease, so the sum stops at the
/// first later term whose valuation reaches `prec` (or that vanishes).
pub fn sum_terms(
    prec: i64,
    burn_in: u64,
    mut term: impl FnMut(u64) -> FactorProduct,
) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::zero(prec);
    let mut n = 0u64;
    loop {
        let t = term(n);
        match t.valuation()? {
            Some(v) if v < prec => acc = &acc + &t.eval(prec)?,
            // a vanishing term past the burn-in means the series terminated
            _ if n >= burn_in => break,
            _ => {}
        }
        n += 1;
    }
    Ok(acc)
}

fn binomial_spec(c: i64, e: i64) -> PochhammerSpec {
    // 1 + c q^e = (s q^e; q)_1 with s = -c
    let sign = match c {
        -1 => 1,
        1 => -1,
        _ => panic!("binomial coefficient must be +-1, got {c}"),
    };
    PochhammerSpec {
        sign,
        base_exp: e,
        step: 1,
        length: Length::Finite(1),
    }
}

/// The finite or infinite product described by `spec`, known below `prec`.
pub fn poch(spec: PochhammerSpec, prec: i64) -> Result<LaurentSeries> {
    FactorProduct::new().mul(spec).eval(prec)
}

/// `1 / (s q^a; q^m)_n`, with the convention that the reciprocal vanishes
/// for negative `n`.
pub fn poch_recip_guarded(sign: i8, base_exp: i64, step: i64, n: i64, prec: i64) -> Result<LaurentSeries> {
    if step < 1 {
        return Err(Error::BadParameter(format!("step {step}")));
    }
    if n < 0 {
        return Ok(LaurentSeries::zero(prec));
    }
    let mut spec = PochhammerSpec::finite(base_exp, step, n as u64);
    spec.sign = sign;
    FactorProduct::new().div(spec).eval(prec)
}

/// `prod poch(spec)^sign` over the list; `sign` is `+1` or `-1`.
pub fn product_side(factors: &[(PochhammerSpec, i8)], prec: i64) -> Result<LaurentSeries> {
    let mut fp = FactorProduct::new();
    for &(spec, sign) in factors {
        fp = match sign {
            1 => fp.mul(spec),
            -1 => fp.div(spec),
            s => return Err(Error::BadParameter(format!("factor exponent {s}"))),
        };
    }
    fp.eval(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(terms: &[(i64, i64)], prec: i64) -> LaurentSeries {
        LaurentSeries::from_terms(terms, prec)
    }

    #[test]
    fn empty_product() {
        assert_eq!(
            poch(PochhammerSpec::finite(1, 1, 0), 10).unwrap(),
            LaurentSeries::one(10)
        );
        assert_eq!(product_side(&[], 7).unwrap(), LaurentSeries::one(7));
    }

    #[test]
    fn small_finite_products() {
        let p = poch(PochhammerSpec::finite(1, 1, 2), 10).unwrap();
        assert_eq!(p, ls(&[(1, 0), (-1, 1), (-1, 2), (1, 3)], 10));
        let p = poch(PochhammerSpec::finite(-1, 4, 1), 10).unwrap();
        assert_eq!(p, ls(&[(1, 0), (-1, -1)], 10));
    }

    #[test]
    fn finite_matches_infinite_once_factors_pass_precision() {
        let inf = poch(PochhammerSpec::infinite(3, 4), 40).unwrap();
        let fin = poch(PochhammerSpec::finite(3, 4, 10), 40).unwrap();
        assert_eq!(inf, fin);
    }

    #[test]
    fn negative_base_infinite() {
        // (q^-1; q^4)_inf = (1 - q^-1)(1 - q^3)...
        let p = poch(PochhammerSpec::infinite(-1, 4), 12).unwrap();
        assert_eq!(p.prec(), 12);
        assert_eq!(p.offset(), -1);
        let manual = poch(PochhammerSpec::finite(-1, 4, 4), 12).unwrap();
        assert_eq!(p, manual);
    }

    #[test]
    fn zero_factor_kills_product() {
        let p = poch(PochhammerSpec::finite(-2, 1, 4), 10).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn recip_guarded() {
        assert!(poch_recip_guarded(1, 1, 1, -1, 5).unwrap().is_zero());
        assert_eq!(poch_recip_guarded(1, 1, 1, 0, 5).unwrap(), LaurentSeries::one(5));
        assert_eq!(
            poch_recip_guarded(1, 1, 1, 1, 4).unwrap(),
            ls(&[(1, 0), (1, 1), (1, 2), (1, 3)], 4)
        );
    }

    #[test]
    fn partition_product() {
        let f: Vec<_> = [1, 4, 6, 8, 11]
            .iter()
            .map(|&r| (PochhammerSpec::infinite(r, 12), -1))
            .collect();
        let p = product_side(&f, 7).unwrap();
        assert_eq!(
            p,
            ls(&[(1, 0), (1, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6)], 7)
        );
    }

    #[test]
    fn quotient_product() {
        let f = [
            (PochhammerSpec::infinite(6, 12), 1),
            (PochhammerSpec::infinite(2, 6), -1),
            (PochhammerSpec::infinite(3, 6), -1),
            (PochhammerSpec::infinite(4, 6), -1),
        ];
        assert_eq!(product_side(&f, 3).unwrap(), ls(&[(1, 0), (1, 2)], 3));
    }

    #[test]
    fn product_times_inverse_is_one() {
        let specs = [
            PochhammerSpec::infinite(-1, 4),
            PochhammerSpec::infinite(2, 3).negated(),
            PochhammerSpec::finite(-3, 2, 5),
        ];
        let mut f: Vec<_> = specs.iter().map(|&s| (s, 1)).collect();
        f.extend(specs.iter().map(|&s| (s, -1)));
        assert_eq!(product_side(&f, 30).unwrap(), LaurentSeries::one(30));
    }

    #[test]
    fn poly_and_shift() {
        let p = FactorProduct::new()
            .q_power(-2)
            .poly(&[(1, 0), (1, 1)])
            .div_binomial(-1, 1)
            .eval(3)
            .unwrap();
        // q^-2 (1 + q) / (1 - q) = q^-2 + 2 q^-1 + 2 + 2q + ...
        assert_eq!(p, ls(&[(1, -2), (2, -1), (2, 0), (2, 1), (2, 2)], 3));
    }

    #[test]
    fn identical_factors_cancel_before_zero_checks() {
        let one = PochhammerSpec::infinite(0, 1);
        let p = FactorProduct::new().mul(one).div(one).eval(6).unwrap();
        assert_eq!(p, LaurentSeries::one(6));
    }

    #[test]
    fn bad_specs() {
        let bad = PochhammerSpec::infinite(1, 0);
        assert!(matches!(poch(bad, 5), Err(Error::IllFormedInfinite { .. })));
        let z = FactorProduct::new().div(PochhammerSpec::finite(0, 1, 1));
        assert!(matches!(z.eval(5), Err(Error::ZeroSeries { .. })));
        let two = FactorProduct::new().div(PochhammerSpec::finite(0, 1, 1).negated());
        assert!(matches!(two.eval(5), Err(Error::NonUnitLeading { .. })));
    }
}
