use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A truncated formal Laurent series in `q` with exact integer coefficients.
///
/// The series is trusted for every exponent strictly below `prec`. Values are
/// kept normalized: the first stored coefficient is nonzero, trailing zeros
/// are dropped, and a series that vanishes below `prec` has no coefficients
/// and `offset == prec`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    offset: i64,
    coeffs: Vec<BigInt>,
    prec: i64,
}

impl LaurentSeries {
    /// Builds a series whose coefficient of `q^(offset + i)` is `coeffs[i]`.
    /// Coefficients at or beyond `prec` are discarded.
    pub fn new(offset: i64, mut coeffs: Vec<BigInt>, prec: i64) -> Self {
        let keep = (prec - offset).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = Self {
            offset,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    pub fn zero(prec: i64) -> Self {
        Self {
            offset: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(1, 0, prec)
    }

    /// `coeff * q^exp`, known below `prec`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64, prec: i64) -> Self {
        Self::new(exp, vec![coeff.into()], prec)
    }

    /// A Laurent polynomial given as `(coefficient, exponent)` pairs.
    pub fn from_terms(terms: &[(i64, i64)], prec: i64) -> Self {
        let Some(lo) = terms.iter().map(|&(_, e)| e).min() else {
            return Self::zero(prec);
        };
        let hi = terms.iter().map(|&(_, e)| e).max().unwrap_or(lo);
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for &(c, e) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::new(lo, coeffs, prec)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = self.prec;
        }
    }

    /// Smallest represented exponent (equals `prec` for the zero series).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest nonzero coefficient, `None` if zero below `prec`.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Coefficient of `q^exp`; `None` when `exp` is at or above the precision.
    pub fn coeff(&self, exp: i64) -> Option<BigInt> {
        if exp >= self.prec {
            return None;
        }
        let idx = exp - self.offset;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Some(BigInt::zero())
        } else {
            Some(self.coeffs[idx as usize].clone())
        }
    }

    /// Iterates over `(exponent, coefficient)` for the stored nonzero range.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.offset + i as i64, c))
    }

    /// Lowers the precision to `min(self.prec, prec)`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::new(self.offset, self.coeffs.clone(), prec)
    }

    /// Multiplication by `q^m`.
    pub fn shift(&self, m: i64) -> Self {
        Self {
            offset: self.offset + m,
            coeffs: self.coeffs.clone(),
            prec: self.prec + m,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec);
        }
        Self {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            prec: self.prec,
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// The substitution `q -> -q`.
    pub fn negate_q(&self) -> Self {
        let coeffs = self
            .terms()
            .map(|(e, c)| if e.rem_euclid(2) == 1 { -c } else { c.clone() })
            .collect();
        Self::new(self.offset, coeffs, self.prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let prec = self.prec.min(other.prec);
        if self.is_zero() && other.is_zero() {
            return Self::zero(prec);
        }
        // a zero operand sits at offset == prec and must not widen the range
        let span = |s: &Self| (!s.is_zero()).then(|| (s.offset, s.offset + s.coeffs.len() as i64));
        let (lo, hi) = [span(self), span(other)]
            .into_iter()
            .flatten()
            .fold((i64::MAX, i64::MIN), |(l, h), (a, b)| (l.min(a), h.max(b)));
        let hi = hi.min(prec);
        if hi <= lo {
            return Self::zero(prec);
        }
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (e, c) in self.terms() {
            if e < hi {
                coeffs[(e - lo) as usize] += c;
            }
        }
        for (e, c) in other.terms() {
            if e < hi {
                if negate_other {
                    coeffs[(e - lo) as usize] -= c;
                } else {
                    coeffs[(e - lo) as usize] += c;
                }
            }
        }
        Self::new(lo, coeffs, prec)
    }

    /// Truncated Cauchy product; the result is known below
    /// `min(a.prec + b.offset, b.prec + a.offset)`.
    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.prec + other.offset).min(other.prec + self.offset);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let offset = self.offset + other.offset;
        let len = prec - offset;
        if len <= 0 {
            return Self::zero(prec);
        }
        let len = len as usize;
        let a = &self.coeffs[..self.coeffs.len().min(len)];
        let b = &other.coeffs[..other.coeffs.len().min(len)];
        let coeffs = mul_fast(a, b, len).unwrap_or_else(|| mul_big(a, b, len));
        Self::new(offset, coeffs, prec)
    }

    /// Multiplicative inverse; the leading coefficient must be `+1` or `-1`.
    pub fn inv(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::ZeroSeries { prec: self.prec });
        };
        let lead = &self.coeffs[0];
        if !(lead.is_one() || (-lead).is_one()) {
            return Err(Error::NonUnitLeading {
                exp: v,
                coeff: lead.to_string(),
            });
        }
        let len = (self.prec - v) as usize;
        let eps: i64 = if lead.is_one() { 1 } else { -1 };
        let u = &self.coeffs;
        let b = inv_fast(u, eps, len).unwrap_or_else(|| inv_big(u, eps, len));
        Ok(Self::new(-v, b, self.prec - 2 * v))
    }

    /// Multiplies by `(1 + c q^m)`.
    pub fn mul_binomial(&self, c: i64, m: i64) -> Self {
        if c == 0 {
            return self.clone();
        }
        if m == 0 {
            return self.scale_i64(1 + c);
        }
        self.add(&self.scale_i64(c).shift(m))
    }

    /// Divides by `(1 + c q^m)`, which must be a unit of the Laurent ring.
    pub fn div_binomial(&self, c: i64, m: i64) -> Result<Self> {
        if c == 0 {
            return Ok(self.clone());
        }
        if m == 0 {
            return match 1 + c {
                0 => Err(Error::ZeroSeries { prec: self.prec }),
                1 => Ok(self.clone()),
                -1 => Ok(-self),
                d => Err(Error::NonUnitLeading {
                    exp: 0,
                    coeff: d.to_string(),
                }),
            };
        }
        if m < 0 {
            // 1 + c q^m = c q^m (1 + c q^-m) for c = +-1
            if c != 1 && c != -1 {
                return Err(Error::NonUnitLeading {
                    exp: m,
                    coeff: c.to_string(),
                });
            }
            return Ok(self.div_binomial(c, -m)?.scale_i64(c).shift(-m));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let len = (self.prec - self.offset) as usize;
        let step = m as usize;
        let mut out = self.coeffs.clone();
        out.resize(len, BigInt::zero());
        for n in step..len {
            let (head, tail) = out.split_at_mut(n);
            let prev = &head[n - step];
            if prev.is_zero() {
                continue;
            }
            match c {
                1 => tail[0] -= prev,
                -1 => tail[0] += prev,
                _ => tail[0] -= prev * c,
            }
        }
        Ok(Self::new(self.offset, out, self.prec))
    }

    /// First exponent in `[min offset, order)` where the two series differ.
    pub fn first_mismatch(&self, other: &Self, order: i64) -> Option<(i64, BigInt, BigInt)> {
        let lo = self.offset.min(other.offset);
        let hi = order.min(self.prec).min(other.prec);
        (lo..hi).find_map(|e| {
            let a = self.coeff(e).unwrap_or_default();
            let b = other.coeff(e).unwrap_or_default();
            (a != b).then_some((e, a, b))
        })
    }
}

fn bits_of(v: &[i64]) -> u64 {
    v.iter()
        .map(|x| 64 - x.unsigned_abs().leading_zeros() as u64)
        .max()
        .unwrap_or(0)
}

fn to_small(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

fn mul_fast(a: &[BigInt], b: &[BigInt], len: usize) -> Option<Vec<BigInt>> {
    let a = to_small(a)?;
    let b = to_small(b)?;
    let terms = a.len().min(b.len()) as u64;
    let budget = bits_of(&a) + bits_of(&b) + (64 - terms.leading_zeros() as u64);
    if budget > 126 {
        return None;
    }
    let mut acc = vec![0i128; len.min(a.len() + b.len() - 1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as i128;
        for (j, &y) in b.iter().enumerate().take(acc.len().saturating_sub(i)) {
            acc[i + j] += x * y as i128;
        }
    }
    Some(acc.into_iter().map(BigInt::from).collect())
}

fn mul_big(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len.min(a.len() + b.len() - 1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(acc.len().saturating_sub(i)) {
            if !y.is_zero() {
                acc[i + j] += x * y;
            }
        }
    }
    acc
}

fn inv_fast(u: &[BigInt], eps: i64, len: usize) -> Option<Vec<BigInt>> {
    let u = to_small(u)?;
    let mut b: Vec<i128> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            b.push(eps as i128);
            continue;
        }
        let mut s: i128 = 0;
        for i in 1..=n.min(u.len() - 1) {
            s = s.checked_add((u[i] as i128).checked_mul(b[n - i])?)?;
        }
        b.push(s.checked_mul(-(eps as i128))?);
    }
    Some(b.into_iter().map(BigInt::from).collect())
}

fn inv_big(u: &[BigInt], eps: i64, len: usize) -> Vec<BigInt> {
    let mut b: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            b.push(BigInt::from(eps));
            continue;
        }
        let mut s = BigInt::zero();
        for i in 1..=n.min(u.len() - 1) {
            if !u[i].is_zero() {
                s += &u[i] * &b[n - i];
            }
        }
        b.push(if eps == 1 { -s } else { s });
    }
    b
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: Self) -> LaurentSeries {
        LaurentSeries::add(self, rhs)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: Self) -> LaurentSeries {
        LaurentSeries::sub(self, rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: Self) -> LaurentSeries {
        LaurentSeries::mul(self, rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || e == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(terms: &[(i64, i64)], prec: i64) -> LaurentSeries {
        LaurentSeries::from_terms(terms, prec)
    }

    #[test]
    fn adding_zero_with_huge_prec_is_cheap() {
        let big = 1i64 << 40;
        let p = ls(&[(1, 0), (-1, 3)], big);
        assert_eq!(&p + &LaurentSeries::zero(big), p);
        assert_eq!(&LaurentSeries::zero(big) - &p, -&p);
    }

    #[test]
    fn add_cancels() {
        let a = ls(&[(1, 0), (-1, 1)], 10);
        let b = ls(&[(1, 1)], 10);
        assert_eq!(&a + &b, LaurentSeries::one(10));
    }

    #[test]
    fn add_zero_is_identity() {
        let a = ls(&[(3, -2), (-1, 4)], 8);
        assert_eq!(&LaurentSeries::zero(8) + &a, a);
    }

    #[test]
    fn add_takes_min_precision() {
        let a = ls(&[(1, -1)], 5);
        let b = ls(&[(1, 0)], 3);
        let s = &a + &b;
        assert_eq!(s, ls(&[(1, -1), (1, 0)], 3));
        assert_eq!(s.prec(), 3);
    }

    #[test]
    fn mul_telescopes_to_one() {
        let a = ls(&[(1, 0), (-1, 1)], 4);
        let b = ls(&[(1, 0), (1, 1), (1, 2), (1, 3)], 4);
        let p = &a * &b;
        assert_eq!(p, LaurentSeries::one(4));
    }

    #[test]
    fn mul_by_one() {
        let a = ls(&[(2, -1), (5, 3)], 7);
        assert_eq!(&a * &LaurentSeries::one(20), a);
    }

    #[test]
    fn mul_expands_polynomials() {
        let a = ls(&[(1, 0), (-1, 1)], 20);
        let b = ls(&[(1, 0), (-1, 2)], 20);
        assert_eq!(&a * &b, ls(&[(1, 0), (-1, 1), (-1, 2), (1, 3)], 20));
    }

    #[test]
    fn mul_precision_rule() {
        let a = ls(&[(1, -2)], 5);
        let b = ls(&[(1, 1)], 9);
        // min(5 + 1, 9 - 2)
        assert_eq!((&a * &b).prec(), 6);
    }

    #[test]
    fn mul_falls_back_to_bigint() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        let a = LaurentSeries::new(0, vec![big.clone(), BigInt::from(1)], 3);
        let p = &a * &a;
        assert_eq!(p.coeff(0).unwrap(), &big * &big);
        assert_eq!(p.coeff(1).unwrap(), &big * 2);
    }

    #[test]
    fn inv_geometric() {
        let a = ls(&[(1, 0), (-1, 1)], 5);
        let b = a.inv().unwrap();
        assert_eq!(b, ls(&[(1, 0), (1, 1), (1, 2), (1, 3), (1, 4)], 5));
    }

    #[test]
    fn inv_negative_offset() {
        // -q^-1 (1 - q) = -q^-1 + 1
        let a = ls(&[(-1, -1), (1, 0)], 8);
        let b = a.inv().unwrap();
        assert_eq!(b.offset(), 1);
        assert_eq!(b.coeff(1).unwrap(), BigInt::from(-1));
        assert_eq!(b.coeff(2).unwrap(), BigInt::from(-1));
        let back = &a * &b;
        assert_eq!(back, LaurentSeries::one(back.prec()));
        assert_eq!(back.prec(), 9);
    }

    #[test]
    fn inv_rejects_non_units() {
        let a = ls(&[(2, 0), (-1, 1)], 5);
        assert!(matches!(a.inv(), Err(Error::NonUnitLeading { .. })));
        assert!(matches!(
            LaurentSeries::zero(4).inv(),
            Err(Error::ZeroSeries { .. })
        ));
    }

    #[test]
    fn shift_round_trip() {
        assert_eq!(LaurentSeries::one(10).shift(3), ls(&[(1, 3)], 13));
        assert_eq!(ls(&[(1, -1)], 4).shift(1), LaurentSeries::one(5));
        let a = ls(&[(4, -3), (1, 0), (-7, 2)], 6);
        assert_eq!(a.shift(5).shift(-5), a);
    }

    #[test]
    fn binomials_match_generic_ops() {
        let a = ls(&[(1, 0), (3, 1), (-2, 4)], 30);
        for &(c, m) in &[(1, 3), (-1, 2), (1, -2), (-1, -1), (-1, 5)] {
            let b = LaurentSeries::from_terms(&[(1, 0), (c, m)], 100);
            assert_eq!(a.mul_binomial(c, m), &a * &b, "mul c={c} m={m}");
            let q = a.div_binomial(c, m).unwrap();
            let expect = &a * &b.inv().unwrap();
            assert_eq!(q.truncate(expect.prec()), expect.truncate(q.prec()));
        }
    }

    #[test]
    fn div_binomial_degenerate() {
        let a = LaurentSeries::one(5);
        assert!(matches!(a.div_binomial(-1, 0), Err(Error::ZeroSeries { .. })));
        assert!(matches!(
            a.div_binomial(1, 0),
            Err(Error::NonUnitLeading { .. })
        ));
        assert!(a.div_binomial(2, -1).is_err());
    }

    #[test]
    fn negate_q_flips_odd_terms() {
        let a = ls(&[(1, -1), (2, 0), (3, 1)], 4);
        assert_eq!(a.negate_q(), ls(&[(-1, -1), (2, 0), (-3, 1)], 4));
    }

    #[test]
    fn display_is_readable() {
        let a = ls(&[(1, 0), (-1, 1), (2, 3)], 5);
        assert_eq!(a.to_string(), "1 - q + 2q^3 + O(q^5)");
        assert_eq!(LaurentSeries::zero(3).to_string(), "0 + O(q^3)");
    }
}
