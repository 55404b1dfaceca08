use crate::error::{Error, Result};
use crate::series::LaurentSeries;

use super::product::{FactorProduct, PochhammerSpec};

/// A parameter of a basic hypergeometric series: either `0` or `+-q^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QParam {
    Zero,
    Mono { sign: i8, exp: i64 },
}

impl QParam {
    pub fn q(exp: i64) -> Self {
        QParam::Mono { sign: 1, exp }
    }

    pub fn neg_q(exp: i64) -> Self {
        QParam::Mono { sign: -1, exp }
    }

    /// The i-th factor `1 - p q^(m i)` as `(c, e)` meaning `1 + c q^e`.
    fn factor(self, step: i64, i: i64) -> Option<(i64, i64)> {
        match self {
            QParam::Zero => None,
            QParam::Mono { sign, exp } => Some((-(sign as i64), exp + step * i)),
        }
    }

    /// `(p; q^m)_n` as a Pochhammer spec, `None` for `p = 0`.
    pub fn poch(self, step: i64, n: u64) -> Option<PochhammerSpec> {
        match self {
            QParam::Zero => None,
            QParam::Mono { sign, exp } => Some(PochhammerSpec {
                sign,
                ..PochhammerSpec::finite(exp, step, n)
            }),
        }
    }

    /// `(p; q^m)_inf`, `None` for `p = 0`.
    pub fn poch_inf(self, step: i64) -> Option<PochhammerSpec> {
        match self {
            QParam::Zero => None,
            QParam::Mono { sign, exp } => Some(PochhammerSpec {
                sign,
                ..PochhammerSpec::infinite(exp, step)
            }),
        }
    }
}

/// How far the term sequence must be summed, and how much relative
/// precision intermediate terms can lose on the way.
struct SummationPlan {
    terms: u64,
    loss: i64,
}

fn plan(upper: &[QParam], lower: &[QParam], step: i64, arg_exp: i64, prec: i64) -> Result<SummationPlan> {
    let exps = || {
        upper
            .iter()
            .chain(lower)
            .filter_map(|p| p.factor(step, 0).map(|(_, e)| e))
    };
    // after this many terms every factor exponent is positive
    let burn_in = exps()
        .map(|e| if e > 0 { 0 } else { (-e) / step + 1 })
        .max()
        .unwrap_or(0)
        + 1;

    let mut valuation = 0i64;
    let mut loss = 0i64;
    let mut n: i64 = 1;
    loop {
        let i = n - 1;
        let mut terminated = false;
        let mut delta = arg_exp;
        let mut step_loss = (-arg_exp).max(0);
        for p in upper {
            if let Some((c, e)) = p.factor(step, i) {
                if e == 0 && c == -1 {
                    terminated = true;
                    break;
                }
                delta += e.min(0);
                step_loss += (-e).max(0);
            }
        }
        if terminated {
            break;
        }
        for p in lower {
            if let Some((c, e)) = p.factor(step, i) {
                if e == 0 {
                    return Err(if c == -1 {
                        Error::ZeroSeries { prec }
                    } else {
                        Error::NonUnitLeading {
                            exp: 0,
                            coeff: (1 + c).to_string(),
                        }
                    });
                }
                delta -= e.min(0);
            }
        }
        if n >= burn_in {
            if arg_exp <= 0 {
                return Err(Error::DivergentTermOrder { arg_exp });
            }
            if valuation >= prec {
                break;
            }
        }
        valuation += delta;
        loss += step_loss;
        n += 1;
    }
    Ok(SummationPlan {
        terms: n as u64,
        loss,
    })
}

/// The basic hypergeometric series
/// `sum_n (upper; q^m)_n / (lower, q^m; q^m)_n (arg_sign q^arg_exp)^n`
/// with every parameter a signed power of `q` (or zero), known below `prec`.
pub fn phi(
    upper: &[QParam],
    lower: &[QParam],
    step: i64,
    arg_sign: i8,
    arg_exp: i64,
    prec: i64,
) -> Result<LaurentSeries> {
    if step < 1 {
        return Err(Error::BadParameter(format!("step {step}")));
    }
    let SummationPlan { terms, loss } = plan(upper, lower, step, arg_exp, prec)?;
    let work = prec + loss;
    let mut term = LaurentSeries::one(work);
    let mut sum = term.clone();
    for n in 1..terms as i64 {
        let i = n - 1;
        for p in upper {
            if let Some((c, e)) = p.factor(step, i) {
                term = term.mul_binomial(c, e);
            }
        }
        for p in lower {
            if let Some((c, e)) = p.factor(step, i) {
                term = term.div_binomial(c, e)?;
            }
        }
        term = term.div_binomial(-1, step * n)?.shift(arg_exp);
        if arg_sign < 0 {
            term = -&term;
        }
        sum = &sum + &term;
    }
    debug_assert!(sum.prec() >= prec);
    Ok(sum.truncate(prec))
}

/// The limiting form `sum_n (-1)^n q^(n(n-1)/2) x^n / (q;q)_n` with
/// `x = sign q^exp`.
pub fn euler_exp_sum(x_sign: i8, x_exp: i64, prec: i64) -> Result<LaurentSeries> {
    let mut sum = LaurentSeries::zero(prec);
    let mut n: i64 = 0;
    loop {
        let e = n * (n - 1) / 2 + n * x_exp;
        // e is convex in n; once past the vertex and above prec we are done
        if e >= prec && n - 1 + x_exp >= 0 {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 } * if x_sign < 0 && n % 2 == 1 { -1 } else { 1 };
        let t = FactorProduct::new()
            .scalar(sign)
            .q_power(e)
            .div(PochhammerSpec::finite(1, 1, n as u64))
            .eval(prec)?;
        sum = &sum + &t;
        n += 1;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfactor::product::product_side;

    #[test]
    fn euler_first_identity_small() {
        // sum q^n / (q;q)_n = 1 / (q;q)_inf
        let lhs = phi(&[QParam::Zero], &[], 1, 1, 1, 20).unwrap();
        let rhs = product_side(&[(PochhammerSpec::infinite(1, 1), -1)], 20).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_binomial_small() {
        // sum (q^2;q)_n / (q;q)_n q^n = (q^3;q)_inf / (q;q)_inf
        let lhs = phi(&[QParam::q(2)], &[], 1, 1, 1, 25).unwrap();
        let rhs = product_side(
            &[
                (PochhammerSpec::infinite(3, 1), 1),
                (PochhammerSpec::infinite(1, 1), -1),
            ],
            25,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn huge_argument_leaves_constant_term() {
        let s = phi(&[QParam::q(1)], &[QParam::q(2)], 1, 1, 30, 30).unwrap();
        assert_eq!(s, LaurentSeries::one(30));
    }

    #[test]
    fn divergent_argument_rejected() {
        let r = phi(&[QParam::q(1)], &[], 1, 1, 0, 10);
        assert!(matches!(r, Err(Error::DivergentTermOrder { .. })));
        let r = phi(&[QParam::q(2)], &[], 1, -1, -1, 10);
        assert!(matches!(r, Err(Error::DivergentTermOrder { .. })));
    }

    #[test]
    fn terminating_series_with_negative_argument() {
        // upper q^-1 kills every term past n = 1
        let s = phi(&[QParam::q(-1)], &[], 1, 1, -3, 10).unwrap();
        // 1 + (1 - q^-1)/(1 - q) q^-3 = 1 - q^-4
        assert_eq!(s, LaurentSeries::from_terms(&[(1, 0), (-1, -4)], 10));
    }

    #[test]
    fn euler_second_identity_small() {
        let lhs = euler_exp_sum(1, 1, 30).unwrap();
        let rhs = product_side(&[(PochhammerSpec::infinite(1, 1), 1)], 30).unwrap();
        assert_eq!(lhs, rhs);
    }
}
