use crate::error::Result;
use crate::oracle::{PartClass, PartKind};
use crate::qfactor::{FactorProduct, PochhammerSpec};
use crate::series::LaurentSeries;

/// A Laurent polynomial times a quotient of infinite products
/// `(+-q^r; q^m)_inf`, one factor per congruence class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductSide {
    prefactor: Vec<(i64, i64)>,
    /// `(r, m, negated_base, in_numerator)`
    factors: Vec<(i64, i64, bool, bool)>,
}

impl ProductSide {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies by the Laurent polynomial `sum c q^e`.
    pub fn prefactor(mut self, terms: &[(i64, i64)]) -> Self {
        self.prefactor = terms.to_vec();
        self
    }

    /// `(q^r1, q^r2, ...; q^m)_inf` in the numerator.
    pub fn num(mut self, rs: &[i64], m: i64) -> Self {
        self.factors.extend(rs.iter().map(|&r| (r, m, false, true)));
        self
    }

    pub fn den(mut self, rs: &[i64], m: i64) -> Self {
        self.factors.extend(rs.iter().map(|&r| (r, m, false, false)));
        self
    }

    /// `(-q^r; q^m)_inf` in the numerator.
    pub fn num_neg(mut self, rs: &[i64], m: i64) -> Self {
        self.factors.extend(rs.iter().map(|&r| (r, m, true, true)));
        self
    }

    pub fn den_neg(mut self, rs: &[i64], m: i64) -> Self {
        self.factors.extend(rs.iter().map(|&r| (r, m, true, false)));
        self
    }

    pub fn to_factor_product(&self) -> FactorProduct {
        let mut fp = FactorProduct::new();
        if !self.prefactor.is_empty() {
            fp = fp.poly(&self.prefactor);
        }
        for &(r, m, neg, numer) in &self.factors {
            let mut spec = PochhammerSpec::infinite(r, m);
            if neg {
                spec = spec.negated();
            }
            fp = if numer { fp.mul(spec) } else { fp.div(spec) };
        }
        fp
    }

    pub fn eval(&self, prec: i64) -> Result<LaurentSeries> {
        self.to_factor_product().eval(prec)
    }

    pub fn prefactor_terms(&self) -> &[(i64, i64)] {
        &self.prefactor
    }

    /// The factors as part classes, for the partition oracle. `None` if a
    /// factor has a non-positive base exponent (no partition reading).
    pub fn classes(&self) -> Option<Vec<PartClass>> {
        self.factors
            .iter()
            .map(|&(r, m, neg, numer)| {
                if r < 1 {
                    return None;
                }
                let kind = match (numer, neg) {
                    (false, false) => PartKind::Free,
                    (true, false) => PartKind::SignedDistinct,
                    (true, true) => PartKind::Distinct,
                    (false, true) => PartKind::AlternatingFree,
                };
                Some(PartClass {
                    residue: r,
                    modulus: m,
                    kind,
                })
            })
            .collect()
    }
}

/// The conjectured product for `H_l(1)`.
pub fn kr_product(ell: u8) -> Option<ProductSide> {
    let p = ProductSide::new();
    Some(match ell {
        1 => p.den(&[1, 4, 6, 8, 11], 12),
        2 => p.num(&[6], 12).den(&[2, 3, 4], 6),
        3 => p.den(&[4, 5, 6, 7, 8], 12),
        4 => p.den(&[1], 4).den(&[4, 11], 12),
        5 => p.den(&[1], 4).den(&[7, 8], 12),
        6 => p.num(&[3], 12).den(&[1, 2], 4),
        7 => p.num(&[9], 12).den(&[2, 3], 4),
        8 => p.den(&[3], 4).den(&[1, 8], 12),
        9 => p.den(&[3], 4).den(&[4, 5], 12),
        10 => p.den(&[1], 3).den(&[3, 6, 11], 12),
        11 => p.den(&[2], 3).den(&[3, 6, 7], 12),
        _ => return None,
    })
}

/// The `H_2` character product written over the modulus 12.
pub fn h2_mod12_product() -> ProductSide {
    ProductSide::new().num(&[6], 12).den(&[2, 3, 4, 8, 9, 10], 12)
}

/// `1 / ((q^2;q^3) (q, q^6, q^9; q^12))`.
pub fn sec5_product() -> ProductSide {
    ProductSide::new().den(&[2], 3).den(&[1, 6, 9], 12)
}

/// `q^-1 (1 + q + q^2) / ((q^3;q^4) (q^4, q^5; q^12))`.
pub fn sec6_product() -> ProductSide {
    kr_product(9).expect("catalog").prefactor(&[(1, -1), (1, 0), (1, 1)])
}

/// `(q;q^2) (q^2, q^10, q^12; q^12) / ((q^2;q^2) (q, q^11; q^12))`.
pub fn h1_final_product() -> ProductSide {
    ProductSide::new()
        .num(&[1], 2)
        .num(&[2, 10, 12], 12)
        .den(&[2], 2)
        .den(&[1, 11], 12)
}

/// `(-q;q^2) (q, q^11, q^12; q^12) (q^10, q^14; q^24) / (q^2;q^2)`.
pub fn ms_112_product() -> ProductSide {
    ProductSide::new()
        .num_neg(&[1], 2)
        .num(&[1, 11, 12], 12)
        .num(&[10, 14], 24)
        .den(&[2], 2)
}

/// `1 / (q^4, q^5, q^6, q^6, q^7, q^8, q^10, q^14; q^12)`.
pub fn ms_130_product() -> ProductSide {
    ProductSide::new().den(&[4, 5, 6, 6, 7, 8, 10, 14], 12)
}

/// `(q^(3b); q^12) / (q^2, q^b; q^4)`, the closed form at `a = 0`.
pub fn prop1_closed_product(b: i64) -> ProductSide {
    ProductSide::new().num(&[3 * b], 12).den(&[2, b], 4)
}

/// `(q^(3b); q^12) / (q^2, q^b, q^(2b-2); q^4)`.
pub fn remark_product(b: i64) -> ProductSide {
    ProductSide::new().num(&[3 * b], 12).den(&[2, b, 2 * b - 2], 4)
}

/// The q-Kummer evaluation of `H_10(1)`:
/// `(-q;q) (-q^5;q^6) (q^5, q^9, q^12; q^12) / (-q^5, q^4, q^6; q^6)`.
pub fn h10_kummer_product() -> ProductSide {
    ProductSide::new()
        .num_neg(&[1], 1)
        .num_neg(&[5], 6)
        .num(&[5, 9, 12], 12)
        .den_neg(&[5], 6)
        .den(&[4, 6], 6)
}

/// `(-q^2;q) (-q^5;q^6) (q^9, q^13, q^12; q^12) / (-q^5, q^8, q^6; q^6)`.
pub fn h11_kummer_product() -> ProductSide {
    ProductSide::new()
        .num_neg(&[2], 1)
        .num_neg(&[5], 6)
        .num(&[9, 13, 12], 12)
        .den_neg(&[5], 6)
        .den(&[8, 6], 6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_product_small() {
        let p = kr_product(1).unwrap().eval(7).unwrap();
        assert_eq!(
            p,
            LaurentSeries::from_terms(&[(1, 0), (1, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6)], 7)
        );
    }

    #[test]
    fn h2_product_small() {
        let p = kr_product(2).unwrap().eval(3).unwrap();
        assert_eq!(p, LaurentSeries::from_terms(&[(1, 0), (1, 2)], 3));
    }

    #[test]
    fn h2_forms_agree() {
        assert_eq!(
            kr_product(2).unwrap().eval(80).unwrap(),
            h2_mod12_product().eval(80).unwrap()
        );
    }

    #[test]
    fn kummer_products_collapse() {
        for (k, ell) in [(h10_kummer_product(), 10), (h11_kummer_product(), 11)] {
            assert_eq!(k.eval(80).unwrap(), kr_product(ell).unwrap().eval(80).unwrap());
        }
    }

    #[test]
    fn sec6_has_negative_exponent() {
        let p = sec6_product().eval(5).unwrap();
        assert_eq!(p.offset(), -1);
        assert!(sec6_product().classes().is_some());
    }
}
