use crate::error::{Error, Result};
use crate::kr::{j5, j8, HSeries, JFamily};
use crate::report::Mismatch;
use crate::series::BivariateSeries;

/// The series a functional equation is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FeTarget {
    H(u8),
    /// `H_5(x q^2)`
    H5Shifted,
    J5,
    J8,
    J(JFamily),
}

impl FeTarget {
    pub fn label(&self) -> String {
        match self {
            FeTarget::H(l) => format!("H{l}"),
            FeTarget::H5Shifted => "H5(xq^2)".into(),
            FeTarget::J5 => "J5".into(),
            FeTarget::J8 => "J8".into(),
            FeTarget::J(f) => f.label(),
        }
    }

    pub fn series(&self, xcap: u32, qprec: i64) -> Result<BivariateSeries> {
        match *self {
            FeTarget::H(l) => HSeries::new(l)?.series(xcap, qprec),
            FeTarget::H5Shifted => Ok(HSeries::Catalog(5).series(xcap, qprec)?.substitute(2)),
            FeTarget::J5 => j5(xcap, qprec),
            FeTarget::J8 => j8(xcap, qprec),
            FeTarget::J(f) => f.series(xcap, qprec),
        }
    }
}

/// A polynomial in `x` and `q` as `(x_degree, coefficient, q_exponent)` triples.
pub type XPoly = Vec<(u32, i64, i64)>;

/// `F(x) = sum_t P_t(x) F(x q^(m_t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquation {
    pub target: FeTarget,
    pub terms: Vec<(i64, XPoly)>,
}

type Term = (i64, &'static [(u32, i64, i64)]);

fn fe(target: FeTarget, terms: &[Term]) -> FunctionalEquation {
    FunctionalEquation {
        target,
        terms: terms.iter().map(|&(m, p)| (m, p.to_vec())).collect(),
    }
}

impl FunctionalEquation {
    /// Every q-difference equation used on the way to the product formulas.
    pub fn catalog() -> Vec<FunctionalEquation> {
        use FeTarget::*;
        vec![
            fe(
                H(1),
                &[
                    (2, &[(0, 1, 0), (1, 1, 1), (1, 1, 2), (1, -1, 3)]),
                    (4, &[(1, 1, 3), (2, -1, 5), (2, 1, 6), (2, 1, 7)]),
                    (6, &[(2, 1, 8), (3, -1, 12)]),
                ],
            ),
            three_term(H(3), 4, 5, 3, 12, 4),
            three_term(H(4), 1, 2, 3, 6, 4),
            fe(
                H(5),
                &[
                    (2, &[(0, 1, 0), (1, 1, 3)]),
                    (4, &[(1, 1, 2), (2, 1, 1)]),
                    (6, &[(2, 1, 6), (3, -1, 8)]),
                ],
            ),
            three_term(H(6), 2, 1, 1, 4, 4),
            three_term(H(7), 2, 3, 3, 8, 4),
            three_term(H(8), 1, 2, 1, 6, 2),
            three_term(H(9), 3, 4, 3, 10, 4),
            fe(
                J5,
                &[
                    (2, &[(0, 1, 0), (1, 1, 5)]),
                    (4, &[(1, 1, 2), (2, 1, 1)]),
                    (6, &[(2, 1, 6), (3, -1, 10)]),
                ],
            ),
            three_term(J8, 3, 2, 1, 6, 4),
            fe(
                H5Shifted,
                &[
                    (2, &[(0, 1, 0), (1, 1, 5)]),
                    (4, &[(1, 1, 4), (2, 1, 5)]),
                    (6, &[(2, 1, 10), (3, -1, 14)]),
                ],
            ),
            fe(
                J(JFamily::J10),
                &[
                    (3, &[(0, 1, -2), (0, 1, 0), (2, 1, 4), (2, 1, 6)]),
                    (6, &[(0, -1, -2), (2, -1, 5), (2, -1, 9), (4, -1, 16)]),
                ],
            ),
            fe(
                J(JFamily::J11),
                &[
                    (3, &[(0, 1, 0), (0, 1, 2), (2, 1, 6), (2, 1, 8)]),
                    (6, &[(0, -1, 2), (2, -1, 9), (2, -1, 13), (4, -1, 20)]),
                ],
            ),
            fe(
                J(JFamily::J12(0)),
                &[
                    (3, &[(0, 1, 0), (0, 1, -2), (2, 1, 4), (2, 1, 8)]),
                    (6, &[(0, -1, -2), (2, -1, 7), (2, -1, 9), (4, -1, 18)]),
                ],
            ),
            fe(
                J(JFamily::J12(2)),
                &[
                    (3, &[(0, 1, 0), (0, 1, 4), (2, 1, 8), (2, 1, 10)]),
                    (6, &[(0, -1, 4), (2, -1, 13), (2, -1, 15), (4, -1, 24)]),
                ],
            ),
        ]
    }

    pub fn find(label: &str) -> Option<FunctionalEquation> {
        Self::catalog().into_iter().find(|f| f.target.label() == label)
    }

    pub fn label(&self) -> String {
        self.target.label()
    }

    /// Checks every x-component up to `xcap` below `qprec`.
    pub fn check(&self, xcap: u32, qprec: i64) -> Result<Option<Mismatch>> {
        let low = self
            .terms
            .iter()
            .flat_map(|(_, p)| p.iter().map(|&(_, _, e)| e))
            .min()
            .unwrap_or(0)
            .min(0);
        let work = qprec - low + 8;
        let f = self.target.series(xcap, work)?;
        let mut rhs = BivariateSeries::zero(xcap, work);
        for (m, p) in &self.terms {
            let poly = BivariateSeries::polynomial(p, xcap, work);
            rhs = rhs.add(&f.substitute(*m).mul_poly(&poly));
        }
        if rhs.qprec() < qprec || f.qprec() < qprec {
            return Err(Error::InsufficientPrecision {
                wanted: qprec,
                got: rhs.qprec().min(f.qprec()),
            });
        }
        let lhs = f.truncate(xcap, qprec);
        let rhs = rhs.truncate(xcap, qprec);
        Ok(lhs.first_mismatch(&rhs).map(|(n, (exp, a, b))| Mismatch {
            exp,
            lhs: a.to_string(),
            rhs: b.to_string(),
            at: Some(format!("x^{n}")),
        }))
    }
}

/// `(1 + x q^s0) F(xq^2) + x q^s1 (1 + x q^s2) F(xq^4) + x^2 q^s3 (1 - x q^s4) F(xq^6)`.
fn three_term(target: FeTarget, s0: i64, s1: i64, s2: i64, s3: i64, s4: i64) -> FunctionalEquation {
    FunctionalEquation {
        target,
        terms: vec![
            (2, vec![(0, 1, 0), (1, 1, s0)]),
            (4, vec![(1, 1, s1), (2, 1, s1 + s2)]),
            (6, vec![(2, 1, s3), (3, -1, s3 + s4)]),
        ],
    }
}
