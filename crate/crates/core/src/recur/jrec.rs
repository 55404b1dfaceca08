use crate::error::Result;
use crate::kr::{HcdTable, JFamily, JTable};
use crate::report::Mismatch;
use crate::series::LaurentSeries;

use super::{check_linear, low, Poly};

/// The coefficient-level recurrences that the functional equations reduce
/// to, transcribed as displayed (with misprints corrected; see
/// [`ReducedRecurrence::as_printed`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReducedRecurrence {
    /// `h_{5/2,1,N}`, behind `H_1`.
    H1,
    /// `h_{l,N}` for `l` in 3..=9.
    H(u8),
    J(JFamily),
}

impl ReducedRecurrence {
    pub const ALL: [ReducedRecurrence; 12] = [
        ReducedRecurrence::H1,
        ReducedRecurrence::H(3),
        ReducedRecurrence::H(4),
        ReducedRecurrence::H(5),
        ReducedRecurrence::H(6),
        ReducedRecurrence::H(7),
        ReducedRecurrence::H(8),
        ReducedRecurrence::H(9),
        ReducedRecurrence::J(JFamily::J10),
        ReducedRecurrence::J(JFamily::J11),
        ReducedRecurrence::J(JFamily::J12(0)),
        ReducedRecurrence::J(JFamily::J12(2)),
    ];

    pub fn label(&self) -> String {
        match self {
            ReducedRecurrence::H1 => "h1".into(),
            ReducedRecurrence::H(l) => format!("h{l}"),
            ReducedRecurrence::J(f) => format!("j{}", &f.label()[1..]).replace(',', "_"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.label().eq_ignore_ascii_case(s))
    }

    /// `(2c, d)` of the underlying `h_{c,d,N}`.
    fn h_params(&self) -> Option<(i64, i64)> {
        Some(match self {
            ReducedRecurrence::H1 => (5, 1),
            ReducedRecurrence::H(3) => (-1, 0),
            ReducedRecurrence::H(4) => (2, 0),
            ReducedRecurrence::H(5) => (-4, -1),
            ReducedRecurrence::H(6) => (-1, -1),
            ReducedRecurrence::H(7) => (1, 0),
            ReducedRecurrence::H(8) | ReducedRecurrence::H(9) => (0, 0),
            _ => return None,
        })
    }

    /// Entry 0 multiplies the current term, entry `l` the term `l` back.
    pub fn coefficients(&self, n: i64) -> Vec<Poly> {
        let n2 = 2 * n;
        let lhs = vec![(1, 0), (-1, n2)];
        match *self {
            ReducedRecurrence::H1 => vec![
                lhs,
                vec![(1, 0), (1, 1), (-1, 2), (1, n2)],
                vec![(-1, 1), (1, 2), (1, 3), (1, n2)],
                vec![(-1, 3)],
            ],
            ReducedRecurrence::H(3) => vec![
                lhs,
                vec![(1, 0), (1, n2 - 1)],
                vec![(1, -2), (1, n2 - 2)],
                vec![(-1, -2)],
            ],
            ReducedRecurrence::H(4) => vec![
                lhs,
                vec![(1, 0), (1, n2 - 1)],
                vec![(1, 1), (1, n2 - 2)],
                vec![(-1, 1)],
            ],
            ReducedRecurrence::H(5) => vec![
                lhs,
                vec![(1, 1), (1, n2 - 2)],
                vec![(1, -5), (1, n2 - 4)],
                vec![(-1, -4)],
            ],
            ReducedRecurrence::H(6) => vec![
                lhs,
                vec![(1, 1), (1, n2 - 2)],
                vec![(1, -2), (1, n2 - 4)],
                vec![(-1, -1)],
            ],
            ReducedRecurrence::H(7) => vec![
                lhs,
                vec![(1, 0), (1, n2 - 1)],
                vec![(1, 0), (1, n2 - 2)],
                vec![(-1, 0)],
            ],
            ReducedRecurrence::H(8) | ReducedRecurrence::H(9) => vec![
                lhs,
                vec![(1, 0), (1, n2 - 1)],
                vec![(1, -1), (1, n2 - 2)],
                vec![(-1, -1)],
            ],
            ReducedRecurrence::H(l) => panic!("no reduced recurrence for h{l}"),
            ReducedRecurrence::J(f) => {
                let m6 = 6 * n;
                let (lo, hi, g, u, v) = match f {
                    JFamily::J10 => (-2, 0, 2, -5, -1),
                    JFamily::J11 => (0, 2, 2, -3, 1),
                    JFamily::J12(0) => (-2, 0, 4, -3, -1),
                    _ => (0, 4, 2, -1, 1),
                };
                // (1 - q^(6M+lo)) (1 - q^(6M+hi))
                let mut lead = vec![(1, 0), (-1, m6 + lo), (-1, m6 + hi), (1, 2 * m6 + lo + hi)];
                if lo == hi {
                    lead = vec![(1, 0), (-2, m6 + lo), (1, 2 * m6 + 2 * lo)];
                }
                vec![
                    lead,
                    vec![(1, 0), (1, g), (-1, m6 + u), (-1, m6 + v)],
                    vec![(-1, g)],
                ]
            }
        }
    }

    /// The recurrence exactly as printed, where that differs from
    /// [`coefficients`](Self::coefficients).
    pub fn as_printed(&self, n: i64) -> Option<Vec<Poly>> {
        let mut cs = self.coefficients(n);
        match self {
            // the h_{N-1} term is printed as h_N
            ReducedRecurrence::H(7) => {
                let moved = cs[1].clone();
                cs[0].extend(moved.into_iter().map(|(c, e)| (-c, e)));
                cs[1].clear();
            }
            // the last term is printed with j_{M-1}
            ReducedRecurrence::J(JFamily::J12(_)) => {
                let last = cs.pop()?;
                cs[1].extend(last);
            }
            _ => return None,
        }
        Some(cs)
    }

    /// Extra precision needed so that negative exponents do not push any
    /// product below the comparison order.
    fn slack(&self) -> i64 {
        let worst = (1..4).flat_map(|n| self.coefficients(n)).map(|c| -low(&c)).max().unwrap_or(0);
        8 + worst.max(0)
    }

    pub fn sequence(&self, n_max: i64, qprec: i64) -> Result<Box<dyn Fn(i64) -> LaurentSeries>> {
        Ok(match (self.h_params(), self) {
            (Some((two_c, d)), _) => {
                let tab = HcdTable::new(two_c, d, n_max, qprec)?;
                Box::new(move |n| tab.get(n))
            }
            (None, ReducedRecurrence::J(f)) => {
                let tab = JTable::new(*f, n_max, qprec)?;
                Box::new(move |n| tab.get(n))
            }
            _ => unreachable!("every recurrence has a sequence"),
        })
    }
}

fn check_with(
    r: ReducedRecurrence,
    n_max: i64,
    qprec: i64,
    coeffs: impl Fn(i64) -> Vec<Poly>,
) -> Result<Option<Mismatch>> {
    let seq = r.sequence(n_max, qprec + r.slack())?;
    let label = if matches!(r, ReducedRecurrence::J(_)) { "M" } else { "N" };
    check_linear(0..=n_max, qprec, label, coeffs, seq)
}

/// Checks a reduced recurrence on the directly summed coefficients for
/// indices `0..=n_max`.
pub fn check_reduced(r: ReducedRecurrence, n_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    check_with(r, n_max, qprec, |n| r.coefficients(n))
}

/// Same, with the recurrence as printed. Only meaningful where
/// [`ReducedRecurrence::as_printed`] differs.
pub fn check_as_printed(r: ReducedRecurrence, n_max: i64, qprec: i64) -> Result<Option<Mismatch>> {
    check_with(r, n_max, qprec, |n| r.as_printed(n).unwrap_or_else(|| r.coefficients(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for r in ReducedRecurrence::ALL {
            assert_eq!(ReducedRecurrence::parse(&r.label()), Some(r));
        }
        assert_eq!(ReducedRecurrence::J(JFamily::J12(2)).label(), "j12_2");
    }

    #[test]
    fn boundary_index_is_trivial() {
        for r in ReducedRecurrence::ALL {
            let cs = r.coefficients(0);
            assert!(crate::qfactor::exact_poly(&cs[0]).is_zero(), "{}", r.label());
        }
    }

    #[test]
    fn corrected_forms_hold() {
        for r in ReducedRecurrence::ALL {
            assert_eq!(check_reduced(r, 8, 60).unwrap(), None, "{}", r.label());
        }
    }

    #[test]
    fn printed_misprints_fail() {
        for r in [
            ReducedRecurrence::H(7),
            ReducedRecurrence::J(JFamily::J12(0)),
            ReducedRecurrence::J(JFamily::J12(2)),
        ] {
            assert!(check_as_printed(r, 8, 60).unwrap().is_some(), "{}", r.label());
        }
    }
}
