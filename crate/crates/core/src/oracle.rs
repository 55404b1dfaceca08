//! Brute-force partition counting, used as an independent route to product
//! sides. Only additions and subtractions of counts; no series inversion.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// How the parts of one class may be used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartKind {
    /// Any multiplicity: `1 / (q^r; q^m)_inf`.
    Free,
    /// At most once, weighted by `-1` per part: `(q^r; q^m)_inf`.
    SignedDistinct,
    /// At most once: `(-q^r; q^m)_inf`.
    Distinct,
    /// Any multiplicity, weighted by `-1` per part: `1 / (-q^r; q^m)_inf`.
    AlternatingFree,
}

/// Parts `r, r + m, r + 2m, ...` (`r >= 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartClass {
    pub residue: i64,
    pub modulus: i64,
    pub kind: PartKind,
}

impl PartClass {
    /// Parses `r:m` or `r:m:kind` with kind one of `free`, `signed`,
    /// `distinct`, `alt`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::BadParameter(format!("bad part class {s:?}; expected r:m[:kind]"));
        let mut it = s.trim().split(':');
        let residue: i64 = it.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let modulus: i64 = it.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let kind = match it.next() {
            None | Some("free") => PartKind::Free,
            Some("signed") => PartKind::SignedDistinct,
            Some("distinct") => PartKind::Distinct,
            Some("alt") => PartKind::AlternatingFree,
            Some(_) => return Err(bad()),
        };
        if it.next().is_some() || residue < 1 || modulus < 1 {
            return Err(bad());
        }
        Ok(Self {
            residue,
            modulus,
            kind,
        })
    }
}

/// Signed partition counts below `limit` for the given classes; the empty
/// list gives `1`.
pub fn oracle_partitions(classes: &[PartClass], limit: i64) -> Result<LaurentSeries> {
    let len = limit.max(0) as usize;
    let mut counts = vec![BigInt::zero(); len];
    if len > 0 {
        counts[0] = BigInt::from(1);
    }
    for class in classes {
        if class.residue < 1 || class.modulus < 1 {
            return Err(Error::BadParameter(format!("part class {class:?}")));
        }
        let mut part = class.residue as usize;
        while part < len {
            match class.kind {
                PartKind::Free => {
                    for n in part..len {
                        let prev = counts[n - part].clone();
                        counts[n] += prev;
                    }
                }
                PartKind::AlternatingFree => {
                    for n in part..len {
                        let prev = counts[n - part].clone();
                        counts[n] -= prev;
                    }
                }
                PartKind::Distinct => {
                    for n in (part..len).rev() {
                        let prev = counts[n - part].clone();
                        counts[n] += prev;
                    }
                }
                PartKind::SignedDistinct => {
                    for n in (part..len).rev() {
                        let prev = counts[n - part].clone();
                        counts[n] -= prev;
                    }
                }
            }
            part += class.modulus as usize;
        }
    }
    Ok(LaurentSeries::new(0, counts, limit.max(0)))
}

/// Oracle value of `sum c q^e` times the class product, below `limit`.
pub fn oracle_with_prefactor(
    prefactor: &[(i64, i64)],
    classes: &[PartClass],
    limit: i64,
) -> Result<LaurentSeries> {
    if prefactor.is_empty() {
        return oracle_partitions(classes, limit);
    }
    let lowest = prefactor.iter().map(|&(_, e)| e).min().unwrap_or(0);
    let base = oracle_partitions(classes, limit - lowest)?;
    let mut acc = LaurentSeries::zero(limit);
    for &(c, e) in prefactor {
        acc = &acc + &base.shift(e).scale_i64(c);
    }
    Ok(acc.truncate(limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(r: i64, m: i64) -> PartClass {
        PartClass {
            residue: r,
            modulus: m,
            kind: PartKind::Free,
        }
    }

    #[test]
    fn rogers_ramanujan_classes() {
        let s = oracle_partitions(&[free(1, 5), free(4, 5)], 10).unwrap();
        assert_eq!(s.coeff(4), Some(BigInt::from(2)));
    }

    #[test]
    fn empty_is_one() {
        assert_eq!(oracle_partitions(&[], 9).unwrap(), LaurentSeries::one(9));
    }

    #[test]
    fn mod12_classes_hand_count() {
        let cls: Vec<_> = [1, 4, 6, 8, 11].iter().map(|&r| free(r, 12)).collect();
        let s = oracle_partitions(&cls, 7).unwrap();
        assert_eq!(s.coeff(6), Some(BigInt::from(3)));
    }

    #[test]
    fn euler_pentagonal() {
        let s = oracle_partitions(
            &[PartClass {
                residue: 1,
                modulus: 1,
                kind: PartKind::SignedDistinct,
            }],
            13,
        )
        .unwrap();
        let expect = LaurentSeries::from_terms(&[(1, 0), (-1, 1), (-1, 2), (1, 5), (1, 7), (-1, 12)], 13);
        assert_eq!(s, expect);
    }

    #[test]
    fn parse_classes() {
        assert_eq!(PartClass::parse("3:12").unwrap(), free(3, 12));
        assert_eq!(PartClass::parse("5:6:alt").unwrap().kind, PartKind::AlternatingFree);
        assert!(PartClass::parse("0:4").is_err());
        assert!(PartClass::parse("1:4:weird").is_err());
    }
}
