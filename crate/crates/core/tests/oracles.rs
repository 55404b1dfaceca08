//! Sum sides and product sides against naive, independently written
//! computations: plain `i128` coefficient vectors, explicit enumeration of
//! summation indices and of partitions.

use qrv_core::kr::{self, h_cd, j_coeff, HSeries, JFamily};
use qrv_core::series::LaurentSeries;

const P: usize = 40;

/// Truncated power series below `q^P`.
#[derive(Clone, Debug, PartialEq)]
struct Naive(Vec<i128>);

impl Naive {
    fn monomial(c: i128, e: i64) -> Self {
        let mut v = vec![0; P];
        if (0..P as i64).contains(&e) {
            v[e as usize] = c;
        }
        Naive(v)
    }

    /// Divides by `1 - q^m`, `m >= 1`.
    fn div_one_minus(mut self, m: usize) -> Self {
        for n in m..P {
            self.0[n] += self.0[n - m];
        }
        self
    }

    /// Divides by `1 + q^m`, `m >= 1`.
    fn div_one_plus(mut self, m: usize) -> Self {
        for n in m..P {
            self.0[n] -= self.0[n - m];
        }
        self
    }

    /// Divides by `(q^base; q^step)_n`.
    fn div_poch(self, base: usize, step: usize, n: i64) -> Self {
        (0..n.max(0) as usize).fold(self, |s, i| s.div_one_minus(base + step * i))
    }

    fn add(&mut self, o: &Naive) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }

    fn of(s: &LaurentSeries) -> Self {
        assert!(s.prec() >= P as i64);
        Naive((0..P as i64).map(|e| s.coeff(e).unwrap().try_into().unwrap()).collect())
    }
}

fn linear(ell: u8) -> (i64, i64, i64) {
    match ell {
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
        _ => (2, 4, 5),
    }
}

/// `H_l(1)` by looping over every `(i, j, k)` with a visible exponent.
fn h_brute(ell: u8) -> Naive {
    let (a, b, c) = linear(ell);
    let mut acc = Naive(vec![0; P]);
    for i in 0..P as i64 {
        for j in 0..P as i64 {
            for k in 0..P as i64 {
                let n = i + 2 * j + 3 * k;
                let lin = a * i + b * j + c * k;
                let (e, sign) = if ell <= 9 {
                    (n * (n - 1) + 3 * k * k + lin, if k % 2 == 1 { -1 } else { 1 })
                } else {
                    (n * (n - 1) / 2 + j * j + lin, 1)
                };
                if e >= P as i64 {
                    continue;
                }
                assert!(e >= 0);
                let t = Naive::monomial(sign, e).div_poch(1, 1, i);
                let t = if ell <= 9 {
                    t.div_poch(4, 4, j).div_poch(6, 6, k)
                } else {
                    t.div_poch(2, 2, j).div_poch(3, 3, k)
                };
                acc.add(&t);
            }
        }
    }
    acc
}

#[test]
fn triple_sums_match_brute_force() {
    for ell in 1..=11u8 {
        let got = HSeries::new(ell).unwrap().at_one(P as i64).unwrap();
        assert_eq!(Naive::of(&got), h_brute(ell), "H{ell}");
    }
}

/// Partitions of `n` into parts from `allowed`, listed explicitly.
fn count_partitions(n: usize, allowed: &[usize]) -> i128 {
    fn go(n: usize, max_idx: usize, allowed: &[usize]) -> i128 {
        if n == 0 {
            return 1;
        }
        (0..=max_idx)
            .filter(|&i| allowed[i] <= n)
            .map(|i| go(n - allowed[i], i, allowed))
            .sum()
    }
    if allowed.is_empty() {
        return (n == 0) as i128;
    }
    go(n, allowed.len() - 1, allowed)
}

#[test]
fn denominator_products_count_partitions() {
    // products with no numerator: plain partitions into the listed classes
    let cases: [(u8, &[usize], usize); 5] = [
        (1, &[1, 4, 6, 8, 11], 12),
        (3, &[4, 5, 6, 7, 8], 12),
        (10, &[1, 4, 7, 10, 3, 6, 11], 12),
        (4, &[1, 5, 9, 4, 11], 12),
        (9, &[3, 7, 11, 4, 5], 12),
    ];
    for (ell, residues, m) in cases {
        let mut parts: Vec<usize> = (1..P).filter(|p| residues.contains(&(p % m))).collect();
        parts.sort_unstable();
        parts.dedup();
        let want: Vec<i128> = (0..P).map(|n| count_partitions(n, &parts)).collect();
        let got = kr::kr_product(ell).unwrap().eval(P as i64).unwrap();
        assert_eq!(Naive::of(&got).0, want, "C:H{ell}");
    }
}

#[test]
fn mod_12_h1_count_at_six() {
    let parts: Vec<usize> = (1..P).filter(|p| [1, 4, 6, 8, 11].contains(&(p % 12))).collect();
    assert_eq!(count_partitions(6, &parts), 3);
    let parts: Vec<usize> = (1..P).filter(|p| [1, 4].contains(&(p % 5))).collect();
    assert_eq!(count_partitions(4, &parts), 2);
}

#[test]
fn h_cd_matches_definition() {
    for (two_c, d) in [(5, 1), (2, 0), (1, 0), (4, 2)] {
        for n in 0..10i64 {
            let mut acc = Naive(vec![0; P]);
            for k in 0..=n / 3 {
                for j in 0..=(n - 3 * k) / 2 {
                    let e = 3 * k * k + (two_c - 1) * j + 3 * d * k;
                    let sign = if k % 2 == 1 { -1 } else { 1 };
                    let t = Naive::monomial(sign, e)
                        .div_poch(1, 1, n - 2 * j - 3 * k)
                        .div_poch(4, 4, j)
                        .div_poch(6, 6, k);
                    acc.add(&t);
                }
            }
            let got = h_cd(two_c, d, n, P as i64).unwrap();
            assert_eq!(Naive::of(&got), acc, "2c={two_c} d={d} N={n}");
        }
        assert!(h_cd(two_c, d, -1, P as i64).unwrap().is_zero());
    }
}

#[test]
fn j_coefficients_match_definition() {
    // j_M = sum_k q^((3k^2+tk)/2) / ((-q^p;q)_{2M+k} (q^2;q^2)_{M-k} (q^3;q^3)_k)
    for (f, p, t) in [(JFamily::J10, 1, 3), (JFamily::J11, 2, 1), (JFamily::J12(0), 1, -1), (JFamily::J12(2), 3, 3)] {
        for m in 0..8i64 {
            let mut acc = Naive(vec![0; P]);
            for k in 0..=m {
                let mut term = Naive::monomial(1, (3 * k * k + t * k) / 2);
                for i in 0..(2 * m + k) as usize {
                    term = term.div_one_plus(p + i);
                }
                acc.add(&term.div_poch(2, 2, m - k).div_poch(3, 3, k));
            }
            let got = j_coeff(f, m, P as i64).unwrap();
            assert_eq!(Naive::of(&got), acc, "{} M={m}", f.label());
        }
    }
}

#[test]
fn h10_is_prefactor_times_j10() {
    // (-q;q)_inf J10(1), with the prefactor expanded naively
    let j = Naive::of(&JFamily::J10.at_one(P as i64).unwrap());
    let mut prod = j.0.clone();
    for m in 1..P {
        // multiply by (1 + q^m)
        for n in (m..P).rev() {
            prod[n] += prod[n - m];
        }
    }
    let h10 = Naive::of(&HSeries::Catalog(10).at_one(P as i64).unwrap());
    assert_eq!(h10.0, prod);
}
