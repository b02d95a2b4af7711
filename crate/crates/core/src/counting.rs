//! Point counts of `y^2 = f(x)` over `F_p` and `F_{p^2}`.
//!
//! The affine count is `q + sum_x chi(f(x))`. The character sum is evaluated
//! with a forward-difference table: over `F_p` directly on `f`, over `F_{p^2}`
//! on the norm polynomial `N_b(a) = f(a + b t) f(a - b t)`, which has
//! coefficients in `F_p` and degree `2 deg f`. Each point then costs
//! `2 deg f` modular additions and one table lookup. The Horner route
//! ([`count_points_horner`]) is kept as the reference.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{character_table, reduce_i64, sieve_primes, CharacterTable, Fp2, Fp2Elem};
use crate::{Error, Result};

/// `y^2 = f(x)` with `f` in `Z[x]` squarefree of degree 3 to 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticCurve {
    label: String,
    coeffs: Vec<i64>,
    genus: u8,
    disc: BigInt,
}

impl HyperellipticCurve {
    /// `coeffs` are ascending: `coeffs[i]` multiplies `x^i`.
    pub fn new(label: impl Into<String>, coeffs: &[i64]) -> Result<Self> {
        let mut coeffs = coeffs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let degree = coeffs.len().saturating_sub(1);
        let genus = match degree {
            3 | 4 => 1,
            5 | 6 => 2,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "f must have degree 3..=6, got {degree}"
                )))
            }
        };
        let disc = discriminant(&coeffs);
        if disc.is_zero() {
            return Err(Error::InvalidInput("f is not squarefree (zero discriminant)".into()));
        }
        Ok(HyperellipticCurve {
            label: label.into(),
            coeffs,
            genus,
            disc,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn genus(&self) -> u8 {
        self.genus
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().expect("degree >= 3")
    }

    /// Why `p` is a bad prime for this model, if it is one.
    pub fn bad_reduction(&self, p: u64) -> Option<String> {
        if p == 2 {
            return Some("characteristic 2 is not supported".into());
        }
        if self.leading().rem_euclid(p as i64) == 0 {
            return Some("p divides the leading coefficient of f".into());
        }
        if (&self.disc % BigInt::from(p)).is_zero() {
            return Some("p divides disc(f)".into());
        }
        None
    }
}

/// Discriminant of an integer polynomial via the Sylvester resultant.
pub fn discriminant(coeffs: &[i64]) -> BigInt {
    let n = coeffs.len() - 1;
    let f: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let df: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| BigInt::from(c) * i)
        .collect();
    let res = resultant(&f, &df);
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    res * sign / &f[n]
}

/// Resultant of two ascending coefficient vectors (Bareiss elimination on
/// the Sylvester matrix).
fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            mat[n + row][row + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn check_counting_input(curve: &HyperellipticCurve, p: u64, ext: u32) -> Result<()> {
    if ext != 1 && ext != 2 {
        return Err(Error::InvalidInput(format!("extension degree must be 1 or 2, got {ext}")));
    }
    crate::arith::require_odd_prime(p)?;
    if let Some(reason) = curve.bad_reduction(p) {
        return Err(Error::BadReduction { p, reason });
    }
    Ok(())
}

/// `#C(F_{p^ext})` for the smooth projective model.
pub fn count_points(curve: &HyperellipticCurve, p: u64, ext: u32) -> Result<u64> {
    check_counting_input(curve, p, ext)?;
    let table = character_table(p)?;
    count_points_with(curve, &table, ext)
}

/// As [`count_points`] but reusing a character table; `p` must already be a
/// good prime.
pub(crate) fn count_points_with(
    curve: &HyperellipticCurve,
    table: &CharacterTable,
    ext: u32,
) -> Result<u64> {
    let p = table.p();
    let f: Vec<u64> = curve.coeffs.iter().map(|&c| reduce_i64(c, p)).collect();
    let char_sum = match ext {
        1 => difference_char_sum(&f, table),
        _ => norm_char_sum(&f, table),
    };
    finish_count(curve, table, ext, char_sum)
}

fn finish_count(curve: &HyperellipticCurve, table: &CharacterTable, ext: u32, char_sum: i64) -> Result<u64> {
    let p = table.p();
    let q = p.pow(ext) as i64;
    let infinity = if curve.degree() % 2 == 1 {
        1
    } else if ext == 2 {
        2
    } else {
        1 + table.chi_i64(curve.leading()) as i64
    };
    let count = q + char_sum + infinity;
    hasse_weil_check(curve.genus(), p, ext, count)?;
    Ok(count as u64)
}

/// `|count - q - 1| <= 2 g sqrt(q)`, in integers.
fn hasse_weil_check(genus: u8, p: u64, ext: u32, count: i64) -> Result<()> {
    let q = p.pow(ext) as i128;
    let dev = count as i128 - q - 1;
    let g = genus as i128;
    if count < 0 || dev * dev > 4 * g * g * q {
        return Err(Error::WeilViolation {
            p,
            detail: format!("#C(F_{{{p}^{ext}}}) = {count} outside q + 1 +- {}sqrt(q)", 2 * g),
        });
    }
    Ok(())
}

/// `sum_{a in F_p} chi(h(a))` for `h` with coefficients in `0..p`.
fn difference_char_sum(h: &[u64], table: &CharacterTable) -> i64 {
    let p = table.p();
    let deg = h.len().saturating_sub(1);
    let mut diff = newton_differences(h, p);
    let chi = table.values();
    let mut sum = 0i64;
    for _ in 0..p {
        sum += chi[diff[0] as usize] as i64;
        for k in 0..deg {
            let t = diff[k] + diff[k + 1];
            diff[k] = if t >= p { t - p } else { t };
        }
    }
    sum
}

/// Forward differences `Delta^k h(0)` for `k = 0..=deg h`, reduced mod `p`.
fn newton_differences(h: &[u64], p: u64) -> Vec<u64> {
    let deg = h.len().saturating_sub(1);
    let eval = |x: u64| {
        h.iter()
            .rev()
            .fold(0u64, |acc, &c| (crate::arith::mul_mod(acc, x, p) + c) % p)
    };
    let mut row: Vec<u64> = (0..=deg as u64).map(|x| eval(x % p)).collect();
    let mut diffs = Vec::with_capacity(deg + 1);
    for _ in 0..=deg {
        diffs.push(row[0]);
        row = row.windows(2).map(|w| (w[1] + p - w[0]) % p).collect();
    }
    diffs
}

/// `sum_{y in F_{p^2}} chi_{p^2}(f(y))` via norm polynomials, pairing `b`
/// with `-b`.
fn norm_char_sum(f: &[u64], table: &CharacterTable) -> i64 {
    let p = table.p();
    let field = table.quadratic_ext();
    let mut sum = difference_char_sum(&norm_poly(f, &field, 0), table);
    for b in 1..=(p - 1) / 2 {
        sum += 2 * difference_char_sum(&norm_poly(f, &field, b), table);
    }
    sum
}

/// Coefficients (in `a`) of `f(a + b t) * f(a - b t)`.
fn norm_poly(f: &[u64], field: &Fp2, b: u64) -> Vec<u64> {
    let p = field.p;
    let s = Fp2Elem { a: 0, b };
    // Horner in F_{p^2}[a]: g <- g * (a + s) + f_j.
    let mut g: Vec<Fp2Elem> = Vec::with_capacity(f.len());
    for &c in f.iter().rev() {
        let mut next = vec![Fp2Elem::default(); g.len() + 1];
        for (i, &gi) in g.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], gi);
            next[i] = field.add(next[i], field.mul(gi, s));
        }
        next[0] = field.add(next[0], Fp2Elem { a: c, b: 0 });
        g = next;
    }
    let conj: Vec<Fp2Elem> = g.iter().map(|&x| field.conj(x)).collect();
    let mut prod = vec![Fp2Elem::default(); 2 * g.len() - 1];
    for (i, &x) in g.iter().enumerate() {
        for (j, &y) in conj.iter().enumerate() {
            prod[i + j] = field.add(prod[i + j], field.mul(x, y));
        }
    }
    debug_assert!(prod.iter().all(|c| c.b == 0), "norm polynomial lies in F_p[a]");
    let mut out: Vec<u64> = prod.into_iter().map(|c| c.a % p).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Reference count: Horner evaluation of `f` at every point of
/// `F_{p^ext}`, squareness by the character of the norm.
pub fn count_points_horner(curve: &HyperellipticCurve, p: u64, ext: u32) -> Result<u64> {
    check_counting_input(curve, p, ext)?;
    let table = character_table(p)?;
    let field = table.quadratic_ext();
    let mut sum = 0i64;
    let b_range = if ext == 1 { 0..1 } else { 0..p };
    for b in b_range {
        for a in 0..p {
            let v = field.eval_int_poly(&curve.coeffs, Fp2Elem { a, b });
            sum += if ext == 1 {
                table.chi(v.a)
            } else {
                table.chi_fp2(v)
            } as i64;
        }
    }
    finish_count(curve, &table, ext, sum)
}

/// Odd primes `<= n` of good reduction.
pub fn good_primes(curve: &HyperellipticCurve, n: u64) -> Vec<u64> {
    sieve_primes(n)
        .into_iter()
        .filter(|&p| curve.bad_reduction(p).is_none())
        .collect()
}

/// `disc(f)` as `i128` when it fits; used only for display.
pub fn disc_i128(curve: &HyperellipticCurve) -> Option<i128> {
    if curve.disc.abs() > BigInt::from(i128::MAX) {
        None
    } else {
        curve.disc.to_i128()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(c: &[i64]) -> HyperellipticCurve {
        HyperellipticCurve::new("t", c).unwrap()
    }

    /// Direct enumeration of `(x, y)` over `F_p`, plus points at infinity.
    fn brute_force_fp(c: &HyperellipticCurve, p: u64) -> u64 {
        let pi = p as i64;
        let mut affine = 0u64;
        for x in 0..pi {
            let fx = c
                .coeffs()
                .iter()
                .rev()
                .fold(0i64, |acc, &k| (acc * x + k).rem_euclid(pi));
            affine += (0..pi).filter(|y| (y * y) % pi == fx).count() as u64;
        }
        let infinity = if c.degree() % 2 == 1 {
            1
        } else {
            let lc = c.leading().rem_euclid(pi);
            2 * (0..pi).any(|y| y != 0 && (y * y) % pi == lc) as u64
        };
        affine + infinity
    }

    /// Direct enumeration over `F_{p^2}`: squares `y^2` tabulated over all `y`.
    fn brute_force_fp2(c: &HyperellipticCurve, p: u64) -> u64 {
        let table = character_table(p).unwrap();
        let field = table.quadratic_ext();
        let mut square_counts = std::collections::HashMap::new();
        for a in 0..p {
            for b in 0..p {
                let y = Fp2Elem { a, b };
                *square_counts.entry(field.mul(y, y)).or_insert(0u64) += 1;
            }
        }
        let mut affine = 0;
        for a in 0..p {
            for b in 0..p {
                let v = field.eval_int_poly(c.coeffs(), Fp2Elem { a, b });
                affine += square_counts.get(&v).copied().unwrap_or(0);
            }
        }
        let infinity = if c.degree() % 2 == 1 { 1 } else { 2 };
        affine + infinity
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_points(&curve(&[1, 1, 0, 1]), 5, 1).unwrap(), 9);
        assert_eq!(count_points(&curve(&[1, 0, 0, 1]), 5, 1).unwrap(), 6);
        let c = curve(&[1, 0, 0, 0, 0, 1]);
        assert_eq!(count_points(&c, 3, 1).unwrap(), 4);
        assert_eq!(count_points(&c, 3, 2).unwrap(), 10);
        assert_eq!(brute_force_fp(&c, 3), 4);
        assert_eq!(brute_force_fp2(&c, 3), 10);
    }

    #[test]
    fn discriminants() {
        assert_eq!(*curve(&[1, 1, 0, 1]).disc(), BigInt::from(-31));
        assert_eq!(*curve(&[1, 0, 0, 1]).disc(), BigInt::from(-27));
        // (x^2 - 1)(x^2 - 4): monic, so disc is the product of squared root gaps.
        let roots = [1i64, -1, 2, -2];
        let mut d = 1i64;
        for i in 0..4 {
            for j in i + 1..4 {
                d *= (roots[i] - roots[j]).pow(2);
            }
        }
        assert_eq!(*curve(&[4, 0, -5, 0, 1]).disc(), BigInt::from(d));
    }

    #[test]
    fn non_squarefree_and_bad_degree_rejected() {
        assert!(HyperellipticCurve::new("x", &[0, 0, 1, 1]).is_err());
        assert!(HyperellipticCurve::new("x", &[1, 0, 1]).is_err());
        assert!(HyperellipticCurve::new("x", &[1, 0, 0, 0, 0, 0, 0, 1]).is_err());
    }

    #[test]
    fn bad_primes_are_rejected_with_reason() {
        let c = curve(&[1, 0, 0, 1]);
        match count_points(&c, 3, 1) {
            Err(Error::BadReduction { p: 3, reason }) => assert!(reason.contains("disc")),
            other => panic!("unexpected {other:?}"),
        }
        let c = curve(&[1, 0, 0, 5]);
        assert!(matches!(count_points(&c, 5, 1), Err(Error::BadReduction { .. })));
        assert!(count_points(&c, 9, 1).is_err());
        assert!(count_points(&curve(&[1, 1, 0, 1]), 7, 3).is_err());
    }

    #[test]
    fn good_prime_examples() {
        assert_eq!(good_primes(&curve(&[1, 1, 0, 1]), 10), vec![3, 5, 7]);
        assert_eq!(good_primes(&curve(&[1, 0, 0, 1]), 10), vec![5, 7]);
        assert!(good_primes(&curve(&[1, 0, 0, 1]), 2).is_empty());
    }

    const CURVES: &[&[i64]] = &[
        &[1, 1, 0, 1],
        &[1, 0, 0, 1],
        &[-2, 3, 0, 1],
        &[1, 2, 0, -1, 1],
        &[3, 0, 1, 0, 2],
        &[1, -1, 0, 0, 0, 1],
        &[1, 0, 0, 0, 0, 1],
        &[-1, 2, -5, 10, -5, 0, 1],
        &[2, 1, 0, 3, 0, 0, -1],
    ];

    #[test]
    fn character_sum_matches_enumeration_over_fp() {
        for coeffs in CURVES {
            let c = curve(coeffs);
            for p in good_primes(&c, 31) {
                assert_eq!(
                    count_points(&c, p, 1).unwrap(),
                    brute_force_fp(&c, p),
                    "f={coeffs:?} p={p}"
                );
            }
        }
    }

    #[test]
    fn fp2_count_matches_enumeration_and_horner() {
        for coeffs in CURVES {
            let c = curve(coeffs);
            for p in good_primes(&c, 13) {
                assert_eq!(count_points(&c, p, 2).unwrap(), brute_force_fp2(&c, p), "f={coeffs:?} p={p}");
            }
            for p in good_primes(&c, 97) {
                for ext in [1, 2] {
                    assert_eq!(
                        count_points(&c, p, ext).unwrap(),
                        count_points_horner(&c, p, ext).unwrap(),
                        "f={coeffs:?} p={p} ext={ext}"
                    );
                }
            }
        }
    }

    #[test]
    fn differences_reproduce_values() {
        let p = 7;
        let h = vec![3, 0, 5, 1, 6, 2, 4, 1, 1, 2, 3];
        let direct: i64 = {
            let t = character_table(p).unwrap();
            (0..p)
                .map(|x| {
                    let v = h.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
                    t.chi(v) as i64
                })
                .sum()
        };
        assert_eq!(difference_char_sum(&h, &character_table(p).unwrap()), direct);
    }
}
