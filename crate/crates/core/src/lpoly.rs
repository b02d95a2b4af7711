//! L-polynomials of genus 1 and 2 curves.
//!
//! `c1` is the literal `T` coefficient of `P(T)`:
//!
//! - genus 1: `P(T) = 1 + c1 T + p T^2`, so the usual trace is `a_p = -c1`;
//! - genus 2: `P(T) = 1 + c1 T + c2 T^2 + p c1 T^3 + p^2 T^4`.
//!
//! The normalized polynomial `P(T / sqrt p)` is then
//! `1 + a1bar T + a2bar T^2 + a1bar T^3 + T^4` with `a1bar = c1 / sqrt p` and
//! `a2bar = c2 / p`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPoly {
    pub genus: u8,
    pub p: u64,
    pub c1: i64,
    /// Present exactly when `genus == 2`.
    pub c2: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedCoeffs {
    pub a1bar: f64,
    pub a2bar: Option<f64>,
}

impl LPoly {
    pub fn genus1(p: u64, c1: i64) -> Self {
        LPoly { genus: 1, p, c1, c2: None }
    }

    pub fn genus2(p: u64, c1: i64, c2: i64) -> Self {
        LPoly { genus: 2, p, c1, c2: Some(c2) }
    }

    /// Coefficients of `P(T)` from `T^0` to `T^{2g}`.
    pub fn coefficients(&self) -> Vec<i128> {
        let p = self.p as i128;
        let c1 = self.c1 as i128;
        match self.c2 {
            None => vec![1, c1, p],
            Some(c2) => vec![1, c1, c2 as i128, p * c1, p * p],
        }
    }

    /// The usual trace `a_p = p + 1 - #C(F_p) = -c1`.
    pub fn trace(&self) -> i64 {
        -self.c1
    }
}

/// Assembles `P(T)` from `#C(F_p)` (and `#C(F_{p^2})` in genus 2).
///
/// Counts are signed so that every Weil-valid polynomial round-trips, including
/// ones with a formally negative count at tiny `p`.
pub fn lpoly_from_counts(genus: u8, p: u64, n1: i64, n2: Option<i64>) -> Result<LPoly> {
    let pi = p as i64;
    let c1 = n1 - pi - 1;
    let lp = match (genus, n2) {
        (1, _) => LPoly::genus1(p, c1),
        (2, Some(n2)) => {
            let s1 = -c1 as i128;
            let s2 = (p as i128).pow(2) + 1 - n2 as i128;
            let twice_c2 = s1 * s1 - s2;
            if twice_c2 % 2 != 0 {
                return Err(Error::WeilViolation {
                    p,
                    detail: format!("s1^2 - s2 = {twice_c2} is odd (n1 = {n1}, n2 = {n2})"),
                });
            }
            LPoly::genus2(p, c1, (twice_c2 / 2) as i64)
        }
        (2, None) => {
            return Err(Error::InvalidInput("genus 2 needs the F_{p^2} count".into()));
        }
        (g, _) => return Err(Error::InvalidInput(format!("unsupported genus {g}"))),
    };
    if let Some(detail) = weil_violation(&lp) {
        return Err(Error::WeilViolation { p, detail });
    }
    Ok(lp)
}

/// Newton power sums `s_1..=s_n` of the reciprocal roots of `P`.
fn power_sums(lp: &LPoly, n: usize) -> Vec<i128> {
    // e_k = (-1)^k * (coefficient of T^k)
    let e: Vec<i128> = lp
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
        .collect();
    let deg = e.len() - 1;
    let mut s = vec![0i128; n + 1];
    for m in 1..=n {
        let mut acc = 0i128;
        for i in 1..m.min(deg + 1) {
            let term = e[i] * s[m - i];
            acc += if i % 2 == 1 { term } else { -term };
        }
        if m <= deg {
            let term = m as i128 * e[m];
            acc += if m % 2 == 1 { term } else { -term };
        }
        s[m] = acc;
    }
    s
}

/// `#C(F_{p^n}) = p^n + 1 - s_n` for `n` in `1..=4`, in exact integers.
pub fn predicted_count(lp: &LPoly, n: u32) -> Result<i128> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidInput(format!("extension degree {n} outside 1..=4")));
    }
    let s = power_sums(lp, n as usize);
    Ok((lp.p as i128).pow(n) + 1 - s[n as usize])
}

pub fn normalize(lp: &LPoly) -> NormalizedCoeffs {
    let p = lp.p as f64;
    NormalizedCoeffs {
        a1bar: lp.c1 as f64 / p.sqrt(),
        a2bar: lp.c2.map(|c2| c2 as f64 / p),
    }
}

/// True iff every root of `P(T / sqrt p)` lies on the unit circle.
pub fn weil_check(lp: &LPoly) -> bool {
    weil_violation(lp).is_none()
}

fn weil_violation(lp: &LPoly) -> Option<String> {
    weil_region_violation(lp.c1, lp.c2, lp.p)
}

/// Weil check for `P(T) = 1 + c1 T + c2 T^2 + q c1 T^3 + q^2 T^4` (or the
/// genus 1 form when `c2` is `None`) over any `q > 0`, not only primes.
///
/// Genus 2 goes through `t = T + 1/T`: the roots of `P(T / sqrt q)` are on the
/// unit circle iff `h(t) = t^2 + a1 t + (a2 - 2)` has both roots in
/// `[-2, 2]`. Scaled by `q`, the conditions are
/// `c1^2 - 4 c2 + 8 q >= 0`, `2q + c2 >= 2 |c1| sqrt q` and `c1^2 <= 16 q`.
pub fn weil_region(c1: i64, c2: Option<i64>, q: u64) -> bool {
    weil_region_violation(c1, c2, q).is_none()
}

fn weil_region_violation(c1: i64, c2: Option<i64>, q: u64) -> Option<String> {
    let c1 = c1 as i128;
    let q = q as i128;
    match c2 {
        None => (c1 * c1 > 4 * q).then(|| format!("|c1| = {} exceeds 2 sqrt({q})", c1.abs())),
        Some(c2) => {
            let c2 = c2 as i128;
            if c1 * c1 - 4 * c2 + 8 * q < 0 {
                return Some(format!("complex t-roots: c1^2 - 4 c2 + 8 q < 0 (c1 = {c1}, c2 = {c2})"));
            }
            let x = 2 * q + c2;
            if x < 0 || x * x < 4 * c1 * c1 * q {
                return Some(format!("h(+-2) < 0 (c1 = {c1}, c2 = {c2})"));
            }
            if c1 * c1 > 16 * q {
                return Some(format!("|c1| = {} exceeds 4 sqrt({q})", c1.abs()));
            }
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_counts_examples() {
        assert_eq!(lpoly_from_counts(2, 3, 4, Some(10)).unwrap(), LPoly::genus2(3, 0, 0));
        assert_eq!(lpoly_from_counts(1, 5, 9, None).unwrap().c1, 3);
        assert_eq!(lpoly_from_counts(1, 5, 9, None).unwrap().trace(), -3);
        for p in [3i64, 5, 101, 997] {
            assert_eq!(
                lpoly_from_counts(2, p as u64, p + 1, Some(p * p + 1)).unwrap(),
                LPoly::genus2(p as u64, 0, 0)
            );
        }
    }

    #[test]
    fn from_counts_rejects_inconsistent_counts() {
        // c1 = 10 > 2 sqrt 5
        assert!(matches!(lpoly_from_counts(1, 5, 16, None), Err(Error::WeilViolation { .. })));
        // parity failure: s1 = 0, s2 = 1
        assert!(matches!(lpoly_from_counts(2, 5, 6, Some(25)), Err(Error::WeilViolation { .. })));
        assert!(lpoly_from_counts(2, 5, 6, None).is_err());
        assert!(lpoly_from_counts(3, 5, 6, None).is_err());
    }

    #[test]
    fn predicted_count_examples() {
        let lp = LPoly::genus1(5, 3);
        assert_eq!(predicted_count(&lp, 1).unwrap(), 9);
        assert_eq!(predicted_count(&lp, 2).unwrap(), 27);
        for p in [3u64, 7, 31] {
            let lp = LPoly::genus2(p, 0, 0);
            for n in [1u32, 3] {
                assert_eq!(predicted_count(&lp, n).unwrap(), (p as i128).pow(n) + 1);
            }
        }
        assert!(predicted_count(&lp, 5).is_err());
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&LPoly::genus1(5, 3));
        assert!((n.a1bar - 1.341640786499874).abs() < 1e-12);
        let n = normalize(&LPoly::genus2(7, 0, 0));
        assert_eq!((n.a1bar, n.a2bar), (0.0, Some(0.0)));
        let n = normalize(&LPoly::genus2(5, 5, 15));
        assert!((n.a1bar - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(n.a2bar, Some(3.0));
    }

    #[test]
    fn weil_check_examples() {
        assert!(weil_check(&LPoly::genus1(5, 3)));
        assert!(!weil_check(&LPoly::genus1(5, 5)));
        assert!(weil_check(&LPoly::genus1(5, 4)));
        assert!(weil_check(&LPoly::genus2(11, 0, 0)));
    }

    #[test]
    fn feasible_region_boundary() {
        // (a1, a2) = (+-4, 6): needs sqrt q integral, so use q = 25.
        assert!(weil_region(20, Some(150), 25));
        assert!(weil_region(-20, Some(150), 25));
        assert!(!weil_region(20, Some(151), 25));
        assert!(!weil_region(-20, Some(149), 25));
        // (0, -2) and (0, 2) at a prime
        for p in [5u64, 13, 101] {
            let pi = p as i64;
            assert!(weil_check(&LPoly::genus2(p, 0, -2 * pi)));
            assert!(!weil_check(&LPoly::genus2(p, 0, -2 * pi - 1)));
            assert!(weil_check(&LPoly::genus2(p, 0, 2 * pi)));
            assert!(!weil_check(&LPoly::genus2(p, 0, 2 * pi + 1)));
        }
    }

    #[test]
    fn roundtrip_for_all_small_valid_polys() {
        for p in crate::arith::sieve_primes(100).into_iter().filter(|&p| p > 2) {
            let pi = p as i64;
            let c1_max = (4.0 * (p as f64).sqrt()) as i64 + 1;
            for c1 in -c1_max..=c1_max {
                for c2 in -2 * pi - 2..=6 * pi + 2 {
                    let lp = LPoly::genus2(p, c1, c2);
                    if !weil_check(&lp) {
                        continue;
                    }
                    let n1 = predicted_count(&lp, 1).unwrap() as i64;
                    let n2 = predicted_count(&lp, 2).unwrap() as i64;
                    assert_eq!(lpoly_from_counts(2, p, n1, Some(n2)).unwrap(), lp);
                }
                let lp = LPoly::genus1(p, c1);
                if weil_check(&lp) {
                    let n1 = predicted_count(&lp, 1).unwrap() as i64;
                    assert_eq!(lpoly_from_counts(1, p, n1, None).unwrap(), lp);
                }
            }
        }
    }
}
