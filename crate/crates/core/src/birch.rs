//! Trace moments over all short Weierstrass curves `y^2 = x^3 + Ax + B` at a
//! fixed prime, compared against closed-form moment polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::arith::{character_table, CharacterTable};
use crate::exec::Exec;
use crate::{Error, Result};

/// Multiset of traces `a = p + 1 - #E(F_p)` over non-singular `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApDistribution {
    pub p: u64,
    pub counts: BTreeMap<i64, u64>,
    pub total: u64,
}

impl ApDistribution {
    /// `counts[a] == counts[-a]` for every `a`.
    pub fn is_twist_symmetric(&self) -> bool {
        self.counts
            .iter()
            .all(|(a, n)| self.counts.get(&-a).copied().unwrap_or(0) == *n)
    }

    /// `sum a * counts[a]`.
    pub fn first_sum(&self) -> i128 {
        self.counts.iter().map(|(&a, &n)| a as i128 * n as i128).sum()
    }
}

fn trace_row(table: &CharacterTable, a: u64) -> Vec<(i64, u64)> {
    let p = table.p();
    let cubic: Vec<u64> = (0..p).map(|x| (x * x % p * x + a * x) % p).collect();
    let disc_a = 4 * (a * a % p * a % p) % p;
    let mut row: BTreeMap<i64, u64> = BTreeMap::new();
    for b in 0..p {
        if (disc_a + 27 * (b * b % p)) % p == 0 {
            continue;
        }
        let sum: i64 = cubic
            .iter()
            .map(|&g| table.chi((g + b) % p) as i64)
            .sum();
        // #E = p + 1 + sum, so a = -sum
        *row.entry(-sum).or_insert(0) += 1;
    }
    row.into_iter().collect()
}

/// Enumerates every `(A, B) in F_p^2` with `4A^3 + 27B^2 != 0`.
pub fn ap_distribution(p: u64, exec: Exec) -> Result<ApDistribution> {
    if p < 5 {
        return Err(Error::InvalidInput(format!("trace distribution needs p >= 5, got {p}")));
    }
    let table = character_table(p)?;
    let rows = exec.map_range(p as usize, |a| trace_row(&table, a as u64));
    let mut counts = BTreeMap::new();
    let mut total = 0;
    for row in rows {
        for (a, n) in row {
            *counts.entry(a).or_insert(0) += n;
            total += n;
        }
    }
    Ok(ApDistribution { p, counts, total })
}

/// `E[a^d]` over the distribution.
pub fn birch_moment(dist: &ApDistribution, d: u32) -> BigRational {
    let sum = dist
        .counts
        .iter()
        .fold(BigInt::zero(), |acc, (&a, &n)| acc + BigInt::from(a).pow(d) * n);
    BigRational::new(sum, BigInt::from(dist.total))
}

/// Closed-form even moments for `d` in `{2, 4, 6, 8, 10}`; `d = 10` needs `tau(p)`.
pub fn birch_formula(p: u64, d: u32, tau_p: Option<&BigInt>) -> Result<BigRational> {
    if p < 5 {
        return Err(Error::InvalidInput(format!("moment formulas need p >= 5, got {p}")));
    }
    let pi = BigInt::from(p);
    let poly = |coeffs: &[i64]| -> BigInt {
        // coefficients from p^0 upward
        coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * &pi + c)
    };
    let (head, tail) = match d {
        2 => (poly(&[0, 1]), BigInt::one()),
        4 => (poly(&[-3, 0, 2]), BigInt::one()),
        6 => (poly(&[-5, -9, 0, 5]), BigInt::one()),
        8 => (poly(&[-7, -20, -28, 0, 14]), BigInt::one()),
        10 => {
            let tau = tau_p.ok_or_else(|| Error::InvalidInput("tenth moment needs tau(p)".into()))?;
            (poly(&[-9, -35, -75, -90, 0, 42]), BigInt::one() + tau)
        }
        _ => return Err(Error::InvalidInput(format!("no closed form for d = {d}"))),
    };
    Ok(BigRational::from_integer(head) - BigRational::new(tail, pi))
}

/// `tau(n)` for `n` in `0..=nmax` (with `tau(0) = 0`), from
/// `q prod (1 - q^n)^24` by repeated multiplication with the pentagonal series.
pub fn ramanujan_tau(nmax: usize) -> Vec<BigInt> {
    if nmax == 0 {
        return vec![BigInt::zero()];
    }
    let len = nmax; // coefficients of q^0 .. q^{nmax-1} in the product
    let mut euler: Vec<(usize, i64)> = Vec::new();
    for k in 0i64.. {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = (kk * (3 * kk - 1) / 2) as usize;
            if e < len {
                euler.push((e, if kk % 2 == 0 { 1 } else { -1 }));
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    let mut series = vec![BigInt::zero(); len];
    series[0] = BigInt::one();
    for _ in 0..24 {
        let mut next = vec![BigInt::zero(); len];
        for (i, c) in series.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(e, s) in &euler {
                if i + e < len {
                    next[i + e] += c * s;
                }
            }
        }
        series = next;
    }
    std::iter::once(BigInt::zero()).chain(series).collect()
}

/// Result of comparing enumerated moments with the closed form at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct BirchRow {
    pub d: u32,
    pub bruteforce: BigRational,
    pub formula: BigRational,
    pub matches: bool,
    /// `bruteforce / formula` when the two disagree and the formula is nonzero.
    pub residual_factor: Option<BigRational>,
}

/// Enumerated versus closed-form moments for `d` in `1..=dmax`; odd orders
/// compare against zero.
pub fn reconcile(dist: &ApDistribution, dmax: u32) -> Result<Vec<BirchRow>> {
    if dmax > 10 {
        return Err(Error::InvalidInput(format!("dmax {dmax} exceeds 10")));
    }
    let taus = ramanujan_tau(dist.p as usize);
    let tau_p = &taus[dist.p as usize];
    (1..=dmax)
        .map(|d| {
            let bruteforce = birch_moment(dist, d);
            let formula = if d % 2 == 1 {
                BigRational::zero()
            } else {
                birch_formula(dist.p, d, Some(tau_p))?
            };
            let matches = bruteforce == formula;
            let residual_factor = (!matches && !formula.is_zero()).then(|| &bruteforce / &formula);
            Ok(BirchRow {
                d,
                bruteforce,
                formula,
                matches,
                residual_factor,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendRow {
    pub p: u64,
    /// `M_{2d}(a_p) / p^d`.
    pub normalized: BigRational,
}

impl TrendRow {
    pub fn value(&self) -> f64 {
        self.normalized.to_f64().unwrap_or(f64::NAN)
    }
}

/// Normalized even moments `M_{2d} / p^d` per prime; these tend to the
/// Catalan number `C_d`.
pub fn catalan_trend(d: u32, primes: &[u64], exec: Exec) -> Result<Vec<TrendRow>> {
    primes
        .iter()
        .map(|&p| {
            let dist = ap_distribution(p, exec)?;
            let scale = BigRational::from_integer(BigInt::from(p).pow(d));
            Ok(TrendRow {
                p,
                normalized: birch_moment(&dist, 2 * d) / scale,
            })
        })
        .collect()
}
